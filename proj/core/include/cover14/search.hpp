#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cover14/certify.hpp"
#include "cover14/config_space.hpp"
#include "cover14/cover_system.hpp"

namespace cover14::search {

// Fixed list of up to 16 maps tried first on every box.
struct ShortList {
  std::vector<cover::TauMap> taus;
};

// All 1496 restricted maps in mutable order; successful maps move to the
// front so the likely candidates stay early.
struct LongList {
  std::vector<cover::TauMap> taus;
  void move_to_front(std::size_t i);
};
LongList full_long_list();

struct Shard {
  unsigned index = 0, total = 1;
};

struct SearchConfig {
  int M = 10;
  int max_depth = 12;  // the hardest boxes on record need 7
  bool prescreen = true;
  std::uint64_t seed = 0;
  Shard shard;
  unsigned workers = 0;  // 0: COVER14_WORKERS or hardware concurrency
};

struct SearchStats {
  std::uint64_t starting_boxes = 0;
  std::uint64_t taus_tried = 0;
  std::uint64_t prescreen_rejections = 0;
  std::uint64_t exact_solves = 0;
  long pivots = 0;
  int max_depth_seen = 0;
  double seconds = 0;
};

// A box the search had to abandon, reported, never silently dropped.
struct UnresolvedBox {
  cfg::Box6 box;
  std::string reason;  // "max depth exceeded" or a geometry failure
};

struct SearchResult {
  std::vector<cert::CertificateEntry> entries;
  std::vector<UnresolvedBox> unresolved;
  SearchStats stats;
};

// Exact midpoint bisection along the lowest-index widest dimension.
std::pair<cfg::Box6, cfg::Box6> split(const cfg::Box6& box);

// Recursive search of one box: short list, then long list with move-to-front,
// then split and recurse up to cfg.max_depth. Every emitted entry carries an
// exact witness that also passed the geometric covering re-check.
SearchResult search_box(const cfg::Box6& box, const ShortList& shortlist, LongList& longlist,
                        const SearchConfig& sc, int depth = 0);

// Every starting box of the region that falls in the configured shard.
// Short-list attempts run on the worker pool; boxes that fail it are finished
// sequentially in enumeration order, so certificate files are byte-identical
// for any worker count. Entries come back sorted by box.
SearchResult search_region(int region_id, const ShortList& shortlist, const SearchConfig& sc);

// Frequency bootstrap: verifies `samples` random starting boxes against the
// full long list and keeps the 16 most successful maps (ties by enumeration
// order). Deterministic for a fixed seed.
ShortList bootstrap_shortlist(int samples, std::uint64_t seed, int M = 10, bool prescreen = true,
                              unsigned workers = 0);

// Short-list file: one map per line, six edge indices in face order.
ShortList load_shortlist(const std::string& path);
void save_shortlist(const ShortList& list, const std::string& path);

// Checkpointed region run. Writes entries incrementally to <out>.partial and
// progress to <out>.progress; on completion the finalized certificate lands
// at <out> and the side files are removed. With resume=true an interrupted
// run continues without duplicating entries; the final file is byte-identical
// to an uninterrupted run.
struct RegionRunReport {
  SearchResult result;
  std::uint64_t resumed_boxes = 0;
  std::string certificate_path;
};
RegionRunReport run_region_checkpointed(int region_id, const ShortList& shortlist,
                                        const SearchConfig& sc, const std::string& out_path,
                                        bool resume);

}  // namespace cover14::search

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cover14/config_space.hpp"
#include "cover14/cover_system.hpp"

namespace cover14::cert {

// One unit of the machine-checkable proof: a configuration-space box, the
// edge assignment that worked for it, and the exact solution of its covering
// system.
struct CertificateEntry {
  cfg::Box6 box;
  cover::TauMap tau;
  lp::Witness witness;  // 60 values in CoverLayout order

  friend bool operator==(const CertificateEntry&, const CertificateEntry&) = default;
};

struct CertificateHeader {
  int version = 1;
  int M = 10;
  std::optional<int> region;  // absent for custom-box runs
  unsigned shard_index = 0, shard_total = 1;
};

struct CertificateFile {
  CertificateHeader header;
  std::vector<CertificateEntry> entries;
};

// Entry line: `box: <12 rationals> | tau: <6 ints> | witness: <60 rationals>`,
// every rational in canonical n/d form. Parse rejects malformed rationals,
// non-injective tau, and out-of-range boxes.
std::string entry_to_line(const CertificateEntry& e);
std::optional<CertificateEntry> entry_from_line(const std::string& line);

void write_certificates(const CertificateFile& file, const std::string& path);
// Throws ParseError (with line number) and VersionMismatch. Every box must be
// a dyadic descendant of an admissible grid box for the header's M.
CertificateFile read_certificates(const std::string& path);

// Dyadic-descent data of an entry box: the containing starting box's grid
// indices and the subdivision depth. Empty when the box is not a midpoint
// descendant of an admissible starting box.
struct Ancestry {
  std::array<long, 6> k;  // starting-box grid indices
  int depth;              // number of bisections
};
std::optional<Ancestry> ancestry(const cfg::Box6& box, int M);

// Full independent re-check of one entry: rebuilds Q_P and L(P,tau) from
// scratch, substitutes the witness, and re-validates the covering geometry
// point by point. Never calls the simplex.
bool check_entry(const CertificateEntry& e, int M);

// A subset of the M-grid: optionally one region, optionally one shard. Shard
// s of n selects every n-th box of the region-local enumeration order.
struct GridSelection {
  int M = 10;
  std::optional<int> region;
  unsigned shard_index = 0, shard_total = 1;
};
std::vector<cfg::Box6> collect_selection(const GridSelection& sel);

// Exact tiling audit: every selected starting box is partitioned by its
// entries' boxes through midpoint bisections, no gaps, no overlaps, no
// foreign boxes. All volume arithmetic is rational.
struct TilingReport {
  bool ok = false;
  std::string violation;  // first violation, human readable
  std::uint64_t starting_boxes = 0;
  std::uint64_t leaves = 0;
};
TilingReport check_tiling(std::span<const CertificateEntry> entries, const GridSelection& sel);

struct Stats {
  std::uint64_t entries = 0;
  std::uint64_t starting_boxes = 0;
  int max_depth = 0;
  std::map<int, std::uint64_t> per_region;
  std::map<int, std::uint64_t> depth_histogram;
  std::map<std::array<int, 6>, std::uint64_t> tau_usage;
};
Stats stats(std::span<const CertificateEntry> entries, int M);

// (box, tau) pairs without witnesses, e.g. converted from the released data.
struct Pair {
  cfg::Box6 box;
  cover::TauMap tau;
};
void write_pairs(std::span<const Pair> pairs, int M, const std::string& path);
std::vector<Pair> read_pairs(const std::string& path, int* M_out = nullptr);

// Best-effort one-way converter for externally published (box, tau) listings:
// accepts lines of 12 box fields (fractions or exact decimals) plus 6 edge
// indices, tolerating brackets and commas. Edge indices are taken 0-based
// unless the file uses 12, in which case 1-based is assumed.
std::vector<Pair> import_released(const std::string& path, std::string* notes);

}  // namespace cover14::cert

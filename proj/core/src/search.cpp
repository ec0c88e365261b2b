#include "cover14/search.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cover14/util.hpp"

namespace cover14::search {

void LongList::move_to_front(std::size_t i) {
  if (i == 0 || i >= taus.size()) return;
  cover::TauMap t = taus[i];
  taus.erase(taus.begin() + static_cast<std::ptrdiff_t>(i));
  taus.insert(taus.begin(), t);
}

LongList full_long_list() { return {cover::enumerate_taus(true)}; }

std::pair<cfg::Box6, cfg::Box6> split(const cfg::Box6& box) {
  int axis = 0;
  for (int i = 1; i < 6; ++i)
    if (box.width(i) > box.width(axis)) axis = i;
  const Rational mid = (box.lo[static_cast<size_t>(axis)] + box.hi[static_cast<size_t>(axis)]) / 2;
  cfg::Box6 left = box, right = box;
  left.hi[static_cast<size_t>(axis)] = mid;
  right.lo[static_cast<size_t>(axis)] = mid;
  return {left, right};
}

namespace {

// Attempts the map on the box (Q_P shared per box); on success the entry is
// emitted only after the independent geometric covering re-check.
bool try_tau(const cfg::Box6& box, const cover::TauMap& tau, const geo::HPolytope& q,
             const SearchConfig& sc, SearchResult& out) {
  ++out.stats.taus_tried;
  const auto verdict = cover::verify_box_with(box, tau, q, {.prescreen = sc.prescreen});
  if (verdict.prescreen_rejected) {
    ++out.stats.prescreen_rejections;
    return false;
  }
  ++out.stats.exact_solves;
  out.stats.pivots += verdict.pivots;
  if (!verdict.feasible) return false;
  if (!cover::witness_covers(box, tau, q, verdict.witness))
    throw std::logic_error("search: exact witness failed the geometric covering re-check");
  out.entries.push_back({box, tau, verdict.witness});
  return true;
}

// Full recursive algorithm. try_short=false skips the short list at the root,
// used when a parallel short-list pass already failed it.
void search_node(const cfg::Box6& box, int depth, bool try_short, const ShortList& shortlist,
                 LongList& longlist, const SearchConfig& sc, SearchResult& out) {
  out.stats.max_depth_seen = std::max(out.stats.max_depth_seen, depth);
  geo::HPolytope q;
  try {
    q = cfg::q_polytope(box);
  } catch (const Error& e) {
    out.unresolved.push_back({box, std::string("geometry: ") + e.what()});
    return;
  }
  if (try_short) {
    for (const cover::TauMap& tau : shortlist.taus)
      if (try_tau(box, tau, q, sc, out)) return;
  }
  for (std::size_t i = 0; i < longlist.taus.size(); ++i) {
    if (try_tau(box, longlist.taus[i], q, sc, out)) {
      longlist.move_to_front(i);
      return;
    }
  }
  if (depth >= sc.max_depth) {
    out.unresolved.push_back({box, "max depth exceeded"});
    return;
  }
  const auto [left, right] = split(box);
  search_node(left, depth + 1, true, shortlist, longlist, sc, out);
  search_node(right, depth + 1, true, shortlist, longlist, sc, out);
}

// Short-list-only attempt, the parallel fast path.
bool short_list_attempt(const cfg::Box6& box, const ShortList& shortlist, const SearchConfig& sc,
                        SearchResult& out, bool* geometry_failed) {
  *geometry_failed = false;
  geo::HPolytope q;
  try {
    q = cfg::q_polytope(box);
  } catch (const Error& e) {
    out.unresolved.push_back({box, std::string("geometry: ") + e.what()});
    *geometry_failed = true;
    return false;
  }
  for (const cover::TauMap& tau : shortlist.taus)
    if (try_tau(box, tau, q, sc, out)) return true;
  return false;
}

void merge(SearchResult& into, SearchResult&& from) {
  for (auto& e : from.entries) into.entries.push_back(std::move(e));
  for (auto& u : from.unresolved) into.unresolved.push_back(std::move(u));
  into.stats.taus_tried += from.stats.taus_tried;
  into.stats.prescreen_rejections += from.stats.prescreen_rejections;
  into.stats.exact_solves += from.stats.exact_solves;
  into.stats.pivots += from.stats.pivots;
  into.stats.max_depth_seen = std::max(into.stats.max_depth_seen, from.stats.max_depth_seen);
}

void sort_entries(std::vector<cert::CertificateEntry>& entries) {
  std::sort(entries.begin(), entries.end(),
            [](const cert::CertificateEntry& a, const cert::CertificateEntry& b) { return a.box < b.box; });
}

}  // namespace

SearchResult search_box(const cfg::Box6& box, const ShortList& shortlist, LongList& longlist,
                        const SearchConfig& sc, int depth) {
  SearchResult out;
  util::Stopwatch sw;
  out.stats.starting_boxes = 1;
  search_node(box, depth, true, shortlist, longlist, sc, out);
  sort_entries(out.entries);
  out.stats.seconds = sw.seconds();
  return out;
}

namespace {

struct RegionPlan {
  std::vector<cfg::Box6> boxes;  // selected starting boxes, enumeration order
};

RegionPlan plan_region(int region_id, const SearchConfig& sc) {
  if (region_id < 0 || region_id >= cfg::kNumRegions)
    throw std::invalid_argument("search_region: region id out of range");
  cert::GridSelection sel{sc.M, region_id, sc.shard.index, sc.shard.total};
  return {cert::collect_selection(sel)};
}

// Core of search_region / the checkpointed runner. `skip` marks starting
// boxes already completed by a previous run; `on_box_done` fires after each
// starting box with its (sorted) partial result.
SearchResult region_pass(const RegionPlan& plan, const ShortList& shortlist, LongList& longlist,
                         const SearchConfig& sc, const std::vector<bool>& skip,
                         const std::function<void(std::size_t, const SearchResult&)>& on_box_done) {
  const std::size_t n = plan.boxes.size();
  SearchResult total;
  total.stats.starting_boxes = n;

  // Phase A: short-list attempts in parallel. Results are deterministic per
  // box, so completion order does not matter.
  std::vector<SearchResult> partial(n);
  std::vector<char> pending(n, 0);
  std::mutex done_mu;
  util::parallel_for(n, sc.workers, [&](std::size_t i) {
    if (skip[i]) return;
    bool geom_failed = false;
    const bool solved =
        short_list_attempt(plan.boxes[i], shortlist, sc, partial[i], &geom_failed);
    pending[i] = !solved && !geom_failed;
    if (!pending[i] && on_box_done) {
      std::scoped_lock lk(done_mu);
      on_box_done(i, partial[i]);
    }
  });

  // Phase B: boxes that fell through run the full algorithm sequentially in
  // enumeration order; the long list mutates only here.
  for (std::size_t i = 0; i < n; ++i) {
    if (!pending[i]) continue;
    SearchResult full;
    search_node(plan.boxes[i], 0, false, shortlist, longlist, sc, full);
    sort_entries(full.entries);
    if (on_box_done) on_box_done(i, full);
    merge(partial[i], std::move(full));
  }

  for (std::size_t i = 0; i < n; ++i) merge(total, std::move(partial[i]));
  sort_entries(total.entries);
  return total;
}

}  // namespace

SearchResult search_region(int region_id, const ShortList& shortlist, const SearchConfig& sc) {
  util::Stopwatch sw;
  const RegionPlan plan = plan_region(region_id, sc);
  LongList longlist = full_long_list();
  SearchResult res = region_pass(plan, shortlist, longlist, sc, std::vector<bool>(plan.boxes.size(), false), nullptr);
  res.stats.seconds = sw.seconds();
  return res;
}

ShortList bootstrap_shortlist(int samples, std::uint64_t seed, int M, bool prescreen,
                              unsigned workers) {
  if (samples < 1) throw std::invalid_argument("bootstrap_shortlist: samples must be >= 1");
  const std::uint64_t total = cfg::count_boxes(M);
  util::Rng rng(seed);
  std::set<std::uint64_t> picks;
  while (picks.size() < std::min<std::uint64_t>(static_cast<std::uint64_t>(samples), total))
    picks.insert(rng.below(total));
  const std::vector<std::uint64_t> sorted(picks.begin(), picks.end());
  const std::vector<cfg::Box6> boxes = cfg::boxes_at(M, sorted);

  const LongList longlist = full_long_list();
  std::vector<std::uint64_t> wins(longlist.taus.size(), 0);
  std::mutex mu;
  util::parallel_for(boxes.size(), workers, [&](std::size_t bi) {
    geo::HPolytope q;
    try {
      q = cfg::q_polytope(boxes[bi]);
    } catch (const Error&) {
      return;  // sampled box with degenerate geometry contributes no votes
    }
    std::vector<std::uint64_t> local(longlist.taus.size(), 0);
    for (std::size_t t = 0; t < longlist.taus.size(); ++t) {
      const auto verdict = cover::verify_box_with(boxes[bi], longlist.taus[t], q, {.prescreen = prescreen});
      if (verdict.feasible) ++local[t];
    }
    std::scoped_lock lk(mu);
    for (std::size_t t = 0; t < local.size(); ++t) wins[t] += local[t];
  });

  std::vector<std::size_t> order(longlist.taus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return wins[a] > wins[b]; });
  ShortList out;
  for (std::size_t i = 0; i < 16 && i < order.size(); ++i) out.taus.push_back(longlist.taus[order[i]]);
  return out;
}

ShortList load_shortlist(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path);
  ShortList out;
  std::string line;
  long line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    cover::TauMap tau{};
    for (int f = 0; f < 6; ++f)
      if (!(ls >> tau.edge_of_face[static_cast<size_t>(f)])) throw ParseError("expected 6 edge indices", line_no);
    for (int f = 0; f < 6; ++f) {
      const int k = tau.edge_of_face[static_cast<size_t>(f)];
      if (k < 0 || k >= cfg::kNumEdges) throw ParseError("edge index out of range", line_no);
    }
    if (!tau.injective()) throw ParseError("tau not injective", line_no);
    out.taus.push_back(tau);
  }
  if (out.taus.size() > 16) throw Error("short list longer than 16 entries");
  return out;
}

void save_shortlist(const ShortList& list, const std::string& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw Error("cannot open " + path + " for writing");
  for (const cover::TauMap& t : list.taus) {
    for (int f = 0; f < 6; ++f) os << (f ? " " : "") << t.edge_of_face[static_cast<size_t>(f)];
    os << "\n";
  }
}

// --- checkpointed region runs -----------------------------------------------

namespace {

using nlohmann::json;

// Completed starting boxes as sorted half-open ranges, kept compact.
struct RangeSet {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;

  void add(std::uint64_t v) {
    auto it = std::lower_bound(ranges.begin(), ranges.end(), std::make_pair(v + 1, std::uint64_t{0}));
    // merge with predecessor / successor when adjacent
    if (it != ranges.begin() && std::prev(it)->second >= v) {
      auto p = std::prev(it);
      if (p->second == v) {
        p->second = v + 1;
        if (it != ranges.end() && it->first == p->second) {
          p->second = it->second;
          ranges.erase(it);
        }
      }
      return;
    }
    if (it != ranges.end() && it->first == v + 1) {
      it->first = v;
      return;
    }
    ranges.insert(it, {v, v + 1});
  }
  bool contains(std::uint64_t v) const {
    for (const auto& [a, b] : ranges)
      if (v >= a && v < b) return true;
    return false;
  }
  std::uint64_t count() const {
    std::uint64_t n = 0;
    for (const auto& [a, b] : ranges) n += b - a;
    return n;
  }
};

json longlist_to_json(const LongList& list) {
  // stored as the permutation of canonical enumeration indices
  std::map<std::array<int, 6>, std::size_t> canon;
  const LongList base = full_long_list();
  for (std::size_t i = 0; i < base.taus.size(); ++i) {
    std::array<int, 6> key{};
    for (int f = 0; f < 6; ++f) key[static_cast<size_t>(f)] = base.taus[i].edge_of_face[static_cast<size_t>(f)];
    canon[key] = i;
  }
  json arr = json::array();
  for (const cover::TauMap& t : list.taus) {
    std::array<int, 6> key{};
    for (int f = 0; f < 6; ++f) key[static_cast<size_t>(f)] = t.edge_of_face[static_cast<size_t>(f)];
    arr.push_back(canon.at(key));
  }
  return arr;
}

LongList longlist_from_json(const json& arr) {
  const LongList base = full_long_list();
  LongList out;
  std::vector<bool> seen(base.taus.size(), false);
  for (const auto& v : arr) {
    const std::size_t i = v.get<std::size_t>();
    if (i >= base.taus.size() || seen[i]) throw Error("progress file: invalid long-list permutation");
    seen[i] = true;
    out.taus.push_back(base.taus[i]);
  }
  if (out.taus.size() != base.taus.size()) throw Error("progress file: long-list permutation incomplete");
  return out;
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw Error("cannot open " + tmp + " for writing");
    os << content;
    if (!os.flush()) throw Error("write failure on " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

RegionRunReport run_region_checkpointed(int region_id, const ShortList& shortlist,
                                        const SearchConfig& sc, const std::string& out_path,
                                        bool resume) {
  util::Stopwatch sw;
  const RegionPlan plan = plan_region(region_id, sc);
  const std::string partial_path = out_path + ".partial";
  const std::string progress_path = out_path + ".progress";

  // starting-box key -> plan index, for mapping recovered entries on resume
  const Rational h(1, 2L * sc.M);
  std::map<std::array<long, 6>, std::size_t> key_to_index;
  for (std::size_t i = 0; i < plan.boxes.size(); ++i) {
    std::array<long, 6> k{};
    for (int c = 0; c < 6; ++c) k[static_cast<size_t>(c)] = (plan.boxes[i].lo[static_cast<size_t>(c)] / h).floor_long();
    key_to_index[k] = i;
  }

  RangeSet completed;
  LongList longlist = full_long_list();
  std::vector<cert::CertificateEntry> recovered;
  std::vector<UnresolvedBox> recovered_unresolved;

  if (resume && std::filesystem::exists(progress_path)) {
    std::ifstream is(progress_path);
    json j = json::parse(is);
    if (j.at("M").get<int>() != sc.M || j.at("region").get<int>() != region_id ||
        j.at("shard").at(0).get<unsigned>() != sc.shard.index ||
        j.at("shard").at(1).get<unsigned>() != sc.shard.total ||
        j.at("max_depth").get<int>() != sc.max_depth ||
        j.at("seed").get<std::uint64_t>() != sc.seed)
      throw Error("progress file does not match this configuration; refusing to resume");
    for (const auto& r : j.at("completed"))
      for (std::uint64_t v = r.at(0).get<std::uint64_t>(); v < r.at(1).get<std::uint64_t>(); ++v)
        completed.add(v);
    longlist = longlist_from_json(j.at("longlist"));
    for (const auto& u : j.at("unresolved"))
      if (auto b = cfg::box_from_fields(u.at("box").get<std::vector<std::string>>()))
        recovered_unresolved.push_back({*b, u.at("reason").get<std::string>()});

    if (std::filesystem::exists(partial_path)) {
      std::ifstream ps(partial_path);
      std::string line;
      long line_no = 0;
      while (std::getline(ps, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto e = cert::entry_from_line(line);
        if (!e) throw ParseError("malformed partial entry", line_no);
        auto anc = cert::ancestry(e->box, sc.M);
        if (!anc) throw ParseError("partial entry box not on the grid", line_no);
        auto it = key_to_index.find(anc->k);
        // keep only entries whose starting box is marked complete
        if (it != key_to_index.end() && completed.contains(it->second))
          recovered.push_back(std::move(*e));
      }
    }
  } else {
    std::filesystem::remove(partial_path);
    std::filesystem::remove(progress_path);
  }

  std::ofstream partial(partial_path, std::ios::app);
  if (!partial) throw Error("cannot open " + partial_path + " for writing");
  for (const cert::CertificateEntry& e : recovered) partial << cert::entry_to_line(e) << "\n";
  partial.flush();

  std::vector<UnresolvedBox> unresolved = recovered_unresolved;
  std::uint64_t since_checkpoint = 0;
  auto save_progress = [&]() {
    json j;
    j["M"] = sc.M;
    j["region"] = region_id;
    j["shard"] = {sc.shard.index, sc.shard.total};
    j["max_depth"] = sc.max_depth;
    j["seed"] = sc.seed;
    json ranges = json::array();
    for (const auto& [a, b] : completed.ranges) ranges.push_back({a, b});
    j["completed"] = ranges;
    j["longlist"] = longlist_to_json(longlist);
    json unr = json::array();
    for (const UnresolvedBox& u : unresolved) {
      json ju;
      std::istringstream fs(cfg::box_to_fields(u.box));
      std::vector<std::string> fields;
      std::string tok;
      while (fs >> tok) fields.push_back(tok);
      ju["box"] = fields;
      ju["reason"] = u.reason;
      unr.push_back(ju);
    }
    j["unresolved"] = unr;
    atomic_write(progress_path, j.dump());
  };

  const std::uint64_t resumed = completed.count();
  std::vector<bool> skip(plan.boxes.size(), false);
  for (std::size_t i = 0; i < plan.boxes.size(); ++i) skip[i] = completed.contains(i);

  auto on_box_done = [&](std::size_t i, const SearchResult& r) {
    for (const cert::CertificateEntry& e : r.entries) partial << cert::entry_to_line(e) << "\n";
    partial.flush();
    for (const UnresolvedBox& u : r.unresolved) unresolved.push_back(u);
    completed.add(i);
    if (++since_checkpoint >= 25) {
      since_checkpoint = 0;
      save_progress();
    }
  };

  SearchResult res = region_pass(plan, shortlist, longlist, sc, skip, on_box_done);
  for (cert::CertificateEntry& e : recovered) res.entries.push_back(std::move(e));
  res.unresolved = unresolved;
  sort_entries(res.entries);
  res.stats.seconds = sw.seconds();

  cert::CertificateFile file;
  file.header.M = sc.M;
  file.header.region = region_id;
  file.header.shard_index = sc.shard.index;
  file.header.shard_total = sc.shard.total;
  file.entries = res.entries;
  cert::write_certificates(file, out_path);
  std::filesystem::remove(partial_path);
  std::filesystem::remove(progress_path);

  RegionRunReport rep;
  rep.result = std::move(res);
  rep.resumed_boxes = resumed;
  rep.certificate_path = out_path;
  return rep;
}

}  // namespace cover14::search

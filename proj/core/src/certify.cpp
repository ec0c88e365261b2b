#include "cover14/certify.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace cover14::cert {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

constexpr const char* kCertMagic = "cover14-cert";
constexpr const char* kPairsMagic = "cover14-pairs";

}  // namespace

std::string entry_to_line(const CertificateEntry& e) {
  std::ostringstream os;
  os << "box: " << cfg::box_to_fields(e.box) << " | tau:";
  for (int f = 0; f < 6; ++f) os << " " << e.tau.edge_of_face[static_cast<size_t>(f)];
  os << " | witness:";
  for (const Rational& w : e.witness) os << " " << w.str_slash();
  return os.str();
}

std::optional<CertificateEntry> entry_from_line(const std::string& line) {
  const auto p1 = line.find(" | tau: ");
  const auto p2 = line.find(" | witness: ");
  if (line.rfind("box: ", 0) != 0 || p1 == std::string::npos || p2 == std::string::npos || p2 < p1)
    return std::nullopt;
  const auto box_fields = split_ws(line.substr(5, p1 - 5));
  const auto tau_fields = split_ws(line.substr(p1 + 8, p2 - (p1 + 8)));
  const auto wit_fields = split_ws(line.substr(p2 + 12));

  CertificateEntry e;
  auto box = cfg::box_from_fields(box_fields);
  if (!box) return std::nullopt;
  e.box = *box;

  if (tau_fields.size() != 6) return std::nullopt;
  for (int f = 0; f < 6; ++f) {
    const std::string& t = tau_fields[static_cast<size_t>(f)];
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    const int k = std::stoi(t);
    if (k < 0 || k >= cfg::kNumEdges) return std::nullopt;
    e.tau.edge_of_face[static_cast<size_t>(f)] = k;
  }
  if (!e.tau.injective()) return std::nullopt;

  if (wit_fields.size() != cover::CoverLayout::kNumVars) return std::nullopt;
  e.witness.reserve(wit_fields.size());
  for (const std::string& f : wit_fields) {
    auto r = Rational::parse_canonical(f);
    if (!r) return std::nullopt;
    e.witness.push_back(*r);
  }
  return e;
}

namespace {

std::string header_line(const CertificateHeader& h) {
  std::ostringstream os;
  os << kCertMagic << " " << h.version << " M=" << h.M << " region=";
  if (h.region)
    os << *h.region;
  else
    os << "-";
  os << " shard=" << h.shard_index << "/" << h.shard_total;
  return os.str();
}

CertificateHeader parse_header(const std::string& line) {
  std::istringstream is(line);
  std::string magic, mtok, rtok, stok;
  int version = 0;
  if (!(is >> magic >> version >> mtok >> rtok >> stok) || magic != kCertMagic)
    throw VersionMismatch("not a cover14 certificate file");
  if (version != 1) throw VersionMismatch("unsupported certificate version " + std::to_string(version));
  CertificateHeader h;
  h.version = version;
  if (mtok.rfind("M=", 0) != 0 || rtok.rfind("region=", 0) != 0 || stok.rfind("shard=", 0) != 0)
    throw ParseError("malformed certificate header", 1);
  h.M = std::stoi(mtok.substr(2));
  const std::string r = rtok.substr(7);
  if (r != "-") h.region = std::stoi(r);
  const std::string s = stok.substr(6);
  const auto slash = s.find('/');
  if (slash == std::string::npos) throw ParseError("malformed shard field", 1);
  h.shard_index = static_cast<unsigned>(std::stoul(s.substr(0, slash)));
  h.shard_total = static_cast<unsigned>(std::stoul(s.substr(slash + 1)));
  if (h.M < 1 || h.shard_total == 0 || h.shard_index >= h.shard_total)
    throw ParseError("invalid certificate header values", 1);
  return h;
}

}  // namespace

void write_certificates(const CertificateFile& file, const std::string& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw Error("cannot open " + path + " for writing");
  os << header_line(file.header) << "\n";
  for (const CertificateEntry& e : file.entries) os << entry_to_line(e) << "\n";
  os << "count " << file.entries.size() << "\n";
  if (!os.flush()) throw Error("write failure on " + path);
}

CertificateFile read_certificates(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path);
  std::string line;
  long line_no = 0;
  if (!std::getline(is, line)) throw ParseError("empty file", 1);
  ++line_no;
  CertificateFile file;
  file.header = parse_header(line);

  bool saw_count = false;
  std::uint64_t declared = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.rfind("count ", 0) == 0) {
      declared = std::stoull(line.substr(6));
      saw_count = true;
      break;
    }
    auto e = entry_from_line(line);
    if (!e) throw ParseError("malformed certificate entry", line_no);
    if (!ancestry(e->box, file.header.M))
      throw ParseError("box is not a dyadic descendant of an admissible starting box", line_no);
    file.entries.push_back(std::move(*e));
  }
  if (!saw_count) throw ParseError("missing trailing count line", line_no + 1);
  if (declared != file.entries.size())
    throw ParseError("entry count mismatch: trailer says " + std::to_string(declared) +
                         ", file has " + std::to_string(file.entries.size()),
                     line_no);
  return file;
}

std::optional<Ancestry> ancestry(const cfg::Box6& box, int M) {
  const Rational h(1, 2L * M);
  Ancestry a{};
  a.depth = 0;
  for (int i = 0; i < 6; ++i) {
    const Rational w = box.width(i);
    if (w.sign() <= 0) return std::nullopt;
    // w must be h / 2^t
    Rational ratio = h / w;
    int t = 0;
    while (ratio > 1) {
      const Rational halved = ratio / 2;
      ratio = halved;
      if (++t > 62) return std::nullopt;
    }
    if (!(ratio == 1)) return std::nullopt;
    a.depth += t;
    // lo must be a multiple of w
    const Rational q = box.lo[static_cast<size_t>(i)] / w;
    if (!(Rational(q.floor_long()) == q)) return std::nullopt;
    a.k[static_cast<size_t>(i)] = (box.lo[static_cast<size_t>(i)] / h).floor_long();
  }
  // containment in the starting box and admissibility of its indices
  for (int i = 0; i < 6; ++i) {
    const long cap = i < 3 ? M - 1 : 2L * M - 1;
    const long k = a.k[static_cast<size_t>(i)];
    if (k < 0 || k > cap) return std::nullopt;
    if (box.hi[static_cast<size_t>(i)] > Rational(k + 1) * h) return std::nullopt;
  }
  if (!(a.k[1] + a.k[3] <= a.k[0] + a.k[5] + 1 && a.k[0] + a.k[5] <= a.k[2] + a.k[4] + 1))
    return std::nullopt;
  return a;
}

bool check_entry(const CertificateEntry& e, int M) {
  if (!ancestry(e.box, M)) return false;
  if (!e.tau.injective() || e.witness.size() != cover::CoverLayout::kNumVars) return false;
  geo::HPolytope q;
  try {
    q = cfg::q_polytope(e.box);
  } catch (const DegenerateHull& ex) {
    throw BoxGeometryError(std::string("check_entry: ") + ex.what());
  } catch (const EmptyIntersection& ex) {
    throw BoxGeometryError(std::string("check_entry: ") + ex.what());
  }
  const lp::LinearSystem s = cover::build_lp(e.box, e.tau, q);
  if (!lp::check_witness(s, e.witness)) return false;
  return cover::witness_covers(e.box, e.tau, q, e.witness);
}

std::vector<cfg::Box6> collect_selection(const GridSelection& sel) {
  if (sel.shard_total == 0 || sel.shard_index >= sel.shard_total)
    throw std::invalid_argument("collect_selection: bad shard");
  std::vector<cfg::Box6> out;
  std::array<std::uint64_t, cfg::kNumRegions> region_seq{};
  cfg::BoxStream stream(sel.M);
  while (auto k = stream.next_k()) {
    const int reg = cfg::region_of_k(*k, sel.M);
    const std::uint64_t seq = region_seq[static_cast<size_t>(reg)]++;
    if (sel.region && reg != *sel.region) continue;
    if (seq % sel.shard_total != sel.shard_index) continue;
    out.push_back(cfg::BoxStream::materialize(sel.M, *k));
  }
  return out;
}

namespace {

struct TilingGroup {
  cfg::Box6 start;
  std::vector<const CertificateEntry*> leaves;
};

// Recursive reconstruction of the bisection tree: the leaves must partition
// `box` through exact midpoint splits along the lowest-index widest axis.
bool covers_exactly(const cfg::Box6& box, std::vector<const cfg::Box6*> leaves, int depth,
                    std::string* why) {
  if (leaves.empty()) {
    *why = "gap: no leaf inside " + cfg::box_to_fields(box);
    return false;
  }
  if (leaves.size() == 1) {
    if (*leaves[0] == box) return true;
  }
  if (depth > 80) {
    *why = "bisection tree deeper than 80 under " + cfg::box_to_fields(box);
    return false;
  }
  // split rule shared with the search: lowest index among the widest axes
  int axis = 0;
  for (int i = 1; i < 6; ++i)
    if (box.width(i) > box.width(axis)) axis = i;
  const Rational mid = (box.lo[static_cast<size_t>(axis)] + box.hi[static_cast<size_t>(axis)]) / 2;
  cfg::Box6 left = box, right = box;
  left.hi[static_cast<size_t>(axis)] = mid;
  right.lo[static_cast<size_t>(axis)] = mid;
  std::vector<const cfg::Box6*> lo_leaves, hi_leaves;
  for (const cfg::Box6* l : leaves) {
    if (l->hi[static_cast<size_t>(axis)] <= mid)
      lo_leaves.push_back(l);
    else if (l->lo[static_cast<size_t>(axis)] >= mid)
      hi_leaves.push_back(l);
    else {
      *why = "leaf " + cfg::box_to_fields(*l) + " straddles the midpoint split of " +
             cfg::box_to_fields(box);
      return false;
    }
  }
  return covers_exactly(left, std::move(lo_leaves), depth + 1, why) &&
         covers_exactly(right, std::move(hi_leaves), depth + 1, why);
}

}  // namespace

TilingReport check_tiling(std::span<const CertificateEntry> entries, const GridSelection& sel) {
  TilingReport rep;
  std::map<std::array<long, 6>, TilingGroup> groups;
  const Rational h(1, 2L * sel.M);

  for (const CertificateEntry& e : entries) {
    auto a = ancestry(e.box, sel.M);
    if (!a) {
      rep.violation = "non-dyadic box " + cfg::box_to_fields(e.box);
      return rep;
    }
    auto& g = groups[a->k];
    if (g.leaves.empty()) {
      for (int i = 0; i < 6; ++i) {
        g.start.lo[static_cast<size_t>(i)] = Rational(a->k[static_cast<size_t>(i)]) * h;
        g.start.hi[static_cast<size_t>(i)] = Rational(a->k[static_cast<size_t>(i)] + 1) * h;
      }
    }
    g.leaves.push_back(&e);
  }

  const std::vector<cfg::Box6> expected = collect_selection(sel);
  rep.starting_boxes = expected.size();
  rep.leaves = entries.size();

  std::set<std::array<long, 6>> expected_keys;
  for (const cfg::Box6& b : expected) {
    std::array<long, 6> k{};
    for (int i = 0; i < 6; ++i) k[static_cast<size_t>(i)] = (b.lo[static_cast<size_t>(i)] / h).floor_long();
    expected_keys.insert(k);
    if (!groups.count(k)) {
      rep.violation = "missing starting box " + cfg::box_to_fields(b);
      return rep;
    }
  }
  for (const auto& [k, g] : groups) {
    if (!expected_keys.count(k)) {
      rep.violation = "foreign starting box " + cfg::box_to_fields(g.start);
      return rep;
    }
  }

  for (const auto& [k, g] : groups) {
    // exact volume first: cheap and catches duplicates/missing leaves early
    Rational vol;
    std::vector<const cfg::Box6*> leaves;
    leaves.reserve(g.leaves.size());
    for (const CertificateEntry* e : g.leaves) {
      vol += e->box.volume();
      leaves.push_back(&e->box);
    }
    if (!(vol == g.start.volume())) {
      rep.violation = "leaf volumes sum to " + vol.str() + " instead of " + g.start.volume().str() +
                      " for starting box " + cfg::box_to_fields(g.start);
      return rep;
    }
    std::string why;
    if (!covers_exactly(g.start, std::move(leaves), 0, &why)) {
      rep.violation = why;
      return rep;
    }
  }
  rep.ok = true;
  return rep;
}

Stats stats(std::span<const CertificateEntry> entries, int M) {
  Stats st;
  const Rational h(1, 2L * M);
  std::set<std::array<long, 6>> starts;
  for (const CertificateEntry& e : entries) {
    ++st.entries;
    auto a = ancestry(e.box, M);
    if (!a) continue;  // foreign boxes are the tiling audit's business
    starts.insert(a->k);
    st.max_depth = std::max(st.max_depth, a->depth);
    ++st.depth_histogram[a->depth];
    cfg::Box6 start;
    for (int i = 0; i < 6; ++i) {
      start.lo[static_cast<size_t>(i)] = Rational(a->k[static_cast<size_t>(i)]) * h;
      start.hi[static_cast<size_t>(i)] = Rational(a->k[static_cast<size_t>(i)] + 1) * h;
    }
    ++st.per_region[cfg::region_of(start)];
    std::array<int, 6> tkey{};
    for (int f = 0; f < 6; ++f) tkey[static_cast<size_t>(f)] = e.tau.edge_of_face[static_cast<size_t>(f)];
    ++st.tau_usage[tkey];
  }
  st.starting_boxes = starts.size();
  return st;
}

// --- (box, tau) pair files and the released-data importer -------------------

void write_pairs(std::span<const Pair> pairs, int M, const std::string& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw Error("cannot open " + path + " for writing");
  os << kPairsMagic << " 1 M=" << M << "\n";
  for (const Pair& p : pairs) {
    os << "box: " << cfg::box_to_fields(p.box) << " | tau:";
    for (int f = 0; f < 6; ++f) os << " " << p.tau.edge_of_face[static_cast<size_t>(f)];
    os << "\n";
  }
  os << "count " << pairs.size() << "\n";
  if (!os.flush()) throw Error("write failure on " + path);
}

std::vector<Pair> read_pairs(const std::string& path, int* M_out) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path);
  std::string line;
  long line_no = 1;
  if (!std::getline(is, line)) throw ParseError("empty file", 1);
  std::istringstream hs(line);
  std::string magic, mtok;
  int version = 0;
  if (!(hs >> magic >> version >> mtok) || magic != kPairsMagic)
    throw VersionMismatch("not a cover14 pairs file");
  if (version != 1) throw VersionMismatch("unsupported pairs version");
  if (mtok.rfind("M=", 0) != 0) throw ParseError("malformed pairs header", 1);
  if (M_out) *M_out = std::stoi(mtok.substr(2));

  std::vector<Pair> out;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.rfind("count ", 0) == 0) {
      if (std::stoull(line.substr(6)) != out.size()) throw ParseError("pair count mismatch", line_no);
      return out;
    }
    const auto p1 = line.find(" | tau: ");
    if (line.rfind("box: ", 0) != 0 || p1 == std::string::npos)
      throw ParseError("malformed pair line", line_no);
    auto box = cfg::box_from_fields(split_ws(line.substr(5, p1 - 5)));
    if (!box) throw ParseError("malformed box fields", line_no);
    const auto tau_fields = split_ws(line.substr(p1 + 8));
    if (tau_fields.size() != 6) throw ParseError("expected 6 tau fields", line_no);
    Pair p;
    p.box = *box;
    for (int f = 0; f < 6; ++f) p.tau.edge_of_face[static_cast<size_t>(f)] = std::stoi(tau_fields[static_cast<size_t>(f)]);
    if (!p.tau.injective()) throw ParseError("tau not injective", line_no);
    out.push_back(std::move(p));
  }
  throw ParseError("missing trailing count line", line_no + 1);
}

namespace {

// Exact rational from a decimal literal like "0.05"; empty when malformed.
std::optional<Rational> rational_from_token(std::string tok) {
  if (auto r = Rational::parse(tok)) return r;
  const auto dot = tok.find('.');
  if (dot == std::string::npos) return std::nullopt;
  const std::string head = tok.substr(0, dot), tail = tok.substr(dot + 1);
  if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
  auto whole = Rational::parse(head.empty() || head == "-" || head == "+" ? head + "0" : head);
  if (!whole) return std::nullopt;
  Rational den = 1;
  for (std::size_t i = 0; i < tail.size(); ++i) den *= 10;
  auto frac_num = Rational::parse(tail);
  if (!frac_num) return std::nullopt;
  const Rational frac = *frac_num / den;
  const bool neg = !head.empty() && head[0] == '-';
  return neg ? *whole - frac : *whole + frac;
}

}  // namespace

std::vector<Pair> import_released(const std::string& path, std::string* notes) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path);
  std::ostringstream log;
  std::vector<Pair> out;
  std::vector<std::array<int, 6>> raw_taus;
  bool saw_twelve = false, saw_zero = false;
  std::string line;
  long line_no = 0, skipped = 0;
  while (std::getline(is, line)) {
    ++line_no;
    for (char& c : line)
      if (c == ',' || c == '[' || c == ']' || c == '(' || c == ')' || c == ';' || c == '|') c = ' ';
    const auto toks = split_ws(line);
    if (toks.empty() || toks[0].rfind("#", 0) == 0) continue;
    if (toks.size() != 18) {
      ++skipped;
      continue;
    }
    Pair p;
    bool ok = true;
    // accepted layout: lo1..lo6 hi1..hi6 tau1..tau6
    for (int i = 0; i < 12 && ok; ++i) {
      auto r = rational_from_token(toks[static_cast<size_t>(i)]);
      if (!r)
        ok = false;
      else
        (i < 6 ? p.box.lo[static_cast<size_t>(i)] : p.box.hi[static_cast<size_t>(i - 6)]) = *r;
    }
    std::array<int, 6> tau{};
    for (int f = 0; f < 6 && ok; ++f) {
      const std::string& t = toks[static_cast<size_t>(12 + f)];
      if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
        ok = false;
      else
        tau[static_cast<size_t>(f)] = std::stoi(t);
    }
    if (!ok) {
      ++skipped;
      continue;
    }
    for (int f = 0; f < 6; ++f) {
      saw_twelve = saw_twelve || tau[static_cast<size_t>(f)] == 12;
      saw_zero = saw_zero || tau[static_cast<size_t>(f)] == 0;
    }
    raw_taus.push_back(tau);
    out.push_back(std::move(p));
  }
  const int shift = saw_twelve && !saw_zero ? 1 : 0;
  if (shift) log << "edge indices interpreted as 1-based (a 12 appears, no 0)\n";
  std::vector<Pair> kept;
  for (std::size_t i = 0; i < out.size(); ++i) {
    bool ok = true;
    for (int f = 0; f < 6; ++f) {
      const int k = raw_taus[i][static_cast<size_t>(f)] - shift;
      if (k < 0 || k >= cfg::kNumEdges) ok = false;
      out[i].tau.edge_of_face[static_cast<size_t>(f)] = k;
    }
    if (ok && out[i].tau.injective())
      kept.push_back(std::move(out[i]));
    else
      ++skipped;
  }
  log << "imported " << kept.size() << " pairs, skipped " << skipped << " lines";
  if (notes) *notes = log.str();
  return kept;
}

}  // namespace cover14::cert

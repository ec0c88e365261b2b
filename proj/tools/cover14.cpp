// Command line front end of the covering verification pipeline: box grid
// enumeration, subdivision search, single-system verification, certificate
// re-checking, property suites, and statistics.

#include <atomic>
#include <filesystem>
#include <iostream>
#include <mutex>

#include <CLI11.hpp>

#include "cover14/certify.hpp"
#include "cover14/config_space.hpp"
#include "cover14/cover_system.hpp"
#include "cover14/props.hpp"
#include "cover14/search.hpp"
#include "cover14/util.hpp"

namespace {

using namespace cover14;

constexpr int kExitPass = 0, kExitFail = 1, kExitIo = 2;

struct ShardOpt {
  unsigned index = 0, total = 1;
};

ShardOpt parse_shard(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) throw CLI::ValidationError("--shard expects i/n");
  ShardOpt out;
  out.index = static_cast<unsigned>(std::stoul(s.substr(0, slash)));
  out.total = static_cast<unsigned>(std::stoul(s.substr(slash + 1)));
  if (out.total == 0 || out.index >= out.total) throw CLI::ValidationError("--shard requires i < n");
  return out;
}

cfg::Box6 parse_box_fields(const std::vector<std::string>& fields) {
  std::vector<std::string> canon;
  for (const std::string& f : fields) {
    auto r = Rational::parse(f);
    if (!r) throw CLI::ValidationError("--box: malformed rational '" + f + "'");
    canon.push_back(r->str_slash());
  }
  auto b = cfg::box_from_fields(canon);
  if (!b) throw CLI::ValidationError("--box: expected lo1..lo6 hi1..hi6 with lo < hi inside [0,1]");
  return *b;
}

cover::TauMap parse_tau_fields(const std::vector<int>& fields) {
  cover::TauMap tau{};
  for (int f = 0; f < 6; ++f) {
    if (fields[static_cast<size_t>(f)] < 0 || fields[static_cast<size_t>(f)] >= cfg::kNumEdges)
      throw CLI::ValidationError("--tau: edge index out of range");
    tau.edge_of_face[static_cast<size_t>(f)] = fields[static_cast<size_t>(f)];
  }
  if (!tau.injective()) throw CLI::ValidationError("--tau: map must be injective");
  return tau;
}

int cmd_enumerate(int M, bool count_only) {
  if (count_only) {
    std::cout << cfg::count_boxes(M) << "\n";
    return kExitPass;
  }
  cfg::BoxStream stream(M);
  while (auto b = stream.next()) std::cout << cfg::box_to_fields(*b) << "\n";
  return kExitPass;
}

search::ShortList resolve_shortlist(const std::string& path, int bootstrap_samples,
                                    std::uint64_t seed, int M, bool prescreen, unsigned workers) {
  if (!path.empty()) return search::load_shortlist(path);
  std::cerr << "bootstrapping short list from " << bootstrap_samples << " sample boxes (seed "
            << seed << ")\n";
  auto list = search::bootstrap_shortlist(bootstrap_samples, seed, M, prescreen, workers);
  std::cerr << "short list ready\n";
  return list;
}

void print_search_summary(const search::SearchResult& res) {
  std::cerr << "entries " << res.entries.size() << ", unresolved " << res.unresolved.size()
            << ", taus tried " << res.stats.taus_tried << ", exact solves "
            << res.stats.exact_solves << ", prescreen rejections "
            << res.stats.prescreen_rejections << ", max depth " << res.stats.max_depth_seen
            << ", " << res.stats.seconds << " s\n";
  for (const auto& u : res.unresolved)
    std::cerr << "UNRESOLVED " << cfg::box_to_fields(u.box) << " (" << u.reason << ")\n";
}

int run_search(int M, int region, const std::vector<std::string>& box_fields, ShardOpt shard,
               unsigned workers, std::uint64_t seed, bool no_prescreen, int max_depth,
               std::string out, bool resume, const std::string& shortlist_path,
               int bootstrap_samples) {
  search::SearchConfig sc;
  sc.M = M;
  sc.max_depth = max_depth;
  sc.prescreen = !no_prescreen;
  sc.seed = seed;
  sc.shard = {shard.index, shard.total};
  sc.workers = workers;

  if (!box_fields.empty()) {
    const cfg::Box6 box = parse_box_fields(box_fields);
    auto shortlist = resolve_shortlist(shortlist_path, bootstrap_samples, seed, M, sc.prescreen, workers);
    auto longlist = search::full_long_list();
    auto res = search::search_box(box, shortlist, longlist, sc);
    if (out.empty()) out = "custom_box.cert";
    cert::CertificateFile file;
    file.header.M = M;
    file.header.region = std::nullopt;
    file.entries = res.entries;
    cert::write_certificates(file, out);
    std::cerr << "wrote " << out << "\n";
    print_search_summary(res);
    return res.unresolved.empty() ? kExitPass : kExitFail;
  }

  if (region < 0 || region >= cfg::kNumRegions)
    throw CLI::ValidationError("--region must be in 0..511 (or use --box)");
  auto shortlist = resolve_shortlist(shortlist_path, bootstrap_samples, seed, M, sc.prescreen, workers);
  if (out.empty())
    out = "region" + std::to_string(region) + "_s" + std::to_string(shard.index) + "of" +
          std::to_string(shard.total) + ".cert";
  auto rep = search::run_region_checkpointed(region, shortlist, sc, out, resume);
  std::cerr << "wrote " << rep.certificate_path;
  if (rep.resumed_boxes) std::cerr << " (resumed past " << rep.resumed_boxes << " boxes)";
  std::cerr << "\n";
  print_search_summary(rep.result);
  return rep.result.unresolved.empty() ? kExitPass : kExitFail;
}

int cmd_verify(int M, const std::vector<std::string>& box_fields, const std::vector<int>& tau_fields,
               const std::string& pairs_path, bool no_prescreen, bool dump_witness) {
  const cover::VerifyOptions opts{.prescreen = !no_prescreen};
  std::vector<cert::Pair> pairs;
  if (!pairs_path.empty()) {
    pairs = cert::read_pairs(pairs_path, &M);
  } else {
    if (box_fields.empty() || tau_fields.empty())
      throw CLI::ValidationError("verify needs --box and --tau, or --pairs");
    pairs.push_back({parse_box_fields(box_fields), parse_tau_fields(tau_fields)});
  }
  std::uint64_t feasible = 0;
  for (const cert::Pair& p : pairs) {
    util::Stopwatch sw;
    try {
      const auto verdict = cover::verify_box(p.box, p.tau, opts);
      if (verdict.feasible) {
        ++feasible;
        std::cout << "FEASIBLE " << cfg::box_to_fields(p.box) << " (" << sw.seconds() << " s)\n";
        if (dump_witness) {
          std::cout << "witness:";
          for (const Rational& w : verdict.witness) std::cout << " " << w.str_slash();
          std::cout << "\n";
        }
      } else {
        std::cout << "INFEASIBLE " << cfg::box_to_fields(p.box)
                  << (verdict.prescreen_rejected ? " (float prescreen)" : " (exact)") << "\n";
      }
    } catch (const BoxGeometryError& e) {
      std::cout << "GEOMETRY-ERROR " << cfg::box_to_fields(p.box) << ": " << e.what() << "\n";
    }
  }
  std::cout << feasible << "/" << pairs.size() << " feasible\n";
  return feasible == pairs.size() ? kExitPass : kExitFail;
}

int cmd_check(const std::vector<std::string>& paths, bool tiling, unsigned workers) {
  bool all_ok = true;
  for (const std::string& path : paths) {
    const cert::CertificateFile file = cert::read_certificates(path);
    std::atomic<std::uint64_t> bad{0};
    std::mutex mu;
    std::string first_bad;
    util::parallel_for(file.entries.size(), workers, [&](std::size_t i) {
      bool ok = false;
      std::string reason;
      try {
        ok = cert::check_entry(file.entries[i], file.header.M);
        if (!ok) reason = "witness or covering re-check failed";
      } catch (const BoxGeometryError& e) {
        reason = e.what();
      }
      if (!ok) {
        ++bad;
        std::scoped_lock lk(mu);
        if (first_bad.empty())
          first_bad = "entry " + std::to_string(i + 1) + ": " + reason;
      }
    });
    bool ok = bad == 0;
    std::string tiling_note;
    if (tiling) {
      cert::GridSelection sel{file.header.M, file.header.region, file.header.shard_index,
                              file.header.shard_total};
      const auto rep = cert::check_tiling(file.entries, sel);
      if (!rep.ok) {
        ok = false;
        tiling_note = " tiling: " + rep.violation;
      } else {
        tiling_note = " tiling: " + std::to_string(rep.starting_boxes) + " starting boxes, " +
                      std::to_string(rep.leaves) + " leaves";
      }
    }
    std::cout << (ok ? "PASS " : "FAIL ") << path << " (" << file.entries.size() << " entries";
    if (bad > 0) std::cout << ", " << bad << " bad, first: " << first_bad;
    std::cout << ")" << tiling_note << "\n";
    all_ok = all_ok && ok;
  }
  return all_ok ? kExitPass : kExitFail;
}

int cmd_props(const std::string& suite, int trials, std::uint64_t seed, unsigned workers) {
  std::vector<std::string> names = suite.empty() ? props::suite_names() : std::vector<std::string>{suite};
  bool all_ok = true;
  for (const std::string& name : names) {
    const auto r = props::run_suite(name, trials, seed, workers);
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.trials - r.failures << "/"
              << r.trials << " ok";
    if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
    std::cout << " [" << r.seconds << " s]\n";
    all_ok = all_ok && r.pass;
  }
  return all_ok ? kExitPass : kExitFail;
}

int cmd_stats(const std::vector<std::string>& paths) {
  std::vector<cert::CertificateEntry> all;
  int M = -1;
  for (const std::string& path : paths) {
    const auto file = cert::read_certificates(path);
    if (M < 0) M = file.header.M;
    if (M != file.header.M) throw Error("stats: mixed M across files");
    for (const auto& e : file.entries) all.push_back(e);
  }
  const auto st = cert::stats(all, M);
  std::cout << "entries " << st.entries << "\n"
            << "starting boxes " << st.starting_boxes << "\n"
            << "max depth " << st.max_depth << "\n";
  std::cout << "depth histogram:";
  for (const auto& [d, n] : st.depth_histogram) std::cout << " " << d << ":" << n;
  std::cout << "\nregions touched " << st.per_region.size() << "\n";
  std::cout << "distinct taus " << st.tau_usage.size() << "\n";
  std::vector<std::pair<std::uint64_t, std::array<int, 6>>> top;
  for (const auto& [t, n] : st.tau_usage) top.push_back({n, t});
  std::sort(top.rbegin(), top.rend());
  std::cout << "top taus:\n";
  for (std::size_t i = 0; i < top.size() && i < 16; ++i) {
    std::cout << "  ";
    for (int f = 0; f < 6; ++f) std::cout << top[i].second[static_cast<size_t>(f)] << (f < 5 ? " " : "");
    std::cout << "  x" << top[i].first << "\n";
  }
  return kExitPass;
}

int cmd_import(const std::string& input, const std::string& out, int M) {
  std::string notes;
  const auto pairs = cert::import_released(input, &notes);
  std::cerr << notes << "\n";
  if (pairs.empty()) {
    std::cerr << "nothing imported\n";
    return kExitFail;
  }
  cert::write_pairs(pairs, M, out);
  std::cerr << "wrote " << out << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification pipeline for covering three-dimensional convex bodies by 14 smaller homothetic copies"};
  app.require_subcommand(1);

  int M = 10;
  unsigned workers = 0;
  std::uint64_t seed = 0;
  app.add_option("--M", M, "grid parameter M (boxes have side 1/(2M))")->capture_default_str();
  app.add_option("--workers", workers, "worker threads (0: COVER14_WORKERS or hardware)");
  app.add_option("--seed", seed, "seed for all randomized components")->capture_default_str();

  auto* enumerate = app.add_subcommand("enumerate", "stream the U_2M^D grid boxes");
  bool count_only = false;
  enumerate->add_flag("--count-only", count_only, "print only the number of boxes");

  auto* search_cmd = app.add_subcommand("search", "subdivision search producing certificates");
  int region = -1;
  std::string shard_str = "0/1", out_path, shortlist_path;
  std::vector<std::string> box_fields;
  bool no_prescreen = false, resume = false;
  int max_depth = 12, bootstrap_samples = 12;
  search_cmd->add_option("--region", region, "region id 0..511");
  search_cmd->add_option("--box", box_fields, "12 rationals lo1..lo6 hi1..hi6: search one custom box")->expected(12);
  search_cmd->add_option("--shard", shard_str, "i/n: process every n-th starting box")->capture_default_str();
  search_cmd->add_flag("--no-prescreen", no_prescreen, "skip the floating-point screen");
  search_cmd->add_option("--max-depth", max_depth, "subdivision depth limit")->capture_default_str();
  search_cmd->add_option("--out", out_path, "output certificate path");
  search_cmd->add_flag("--resume", resume, "continue from checkpoint files");
  search_cmd->add_option("--shortlist", shortlist_path, "short-list file (6 edge indices per line)");
  search_cmd->add_option("--bootstrap-samples", bootstrap_samples,
                         "sample boxes for short-list bootstrap when no file is given")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "feasibility of single (box, tau) systems");
  std::vector<std::string> vbox_fields;
  std::vector<int> vtau_fields;
  std::string pairs_path;
  bool dump_witness = false, vno_prescreen = false;
  verify->add_option("--box", vbox_fields, "12 rationals lo1..lo6 hi1..hi6")->expected(12);
  verify->add_option("--tau", vtau_fields, "6 edge indices in face order")->expected(6);
  verify->add_option("--pairs", pairs_path, "pairs file to verify in bulk");
  verify->add_flag("--no-prescreen", vno_prescreen, "skip the floating-point screen");
  verify->add_flag("--dump-witness", dump_witness, "print the exact witness");

  auto* check = app.add_subcommand("check", "re-verify certificate files");
  std::vector<std::string> check_paths;
  bool tiling = false;
  check->add_option("paths", check_paths, "certificate files")->required()->expected(-1);
  check->add_flag("--tiling", tiling, "also audit the starting-box tiling");

  auto* props_cmd = app.add_subcommand("props", "property suites");
  std::string suite;
  int trials = 100;
  props_cmd->add_option("--suite", suite, "run one suite (default: all)");
  props_cmd->add_option("--trials", trials, "samples per randomized suite")->capture_default_str();

  auto* stats_cmd = app.add_subcommand("stats", "summarize certificate files");
  std::vector<std::string> stats_paths;
  stats_cmd->add_option("paths", stats_paths, "certificate files")->required()->expected(-1);

  auto* import_cmd = app.add_subcommand("import-released", "convert an external (box, tau) listing to a pairs file");
  std::string import_in, import_out = "imported_pairs.txt";
  import_cmd->add_option("input", import_in, "published listing")->required();
  import_cmd->add_option("--out", import_out, "pairs file to write")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*enumerate) return cmd_enumerate(M, count_only);
    if (*search_cmd)
      return run_search(M, region, box_fields, parse_shard(shard_str), workers, seed, no_prescreen,
                        max_depth, out_path, resume, shortlist_path, bootstrap_samples);
    if (*verify) return cmd_verify(M, vbox_fields, vtau_fields, pairs_path, vno_prescreen, dump_witness);
    if (*check) return cmd_check(check_paths, tiling, workers);
    if (*props_cmd) return cmd_props(suite, trials, seed, workers);
    if (*stats_cmd) return cmd_stats(stats_paths);
    if (*import_cmd) return cmd_import(import_in, import_out, M);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitIo;
  } catch (const VersionMismatch& e) {
    std::cerr << "version mismatch: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitIo;
}

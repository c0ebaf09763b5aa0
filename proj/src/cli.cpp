#include "cubepack/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cubepack/canonical.hpp"
#include "cubepack/census.hpp"
#include "cubepack/constructions.hpp"
#include "cubepack/extension.hpp"
#include "cubepack/io.hpp"
#include "cubepack/montecarlo.hpp"

#ifndef CUBEPACK_DEFAULT_FIXTURE_DIR
#define CUBEPACK_DEFAULT_FIXTURE_DIR "fixtures"
#endif

namespace cubepack::cli {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("CUBEPACK_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t > 0) return t;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("CUBEPACK_THREADS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

std::string fixture_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("CUBEPACK_FIXTURES")) return env;
  return CUBEPACK_DEFAULT_FIXTURE_DIR;
}

Space space_flag(const std::string& s) {
  if (s != "torus" && s != "cube") throw UsageError("--space must be torus or cube");
  return parse_space(s);
}

json record_json(const CensusRecord& r) {
  json j{{"key", short_digest(r.key)}, {"m", r.m},
         {"nparams", r.nparams},       {"prob", to_string(r.prob)},
         {"extensible", r.extensible}, {"tiling", r.tiling},
         {"aut", r.aut.get_str()},     {"rep", to_json(r.rep)}};
  if (!r.paths.empty()) {
    json paths = json::array();
    for (const auto& p : r.paths) paths.push_back({{"newparams", p.newparams}, {"prob", to_string(p.prob)}});
    j["paths"] = std::move(paths);
  }
  return j;
}

void write_csv(const std::vector<CensusRecord>& records, std::ostream& out) {
  out << "# schema_version=1\n";
  out << "key,m,nparams,prob,extensible,aut\n";
  for (const auto& r : records) {
    out << short_digest(r.key) << ',' << r.m << ',' << r.nparams << ',' << to_string(r.prob) << ','
        << (r.extensible ? "true" : "false") << ',' << r.aut.get_str() << '\n';
  }
}

struct Summary {
  int tilings = 0, packings = 0;
  Rational expected;
  int f = -1;
};

Summary summarize(const Census& c) {
  Summary s;
  for (const auto& r : c.records) (r.tiling ? s.tilings : s.packings)++;
  s.expected = expected_cubes(c.records);
  s.f = min_nonextensible(c.records).f;
  return s;
}

int cmd_enumerate(const std::map<std::string, std::string>& o, const std::map<std::string, bool>& flags, int dim,
                  long N, int threads, std::size_t max_frontier, std::ostream& out, std::ostream& err) {
  const Space space = space_flag(o.at("space"));
  const std::string regime = o.at("regime");
  const std::string format = o.at("format");
  if (regime != "limit" && regime != "finite") throw UsageError("--regime must be limit or finite");
  if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
  if (dim < 1) throw UsageError("--dim must be at least 1");
  if (regime == "finite" && N < 1) throw UsageError("--regime finite needs --N >= 1");
  if (regime == "limit" && space == Space::cube) {
    throw UsageError("the cube-space limit regime is the order-0 part of 'expand'");
  }
  if (flags.at("paths") && regime != "limit") throw UsageError("--paths applies to the limit regime");
  if (flags.at("list-zero-prob") && regime != "limit") throw UsageError("--list-zero-prob applies to the limit regime");

  CensusOptions opt;
  opt.threads = threads;
  opt.allow_large = flags.at("long-running");
  opt.checkpoint = o.at("checkpoint");
  opt.max_frontier = max_frontier;
  if (flags.at("progress")) {
    opt.progress = [&err](int level, std::size_t frontier, std::size_t terminals) {
      err << "level " << level << ": " << frontier << " types, " << terminals << " terminal\n";
    };
  }

  Census c;
  if (regime == "finite") {
    c = finite_N_census(dim, N, space, opt);
  } else if (flags.at("list-zero-prob")) {
    c = torus_all_types(dim, opt);
  } else {
    c = torus_limit_census(dim, opt, flags.at("paths"));
  }

  long histograms = 0, violations = 0;
  std::vector<std::string> messages;
  for (const auto& r : c.records) {
    if (regime == "limit") {
      for (auto& m : terminal_violations(r, dim)) messages.push_back(std::move(m));
    }
    for (const auto& p : r.paths) {
      ++histograms;
      for (auto& m : path_violations(r, p, dim)) messages.push_back(std::move(m));
    }
  }
  violations = static_cast<long>(messages.size());
  for (const auto& m : messages) err << "invariant violated: " << m << '\n';

  const Summary s = summarize(c);
  const Rational normalized = s.expected / Rational(BigInt(1) << dim);
  if (format == "csv") {
    write_csv(c.records, out);
    out << "# types=" << c.records.size() << " tilings=" << s.tilings << " nonextensible=" << s.packings << '\n';
    out << "# expected=" << to_string(s.expected) << " normalized=" << to_string(normalized) << '\n';
    out << "# f=" << s.f << '\n';
    if (flags.at("paths")) out << "# path_histograms=" << histograms << " violations=" << violations << '\n';
  } else {
    json j{{"schema_version", 1},
           {"space", to_string(space)},
           {"dim", dim},
           {"regime", regime},
           {"types", c.records.size()},
           {"tilings", s.tilings},
           {"nonextensible", s.packings},
           {"expected", to_string(s.expected)},
           {"normalized", to_string(normalized)},
           {"f", s.f},
           {"level_sizes", c.level_sizes},
           {"violations", violations}};
    if (regime == "finite") j["N"] = N;
    json rows = json::array();
    for (const auto& r : c.records) rows.push_back(record_json(r));
    j["records"] = std::move(rows);
    out << j.dump(1) << '\n';
  }
  return violations ? kFailure : kOk;
}

int cmd_expand(int order, const std::string& dims_text, bool long_running, int threads, const std::string& format,
               std::ostream& out) {
  if (format != "text" && format != "json") throw UsageError("--format must be text or json");
  if (order < 0) throw UsageError("--order must be non-negative");
  std::vector<int> dims = dims_text.empty() ? std::vector<int>{} : parse_dims(dims_text);
  if (dims.empty()) {
    for (int n = 1; n <= order + 2; ++n) dims.push_back(n);
  }
  if (dims.size() < static_cast<std::size_t>(order) + 1) {
    throw UsageError("--dims needs at least order+1 dimensions");
  }
  CensusOptions opt;
  opt.threads = threads;
  opt.allow_large = long_running;
  const auto C = interpolate_Ck(order, dims, opt);
  const int top = *std::max_element(dims.begin(), dims.end());
  opt.want_aut = false;
  const Expansion e = cube_expansion(top, order, opt);
  if (format == "text") {
    for (int k = 0; k <= order; ++k) out << "C_" << k << " = " << C[static_cast<std::size_t>(k)].to_string('n') << '\n';
    for (int k = 0; k <= order; ++k) {
      out << "#types(order<=" << k << ", n=" << top << ") = " << e.types_up_to[static_cast<std::size_t>(k)] << '\n';
    }
  } else {
    json j{{"schema_version", 1}, {"order", order}, {"dims", dims}, {"types_dim", top}, {"types_up_to", e.types_up_to}};
    json cs = json::array();
    for (const auto& p : C) {
      json coeffs = json::array();
      for (const auto& c : p.coeffs()) coeffs.push_back(to_string(c));
      cs.push_back({{"poly", p.to_string('n')}, {"coeffs", coeffs}});
    }
    j["C"] = std::move(cs);
    out << j.dump(1) << '\n';
  }
  return kOk;
}

int cmd_simulate(SimConfig cfg, std::ostream& out) {
  validate(cfg);
  const SimReport r = estimate_expectation(cfg);
  json j{{"schema_version", 1},
         {"space", to_string(cfg.space)},
         {"dim", cfg.dim},
         {"N", cfg.N},
         {"trials", cfg.trials},
         {"seed", cfg.seed},
         {"mean", r.mean},
         {"normalized_mean", r.mean / static_cast<double>(1L << std::min(cfg.dim, 62))},
         {"variance", r.variance},
         {"std_error", r.std_error},
         {"ci95", {r.ci_low, r.ci_high}}};
  std::map<int, long> dist;
  for (int c : r.counts) ++dist[c];
  json d = json::object();
  for (auto [m, k] : dist) d[std::to_string(m)] = k;
  j["count_distribution"] = std::move(d);
  if (r.lamination) j["lamination"] = *r.lamination;

  // exact references where they are cheap
  json exact = json::object();
  std::map<std::string, Rational> limit_probs;
  const bool small = (cfg.space == Space::torus && cfg.dim <= 3) || (cfg.space == Space::cube && cfg.dim <= 2);
  if (small) {
    const Rational e = expected_cubes(finite_N_census(cfg.dim, cfg.N, cfg.space).records);
    exact["finite"] = to_string(e);
    exact["finite_value"] = e.get_d();
  }
  if (cfg.space == Space::torus && cfg.dim <= 3) {
    const Census lim = torus_limit_census(cfg.dim);
    const Rational e = expected_cubes(lim.records);
    exact["limit"] = to_string(e);
    exact["limit_value"] = e.get_d();
    for (const auto& rec : lim.records) limit_probs[short_digest(rec.key)] = rec.prob;
  }
  if (!exact.empty()) j["exact"] = std::move(exact);
  if (cfg.emit_histogram) {
    json h = json::array();
    for (const auto& [key, count] : r.histogram) {
      json row{{"key", key},
               {"count", count},
               {"frequency", static_cast<double>(count) / static_cast<double>(cfg.trials)},
               {"m", r.histogram_reps.at(key).size()},
               {"type", to_text(r.histogram_reps.at(key))}};
      if (!limit_probs.empty()) {
        auto it = limit_probs.find(key);
        row["limit_prob"] = it == limit_probs.end() ? "0" : to_string(it->second);
      }
      h.push_back(std::move(row));
    }
    j["histogram"] = std::move(h);
  }
  out << j.dump(1) << '\n';
  return kOk;
}

std::vector<Fixture> all_fixtures(const std::string& dir) {
  std::vector<Fixture> out;
  for (const char* g : {"figure2", "figure3", "dim4", "h-matrices"}) {
    for (auto& f : load_fixtures(dir, g)) out.push_back(std::move(f));
  }
  return out;
}

int cmd_construct(const std::map<std::string, std::string>& o, const std::vector<std::string>& product_files,
                  int hmatrix, int hn, int factorization, int rod, const std::string& format, std::ostream& out) {
  const int chosen = !product_files.empty() + (hmatrix > 0) + (hn > 0) + (factorization > 0) + (rod > 0) +
                     !o.at("fixture").empty();
  if (chosen != 1) throw UsageError("choose exactly one construction");
  if (format != "json" && format != "text") throw UsageError("--format must be json or text");
  Packing p;
  if (!product_files.empty()) {
    if (product_files.size() != 2) throw UsageError("--product takes two packing files");
    p = product(read_packing_file(product_files[0]), read_packing_file(product_files[1]));
  } else if (hmatrix > 0) {
    p = h_matrix(hmatrix);
  } else if (hn > 0) {
    const auto table = load_table4(fixture_dir(o.at("fixture-dir")));
    auto it = table.find(hn);
    if (it == table.end()) throw UsageError("no permutation list for n=" + std::to_string(hn));
    std::vector<Permutation> perms;
    for (const auto& s : it->second) perms.push_back(parse_cycles(s, hn));
    p = hn_tiling(hn, perms);
  } else if (factorization > 0) {
    p = factorization_packing(one_factorization(factorization));
  } else if (rod > 0) {
    p = rod_tiling(rod);
  } else {
    bool found = false;
    for (auto& f : all_fixtures(fixture_dir(o.at("fixture-dir")))) {
      if (f.name == o.at("fixture")) {
        p = f.packing;
        found = true;
      }
    }
    if (!found) throw UsageError("unknown fixture '" + o.at("fixture") + "'");
  }
  if (format == "json") {
    out << to_json(p).dump() << '\n';
  } else {
    out << to_text(p) << '\n';
  }
  return kOk;
}

struct CensusCache {
  std::map<int, std::map<CanonicalKey, Rational>> probs;
  const std::map<CanonicalKey, Rational>& get(int n) {
    auto it = probs.find(n);
    if (it != probs.end()) return it->second;
    CensusOptions opt;
    opt.want_aut = false;
    std::map<CanonicalKey, Rational> m;
    for (const auto& r : torus_limit_census(n, opt).records) m[r.key] = r.prob;
    return probs.emplace(n, std::move(m)).first->second;
  }
};

// One report line; false on any mismatch.
bool verify_one(const std::string& name, const Packing& p, const std::map<std::string, std::string>& expect,
                CensusCache& cache, std::ostream& out) {
  std::vector<std::string> bad;
  std::ostringstream line;
  line << name << ": ";
  if (auto v = validate(p)) {
    out << line.str() << "invalid (" << v->message << ")\n";
    return false;
  }
  const bool tiling = is_tiling(p);
  const bool ext = !tiling && is_extensible(p);
  line << (tiling ? "tiling" : ext ? "extensible" : "non-extensible");
  line << ", params=" << p.param_count() << ", cubes=" << p.size();
  const BigInt aut = automorphism_order(p);
  line << ", aut=" << aut.get_str();

  auto check = [&](const std::string& key, const std::string& got) {
    auto it = expect.find(key);
    if (it != expect.end() && it->second != got) bad.push_back(key + ": expected " + it->second + ", got " + got);
  };
  check("extensible", (ext || tiling) ? "true" : "false");
  check("params", std::to_string(p.param_count()));
  check("cubes", std::to_string(p.size()));
  check("aut", aut.get_str());
  if (expect.count("laminated")) check("laminated", is_laminated(p) ? "true" : "false");

  for (const char* key : {"limit_probability", "census_probability"}) {
    auto it = expect.find(key);
    if (it == expect.end()) continue;
    if (p.space() == Space::torus && p.dim() <= 4) {
      const auto& probs = cache.get(p.dim());
      auto r = probs.find(canonical_key(p));
      const std::string got = r == probs.end() ? "0" : to_string(r->second);
      line << ", limit-probability=" << got;
      check(key, got);
    } else if (it->second == "0" && p.size() <= 24) {
      const OrderingReplay rep = replay_orderings(p);
      line << ", limit-probability=" << (rep.positive == 0 ? "0" : "positive") << " (" << rep.positive.get_str() << " of "
           << rep.orderings.get_str() << " orderings positive)";
      if (rep.positive != 0) bad.push_back(std::string(key) + ": expected 0, got a positive ordering");
    } else {
      line << ", " << key << " not checked";
    }
  }
  out << line.str() << '\n';
  for (const auto& b : bad) out << "  MISMATCH " << b << '\n';
  return bad.empty();
}

int cmd_verify(const std::map<std::string, std::string>& o, const std::vector<std::string>& files, std::ostream& out) {
  const std::string sel = o.at("fixtures"), one = o.at("fixture");
  if (sel.empty() && one.empty() && files.empty()) throw UsageError("give --fixtures, --fixture or packing files");
  CensusCache cache;
  bool ok = true;
  int matched = 0;
  if (!sel.empty() || !one.empty()) {
    for (const auto& f : all_fixtures(fixture_dir(o.at("fixture-dir")))) {
      const bool pick = (!one.empty() && f.name == one) ||
                        (!sel.empty() && (sel == "all" || f.group == sel || f.name.rfind(sel, 0) == 0));
      if (!pick) continue;
      ++matched;
      ok &= verify_one(f.name, f.packing, f.expect, cache, out);
    }
    if (matched == 0) throw UsageError("no fixture matches '" + (one.empty() ? sel : one) + "'");
  }
  for (const auto& path : files) ok &= verify_one(path, read_packing_file(path), {}, cache, out);
  return ok ? kOk : kFailure;
}

int cmd_canon(const std::string& file, const std::string& format, std::ostream& out) {
  if (format != "text" && format != "json") throw UsageError("--format must be text or json");
  const Packing p = read_packing_file(file);
  if (auto v = validate(p)) throw PackingError(v->message);
  const Canonical c = canonicalize(p);
  const BigInt aut = automorphism_order(p);
  if (format == "text") {
    out << "key=" << short_digest(c.key) << '\n' << "aut=" << aut.get_str() << '\n' << "form=" << to_text(c.form) << '\n';
  } else {
    out << json{{"key", short_digest(c.key)}, {"certificate", to_hex(c.key)}, {"aut", aut.get_str()}, {"form", to_json(c.form)}}
               .dump()
        << '\n';
  }
  return kOk;
}

}  // namespace

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> out;
  auto num = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || v < 1) throw UsageError("bad dimension list '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int a = num(text.substr(0, dots)), b = num(text.substr(dots + 2));
    if (b < a) throw UsageError("bad dimension range '" + text + "'");
    for (int n = a; n <= b; ++n) out.push_back(n);
    return out;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(num(item));
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw UsageError("repeated dimension in '" + text + "'");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact enumeration and simulation of random cube packings", "cubepack"};
  app.require_subcommand(1);

  std::map<std::string, std::string> o{{"space", "torus"}, {"regime", "limit"},   {"format", ""},
                                       {"checkpoint", ""}, {"fixture", ""},       {"fixture-dir", ""},
                                       {"fixtures", ""},   {"dims", ""}};
  std::map<std::string, bool> flags{{"paths", false},        {"list-zero-prob", false}, {"long-running", false},
                                    {"progress", false},     {"track-lamination", false},
                                    {"emit-histogram", false}};
  int dim = 0, threads = 0, order = -1, hmatrix = 0, hn = 0, factorization = 0, rod = 0;
  long N = 0, trials = 0;
  std::uint64_t seed = 0;
  std::size_t max_frontier = 0;
  std::vector<std::string> files;
  std::string file;

  auto* en = app.add_subcommand("enumerate", "Census of combinatorial types");
  en->add_option("--space", o["space"], "torus or cube");
  en->add_option("--dim", dim, "dimension n")->required();
  en->add_option("--regime", o["regime"], "limit (N -> infinity) or finite");
  en->add_option("--N", N, "grid resolution for the finite regime");
  en->add_flag("--paths", flags["paths"], "track new-parameter histograms per path");
  en->add_flag("--list-zero-prob", flags["list-zero-prob"], "also list types of limit probability 0");
  en->add_option("--threads", threads, "worker threads (default: CUBEPACK_THREADS or 1)");
  en->add_option("--checkpoint", o["checkpoint"], "frontier file, written after every level and resumed");
  en->add_option("--max-frontier", max_frontier, "refuse levels with more types than this");
  en->add_flag("--long-running", flags["long-running"], "lift the size guards");
  en->add_flag("--progress", flags["progress"], "log each level to stderr");
  en->add_option("--format", o["format"], "csv (default) or json");

  auto* ex = app.add_subcommand("expand", "Coefficients C_k(n) of the cube expansion");
  ex->add_option("--order", order, "largest k")->required();
  ex->add_option("--dims", o["dims"], "dimensions to interpolate over, e.g. 1..5");
  ex->add_flag("--long-running", flags["long-running"], "allow orders 5 and 6");
  ex->add_option("--threads", threads, "worker threads");
  ex->add_option("--format", o["format"], "text (default) or json");

  SimConfig sim;
  std::string sim_space = "torus";
  auto* si = app.add_subcommand("simulate", "Monte Carlo on the 1/N grid");
  si->add_option("--space", sim_space, "torus or cube");
  si->add_option("--dim", dim, "dimension n")->required();
  si->add_option("--N", N, "grid resolution")->required();
  si->add_option("--trials", trials, "number of packings")->required();
  si->add_option("--seed", seed, "seed");
  si->add_flag("--track-lamination", flags["track-lamination"], "report the laminated fraction");
  si->add_flag("--emit-histogram", flags["emit-histogram"], "report terminal types by key");
  si->add_option("--threads", threads, "worker threads");

  std::vector<std::string> product_files;
  auto* co = app.add_subcommand("construct", "Explicit packings as JSON");
  co->add_option("--product", product_files, "two packing files a.json b.json")->expected(2);
  co->add_option("--hmatrix", hmatrix, "H_n for odd n");
  co->add_option("--hn-tiling", hn, "tiling from H_n and the permutation table");
  co->add_option("--one-factorization", factorization, "packing from the round-robin factorization of K_v");
  co->add_option("--rod", rod, "rod tiling of dimension n");
  co->add_option("--fixture", o["fixture"], "named fixture");
  co->add_option("--fixture-dir", o["fixture-dir"], "fixture directory");
  co->add_option("--format", o["format"], "json (default) or text");

  auto* ve = app.add_subcommand("verify", "Re-derive fixture properties");
  ve->add_option("--fixtures", o["fixtures"], "group, name prefix or 'all'");
  ve->add_option("--fixture", o["fixture"], "one named fixture");
  ve->add_option("--fixture-dir", o["fixture-dir"], "fixture directory");
  ve->add_option("files", files, "packing files");

  auto* ca = app.add_subcommand("canon", "Canonical key and form of a packing");
  ca->add_option("file", file, "packing file")->required();
  ca->add_option("--format", o["format"], "text (default) or json");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* sub = nullptr;
    for (const auto* s : app.get_subcommands()) sub = s;
    err << (sub ? sub->help() : app.help());
    return kFailure;
  }

  auto fmt = [&](const char* def) { return o["format"].empty() ? std::string(def) : o["format"]; };
  try {
    if (*en) {
      o["format"] = fmt("csv");
      return cmd_enumerate(o, flags, dim, N, resolve_threads(threads), max_frontier, out, err);
    }
    if (*ex) return cmd_expand(order, o["dims"], flags["long-running"], resolve_threads(threads), fmt("text"), out);
    if (*si) {
      sim.space = space_flag(sim_space);
      sim.dim = dim;
      sim.N = N;
      sim.trials = trials;
      sim.seed = seed;
      sim.track_lamination = flags["track-lamination"];
      sim.emit_histogram = flags["emit-histogram"];
      sim.threads = resolve_threads(threads);
      return cmd_simulate(sim, out);
    }
    if (*co) return cmd_construct(o, product_files, hmatrix, hn, factorization, rod, fmt("json"), out);
    if (*ve) return cmd_verify(o, files, out);
    if (*ca) return cmd_canon(file, fmt("text"), out);
  } catch (const ResourceGuard& e) {
    err << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace cubepack::cli

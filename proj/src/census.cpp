#include "cubepack/census.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <random>

#include "cubepack/extension.hpp"
#include "cubepack/io.hpp"
#include "parallel.hpp"

namespace cubepack {

using detail::parallel_for;

namespace {

template <class P>
struct ProbTraits;

template <>
struct ProbTraits<Rational> {
  static bool zero(const Rational& r) { return r == 0; }
  static json save(const Rational& r) { return to_string(r); }
  static Rational load(const json& j) { return parse_rational(j.get<std::string>()); }
};

template <>
struct ProbTraits<Series> {
  static bool zero(const Series& s) { return s.is_zero(); }
  static json save(const Series& s) {
    json a = json::array();
    for (const auto& c : s.coeffs()) a.push_back(to_string(c));
    return a;
  }
  static Series load(const json& j) {
    std::vector<Rational> c;
    for (const auto& x : j) c.push_back(parse_rational(x.get<std::string>()));
    return Series(static_cast<int>(c.size()) - 1, std::move(c));
  }
};

json save_poly(const Polynomial& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_string(c));
  return a;
}

Polynomial load_poly(const json& j) {
  std::vector<Rational> c;
  for (const auto& x : j) c.push_back(parse_rational(x.get<std::string>()));
  return Polynomial(std::move(c));
}

template <>
struct ProbTraits<RationalFunction> {
  static bool zero(const RationalFunction& f) { return f.is_zero(); }
  static json save(const RationalFunction& f) { return json{{"num", save_poly(f.num())}, {"den", save_poly(f.den())}}; }
  static RationalFunction load(const json& j) { return {load_poly(j.at("num")), load_poly(j.at("den"))}; }
};

template <class P>
struct Node {
  CanonicalKey key;
  Packing rep;
  P prob;
  NewParams hist;
};

template <class P>
struct Step {
  ExtensionClass cls;
  P prob;
};

template <class P>
struct Terminal {
  Packing rep;
  P prob;
  std::map<NewParams, P> paths;
};

template <class P>
struct BfsResult {
  std::map<CanonicalKey, Terminal<P>> terminals;
  std::vector<std::size_t> levels;
  bool truncated = false;
};

struct BfsConfig {
  std::string tag;
  Space space = Space::torus;
  int n = 0;
  bool track = false;
  bool keep_zero = false;
  bool stop_at_terminal = false;
  /// Test children for maximality before building the next level.
  bool lookahead = false;
  int max_level = -1;
};

std::string merge_key(const CanonicalKey& key, const NewParams& hist, bool track) {
  if (!track) return key;
  std::string k = key;
  k.push_back('\0');
  for (int h : hist) k.push_back(static_cast<char>(h));
  return k;
}

template <class P>
struct Checkpoint {
  int level = 0;
  std::map<std::string, Node<P>> frontier;
  BfsResult<P> result;
};

template <class P>
void save_checkpoint(const std::string& path, const BfsConfig& cfg, const Checkpoint<P>& cp) {
  json j;
  j["tag"] = cfg.tag;
  j["level"] = cp.level;
  j["levels"] = cp.result.levels;
  json f = json::array();
  for (const auto& [mk, node] : cp.frontier) {
    f.push_back({{"rep", to_json(node.rep)}, {"prob", ProbTraits<P>::save(node.prob)}, {"hist", node.hist}});
  }
  j["frontier"] = std::move(f);
  json t = json::array();
  for (const auto& [key, term] : cp.result.terminals) {
    json paths = json::array();
    for (const auto& [h, pr] : term.paths) paths.push_back({{"hist", h}, {"prob", ProbTraits<P>::save(pr)}});
    t.push_back({{"rep", to_json(term.rep)}, {"prob", ProbTraits<P>::save(term.prob)}, {"paths", std::move(paths)}});
  }
  j["terminals"] = std::move(t);
  const std::string tmp = path + ".tmp";
  write_json_file(tmp, j);
  std::filesystem::rename(tmp, path);
}

template <class P>
bool load_checkpoint(const std::string& path, const BfsConfig& cfg, EncodeOptions enc, Checkpoint<P>& cp) {
  std::ifstream in(path);
  if (!in) return false;
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("corrupt checkpoint " + path + ": " + e.what());
  }
  if (j.value("tag", "") != cfg.tag) {
    throw FormatError("checkpoint " + path + " belongs to run '" + j.value("tag", "") + "', not '" + cfg.tag + "'");
  }
  cp.level = j.at("level").get<int>();
  cp.result.levels = j.at("levels").get<std::vector<std::size_t>>();
  for (const auto& x : j.at("frontier")) {
    Packing rep = packing_from_json(x.at("rep"));
    CanonicalKey key = cp.level == 0 ? CanonicalKey() : canonicalize(rep, enc).key;
    Node<P> node{std::move(key), std::move(rep), ProbTraits<P>::load(x.at("prob")), x.at("hist").get<NewParams>()};
    cp.frontier.emplace(merge_key(node.key, node.hist, cfg.track), std::move(node));
  }
  for (const auto& x : j.at("terminals")) {
    Terminal<P> term{packing_from_json(x.at("rep")), ProbTraits<P>::load(x.at("prob")), {}};
    for (const auto& pth : x.at("paths")) term.paths.emplace(pth.at("hist").get<NewParams>(), ProbTraits<P>::load(pth.at("prob")));
    cp.result.terminals.emplace(canonicalize(term.rep, enc).key, std::move(term));
  }
  return true;
}

template <class P>
struct Child {
  std::string mkey;
  CanonicalKey key;
  Packing rep;
  P prob;
  NewParams hist;
};

template <class P>
struct Expanded {
  bool terminal = false;
  std::vector<Child<P>> children;
};

template <class P, class StepFn>
BfsResult<P> run_bfs(const BfsConfig& cfg, const CensusOptions& opt, const P& one, StepFn&& step) {
  Checkpoint<P> cp;
  if (opt.checkpoint.empty() || !load_checkpoint(opt.checkpoint, cfg, opt.encoding, cp)) {
    Node<P> root{CanonicalKey(), Packing(cfg.space, cfg.n), one, NewParams(static_cast<std::size_t>(cfg.n) + 1, 0)};
    cp.frontier.emplace(merge_key(root.key, root.hist, cfg.track), std::move(root));
  }
  auto& result = cp.result;
  std::mt19937_64 shuffler(opt.shuffle_seed.value_or(0));

  while (!cp.frontier.empty()) {
    if (static_cast<int>(result.levels.size()) <= cp.level) result.levels.push_back(cp.frontier.size());
    if (opt.progress) opt.progress(cp.level, cp.frontier.size(), result.terminals.size());
    if (opt.max_frontier && cp.frontier.size() > opt.max_frontier) {
      throw ResourceGuard("frontier at " + std::to_string(cp.level) + " cubes holds " +
                          std::to_string(cp.frontier.size()) + " types, above the limit of " +
                          std::to_string(opt.max_frontier));
    }

    std::vector<const Node<P>*> nodes;
    for (const auto& [mk, node] : cp.frontier) nodes.push_back(&node);
    if (opt.shuffle_seed) std::shuffle(nodes.begin(), nodes.end(), shuffler);

    if (cfg.lookahead) {
      // cheap pass: is some child already maximal?
      std::vector<std::vector<Packing>> found(nodes.size());
      parallel_for(nodes.size(), opt.threads, [&](std::size_t i) {
        const Node<P>& node = *nodes[i];
        for (auto& s : step(node.rep, node.prob)) {
          Packing child = apply_class(node.rep, s.cls);
          if (step(child, node.prob * s.prob).empty()) found[i].push_back(std::move(child));
        }
      });
      bool any = false;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (const Packing& w : found[i]) {
          any = true;
          Canonical c = canonicalize(w, opt.encoding);
          result.terminals.try_emplace(c.key, Terminal<P>{c.form, P(), {}});
        }
      }
      if (any) {
        result.truncated = true;
        break;
      }
    }

    std::map<std::string, Node<P>> next;
    bool saw_terminal = false;
    constexpr std::size_t kChunk = 4096;
    for (std::size_t begin = 0; begin < nodes.size(); begin += kChunk) {
      const std::size_t count = std::min(kChunk, nodes.size() - begin);
      std::vector<Expanded<P>> out(count);
      parallel_for(count, opt.threads, [&](std::size_t i) {
        const Node<P>& node = *nodes[begin + i];
        auto steps = step(node.rep, node.prob);
        if (steps.empty()) {
          out[i].terminal = true;
          return;
        }
        for (auto& s : steps) {
          P prob = node.prob * s.prob;
          if (!cfg.keep_zero && ProbTraits<P>::zero(prob)) continue;
          Canonical c = canonicalize(apply_class(node.rep, s.cls), opt.encoding);
          NewParams hist = node.hist;
          if (cfg.track) ++hist[static_cast<std::size_t>(s.cls.nb)];
          std::string mk = merge_key(c.key, hist, cfg.track);
          out[i].children.push_back({std::move(mk), std::move(c.key), std::move(c.form), std::move(prob), std::move(hist)});
        }
      });

      for (std::size_t i = 0; i < count; ++i) {
        const Node<P>& node = *nodes[begin + i];
        if (out[i].terminal) {
          saw_terminal = true;
          auto [it, fresh] = result.terminals.try_emplace(node.key, Terminal<P>{node.rep, node.prob, {}});
          if (!fresh) it->second.prob += node.prob;
          if (cfg.track) {
            auto [pt, pfresh] = it->second.paths.try_emplace(node.hist, node.prob);
            if (!pfresh) pt->second += node.prob;
          }
          continue;
        }
        for (auto& c : out[i].children) {
          auto it = next.find(c.mkey);
          if (it == next.end()) {
            next.emplace(std::move(c.mkey), Node<P>{std::move(c.key), std::move(c.rep), std::move(c.prob), std::move(c.hist)});
          } else {
            it->second.prob += c.prob;
          }
        }
      }
    }
    ++cp.level;
    cp.frontier = std::move(next);
    if ((cfg.stop_at_terminal && saw_terminal) || (cfg.max_level >= 0 && cp.level > cfg.max_level)) {
      result.truncated = !cp.frontier.empty();
      break;
    }
    if (!opt.checkpoint.empty()) save_checkpoint(opt.checkpoint, cfg, cp);
  }
  return std::move(cp.result);
}

CensusRecord make_record(const CanonicalKey& key, const Packing& rep, Rational prob, const CensusOptions& opt,
                         bool regime_extensible) {
  CensusRecord r;
  r.key = key;
  r.rep = rep;
  r.m = static_cast<int>(rep.size());
  r.nparams = rep.param_count();
  r.prob = std::move(prob);
  r.extensible = regime_extensible;
  r.tiling = is_tiling(rep);
  if (opt.want_aut) r.aut = automorphism_order(rep, opt.encoding);
  return r;
}

Census to_census(int n, const BfsResult<Rational>& res, const CensusOptions& opt, bool limit_regime) {
  Census c;
  c.n = n;
  c.level_sizes = res.levels;
  c.truncated = res.truncated;
  for (const auto& [key, term] : res.terminals) {
    CensusRecord r = make_record(key, term.rep, term.prob, opt, limit_regime && is_extensible(term.rep));
    for (const auto& [h, pr] : term.paths) r.paths.push_back({h, pr});
    c.records.push_back(std::move(r));
  }
  sort_records(c.records);
  return c;
}

void check_dim(int n) {
  if (n < 1) throw std::invalid_argument("dimension must be at least 1");
}

std::vector<Step<Rational>> limit_steps(const Packing& p) {
  std::vector<Step<Rational>> steps;
  for (auto& w : limit_step_distribution(p)) steps.push_back({std::move(w.cls), std::move(w.prob)});
  return steps;
}

}  // namespace

void sort_records(std::vector<CensusRecord>& records) {
  std::sort(records.begin(), records.end(), [](const CensusRecord& a, const CensusRecord& b) {
    if (a.m != b.m) return a.m > b.m;
    if (a.nparams != b.nparams) return a.nparams > b.nparams;
    const auto da = short_digest(a.key), db = short_digest(b.key);
    if (da != db) return da < db;
    return a.key < b.key;
  });
}

Census torus_limit_census(int n, const CensusOptions& opt, bool track_paths) {
  check_dim(n);
  if (n >= 5 && !opt.allow_large) {
    throw ResourceGuard("the torus limit census is out of reach for n >= 5; pass the long-running override to try");
  }
  BfsConfig cfg{"torus-limit n=" + std::to_string(n) + (track_paths ? " paths" : ""), Space::torus, n, track_paths};
  auto res = run_bfs<Rational>(cfg, opt, Rational(1), [](const Packing& p, const Rational&) { return limit_steps(p); });
  return to_census(n, res, opt, true);
}

Census torus_all_types(int n, const CensusOptions& opt) {
  check_dim(n);
  if (n >= 4 && !opt.allow_large) throw ResourceGuard("listing every reachable type is limited to n <= 3");
  BfsConfig cfg{"torus-all n=" + std::to_string(n), Space::torus, n};
  cfg.keep_zero = true;
  auto res = run_bfs<Rational>(cfg, opt, Rational(1), [](const Packing& p, const Rational&) {
    std::vector<Step<Rational>> steps;
    auto classes = enumerate_extension_classes(p);
    int best = -1;
    long count = 0;
    for (const auto& c : classes) {
      if (c.nb > best) {
        best = c.nb;
        count = 0;
      }
      if (c.nb == best) ++count;
    }
    for (auto& c : classes) {
      const bool top = c.nb == best;
      steps.push_back({std::move(c), top ? Rational(1, count) : Rational(0)});
    }
    return steps;
  });
  return to_census(n, res, opt, true);
}

Rational expected_cubes(const std::vector<CensusRecord>& records) {
  Rational e = 0;
  for (const auto& r : records) e += r.prob * r.m;
  return e;
}

Rational expected_cubes_limit(int n, const CensusOptions& opt) {
  CensusOptions o = opt;
  o.want_aut = false;
  return expected_cubes(torus_limit_census(n, o).records);
}

MinNonextensible min_nonextensible(const std::vector<CensusRecord>& records) {
  MinNonextensible out;
  for (const auto& r : records) {
    if (out.f < 0 || r.m < out.f) {
      out.f = r.m;
      out.witnesses.clear();
    }
    if (r.m == out.f) out.witnesses.push_back(r);
  }
  return out;
}

namespace {

std::vector<Step<Rational>> finite_steps(const Packing& p, long N) {
  std::vector<Step<Rational>> steps;
  for (auto& w : finite_step_distribution(p, N)) steps.push_back({std::move(w.cls), std::move(w.prob)});
  return steps;
}

}  // namespace

Census finite_N_census(int n, long N, Space space, const CensusOptions& opt) {
  check_dim(n);
  if (N < 1) throw DegenerateError("grid resolution N must be positive");
  BfsConfig cfg{"finite " + to_string(space) + " n=" + std::to_string(n) + " N=" + std::to_string(N), space, n};
  auto res = run_bfs<Rational>(cfg, opt, Rational(1), [N](const Packing& p, const Rational&) { return finite_steps(p, N); });
  return to_census(n, res, opt, false);
}

MinSearch finite_N_min_search(int n, long N, int max_cubes, const CensusOptions& opt) {
  check_dim(n);
  BfsConfig cfg{"min-search n=" + std::to_string(n) + " N=" + std::to_string(N), Space::torus, n};
  cfg.stop_at_terminal = true;
  cfg.lookahead = true;
  cfg.max_level = max_cubes - 1;
  auto res = run_bfs<Rational>(cfg, opt, Rational(1), [N](const Packing& p, const Rational&) { return finite_steps(p, N); });
  MinSearch out;
  out.level_sizes = res.levels;
  for (const auto& [key, term] : res.terminals) {
    const int m = static_cast<int>(term.rep.size());
    if (!out.found || m < out.f) {
      out.found = true;
      out.f = m;
      out.witnesses.clear();
    }
    if (m == out.f) out.witnesses.push_back(term.rep);
  }
  // levels 0..L were expanded and their children tested
  out.lower_bound = out.found ? out.f : static_cast<int>(res.levels.size()) + 1;
  return out;
}

namespace {

// Faces kept at a step and their weights (N-1)^dim, as exponents below the
// top dimension.
struct KeptFaces {
  std::vector<ExtensionClass> faces;
  std::vector<int> drop;  // D - dim(F)
};

KeptFaces kept_faces(const Packing& p, int K, int ord) {
  KeptFaces k;
  auto faces = enumerate_extension_classes(p);
  if (faces.empty()) return k;
  int D = 0;
  for (const auto& f : faces) D = std::max(D, f.nb);
  const int threshold = D - (K - ord);
  for (auto& f : faces) {
    if (f.nb < threshold) continue;
    k.drop.push_back(D - f.nb);
    k.faces.push_back(std::move(f));
  }
  return k;
}

void guard_order(int K, const CensusOptions& opt) {
  if (K < 0) throw std::invalid_argument("expansion order must be non-negative");
  if (K >= 5 && !opt.allow_large) throw ResourceGuard("expansion orders 5 and 6 need the long-running override");
}

}  // namespace

Expansion cube_expansion(int n, int K, const CensusOptions& opt) {
  check_dim(n);
  guard_order(K, opt);
  BfsConfig cfg{"cube-expansion n=" + std::to_string(n) + " K=" + std::to_string(K), Space::cube, n};
  auto res = run_bfs<Series>(cfg, opt, Series::constant(K, 1), [K](const Packing& p, const Series& prob) {
    std::vector<Step<Series>> steps;
    KeptFaces kept = kept_faces(p, K, prob.valuation());
    if (kept.faces.empty()) return steps;
    Series total(K);
    for (int d : kept.drop) {
      if (d <= K) total[d] += 1;
    }
    const Series inv = total.inverse();
    for (std::size_t i = 0; i < kept.faces.size(); ++i) {
      const int d = kept.drop[i];
      Series w = d <= K ? Series::monomial(K, d) * inv : Series(K);
      steps.push_back({std::move(kept.faces[i]), std::move(w)});
    }
    return steps;
  });

  Expansion e;
  e.n = n;
  e.order = K;
  e.level_sizes = res.levels;
  e.expected = Series(K);
  e.types_up_to.assign(static_cast<std::size_t>(K) + 1, 0);
  for (const auto& [key, term] : res.terminals) {
    ExpansionRecord r{key, term.rep, static_cast<int>(term.rep.size()), term.prob, term.prob.valuation(), 1};
    if (opt.want_aut) r.aut = automorphism_order(term.rep, opt.encoding);
    e.expected += term.prob * Rational(r.m);
    for (int k = r.order; k <= K; ++k) ++e.types_up_to[static_cast<std::size_t>(k)];
    e.records.push_back(std::move(r));
  }
  std::sort(e.records.begin(), e.records.end(), [](const ExpansionRecord& a, const ExpansionRecord& b) {
    if (a.order != b.order) return a.order < b.order;
    if (a.m != b.m) return a.m > b.m;
    return short_digest(a.key) < short_digest(b.key);
  });
  return e;
}

Series cube_expansion_ratfun(int n, int K, const CensusOptions& opt) {
  check_dim(n);
  guard_order(K, opt);
  BfsConfig cfg{"cube-ratfun n=" + std::to_string(n) + " K=" + std::to_string(K), Space::cube, n};
  cfg.keep_zero = true;
  const Polynomial nm1 = Polynomial::linear(-1);
  auto res = run_bfs<RationalFunction>(cfg, opt, RationalFunction(Rational(1)),
                                       [&](const Packing& p, const RationalFunction& prob) {
    std::vector<Step<RationalFunction>> steps;
    const int ord = prob.den().degree() - prob.num().degree();
    KeptFaces kept = kept_faces(p, K, ord);
    if (kept.faces.empty()) return steps;
    int D = 0;
    for (const auto& f : kept.faces) D = std::max(D, f.nb);
    std::vector<Polynomial> powers(static_cast<std::size_t>(D) + 1, Polynomial::constant(1));
    for (int d = 1; d <= D; ++d) powers[static_cast<std::size_t>(d)] = powers[static_cast<std::size_t>(d) - 1] * nm1;
    Polynomial total;
    for (const auto& f : kept.faces) total += powers[static_cast<std::size_t>(f.nb)];
    for (auto& f : kept.faces) {
      RationalFunction w(powers[static_cast<std::size_t>(f.nb)], total);
      steps.push_back({std::move(f), std::move(w)});
    }
    return steps;
  });
  RationalFunction e;
  for (const auto& [key, term] : res.terminals) e += term.prob * RationalFunction(Rational(static_cast<long>(term.rep.size())));
  return expand(e, K);
}

std::vector<Polynomial> interpolate_Ck(int K, const std::vector<int>& dims, const CensusOptions& opt) {
  if (dims.size() < static_cast<std::size_t>(K) + 1) {
    throw std::invalid_argument("interpolating C_0..C_K needs at least K+1 dimensions");
  }
  std::vector<std::vector<std::pair<Rational, Rational>>> points(static_cast<std::size_t>(K) + 1);
  CensusOptions o = opt;
  o.want_aut = false;
  for (int n : dims) {
    const Expansion e = cube_expansion(n, K, o);
    for (int k = 0; k <= K; ++k) points[static_cast<std::size_t>(k)].push_back({Rational(n), e.expected[k]});
  }
  std::vector<Polynomial> out;
  for (int k = 0; k <= K; ++k) out.push_back(interpolate(points[static_cast<std::size_t>(k)], K));
  return out;
}

OrderingReplay replay_orderings(const Packing& p) {
  const std::size_t m = p.size();
  if (m > 24) throw ResourceGuard("ordering replay is limited to 24 cubes");
  const std::uint32_t full = (1u << m) - 1;
  std::vector<BigInt> count(std::size_t{1} << m, 0);
  count[0] = 1;
  for (std::uint32_t S = 0; S < full; ++S) {
    if (count[S] == 0) continue;
    std::vector<Cube> prefix;
    for (std::size_t i = 0; i < m; ++i) {
      if (S >> i & 1) prefix.push_back(p.cube(i));
    }
    const Packing sub(p.space(), p.dim(), prefix);
    const auto top = max_nb_classes(sub);
    for (std::size_t i = 0; i < m; ++i) {
      if (S >> i & 1) continue;
      ExtensionClass c;
      c.coords = p.cube(i);
      for (auto& x : c.coords) {
        if (sub.param_coordinate(x.param()) < 0) {
          x = Coordinate::fresh();
          ++c.nb;
        }
      }
      if (std::binary_search(top.begin(), top.end(), c)) count[S | 1u << i] += count[S];
    }
  }
  OrderingReplay r;
  r.orderings = 1;
  for (std::size_t k = 2; k <= m; ++k) r.orderings *= static_cast<unsigned long>(k);
  r.positive = count[full];
  return r;
}

bool violates_extendibility_bound(const Packing& p) {
  if (p.space() != Space::torus || p.dim() >= 31) return false;
  const long full = 1L << p.dim();
  const auto m = static_cast<long>(p.size());
  return m >= full - 3 && m < full && !is_extensible(p);
}

std::vector<std::string> terminal_violations(const CensusRecord& r, int n) {
  std::vector<std::string> bad;
  const Packing& p = r.rep;
  if (p.space() != Space::torus) return bad;
  const std::string tag = short_digest(r.key) + ": ";

  std::vector<std::array<int, 2>> uses(p.param_bound(), {0, 0});
  std::vector<std::vector<std::array<int, 2>>> per_coord(static_cast<std::size_t>(n), uses);
  for (const Cube& c : p.cubes()) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      ++uses[c[j].param()][static_cast<std::size_t>(c[j].shift())];
      ++per_coord[j][c[j].param()][static_cast<std::size_t>(c[j].shift())];
    }
  }
  for (ParamId t = 0; t < p.param_bound(); ++t) {
    if ((uses[t][0] > 0) != (uses[t][1] > 0)) bad.push_back(tag + "parameter occurs with one literal only");
  }
  if (r.m < n + 1) bad.push_back(tag + "fewer than n+1 cubes");
  if (r.tiling) {
    for (const auto& coord : per_coord) {
      for (const auto& u : coord) {
        if (u[0] != u[1]) bad.push_back(tag + "tiling with unbalanced literals in one coordinate");
      }
    }
  }
  if (violates_extendibility_bound(p)) bad.push_back(tag + "non-extensible with at least 2^n-3 cubes");
  if (r.extensible) bad.push_back(tag + "terminal type is extensible");
  if (r.prob > 0 && 2 * r.nparams < n * (n + 1)) bad.push_back(tag + "fewer than n(n+1)/2 parameters");
  return bad;
}

std::vector<std::string> path_violations(const CensusRecord& r, const PathStats& path, int n) {
  std::vector<std::string> bad;
  const std::string tag = short_digest(r.key) + ": ";
  const auto& h = path.newparams;
  auto N = [&](int k) { return k >= 0 && k < static_cast<int>(h.size()) ? h[static_cast<std::size_t>(k)] : 0; };
  int cubes = 0, params = 0;
  for (int k = 0; k <= n; ++k) {
    cubes += N(k);
    params += k * N(k);
    if (N(k) < 1) bad.push_back(tag + "no cube with " + std::to_string(k) + " new parameters");
  }
  if (cubes != r.m) bad.push_back(tag + "histogram does not sum to m");
  if (params != r.nparams) bad.push_back(tag + "histogram does not sum to N(CP)");
  if (N(n) != 1 || N(n - 1) != 1) bad.push_back(tag + "N_n or N_{n-1} differs from 1");
  if (n >= 3) {
    if (N(n - 2) > 2) bad.push_back(tag + "N_{n-2} above 2");
    if ((N(n - 2) == 2) != is_laminated(r.rep)) bad.push_back(tag + "N_{n-2} = 2 does not match lamination");
  }
  if (2 * params < n * (n + 1)) bad.push_back(tag + "fewer than n(n+1)/2 parameters");
  if (2 * params == n * (n + 1)) {
    for (int k = 1; k <= n; ++k) {
      if (N(k) != 1) bad.push_back(tag + "minimal parameter count with N_k != 1");
    }
  }
  return bad;
}

}  // namespace cubepack

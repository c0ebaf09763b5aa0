#include "cubepack/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

#include "cubepack/extension.hpp"
#include "parallel.hpp"

namespace cubepack {

void validate(const SimConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (cfg.N < 2) throw std::invalid_argument("N must be at least 2");
  if (cfg.dim < 1) throw std::invalid_argument("dimension must be at least 1");
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

Sample sample_packing(const SimConfig& cfg, std::mt19937_64& rng) {
  const int n = cfg.dim;
  const long N = cfg.N;
  Sample s;
  Packing p(cfg.space, n);
  std::vector<long> value;  // torus: position of literal t, in [0, 2N)
  while (true) {
    const auto dist = finite_step_distribution(p, N);
    if (dist.empty()) break;
    std::vector<double> w;
    for (const auto& c : dist) w.push_back(c.prob.get_d());
    const ExtensionClass& cls = dist[std::discrete_distribution<std::size_t>(w.begin(), w.end())(rng)].cls;

    std::vector<long> z(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      const Coordinate x = cls.coords[static_cast<std::size_t>(j)];
      long& v = z[static_cast<std::size_t>(j)];
      if (cfg.space == Space::cube) {
        if (x.is_zero()) v = 0;
        else if (x.is_one()) v = N;
        else v = std::uniform_int_distribution<long>(1, N - 1)(rng);
        continue;
      }
      if (!x.is_fresh()) {
        v = (value[x.param()] + (x.shift() ? N : 0)) % (2 * N);
        continue;
      }
      // any value whose residue mod N is unused in coordinate j
      std::vector<char> used(static_cast<std::size_t>(N), 0);
      for (ParamId t : p.params_in(j)) used[static_cast<std::size_t>(value[t] % N)] = 1;
      const long free = N - static_cast<long>(p.params_in(j).size());
      long k = std::uniform_int_distribution<long>(0, 2 * free - 1)(rng);
      const long half = k / free;
      k %= free;
      long r = 0;
      for (;; ++r) {
        if (!used[static_cast<std::size_t>(r)] && k-- == 0) break;
      }
      v = r + half * N;
    }
    const ParamId first_new = p.param_bound();
    p = apply_class(p, cls);
    if (cfg.space == Space::torus) {
      value.resize(p.param_bound(), 0);
      const Cube& c = p.cubes().back();
      for (int j = 0; j < n; ++j) {
        if (c[static_cast<std::size_t>(j)].param() >= first_new) value[c[static_cast<std::size_t>(j)].param()] = z[static_cast<std::size_t>(j)];
      }
    }
    s.corners.push_back(std::move(z));
  }
  if (cfg.space == Space::torus && n < 31) {
    const long full = 1L << n;
    const long m = static_cast<long>(p.size());
    if (m >= full - 3 && m < full) throw std::logic_error("maximal packing with 2^n-3 or more cubes that is not a tiling");
  }
  s.type = std::move(p);
  return s;
}

SimReport estimate_expectation(const SimConfig& cfg) {
  validate(cfg);
  SimReport rep;
  rep.config = cfg;
  const auto T = static_cast<std::size_t>(cfg.trials);
  rep.counts.assign(T, 0);
  std::vector<char> laminated(cfg.track_lamination ? T : 0, 0);
  std::vector<Canonical> types(cfg.emit_histogram ? T : 0);
  detail::parallel_for(T, cfg.threads, [&](std::size_t t) {
    auto rng = trial_rng(cfg.seed, t);
    Sample s = sample_packing(cfg, rng);
    rep.counts[t] = s.cubes();
    if (cfg.track_lamination) laminated[t] = cfg.dim == 1 || (cfg.space == Space::torus && is_laminated(s.type));
    if (cfg.emit_histogram) types[t] = canonicalize(s.type);
  });

  double sum = 0;
  for (int c : rep.counts) sum += c;
  rep.mean = sum / static_cast<double>(T);
  double sq = 0;
  for (int c : rep.counts) sq += (c - rep.mean) * (c - rep.mean);
  rep.variance = T > 1 ? sq / static_cast<double>(T - 1) : 0;
  rep.std_error = std::sqrt(rep.variance / static_cast<double>(T));
  rep.ci_low = rep.mean - 1.96 * rep.std_error;
  rep.ci_high = rep.mean + 1.96 * rep.std_error;
  if (cfg.track_lamination) {
    long k = 0;
    for (char l : laminated) k += l;
    rep.lamination = static_cast<double>(k) / static_cast<double>(T);
  }
  for (const auto& c : types) {
    const std::string d = short_digest(c.key);
    ++rep.histogram[d];
    rep.histogram_reps.try_emplace(d, c.form);
  }
  return rep;
}

Frequency lamination_frequency(int n, long N, long trials, std::uint64_t seed, int threads) {
  SimConfig cfg;
  cfg.space = Space::torus;
  cfg.dim = n;
  cfg.N = N;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.track_lamination = true;
  cfg.threads = threads;
  const SimReport r = estimate_expectation(cfg);
  const double f = *r.lamination;
  return {f, std::sqrt(f * (1 - f) / static_cast<double>(trials))};
}

}  // namespace cubepack

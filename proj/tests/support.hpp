#pragma once

// Independent brute-force oracles shared by the unit tests.

#include <algorithm>
#include <set>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "cubepack/exact.hpp"
#include "cubepack/extension.hpp"
#include "cubepack/io.hpp"
#include "cubepack/packing.hpp"

namespace oracle {

using namespace cubepack;

inline Packing torus(const std::string& text) { return parse_packing_text(Space::torus, text); }
inline Packing cube(const std::string& text) { return parse_packing_text(Space::cube, text); }

/// Random packing grown by uniformly chosen extension classes.
inline Packing random_packing(Space space, int dim, int steps, std::mt19937_64& rng) {
  Packing p(space, dim);
  for (int s = 0; s < steps; ++s) {
    auto classes = enumerate_extension_classes(p);
    if (classes.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, classes.size() - 1);
    p = apply_class(p, classes[pick(rng)]).normalized();
  }
  return p;
}

/// Discrete positions on the 1/N grid (in units of 1/N) realizing p, with
/// distinct residues for distinct parameters of a coordinate. Empty when N
/// is too small.
inline std::vector<std::vector<long>> realize(const Packing& p, long N, std::mt19937_64& rng) {
  std::vector<long> value(p.param_bound(), 0);
  for (int j = 0; j < p.dim(); ++j) {
    auto params = p.params_in(j);
    if (p.space() == Space::torus) {
      if (static_cast<long>(params.size()) > N) return {};
      std::vector<long> res(static_cast<std::size_t>(N));
      std::iota(res.begin(), res.end(), 0);
      std::shuffle(res.begin(), res.end(), rng);
      for (std::size_t k = 0; k < params.size(); ++k) value[params[k]] = res[k];
    } else {
      if (N < 2 && !params.empty()) return {};
      std::uniform_int_distribution<long> interior(1, N - 1);
      for (ParamId t : params) value[t] = interior(rng);
    }
  }
  std::vector<std::vector<long>> out;
  for (const Cube& c : p.cubes()) {
    std::vector<long> z;
    for (Coordinate x : c) {
      if (x.is_zero()) z.push_back(0);
      else if (x.is_one()) z.push_back(N);
      else z.push_back(value[x.param()] + (x.shift() ? N : 0));
    }
    out.push_back(std::move(z));
  }
  return out;
}

inline bool discrete_disjoint(const std::vector<long>& a, const std::vector<long>& b, long N, Space space) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (space == Space::torus) {
      if (((a[j] - b[j]) % (2 * N) + 2 * N) % (2 * N) == N) return true;
    } else if (std::abs(a[j] - b[j]) >= N) {
      return true;
    }
  }
  return false;
}

/// Number of grid cubes that fit next to the realization, by scanning the
/// whole grid.
inline long count_positions(const std::vector<std::vector<long>>& cubes, int dim, long N, Space space) {
  const long side = space == Space::torus ? 2 * N : N + 1;
  long total = 1;
  for (int j = 0; j < dim; ++j) total *= side;
  long count = 0;
  std::vector<long> z(static_cast<std::size_t>(dim));
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int j = 0; j < dim; ++j) {
      z[static_cast<std::size_t>(j)] = c % side;
      c /= side;
    }
    bool ok = true;
    for (const auto& w : cubes) {
      if (!discrete_disjoint(z, w, N, space)) {
        ok = false;
        break;
      }
    }
    count += ok;
  }
  return count;
}

inline Cube permute_coords(const Cube& c, const std::vector<int>& sigma) {
  Cube out(c.size(), Coordinate::zero());
  for (std::size_t j = 0; j < c.size(); ++j) out[static_cast<std::size_t>(sigma[j])] = c[j];
  return out;
}

// Group element images: coordinate permutation, per-parameter literal swap
// (torus) or per-coordinate reflection (cube), then a cube permutation.
// Returns the image normalized by first-occurrence renaming.
inline std::vector<Cube> image(const Packing& p, const std::vector<int>& sigma, unsigned long flips,
                               const std::vector<int>& cube_perm) {
  std::vector<Cube> cubes(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    Cube c = p.cube(i);
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (p.space() == Space::torus) {
        if ((flips >> c[j].param()) & 1) c[j] = c[j].flipped();
      } else if (c[j].is_boundary() && ((flips >> j) & 1)) {
        c[j] = c[j].flipped();
      }
    }
    cubes[static_cast<std::size_t>(cube_perm[i])] = permute_coords(c, sigma);
  }
  return Packing(p.space(), p.dim(), cubes).normalized().cubes();
}

struct BruteSymmetry {
  std::vector<Cube> min_image;  // orbit representative
  long aut = 0;
};

inline BruteSymmetry brute_symmetry(const Packing& p0) {
  const Packing p = p0.normalized();
  const int n = p.dim();
  const std::size_t m = p.size();
  const int nflip = p.space() == Space::torus ? p.param_count() : n;
  const auto self = p.cubes();
  BruteSymmetry out;
  bool first = true;
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    for (unsigned long flips = 0; flips < (1ul << nflip); ++flips) {
      std::vector<int> perm(m);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        auto img = image(p, sigma, flips, perm);
        if (img == self) ++out.aut;
        if (first || img < out.min_image) out.min_image = img;
        first = false;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

// Replays the limit process along the cube order: every step must be a
// max-nb class.
inline bool positive_along_order(const Packing& p) {
  Packing cur(p.space(), p.dim());
  int best = -1;
  for (const Cube& c : p.cubes()) {
    // max nb never increases along a packing
    if (best != 0) best = max_new_params(cur);
    int fresh = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      const ParamId t = c[j].param();
      fresh += cur.param_coordinate(t) < 0;
    }
    if (fresh != best) return false;
    cur = cur.with_cube(c);
  }
  return true;
}

// Memoized limit process over packings normalized by coordinate permutation
// and first-occurrence orientation only. Shares no code with the canonical
// labeling, so it merges fewer states but gives the same expectations.
struct MemoOracle {
  struct Value {
    Rational cubes;
    Rational laminated;
  };
  std::map<std::vector<Cube>, Value> memo;

  static std::vector<Cube> orient(const std::vector<Cube>& in) {
    std::map<ParamId, std::pair<ParamId, int>> ren;
    std::vector<Cube> out = in;
    for (auto& c : out) {
      for (auto& x : c) {
        auto it = ren.find(x.param());
        if (it == ren.end()) it = ren.emplace(x.param(), std::make_pair(static_cast<ParamId>(ren.size()), x.shift())).first;
        x = Coordinate::literal(it->second.first, x.shift() ^ it->second.second);
      }
    }
    return out;
  }

  static Packing normal(const Packing& p) {
    const int n = p.dim();
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<Cube> best;
    bool first = true;
    do {
      std::vector<Cube> c;
      for (const Cube& cu : p.cubes()) c.push_back(oracle::permute_coords(cu, sigma));
      for (int r = 0; r < 8; ++r) {
        auto o = orient(c);
        std::sort(o.begin(), o.end());
        if (o == c) break;
        c = o;
      }
      if (first || c < best) best = c;
      first = false;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return Packing(p.space(), n, best);
  }

  Value eval(const Packing& p) {
    auto it = memo.find(p.cubes());
    if (it != memo.end()) return it->second;
    auto classes = max_nb_classes(p);
    Value v;
    if (classes.empty()) {
      v.cubes = static_cast<long>(p.size());
      v.laminated = is_laminated(p) ? 1 : 0;
    } else {
      for (const auto& c : classes) {
        Value w = eval(normal(apply_class(p, c)));
        v.cubes += w.cubes;
        v.laminated += w.laminated;
      }
      v.cubes /= static_cast<long>(classes.size());
      v.laminated /= static_cast<long>(classes.size());
    }
    memo.emplace(p.cubes(), v);
    return v;
  }
};

}  // namespace oracle

#include <cstdio>
#include <filesystem>
#include <map>
#include <numeric>
#include <random>

#include "cubepack/canonical.hpp"
#include "cubepack/census.hpp"
#include "cubepack/constructions.hpp"
#include "cubepack/extension.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cubepack;

namespace {

Rational q(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

const Census& limit_census(int n) {
  static std::map<int, Census> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, torus_limit_census(n)).first;
  return it->second;
}

Rational total_prob(const std::vector<CensusRecord>& records) {
  Rational s = 0;
  for (const auto& r : records) s += r.prob;
  return s;
}

std::map<CanonicalKey, Rational> prob_map(const Census& c) {
  std::map<CanonicalKey, Rational> m;
  for (const auto& r : c.records) m[r.key] = r.prob;
  return m;
}

// Candidate cubes by brute force: every coordinate takes an existing literal
// of that coordinate or a fresh value; keep the cubes that overlap nothing.
std::vector<std::vector<Coordinate>> brute_max_nb(const Packing& p, int& best) {
  const int n = p.dim();
  std::vector<std::vector<Coordinate>> options(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    for (ParamId t : p.params_in(j)) {
      options[static_cast<std::size_t>(j)].push_back(Coordinate::literal(t, 0));
      options[static_cast<std::size_t>(j)].push_back(Coordinate::literal(t, 1));
    }
    options[static_cast<std::size_t>(j)].push_back(Coordinate::fresh());
  }
  std::vector<std::vector<Coordinate>> out;
  best = -1;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    std::vector<Coordinate> z;
    int nb = 0;
    for (int j = 0; j < n; ++j) {
      z.push_back(options[static_cast<std::size_t>(j)][idx[static_cast<std::size_t>(j)]]);
      nb += z.back().is_fresh();
    }
    bool fits = true;
    for (const Cube& c : p.cubes()) {
      bool separated = false;
      for (int j = 0; j < n && !separated; ++j) {
        const Coordinate a = z[static_cast<std::size_t>(j)], b = c[static_cast<std::size_t>(j)];
        separated = !a.is_fresh() && a.param() == b.param() && a.shift() != b.shift();
      }
      if (!separated) {
        fits = false;
        break;
      }
    }
    if (fits) {
      if (nb > best) {
        best = nb;
        out.clear();
      }
      if (nb == best) out.push_back(z);
    }
    int j = 0;
    while (j < n && ++idx[static_cast<std::size_t>(j)] == options[static_cast<std::size_t>(j)].size()) idx[static_cast<std::size_t>(j++)] = 0;
    if (j == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("torus limit census in dimensions 1 to 3") {
  const Census& c1 = limit_census(1);
  REQUIRE(c1.records.size() == 1);
  CHECK(c1.records[0].prob == 1);
  CHECK(c1.records[0].m == 2);
  CHECK(c1.records[0].aut == 2);
  CHECK(expected_cubes(c1.records) == 2);
  CHECK(min_nonextensible(c1.records).f == 2);

  const Census& c2 = limit_census(2);
  REQUIRE(c2.records.size() == 1);
  CHECK(c2.records[0].prob == 1);
  CHECK(c2.records[0].tiling);
  CHECK(c2.records[0].aut == 8);

  const Census& c3 = limit_census(3);
  REQUIRE(c3.records.size() == 4);
  std::vector<Rational> probs;
  int tilings = 0;
  for (const auto& r : c3.records) {
    probs.push_back(r.prob);
    tilings += r.tiling;
  }
  std::sort(probs.begin(), probs.end());
  CHECK(probs == std::vector<Rational>{q(1, 18), q(5, 18), q(1, 3), q(1, 3)});
  CHECK(tilings == 3);
  CHECK(expected_cubes(c3.records) == q(70, 9));
  CHECK(min_nonextensible(c3.records).f == 4);
  CHECK(expected_cubes_limit(3) == q(70, 9));

  // sorted m desc, nparams desc
  for (std::size_t i = 1; i < c3.records.size(); ++i) {
    const auto &a = c3.records[i - 1], &b = c3.records[i];
    CHECK((a.m > b.m || (a.m == b.m && a.nparams >= b.nparams)));
  }

  const Packing rod = rod_tiling(3);
  bool rod_seen = false;
  for (const auto& r : c3.records) {
    if (r.key == canonical_key(rod)) {
      rod_seen = true;
      CHECK(r.prob == q(5, 18));
    }
  }
  CHECK(rod_seen);
}

TEST_CASE("limit census agrees with an independent memoized recursion") {
  for (int n = 1; n <= 3; ++n) {
    oracle::MemoOracle o;
    auto v = o.eval(Packing(Space::torus, n));
    CHECK(v.cubes == expected_cubes(limit_census(n).records));
    if (n >= 2) {
      Rational lam = 0;
      for (const auto& r : limit_census(n).records) lam += is_laminated(r.rep) ? r.prob : Rational(0);
      CHECK(lam == v.laminated);
    }
  }
}

TEST_CASE("torus limit census in dimension 4") {
  const Census& c4 = limit_census(4);
  int tilings = 0, packings = 0;
  for (const auto& r : c4.records) (r.tiling ? tilings : packings)++;
  CHECK(tilings == 32);
  CHECK(packings == 31);
  CHECK(total_prob(c4.records) == 1);
  CHECK(min_nonextensible(c4.records).f == 6);
  // see the notes: independent recursion gives this value
  CHECK(expected_cubes(c4.records) / 16 == q(15253049369, 16102195200));
}

TEST_CASE("terminal invariants on every census") {
  for (int n = 1; n <= 4; ++n) {
    const Census& c = limit_census(n);
    CHECK(total_prob(c.records) == 1);
    for (const auto& r : c.records) {
      CHECK(terminal_violations(r, n).empty());
      CHECK_FALSE(is_extensible(r.rep));
      CHECK(r.prob > 0);
    }
  }
  for (int n = 2; n <= 3; ++n) {
    for (const auto& r : torus_all_types(n).records) {
      CHECK_FALSE(violates_extendibility_bound(r.rep));
      CHECK_FALSE(is_extensible(r.rep));
    }
  }
}

TEST_CASE("zero-probability types are listed separately") {
  const Census a2 = torus_all_types(2);
  CHECK(a2.records.size() == 2);
  int zero = 0;
  for (const auto& r : a2.records) zero += r.prob == 0;
  CHECK(zero == 1);
  CHECK(total_prob(a2.records) == 1);

  const Census a3 = torus_all_types(3);
  zero = 0;
  for (const auto& r : a3.records) zero += r.prob == 0;
  CHECK(a3.records.size() == 18);
  CHECK(zero == 14);
  auto positive = prob_map(limit_census(3));
  for (const auto& r : a3.records) {
    if (r.prob > 0) CHECK(positive.at(r.key) == r.prob);
  }
  CHECK_THROWS_AS(torus_all_types(4), ResourceGuard);
}

TEST_CASE("path statistics") {
  for (int n = 2; n <= 4; ++n) {
    const Census c = torus_limit_census(n, {}, true);
    auto plain = prob_map(limit_census(n));
    CHECK(c.records.size() == plain.size());
    for (const auto& r : c.records) {
      CHECK(r.prob == plain.at(r.key));
      Rational s = 0;
      for (const auto& p : r.paths) {
        s += p.prob;
        CHECK(path_violations(r, p, n).empty());
      }
      CHECK(s == r.prob);
    }
  }
}

TEST_CASE("order, threads and checkpoints do not change the census") {
  const auto ref = prob_map(limit_census(3));
  for (std::uint64_t seed : {1u, 7u, 99u}) {
    CensusOptions o;
    o.shuffle_seed = seed;
    CHECK(prob_map(torus_limit_census(3, o)) == ref);
  }
  CensusOptions t;
  t.threads = 3;
  const Census c3 = torus_limit_census(3, t);
  CHECK(prob_map(c3) == ref);
  for (std::size_t i = 0; i < c3.records.size(); ++i) {
    CHECK(c3.records[i].key == limit_census(3).records[i].key);
    CHECK(c3.records[i].aut == limit_census(3).records[i].aut);
  }

  const auto path = (std::filesystem::temp_directory_path() / "cubepack_test_checkpoint.json").string();
  std::filesystem::remove(path);
  CensusOptions guarded;
  guarded.checkpoint = path;
  guarded.max_frontier = 2;
  CHECK_THROWS_AS(torus_limit_census(3, guarded), ResourceGuard);
  REQUIRE(std::filesystem::exists(path));
  CensusOptions resume;
  resume.checkpoint = path;
  const Census resumed = torus_limit_census(3, resume);
  CHECK(prob_map(resumed) == ref);
  CHECK(resumed.level_sizes == limit_census(3).level_sizes);
  CHECK_THROWS(torus_limit_census(2, resume));  // tag mismatch
  std::filesystem::remove(path);
}

TEST_CASE("resource guards") {
  CHECK_THROWS_AS(torus_limit_census(5), ResourceGuard);
  CHECK_THROWS_AS(cube_expansion(2, 5), ResourceGuard);
  CHECK_THROWS_AS(cube_expansion(2, 6), ResourceGuard);
  CensusOptions small;
  small.max_frontier = 10;
  CHECK_THROWS_AS(torus_limit_census(4, small), ResourceGuard);
  CHECK_THROWS(torus_limit_census(0));
  CHECK_THROWS(interpolate_Ck(3, {1, 2, 3}));
}

TEST_CASE("lamination mass and the derived bounds") {
  for (int n = 3; n <= 4; ++n) {
    Rational lam = 0;
    for (const auto& r : limit_census(n).records) {
      if (is_laminated(r.rep)) lam += r.prob;
    }
    CHECK(lam == q(2, n));
  }
  const Rational e3 = expected_cubes(limit_census(3).records);
  const Rational e4 = expected_cubes(limit_census(4).records);
  CHECK(e3 <= Rational(8) * q(1, 3) + q(4, 3) * 2 * 2);
  CHECK(e4 <= Rational(16) * q(1, 2) + e3);
  // printed constant 1/24 at n=4; the constant 1/48 follows from n=3 by induction
  CHECK(e4 / 16 <= 1 - q(16, 24 * 24));
  CHECK(e3 / 8 <= 1 - q(8, 6 * 48));
  CHECK(e4 / 16 <= 1 - q(16, 24 * 48));
}

TEST_CASE("max-nb classes against brute force in dimension 4") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<int> steps(0, 7);
    Packing p = oracle::random_packing(Space::torus, 4, steps(rng), rng);
    int best = -1;
    auto brute = brute_max_nb(p, best);
    CHECK(max_new_params(p) == best);
    std::vector<std::vector<Coordinate>> mine;
    for (const auto& c : max_nb_classes(p)) mine.emplace_back(c.coords.begin(), c.coords.end());
    std::sort(mine.begin(), mine.end());
    CHECK(mine == brute);
  }
}

TEST_CASE("packings with at least 2^n - 3 cubes extend, random dimension 5") {
  std::mt19937_64 rng(5);
  long checked = 0, near_full = 0;
  while (checked < 2000) {
    Packing p(Space::torus, 5);
    while (true) {
      ++checked;
      if (p.size() >= 29) ++near_full;
      CHECK_FALSE(violates_extendibility_bound(p));
      auto classes = enumerate_extension_classes(p);
      if (classes.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, classes.size() - 1);
      p = apply_class(p, classes[pick(rng)]).normalized();
    }
  }
  CHECK(near_full > 0);
}

TEST_CASE("product identities on census pairs") {
  std::vector<Packing> reps;
  for (int n = 1; n <= 2; ++n) {
    for (const auto& r : limit_census(n).records) reps.push_back(r.rep);
  }
  for (const auto& r : torus_all_types(2).records) reps.push_back(r.rep);
  for (const auto& r : limit_census(3).records) reps.push_back(r.rep);
  for (const Packing& a : reps) {
    for (const Packing& b : reps) {
      if (a.dim() + b.dim() > 4) continue;
      const Packing p = product(a, b);
      CHECK(p.size() == a.size() * b.size());
      CHECK(p.param_count() == a.param_count() + static_cast<int>(a.size()) * b.param_count());
      CHECK(is_extensible(p) == (is_extensible(a) || is_extensible(b)));
    }
  }
  // f(n+m) <= f(n) f(m) on the computed values
  const int f[] = {0, 2, 4, 4, 6};
  for (int a = 1; a <= 4; ++a) {
    for (int b = 1; a + b <= 4; ++b) CHECK(f[a + b] <= f[a] * f[b]);
  }
}

TEST_CASE("cube expansion") {
  // one dimension: E = 1 + 2/(N+1)
  const Expansion e1 = cube_expansion(1, 4);
  const RationalFunction exact1(Polynomial{3, 1}, Polynomial{1, 1});
  CHECK(e1.expected == expand(exact1, 4));
  CHECK(e1.expected.coeffs() == std::vector<Rational>{1, 2, -4, 8, -16});

  // counts stabilize once n >= k
  CHECK(cube_expansion(3, 4).types_up_to == std::vector<std::size_t>{1, 2, 3, 7, 10});
  const Expansion e4 = cube_expansion(4, 4);
  CHECK(e4.types_up_to == std::vector<std::size_t>{1, 2, 3, 7, 18});
  CHECK(cube_expansion(5, 4).types_up_to == e4.types_up_to);
  Rational s = 0;
  for (const auto& r : e4.records) {
    CHECK(r.order == r.prob.valuation());
    s += r.prob[0];
  }
  CHECK(s == 1);

  const auto C = interpolate_Ck(3, {1, 2, 3, 4, 5});
  CHECK(C[0] == Polynomial{1});
  CHECK(C[1] == Polynomial{0, 2});
  CHECK(C[2] == Polynomial{0, -8, 4});
  CHECK(C[3] == Polynomial(std::vector<Rational>{0, q(149, 3), q(-153, 3), q(28, 3)}));
  for (int k = 0; k <= 3; ++k) CHECK(C[static_cast<std::size_t>(k)].degree() == k);
}

TEST_CASE("series and rational-function expansions agree") {
  for (int n = 1; n <= 3; ++n) {
    for (int K = 0; K <= 3; ++K) {
      CHECK(cube_expansion(n, K).expected == cube_expansion_ratfun(n, K));
    }
  }
}

TEST_CASE("second-order closed form re-expanded") {
  // 1 + 2n/(N+1) + 4n(n-1)/(N+1)^2 in x = 1/(N-1)
  const auto C = interpolate_Ck(2, {1, 2, 3, 4});
  for (int n = 1; n <= 6; ++n) {
    const Polynomial Np1{1, 1};
    const RationalFunction f = RationalFunction(Rational(1)) + RationalFunction(Polynomial{2 * n}, Np1) +
                               RationalFunction(Polynomial{4 * n * (n - 1)}, Np1 * Np1);
    const Series s = expand(f, 2);
    for (int k = 0; k <= 2; ++k) CHECK(s[k] == C[static_cast<std::size_t>(k)](Rational(n)));
  }
}

TEST_CASE("finite grid N=2") {
  struct Row {
    int n, tilings, packings, f;
  };
  // n=3 gives 9 tilings; see the notes for the brute-force check
  for (Row row : {Row{1, 1, 0, 2}, Row{2, 2, 0, 4}, Row{3, 9, 1, 4}}) {
    const Census c = finite_N_census(row.n, 2, Space::torus);
    int t = 0, p = 0;
    for (const auto& r : c.records) (r.tiling ? t : p)++;
    CHECK(t == row.tilings);
    CHECK(p == row.packings);
    CHECK(min_nonextensible(c.records).f == row.f);
    CHECK(total_prob(c.records) == 1);
  }
  const MinSearch s = finite_N_min_search(3, 2, 8);
  CHECK(s.found);
  CHECK(s.f == 4);
  const MinSearch capped = finite_N_min_search(4, 2, 4);
  CHECK_FALSE(capped.found);
  CHECK(capped.lower_bound == 5);
  CHECK_THROWS(finite_N_census(2, 0, Space::torus));
}

TEST_CASE("finite census approaches the limit probabilities") {
  const auto ref = prob_map(limit_census(2));
  const Census c = finite_N_census(2, 200, Space::torus);
  Rational tiling = 0;
  for (const auto& r : c.records) {
    if (ref.count(r.key)) tiling += r.prob;
  }
  CHECK(tiling > q(9, 10));
  CHECK(tiling < 1);
}

TEST_CASE("ordering replay separates zero and positive limit probability") {
  for (const auto& r : torus_all_types(3).records) {
    const OrderingReplay rep = replay_orderings(r.rep);
    CHECK(rep.orderings == 40320 / (r.m == 8 ? 1 : 1680));
    CHECK((rep.positive > 0) == (r.prob > 0));
  }
  for (const auto& r : limit_census(4).records) {
    if (r.m <= 8) CHECK(replay_orderings(r.rep).positive > 0);
  }
  for (const auto& f : builtin_fixtures()) {
    if (f.group == "figure3") CHECK(replay_orderings(f.packing).positive == 0);
  }
}

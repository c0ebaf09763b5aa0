#pragma once

// Breadth-first enumeration of combinatorial types with merging by
// canonical key and exact probability accumulation.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubepack/canonical.hpp"
#include "cubepack/exact.hpp"
#include "cubepack/packing.hpp"

namespace cubepack {

class ResourceGuard : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CensusOptions {
  int threads = 1;
  /// Lift the size guards (n >= 5 torus, cube order >= 5).
  bool allow_large = false;
  /// Abort with ResourceGuard when a frontier level exceeds this (0: none).
  std::size_t max_frontier = 0;
  /// Frontier file written after every level; an existing file with the
  /// same run tag is resumed.
  std::string checkpoint;
  /// Process each frontier level in a shuffled order.
  std::optional<std::uint64_t> shuffle_seed;
  bool want_aut = true;
  EncodeOptions encoding;
  std::function<void(int level, std::size_t frontier, std::size_t terminals)> progress;
};

/// Histogram N_{k,p}: entry k counts cubes added with k new parameters.
using NewParams = std::vector<int>;

struct PathStats {
  NewParams newparams;
  Rational prob;
};

struct CensusRecord {
  CanonicalKey key;
  Packing rep;
  int m = 0;
  int nparams = 0;
  Rational prob;
  bool extensible = false;
  bool tiling = false;
  BigInt aut = 1;
  /// Filled by path-tracked runs.
  std::vector<PathStats> paths;
};

struct Census {
  int n = 0;
  std::vector<CensusRecord> records;  // terminal types
  std::vector<std::size_t> level_sizes;
  /// True when a search stopped early (min search, level cap).
  bool truncated = false;
};

/// Sort rows by m desc, nparams desc, then digest of the key.
void sort_records(std::vector<CensusRecord>& records);

/// Torus, N -> infinity: every step picks uniformly among the classes of
/// largest nb. Only types of positive probability are produced.
Census torus_limit_census(int n, const CensusOptions& opt = {}, bool track_paths = false);

/// Every non-extensible type reachable through any sequence of classes,
/// with its limit probability (0 for the types the limit process misses).
Census torus_all_types(int n, const CensusOptions& opt = {});

/// Sum of prob * m.
Rational expected_cubes(const std::vector<CensusRecord>& records);
Rational expected_cubes_limit(int n, const CensusOptions& opt = {});

struct MinNonextensible {
  int f = -1;
  std::vector<CensusRecord> witnesses;
};
/// Least m over terminal records.
MinNonextensible min_nonextensible(const std::vector<CensusRecord>& records);

/// Finite grid 1/N: class weights are realization counts. Types are merged
/// by combinatorial equivalence.
Census finite_N_census(int n, long N, Space space, const CensusOptions& opt = {});

struct MinSearch {
  /// Exact minimum when found = true; otherwise every m < lower_bound is
  /// ruled out.
  bool found = false;
  int f = -1;
  int lower_bound = 0;
  std::vector<Packing> witnesses;
  std::vector<std::size_t> level_sizes;
};
/// Level-by-level search for the smallest maximal torus packing at grid N.
/// Stops at the first level holding a maximal packing; packings of more
/// than `max_cubes` cubes are not examined.
MinSearch finite_N_min_search(int n, long N, int max_cubes, const CensusOptions& opt = {});

struct ExpansionRecord {
  CanonicalKey key;
  Packing rep;
  int m = 0;
  Series prob;
  int order = 0;
  BigInt aut = 1;
};

struct Expansion {
  int n = 0;
  int order = 0;
  std::vector<ExpansionRecord> records;
  /// E(M^C_N(n)) through x^K, x = 1/(N-1).
  Series expected;
  /// Number of terminal types of order <= k, k = 0..K.
  std::vector<std::size_t> types_up_to;
  std::vector<std::size_t> level_sizes;
};

/// Cube space, order-K truncation with face pruning below
/// dim(Poss) - (K - ord).
Expansion cube_expansion(int n, int K, const CensusOptions& opt = {});

/// Same process with probabilities kept as rational functions of N,
/// expanded at the end. Slow; meant as a cross-check.
Series cube_expansion_ratfun(int n, int K, const CensusOptions& opt = {});

/// C_k(n) for k = 0..K interpolated over `dims`; one extra dimension beyond
/// K+1 is used as an overdetermination check.
std::vector<Polynomial> interpolate_Ck(int K, const std::vector<int>& dims, const CensusOptions& opt = {});

/// Invariant checks on a terminal torus record. Returns one message per
/// failed property. The parameter bound is checked for positive probability
/// only.
std::vector<std::string> terminal_violations(const CensusRecord& r, int n);
/// NumberParameters checks for one path histogram of a limit-census record.
std::vector<std::string> path_violations(const CensusRecord& r, const PathStats& path, int n);

struct OrderingReplay {
  BigInt orderings;  // m!
  BigInt positive;   // orderings where every cube is a max-nb class of its prefix
};
/// Replays the limit process over every order of the cubes of p. The limit
/// probability of p is zero iff `positive` is zero. At most 24 cubes.
OrderingReplay replay_orderings(const Packing& p);

/// Every torus packing with 2^n - 3 <= m < 2^n cubes must be extensible.
bool violates_extendibility_bound(const Packing& p);

}  // namespace cubepack

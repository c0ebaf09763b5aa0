#pragma once

// Explicit packings: products, H_n matrices and their tilings,
// 1-factorization packings, rod tilings, and the named fixture corpus.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cubepack/exact.hpp"
#include "cubepack/packing.hpp"

namespace cubepack {

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The 1-dimensional tiling {t, t+1}.
Packing cp1();

/// Cubes (z^i, z'^{i,j}) with an independent copy of q for every cube of p.
Packing product(const Packing& p, const Packing& q);

/// H_n for odd n >= 3: column i holds t_i on the diagonal and, for
/// k = 1..(n-1)/2, a shared parameter s with row i+k at s and row i-k at
/// s+1 (indices mod n).
Packing h_matrix(int n);

using Permutation = std::vector<int>;  // 0-based images

/// Parses cycle notation such as "(1,2)(3,5,4)" over {1..n}.
Permutation parse_cycles(const std::string& text, int n);

/// Conjugates of `sigma` under the dihedral group acting on Z/n.
std::vector<Permutation> dihedral_orbit(const Permutation& sigma);

/// H_n, H_n + Id and one cube per permutation in the dihedral orbits of
/// `perms`: the cube z with z_j = m_{sigma(j),j} + 1. Throws
/// ConstructionError if the result is not a tiling.
Packing hn_tiling(int n, const std::vector<Permutation>& perms);

struct OneFactorization {
  int vertices = 0;
  std::vector<std::vector<std::pair<int, int>>> matchings;
};

/// Round-robin 1-factorization of K_{2p}.
OneFactorization one_factorization(int vertices);

/// One coordinate per matching and one cube per vertex; the edge {u,v}
/// of a matching gives u the literal s and v the literal s+1.
Packing factorization_packing(const OneFactorization& f);

/// The eight vectors h^1..h^8 of the 3-dimensional rod tiling.
Packing rod_skeleton();

/// (h^i, w^{i,j}) over eight (n-3)-dimensional tilings, each used as an
/// independent copy. For n = 3 pass an empty vector.
Packing rod_tiling(int n, const std::vector<Packing>& fillers);
/// Rod tiling with eight product tilings CP1^(n-3) as fillers.
Packing rod_tiling(int n);

/// p^15_1(n), the limit probability of the rod skeleton stage.
Rational rod_probability(int n);

struct Fixture {
  std::string name;
  std::string group;  // figure2, figure3, dim4, h-matrices
  Packing packing;
  std::map<std::string, std::string> expect;
};

/// Fixtures typed into the source, independent of the JSON corpus.
std::vector<Fixture> builtin_fixtures();

/// All *.json packings under dir/group (sorted by file name).
std::vector<Fixture> load_fixtures(const std::string& dir, const std::string& group);

/// Permutation lists per dimension from dir/table4/permutations.json.
std::map<int, std::vector<std::string>> load_table4(const std::string& dir);

}  // namespace cubepack

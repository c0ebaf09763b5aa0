#pragma once

// Combinatorial cube packings of the cube [0,2]^n and the torus R^n/2Z^n.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubepack/exact.hpp"

namespace cubepack {

enum class Space : std::uint8_t { cube, torus };

std::string to_string(Space s);
Space parse_space(const std::string& s);

using ParamId = std::uint32_t;

/// One coordinate of a combinatorial cube: ZERO or ONE (cube space), a
/// parameter literal t or t+1, or FRESH (only inside extension classes).
/// Encoded in one word so that cubes compare and hash cheaply.
class Coordinate {
 public:
  static constexpr Coordinate zero() { return Coordinate(0); }
  static constexpr Coordinate one() { return Coordinate(1); }
  static constexpr Coordinate literal(ParamId p, int shift = 0) {
    return Coordinate(2 + 2 * p + static_cast<std::uint32_t>(shift & 1));
  }
  static constexpr Coordinate fresh() { return Coordinate(kFresh); }

  constexpr bool is_zero() const { return code_ == 0; }
  constexpr bool is_one() const { return code_ == 1; }
  constexpr bool is_boundary() const { return code_ < 2; }
  constexpr bool is_fresh() const { return code_ == kFresh; }
  constexpr bool is_literal() const { return code_ >= 2 && code_ != kFresh; }

  constexpr ParamId param() const { return (code_ - 2) >> 1; }
  constexpr int shift() const { return static_cast<int>(code_ & 1); }

  /// ZERO <-> ONE, t <-> t+1. FRESH is left alone.
  constexpr Coordinate flipped() const { return is_fresh() ? *this : Coordinate(code_ ^ 1u); }

  constexpr std::uint32_t code() const { return code_; }
  friend constexpr auto operator<=>(Coordinate, Coordinate) = default;

  std::string to_string() const;

 private:
  static constexpr std::uint32_t kFresh = 0xffffffffu;
  constexpr explicit Coordinate(std::uint32_t code) : code_(code) {}
  std::uint32_t code_;
};

using Cube = std::vector<Coordinate>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// False iff some coordinate separates the cubes: {0,1} in cube space, or t
/// against t+1 in the torus.
bool overlaps(const Cube& a, const Cube& b, Space space);

/// A family of combinatorial cubes in insertion order. Parameters are owned
/// by the coordinate they occur in. The constructor does not check the
/// packing invariants; use validate().
class Packing {
 public:
  Packing() : Packing(Space::torus, 0) {}
  Packing(Space space, int dim);
  Packing(Space space, int dim, std::vector<Cube> cubes);

  Space space() const { return space_; }
  int dim() const { return dim_; }
  std::size_t size() const { return cubes_.size(); }
  bool empty() const { return cubes_.empty(); }
  const std::vector<Cube>& cubes() const { return cubes_; }
  const Cube& cube(std::size_t i) const { return cubes_[i]; }

  /// N(CP): number of distinct parameters.
  int param_count() const { return nparams_; }
  /// One past the largest parameter id in use.
  ParamId param_bound() const { return static_cast<ParamId>(param_coord_.size()); }
  /// Coordinate owning `p` (first occurrence), or -1 if unused.
  int param_coordinate(ParamId p) const {
    return p < param_coord_.size() ? param_coord_[p] : -1;
  }
  /// Parameters occurring in coordinate j, ascending.
  std::vector<ParamId> params_in(int j) const;

  Packing with_cube(Cube c) const;
  /// Same packing with parameters renumbered 0..N-1 by first occurrence.
  Packing normalized() const;

  friend bool operator==(const Packing& a, const Packing& b) {
    return a.space_ == b.space_ && a.dim_ == b.dim_ && a.cubes_ == b.cubes_;
  }

 private:
  void index_params();

  Space space_;
  int dim_;
  std::vector<Cube> cubes_;
  std::vector<int> param_coord_;
  int nparams_ = 0;
};

struct Violation {
  enum class Kind { dimension, coordinate_kind, param_coordinate, overlap, too_many_cubes };
  Kind kind;
  int cube_a = -1;
  int cube_b = -1;
  int coordinate = -1;
  std::string message;
};

std::string to_string(Violation::Kind k);

/// First violated packing invariant, if any.
std::optional<Violation> validate(const Packing& p);

bool is_tiling(const Packing& p);

/// N_j(CP) for every coordinate j.
std::vector<int> coordinate_param_counts(const Packing& p);

/// Torus only: some coordinate carries the same parameter in every cube.
bool is_laminated(const Packing& p);

class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PackingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The combinatorial type of a discrete packing with corners on (1/N)Z^n.
/// Cube space: 0 and 1 stay boundary values, every interior value becomes
/// its own parameter. Torus: k/N mod 2 becomes t_k, k/N + 1 mod 2 becomes
/// t_k + 1, one parameter per (residue, coordinate).
Packing phi(const std::vector<std::vector<Rational>>& corners, long N, Space space);

}  // namespace cubepack

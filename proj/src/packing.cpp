#include "cubepack/packing.hpp"

#include <algorithm>
#include <map>

namespace cubepack {

std::string to_string(Space s) { return s == Space::cube ? "cube" : "torus"; }

Space parse_space(const std::string& s) {
  if (s == "cube") return Space::cube;
  if (s == "torus") return Space::torus;
  throw std::invalid_argument("unknown space '" + s + "' (expected cube or torus)");
}

std::string Coordinate::to_string() const {
  if (is_zero()) return "0";
  if (is_one()) return "1";
  if (is_fresh()) return "*";
  std::string s = "t" + std::to_string(param() + 1);
  if (shift()) s += "+1";
  return s;
}

bool overlaps(const Cube& a, const Cube& b, Space space) {
  if (a.size() != b.size()) throw DimensionError("cubes of different dimension");
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j].is_fresh() || b[j].is_fresh()) continue;
    if (space == Space::cube) {
      if (a[j].is_boundary() && b[j] == a[j].flipped()) return false;
    } else if (a[j].is_literal() && b[j] == a[j].flipped()) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

Packing::Packing(Space space, int dim) : space_(space), dim_(dim) {
  if (dim < 0) throw DimensionError("negative dimension");
}

Packing::Packing(Space space, int dim, std::vector<Cube> cubes) : space_(space), dim_(dim), cubes_(std::move(cubes)) {
  if (dim < 0) throw DimensionError("negative dimension");
  index_params();
}

void Packing::index_params() {
  param_coord_.clear();
  nparams_ = 0;
  for (const Cube& c : cubes_) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (!c[j].is_literal()) continue;
      const ParamId p = c[j].param();
      if (p >= param_coord_.size()) param_coord_.resize(p + 1, -1);
      if (param_coord_[p] < 0) {
        param_coord_[p] = static_cast<int>(j);
        ++nparams_;
      }
    }
  }
}

std::vector<ParamId> Packing::params_in(int j) const {
  std::vector<ParamId> out;
  for (ParamId p = 0; p < param_coord_.size(); ++p) {
    if (param_coord_[p] == j) out.push_back(p);
  }
  return out;
}

Packing Packing::with_cube(Cube c) const {
  Packing p = *this;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (!c[j].is_literal()) continue;
    const ParamId id = c[j].param();
    if (id >= p.param_coord_.size()) p.param_coord_.resize(id + 1, -1);
    if (p.param_coord_[id] < 0) {
      p.param_coord_[id] = static_cast<int>(j);
      ++p.nparams_;
    }
  }
  p.cubes_.push_back(std::move(c));
  return p;
}

Packing Packing::normalized() const {
  std::vector<ParamId> rename(param_coord_.size(), ~ParamId{0});
  ParamId next = 0;
  std::vector<Cube> cubes = cubes_;
  for (Cube& c : cubes) {
    for (Coordinate& x : c) {
      if (!x.is_literal()) continue;
      ParamId& r = rename[x.param()];
      if (r == ~ParamId{0}) r = next++;
      x = Coordinate::literal(r, x.shift());
    }
  }
  return Packing(space_, dim_, std::move(cubes));
}

// ---------------------------------------------------------------------------

std::string to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::dimension: return "dimension";
    case Violation::Kind::coordinate_kind: return "coordinate-kind";
    case Violation::Kind::param_coordinate: return "param-coordinate";
    case Violation::Kind::overlap: return "overlap";
    case Violation::Kind::too_many_cubes: return "too-many-cubes";
  }
  return "unknown";
}

std::optional<Violation> validate(const Packing& p) {
  const auto n = static_cast<std::size_t>(p.dim());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Cube& c = p.cube(i);
    if (c.size() != n) {
      return Violation{Violation::Kind::dimension, static_cast<int>(i), -1, -1,
                       "cube " + std::to_string(i) + " has " + std::to_string(c.size()) + " coordinates, expected " +
                           std::to_string(n)};
    }
    for (std::size_t j = 0; j < n; ++j) {
      const Coordinate x = c[j];
      const bool bad = x.is_fresh() || (p.space() == Space::torus && x.is_boundary()) ||
                       (p.space() == Space::cube && x.is_literal() && x.shift() != 0);
      if (bad) {
        return Violation{Violation::Kind::coordinate_kind, static_cast<int>(i), -1, static_cast<int>(j),
                         "cube " + std::to_string(i) + " coordinate " + std::to_string(j) + " holds " + x.to_string() +
                             ", not allowed in " + to_string(p.space()) + " space"};
      }
      if (x.is_literal() && p.param_coordinate(x.param()) != static_cast<int>(j)) {
        return Violation{Violation::Kind::param_coordinate, static_cast<int>(i), -1, static_cast<int>(j),
                         "parameter " + std::to_string(x.param()) + " occurs in coordinates " +
                             std::to_string(p.param_coordinate(x.param())) + " and " + std::to_string(j)};
      }
    }
  }
  if (p.dim() < 64 && p.size() > (std::size_t{1} << p.dim())) {
    return Violation{Violation::Kind::too_many_cubes, -1, -1, -1,
                     std::to_string(p.size()) + " cubes exceed 2^" + std::to_string(p.dim())};
  }
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t b = a + 1; b < p.size(); ++b) {
      if (overlaps(p.cube(a), p.cube(b), p.space())) {
        return Violation{Violation::Kind::overlap, static_cast<int>(a), static_cast<int>(b), -1,
                         "cubes " + std::to_string(a) + " and " + std::to_string(b) + " overlap"};
      }
    }
  }
  return std::nullopt;
}

bool is_tiling(const Packing& p) {
  return p.dim() < 64 && p.size() == (std::size_t{1} << p.dim());
}

std::vector<int> coordinate_param_counts(const Packing& p) {
  std::vector<int> counts(static_cast<std::size_t>(p.dim()), 0);
  for (ParamId t = 0; t < p.param_bound(); ++t) {
    const int j = p.param_coordinate(t);
    if (j >= 0) ++counts[static_cast<std::size_t>(j)];
  }
  return counts;
}

bool is_laminated(const Packing& p) {
  if (p.space() != Space::torus || p.empty()) return false;
  for (int j = 0; j < p.dim(); ++j) {
    const ParamId t = p.cube(0)[static_cast<std::size_t>(j)].param();
    const bool all = std::all_of(p.cubes().begin(), p.cubes().end(),
                                 [&](const Cube& c) { return c[static_cast<std::size_t>(j)].param() == t; });
    if (all) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

Packing phi(const std::vector<std::vector<Rational>>& corners, long N, Space space) {
  if (N < 1) throw GridError("grid resolution N must be positive");
  int dim = corners.empty() ? 0 : static_cast<int>(corners.front().size());
  std::vector<Cube> cubes;
  cubes.reserve(corners.size());
  std::map<std::pair<int, long>, ParamId> residue_param;  // torus: (coordinate, k mod N)
  ParamId next = 0;
  for (const auto& z : corners) {
    if (static_cast<int>(z.size()) != dim) throw DimensionError("corners of different dimension");
    Cube c;
    c.reserve(z.size());
    for (int j = 0; j < dim; ++j) {
      const Rational scaled = z[static_cast<std::size_t>(j)] * N;
      if (scaled.get_den() != 1) {
        throw GridError("value " + to_string(z[static_cast<std::size_t>(j)]) + " is not on the 1/" + std::to_string(N) +
                        " grid");
      }
      long k = scaled.get_num().get_si();
      if (space == Space::cube) {
        if (k < 0 || k > N) throw GridError("cube corner outside [0,1]");
        if (k == 0) {
          c.push_back(Coordinate::zero());
        } else if (k == N) {
          c.push_back(Coordinate::one());
        } else {
          c.push_back(Coordinate::literal(next++));
        }
      } else {
        k %= 2 * N;
        if (k < 0) k += 2 * N;
        const long residue = k % N;
        auto [it, inserted] = residue_param.try_emplace({j, residue}, next);
        if (inserted) ++next;
        c.push_back(Coordinate::literal(it->second, k >= N ? 1 : 0));
      }
    }
    cubes.push_back(std::move(c));
  }
  Packing p(space, dim, std::move(cubes));
  if (auto v = validate(p)) throw PackingError("discrete input is not a packing: " + v->message);
  return p.normalized();
}

}  // namespace cubepack

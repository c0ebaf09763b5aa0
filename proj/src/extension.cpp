#include "cubepack/extension.hpp"

#include <algorithm>
#include <cstdint>

namespace cubepack {

namespace {

class Mask {
 public:
  explicit Mask(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  Mask& operator|=(const Mask& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  friend Mask operator|(Mask a, const Mask& b) { return a |= b; }
  friend bool operator==(const Mask&, const Mask&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

struct Candidate {
  Coordinate value;
  Mask blocks;
};

// Per coordinate, the non-FRESH values a new cube may take and the cubes
// each of them separates from.
struct BlockTable {
  std::vector<std::vector<Candidate>> coord;
  std::vector<Mask> suffix;  // union of all candidate masks at coordinates >= j
  Mask all;
};

BlockTable block_table(const Packing& p) {
  const auto n = static_cast<std::size_t>(p.dim());
  const std::size_t m = p.size();
  BlockTable t;
  t.coord.resize(n);
  t.all = Mask(m);
  for (std::size_t i = 0; i < m; ++i) t.all.set(i);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Coordinate> values;
    if (p.space() == Space::cube) {
      values = {Coordinate::zero(), Coordinate::one()};
    } else {
      for (ParamId q : p.params_in(static_cast<int>(j))) {
        values.push_back(Coordinate::literal(q, 0));
        values.push_back(Coordinate::literal(q, 1));
      }
    }
    for (Coordinate v : values) {
      Candidate c{v, Mask(m)};
      for (std::size_t i = 0; i < m; ++i) {
        if (p.cube(i)[j] == v.flipped()) c.blocks.set(i);
      }
      t.coord[j].push_back(std::move(c));
    }
  }
  t.suffix.assign(n + 1, Mask(m));
  for (std::size_t j = n; j-- > 0;) {
    t.suffix[j] = t.suffix[j + 1];
    for (const Candidate& c : t.coord[j]) t.suffix[j] |= c.blocks;
  }
  return t;
}

// Enumerates classes in sorted order. `max_literals` < 0 means unbounded.
void enumerate(const BlockTable& t, std::size_t j, const Mask& covered, int literals, int max_literals, Cube& cur,
               std::vector<ExtensionClass>& out) {
  const std::size_t n = t.coord.size();
  if ((covered | t.suffix[j]) != t.all) return;
  if (j == n) {
    out.push_back({cur, static_cast<int>(n) - literals});
    return;
  }
  if (max_literals < 0 || literals < max_literals) {
    for (const Candidate& c : t.coord[j]) {
      cur[j] = c.value;
      enumerate(t, j + 1, covered | c.blocks, literals + 1, max_literals, cur, out);
    }
  }
  if (max_literals >= 0 && covered != t.all && literals == max_literals) return;
  cur[j] = Coordinate::fresh();
  enumerate(t, j + 1, covered, literals, max_literals, cur, out);
}

bool is_full(const Packing& p) { return p.dim() < 64 && p.size() >= (std::size_t{1} << p.dim()); }

}  // namespace

std::string ExtensionClass::to_string() const {
  std::string s = "(";
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (j) s += ",";
    s += coords[j].to_string();
  }
  return s + ")";
}

std::vector<ExtensionClass> enumerate_extension_classes(const Packing& p) {
  std::vector<ExtensionClass> out;
  if (is_full(p)) return out;
  const BlockTable t = block_table(p);
  Cube cur(static_cast<std::size_t>(p.dim()), Coordinate::fresh());
  enumerate(t, 0, Mask(p.size()), 0, -1, cur, out);
  return out;
}

std::vector<ExtensionClass> max_nb_classes(const Packing& p) {
  std::vector<ExtensionClass> out;
  if (is_full(p)) return out;
  const BlockTable t = block_table(p);
  Cube cur(static_cast<std::size_t>(p.dim()), Coordinate::fresh());
  for (int k = 0; k <= p.dim() && out.empty(); ++k) {
    enumerate(t, 0, Mask(p.size()), 0, k, cur, out);
  }
  return out;
}

int max_new_params(const Packing& p) {
  const auto classes = max_nb_classes(p);
  return classes.empty() ? -1 : classes.front().nb;
}

BigInt class_size(const Packing& p, const ExtensionClass& c, long N) {
  BigInt size = 1;
  if (p.space() == Space::cube) {
    for (int k = 0; k < c.nb; ++k) size *= N - 1;
    return size;
  }
  const auto counts = coordinate_param_counts(p);
  for (std::size_t j = 0; j < c.coords.size(); ++j) {
    if (!c.coords[j].is_fresh()) continue;
    const long f = 2 * N - 2 * counts[j];
    if (f <= 0) return 0;
    size *= f;
  }
  return size;
}

std::vector<WeightedClass> finite_step_distribution(const Packing& p, long N) {
  if (N < 1) throw DegenerateError("grid resolution N must be positive");
  std::vector<WeightedClass> out;
  const auto classes = enumerate_extension_classes(p);
  if (classes.empty()) return out;
  std::vector<BigInt> sizes;
  BigInt total = 0;
  for (const auto& c : classes) {
    sizes.push_back(class_size(p, c, N));
    total += sizes.back();
  }
  if (total == 0) throw DegenerateError("every extension class is empty at N=" + std::to_string(N));
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (sizes[i] == 0) continue;
    Rational q(sizes[i], total);
    q.canonicalize();
    out.push_back({classes[i], q});
  }
  return out;
}

std::vector<WeightedClass> limit_step_distribution(const Packing& p) {
  std::vector<WeightedClass> out;
  const auto classes = max_nb_classes(p);
  const Rational q(1, static_cast<long>(classes.size() ? classes.size() : 1));
  for (const auto& c : classes) out.push_back({c, q});
  return out;
}

std::optional<ExtensionClass> extension_witness(const Packing& p) {
  if (is_full(p)) return std::nullopt;
  const auto n = static_cast<std::size_t>(p.dim());
  Cube assign(n, Coordinate::fresh());

  auto can_block = [&](const Cube& c, std::size_t j) {
    if (p.space() == Space::cube && !c[j].is_boundary()) return false;
    return assign[j].is_fresh() || assign[j] == c[j].flipped();
  };
  auto is_blocked = [&](const Cube& c) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!assign[j].is_fresh() && assign[j] == c[j].flipped()) return true;
    }
    return false;
  };

  auto search = [&](auto&& self) -> bool {
    int best = -1;
    int best_options = static_cast<int>(n) + 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Cube& c = p.cube(i);
      if (is_blocked(c)) continue;
      int options = 0;
      for (std::size_t j = 0; j < n; ++j) options += can_block(c, j);
      if (options < best_options) {
        best = static_cast<int>(i);
        best_options = options;
        if (options == 0) return false;
      }
    }
    if (best < 0) return true;
    const Cube& c = p.cube(static_cast<std::size_t>(best));
    for (std::size_t j = 0; j < n; ++j) {
      if (!can_block(c, j)) continue;
      assign[j] = c[j].flipped();
      if (self(self)) return true;
      assign[j] = Coordinate::fresh();
    }
    return false;
  };

  if (!search(search)) return std::nullopt;
  ExtensionClass c{assign, 0};
  c.nb = static_cast<int>(std::count_if(assign.begin(), assign.end(), [](Coordinate x) { return x.is_fresh(); }));
  return c;
}

bool is_extensible(const Packing& p) { return extension_witness(p).has_value(); }

Packing apply_class(const Packing& p, const ExtensionClass& c) {
  Cube cube = c.coords;
  ParamId next = p.param_bound();
  for (Coordinate& x : cube) {
    if (x.is_fresh()) x = Coordinate::literal(next++);
  }
  return p.with_cube(std::move(cube));
}

std::vector<Face> poss_complex(const Packing& p) {
  if (p.space() != Space::cube) throw std::invalid_argument("poss_complex needs a cube-space packing");
  std::vector<Face> out;
  for (const auto& c : enumerate_extension_classes(p)) out.push_back({c.coords, c.nb});
  return out;
}

int max_face_dim(const std::vector<Face>& faces) {
  int d = -1;
  for (const auto& f : faces) d = std::max(d, f.dim);
  return d;
}

}  // namespace cubepack

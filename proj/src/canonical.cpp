#include "cubepack/canonical.hpp"

#include <algorithm>
#include <climits>
#include <numeric>

namespace cubepack {

int ColoredGraph::add_vertex(int c) {
  color.push_back(c);
  adj.emplace_back();
  return size() - 1;
}

void ColoredGraph::add_edge(int u, int v) {
  adj[static_cast<std::size_t>(u)].push_back(v);
  adj[static_cast<std::size_t>(v)].push_back(u);
}

namespace {

// Where each packing element lives in the encoded graph.
struct Encoding {
  ColoredGraph g;
  int m = 0;
  int n = 0;
  std::vector<int> param_vertex;       // by ParamId, -1 if unused
  std::vector<int> literal_vertex[2];  // torus: by ParamId and shift
  std::vector<int> zero_vertex, one_vertex;
};

Encoding build(const Packing& p, EncodeOptions opt) {
  Encoding e;
  e.m = static_cast<int>(p.size());
  e.n = p.dim();
  ColoredGraph& g = e.g;
  for (int i = 0; i < e.m; ++i) g.add_vertex(0);
  for (int j = 0; j < e.n; ++j) g.add_vertex(1);
  for (int c = 0; c < e.m * e.n; ++c) g.add_vertex(2);
  const auto coord_vertex = [&](int j) { return e.m + j; };

  e.param_vertex.assign(p.param_bound(), -1);
  if (p.space() == Space::torus) {
    e.literal_vertex[0].assign(p.param_bound(), -1);
    e.literal_vertex[1].assign(p.param_bound(), -1);
    for (ParamId t = 0; t < p.param_bound(); ++t) {
      const int j = p.param_coordinate(t);
      if (j < 0) continue;
      const int pv = g.add_vertex(3);
      e.param_vertex[t] = pv;
      g.add_edge(pv, coord_vertex(j));
      for (int s = 0; s < 2; ++s) {
        const int lv = g.add_vertex(4);
        e.literal_vertex[s][t] = lv;
        g.add_edge(lv, pv);
      }
    }
  } else {
    for (int j = 0; j < e.n; ++j) {
      const int pair = g.add_vertex(3);
      g.add_edge(pair, coord_vertex(j));
      e.zero_vertex.push_back(g.add_vertex(4));
      e.one_vertex.push_back(g.add_vertex(opt.reflections ? 4 : 5));
      g.add_edge(pair, e.zero_vertex.back());
      g.add_edge(pair, e.one_vertex.back());
    }
    for (ParamId t = 0; t < p.param_bound(); ++t) {
      const int j = p.param_coordinate(t);
      if (j < 0) continue;
      const int pv = g.add_vertex(6);
      e.param_vertex[t] = pv;
      g.add_edge(pv, coord_vertex(j));
    }
  }

  for (int i = 0; i < e.m; ++i) {
    for (int j = 0; j < e.n; ++j) {
      const int cell = e.m + e.n + i * e.n + j;
      g.add_edge(cell, i);
      g.add_edge(cell, coord_vertex(j));
      const Coordinate x = p.cube(static_cast<std::size_t>(i))[static_cast<std::size_t>(j)];
      int value;
      if (x.is_zero()) {
        value = e.zero_vertex[static_cast<std::size_t>(j)];
      } else if (x.is_one()) {
        value = e.one_vertex[static_cast<std::size_t>(j)];
      } else if (p.space() == Space::torus) {
        value = e.literal_vertex[x.shift()][x.param()];
      } else {
        value = e.param_vertex[x.param()];
      }
      g.add_edge(cell, value);
    }
  }
  return e;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Ordered partition: lab lists vertices by position, cell[v] is the first
// position of v's cell, len[s] the length of the cell starting at s.
struct Partition {
  std::vector<int> lab;
  std::vector<int> cell;
  std::vector<int> len;
  int cells = 0;

  bool discrete() const { return cells == static_cast<int>(lab.size()); }
};

class Refiner {
 public:
  explicit Refiner(const ColoredGraph& g) : g_(g), sig_(static_cast<std::size_t>(g.size())) {}

  void refine(Partition& pt) {
    const int V = g_.size();
    while (!pt.discrete()) {
      for (int v = 0; v < V; ++v) {
        std::uint64_t s = 0;
        for (int u : g_.adj[static_cast<std::size_t>(v)]) s += mix(static_cast<std::uint64_t>(pt.cell[static_cast<std::size_t>(u)]));
        sig_[static_cast<std::size_t>(v)] = s;
      }
      const int before = pt.cells;
      for (int s = 0; s < V;) {
        const int l = pt.len[static_cast<std::size_t>(s)];
        if (l > 1) split(pt, s, l);
        s += l;
      }
      if (pt.cells == before) break;
    }
  }

 private:
  void split(Partition& pt, int s, int l) {
    auto first = pt.lab.begin() + s;
    std::sort(first, first + l, [&](int a, int b) {
      return sig_[static_cast<std::size_t>(a)] < sig_[static_cast<std::size_t>(b)];
    });
    int start = s;
    for (int k = s + 1; k <= s + l; ++k) {
      if (k == s + l || sig_[static_cast<std::size_t>(pt.lab[static_cast<std::size_t>(k)])] !=
                            sig_[static_cast<std::size_t>(pt.lab[static_cast<std::size_t>(k - 1)])]) {
        pt.len[static_cast<std::size_t>(start)] = k - start;
        for (int q = start; q < k; ++q) pt.cell[static_cast<std::size_t>(pt.lab[static_cast<std::size_t>(q)])] = start;
        if (start != s) ++pt.cells;
        start = k;
      }
    }
  }

  const ColoredGraph& g_;
  std::vector<std::uint64_t> sig_;
};

Partition color_partition(const ColoredGraph& g) {
  const int V = g.size();
  Partition pt;
  pt.lab.resize(static_cast<std::size_t>(V));
  std::iota(pt.lab.begin(), pt.lab.end(), 0);
  std::stable_sort(pt.lab.begin(), pt.lab.end(), [&](int a, int b) {
    return g.color[static_cast<std::size_t>(a)] < g.color[static_cast<std::size_t>(b)];
  });
  pt.cell.assign(static_cast<std::size_t>(V), 0);
  pt.len.assign(static_cast<std::size_t>(V), 0);
  for (int k = 0; k < V;) {
    int e = k;
    const int c = g.color[static_cast<std::size_t>(pt.lab[static_cast<std::size_t>(k)])];
    while (e < V && g.color[static_cast<std::size_t>(pt.lab[static_cast<std::size_t>(e)])] == c) ++e;
    pt.len[static_cast<std::size_t>(k)] = e - k;
    for (int q = k; q < e; ++q) pt.cell[static_cast<std::size_t>(pt.lab[static_cast<std::size_t>(q)])] = k;
    ++pt.cells;
    k = e;
  }
  return pt;
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

using Cert = std::vector<std::uint64_t>;

class Search {
 public:
  explicit Search(const ColoredGraph& g) : g_(g), V_(g.size()), refiner_(g) {}

  void run() {
    Partition pt = color_partition(g_);
    node(std::move(pt), 0);
  }

  BigInt aut_order() {
    BigInt order = 1;
    for (std::size_t d = 0; d < first_path_.size(); ++d) {
      UnionFind uf = orbits(first_path_, d);
      const int root = uf.find(first_path_[d]);
      long count = 0;
      for (int v = 0; v < V_; ++v) count += uf.find(v) == root;
      order *= count;
    }
    return order;
  }

  const std::vector<int>& best_lab() const { return best_lab_; }
  std::size_t generators() const { return gens_.size(); }
  std::size_t leaves() const { return leaves_; }

 private:
  // Orbits of the group generated by the automorphisms fixing path[0..d).
  UnionFind orbits(const std::vector<int>& path, std::size_t d) const {
    UnionFind uf(V_);
    for (const auto& g : gens_) {
      bool fixes = true;
      for (std::size_t k = 0; k < d && fixes; ++k) fixes = g[static_cast<std::size_t>(path[k])] == path[k];
      if (!fixes) continue;
      for (int v = 0; v < V_; ++v) uf.unite(v, g[static_cast<std::size_t>(v)]);
    }
    return uf;
  }

  void node(Partition pt, std::size_t depth) {
    refiner_.refine(pt);
    if (pt.discrete()) {
      leaf(pt);
      return;
    }
    int target = -1;
    int target_len = 1;
    for (int s = 0; s < V_; s += pt.len[static_cast<std::size_t>(s)]) {
      if (pt.len[static_cast<std::size_t>(s)] > target_len) {
        target = s;
        target_len = pt.len[static_cast<std::size_t>(s)];
      }
    }
    std::vector<int> cell(pt.lab.begin() + target, pt.lab.begin() + target + target_len);
    std::sort(cell.begin(), cell.end());
    if (explored_.size() <= depth) explored_.resize(depth + 1);
    explored_[depth].clear();
    std::size_t seen_gens = SIZE_MAX;
    UnionFind uf(0);
    for (int w : cell) {
      if (seen_gens != gens_.size()) {
        uf = orbits(path_, depth);
        seen_gens = gens_.size();
      }
      const int rw = uf.find(w);
      if (std::any_of(explored_[depth].begin(), explored_[depth].end(), [&](int x) { return uf.find(x) == rw; })) {
        continue;
      }
      explored_[depth].push_back(w);
      Partition child = pt;
      individualize(child, w, target, target_len);
      path_.push_back(w);
      node(std::move(child), depth + 1);
      path_.pop_back();
      if (backjump_ < depth) return;
      backjump_ = SIZE_MAX;
    }
  }

  static void individualize(Partition& pt, int w, int s, int l) {
    auto it = std::find(pt.lab.begin() + s, pt.lab.begin() + s + l, w);
    std::iter_swap(pt.lab.begin() + s, it);
    pt.len[static_cast<std::size_t>(s)] = 1;
    pt.len[static_cast<std::size_t>(s + 1)] = l - 1;
    for (int q = s + 1; q < s + l; ++q) pt.cell[static_cast<std::size_t>(pt.lab[static_cast<std::size_t>(q)])] = s + 1;
    ++pt.cells;
  }

  Cert certificate(const std::vector<int>& pos) const {
    Cert c;
    for (int u = 0; u < V_; ++u) {
      for (int v : g_.adj[static_cast<std::size_t>(u)]) {
        const int a = pos[static_cast<std::size_t>(u)];
        const int b = pos[static_cast<std::size_t>(v)];
        if (a < b) c.push_back(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(V_) + static_cast<std::uint64_t>(b));
      }
    }
    std::sort(c.begin(), c.end());
    return c;
  }

  void leaf(const Partition& pt) {
    ++leaves_;
    std::vector<int> pos(static_cast<std::size_t>(V_));
    for (int k = 0; k < V_; ++k) pos[static_cast<std::size_t>(pt.lab[static_cast<std::size_t>(k)])] = k;
    Cert cert = certificate(pos);
    if (first_lab_.empty()) {
      first_lab_ = best_lab_ = pt.lab;
      first_cert_ = best_cert_ = std::move(cert);
      first_path_ = path_;
      return;
    }
    const std::vector<int>* match = nullptr;
    if (cert == first_cert_) {
      match = &first_lab_;
    } else if (cert == best_cert_) {
      match = &best_lab_;
    } else if (cert < best_cert_) {
      best_lab_ = pt.lab;
      best_cert_ = std::move(cert);
      return;
    } else {
      return;
    }
    std::vector<int> gamma(static_cast<std::size_t>(V_));
    for (int k = 0; k < V_; ++k) {
      gamma[static_cast<std::size_t>((*match)[static_cast<std::size_t>(k)])] = pt.lab[static_cast<std::size_t>(k)];
    }
    gens_.push_back(std::move(gamma));
    for (std::size_t d = 0; d < path_.size(); ++d) {
      UnionFind uf = orbits(path_, d);
      const int rw = uf.find(path_[d]);
      const bool merged = std::any_of(explored_[d].begin(), explored_[d].end() - 1,
                                      [&](int x) { return uf.find(x) == rw; });
      if (merged) {
        backjump_ = d;
        return;
      }
    }
  }

  const ColoredGraph& g_;
  int V_;
  Refiner refiner_;
  std::vector<std::vector<int>> gens_;
  std::vector<int> path_;
  std::vector<std::vector<int>> explored_;
  std::vector<int> first_lab_, best_lab_, first_path_;
  Cert first_cert_, best_cert_;
  std::size_t backjump_ = SIZE_MAX;
  std::size_t leaves_ = 0;
};

void put16(std::string& s, unsigned v) {
  s.push_back(static_cast<char>(v >> 8));
  s.push_back(static_cast<char>(v & 0xff));
}

}  // namespace

Labeling canonical_labeling(const ColoredGraph& g, bool want_aut) {
  Labeling out;
  if (g.size() == 0) return out;
  Search s(g);
  s.run();
  out.position.resize(static_cast<std::size_t>(g.size()));
  const auto& lab = s.best_lab();
  for (int k = 0; k < g.size(); ++k) out.position[static_cast<std::size_t>(lab[static_cast<std::size_t>(k)])] = k;
  if (want_aut) out.aut_order = s.aut_order();
  out.generators = s.generators();
  out.leaves = s.leaves();
  return out;
}

std::string graph_certificate(const ColoredGraph& g, const std::vector<int>& position) {
  const int V = g.size();
  std::string key;
  put16(key, static_cast<unsigned>(V));
  std::vector<int> colors = g.color;
  std::sort(colors.begin(), colors.end());
  for (std::size_t k = 0; k < colors.size();) {
    std::size_t e = k;
    while (e < colors.size() && colors[e] == colors[k]) ++e;
    put16(key, static_cast<unsigned>(colors[k]));
    put16(key, static_cast<unsigned>(e - k));
    k = e;
  }
  std::vector<std::uint8_t> bits((static_cast<std::size_t>(V) * static_cast<std::size_t>(V - 1) / 2 + 7) / 8, 0);
  const auto index = [V](std::size_t a, std::size_t b) {
    return a * static_cast<std::size_t>(V) - a * (a + 1) / 2 + (b - a - 1);
  };
  for (int u = 0; u < V; ++u) {
    for (int v : g.adj[static_cast<std::size_t>(u)]) {
      auto a = static_cast<std::size_t>(position[static_cast<std::size_t>(u)]);
      auto b = static_cast<std::size_t>(position[static_cast<std::size_t>(v)]);
      if (a >= b) continue;
      const std::size_t i = index(a, b);
      bits[i / 8] = static_cast<std::uint8_t>(bits[i / 8] | (1u << (i % 8)));
    }
  }
  key.append(bits.begin(), bits.end());
  return key;
}

CanonicalKey canonical_key(const Packing& p, EncodeOptions opt) {
  const Encoding e = build(p, opt);
  const Labeling lab = canonical_labeling(e.g);
  std::string key(1, p.space() == Space::torus ? 'T' : (opt.reflections ? 'C' : 'c'));
  return key + graph_certificate(e.g, lab.position);
}

BigInt automorphism_order(const Packing& p, EncodeOptions opt) {
  const Encoding e = build(p, opt);
  return canonical_labeling(e.g, true).aut_order;
}

bool are_equivalent(const Packing& a, const Packing& b, EncodeOptions opt) {
  if (a.space() != b.space() || a.dim() != b.dim() || a.size() != b.size()) return false;
  return canonical_key(a, opt) == canonical_key(b, opt);
}

namespace {

Packing relabel(const Packing& p, const Encoding& e, const Labeling& lab, EncodeOptions opt) {
  const auto pos = [&](int v) { return lab.position[static_cast<std::size_t>(v)]; };

  std::vector<int> cube_order(static_cast<std::size_t>(e.m)), coord_order(static_cast<std::size_t>(e.n));
  std::iota(cube_order.begin(), cube_order.end(), 0);
  std::iota(coord_order.begin(), coord_order.end(), 0);
  std::sort(cube_order.begin(), cube_order.end(), [&](int a, int b) { return pos(a) < pos(b); });
  std::sort(coord_order.begin(), coord_order.end(), [&](int a, int b) { return pos(e.m + a) < pos(e.m + b); });

  std::vector<ParamId> used;
  for (ParamId t = 0; t < p.param_bound(); ++t) {
    if (e.param_vertex[t] >= 0) used.push_back(t);
  }
  std::sort(used.begin(), used.end(), [&](ParamId a, ParamId b) { return pos(e.param_vertex[a]) < pos(e.param_vertex[b]); });
  std::vector<ParamId> rename(p.param_bound(), 0);
  for (std::size_t k = 0; k < used.size(); ++k) rename[used[k]] = static_cast<ParamId>(k);

  std::vector<Cube> cubes;
  for (int i : cube_order) {
    Cube c;
    for (int j : coord_order) {
      Coordinate x = p.cube(static_cast<std::size_t>(i))[static_cast<std::size_t>(j)];
      if (x.is_boundary()) {
        const bool reflect = opt.reflections && pos(e.one_vertex[static_cast<std::size_t>(j)]) <
                                                    pos(e.zero_vertex[static_cast<std::size_t>(j)]);
        c.push_back(reflect ? x.flipped() : x);
      } else if (p.space() == Space::torus) {
        const ParamId t = x.param();
        const bool swap = pos(e.literal_vertex[1][t]) < pos(e.literal_vertex[0][t]);
        c.push_back(Coordinate::literal(rename[t], x.shift() ^ (swap ? 1 : 0)));
      } else {
        c.push_back(Coordinate::literal(rename[x.param()]));
      }
    }
    cubes.push_back(std::move(c));
  }
  return Packing(p.space(), p.dim(), std::move(cubes));
}

}  // namespace

Packing canonical_form(const Packing& p, EncodeOptions opt) {
  const Encoding e = build(p, opt);
  return relabel(p, e, canonical_labeling(e.g), opt);
}

Canonical canonicalize(const Packing& p, EncodeOptions opt) {
  const Encoding e = build(p, opt);
  const Labeling lab = canonical_labeling(e.g);
  std::string key(1, p.space() == Space::torus ? 'T' : (opt.reflections ? 'C' : 'c'));
  return {key + graph_certificate(e.g, lab.position), relabel(p, e, lab, opt)};
}

std::string to_hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

std::string short_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::string raw(8, '\0');
  for (int k = 0; k < 8; ++k) raw[static_cast<std::size_t>(k)] = static_cast<char>(h >> (56 - 8 * k));
  return to_hex(raw);
}

CanonicalKey KeyCache::key(const Packing& p) {
  std::string sig(1, static_cast<char>(p.space()));
  sig.push_back(static_cast<char>(p.dim()));
  for (const Cube& c : p.cubes()) {
    for (Coordinate x : c) {
      const std::uint32_t code = x.code();
      sig.append(reinterpret_cast<const char*>(&code), sizeof code);
    }
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = map_.find(sig); it != map_.end()) return it->second;
  }
  CanonicalKey k = canonical_key(p, opt_);
  std::lock_guard<std::mutex> lock(mu_);
  map_.emplace(std::move(sig), k);
  return k;
}

std::size_t KeyCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return map_.size();
}

}  // namespace cubepack

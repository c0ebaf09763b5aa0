#pragma once

// Canonical forms of packings through a colored-graph encoding and an
// individualization-refinement labeling.

#include <cstdint>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "cubepack/exact.hpp"
#include "cubepack/packing.hpp"

namespace cubepack {

struct ColoredGraph {
  std::vector<int> color;
  std::vector<std::vector<int>> adj;

  int size() const { return static_cast<int>(color.size()); }
  int add_vertex(int c);
  void add_edge(int u, int v);
};

struct EncodeOptions {
  /// Cube space: let 0 and 1 be exchanged independently in each coordinate.
  bool reflections = true;
};

/// Cube, coordinate, cell, parameter and literal vertices; each cell joins
/// its cube, its coordinate and the value it holds. Vertex order: cubes,
/// coordinates, cells (row-major), then value vertices.
ColoredGraph encode(const Packing& p, EncodeOptions opt = {});

using CanonicalKey = std::string;  // raw bytes

struct Labeling {
  /// Canonical position of every vertex.
  std::vector<int> position;
  /// Order of the automorphism group, when requested.
  BigInt aut_order = 1;
  std::size_t generators = 0;
  std::size_t leaves = 0;
};

/// Canonical labeling of a colored graph. Isomorphic graphs relabel onto
/// the same graph.
Labeling canonical_labeling(const ColoredGraph& g, bool want_aut = false);

/// Byte certificate of the relabeled graph: vertex count, color class
/// sizes, then the upper triangle of the adjacency matrix.
std::string graph_certificate(const ColoredGraph& g, const std::vector<int>& position);

CanonicalKey canonical_key(const Packing& p, EncodeOptions opt = {});
BigInt automorphism_order(const Packing& p, EncodeOptions opt = {});
bool are_equivalent(const Packing& a, const Packing& b, EncodeOptions opt = {});

/// Deterministic representative of the equivalence class: cubes,
/// coordinates and parameters renumbered in canonical order.
Packing canonical_form(const Packing& p, EncodeOptions opt = {});

struct Canonical {
  CanonicalKey key;
  Packing form;
};
/// Key and canonical form from a single labeling.
Canonical canonicalize(const Packing& p, EncodeOptions opt = {});

std::string to_hex(const std::string& bytes);
/// 64-bit FNV-1a digest, 16 hex digits.
std::string short_digest(const std::string& bytes);

/// Thread-safe memo of canonical keys keyed by the packing's cube list.
class KeyCache {
 public:
  explicit KeyCache(EncodeOptions opt = {}) : opt_(opt) {}
  CanonicalKey key(const Packing& p);
  std::size_t size() const;

 private:
  EncodeOptions opt_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, CanonicalKey> map_;
};

}  // namespace cubepack

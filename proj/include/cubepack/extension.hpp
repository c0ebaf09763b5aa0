#pragma once

// Extension classes: the combinatorially distinct ways of adding one more
// cube to a packing, with their discrete sizes and step probabilities.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubepack/exact.hpp"
#include "cubepack/packing.hpp"

namespace cubepack {

/// One way to add a cube. Each coordinate is an existing literal (torus),
/// ZERO/ONE (cube space) or FRESH.
struct ExtensionClass {
  Cube coords;
  int nb = 0;  // number of FRESH coordinates

  std::string to_string() const;
  friend auto operator<=>(const ExtensionClass& a, const ExtensionClass& b) { return a.coords <=> b.coords; }
  friend bool operator==(const ExtensionClass& a, const ExtensionClass& b) { return a.coords == b.coords; }
};

/// Cube-space face of [0,1]^n; FRESH entries of `pattern` are the free ones.
struct Face {
  Cube pattern;
  int dim = 0;
};

class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// All classes, sorted (FRESH sorts after every literal).
std::vector<ExtensionClass> enumerate_extension_classes(const Packing& p);

/// Only the classes with the largest nb, sorted. Empty when p is maximal.
std::vector<ExtensionClass> max_nb_classes(const Packing& p);

/// Largest nb over all classes, or -1 when p is maximal.
int max_new_params(const Packing& p);

/// Number of discrete cubes on the 1/N grid realizing `c`.
BigInt class_size(const Packing& p, const ExtensionClass& c, long N);

struct WeightedClass {
  ExtensionClass cls;
  Rational prob;
};

/// Probabilities proportional to class sizes at level N. Throws
/// DegenerateError when p has classes but all of them are empty at N.
/// Returns an empty list when p is maximal.
std::vector<WeightedClass> finite_step_distribution(const Packing& p, long N);

/// Uniform over the max-nb classes; empty when p is maximal.
std::vector<WeightedClass> limit_step_distribution(const Packing& p);

/// Some addable class, found by fail-first backtracking over the cubes.
std::optional<ExtensionClass> extension_witness(const Packing& p);
bool is_extensible(const Packing& p);

/// p with the class representative appended; FRESH coordinates become new
/// parameters (shift 0) numbered from p.param_bound().
Packing apply_class(const Packing& p, const ExtensionClass& c);

/// Cube space: the faces of [0,1]^n all of whose points give a cube that
/// fits. Sorted like extension classes.
std::vector<Face> poss_complex(const Packing& p);
/// Largest face dimension, -1 for an empty complex.
int max_face_dim(const std::vector<Face>& faces);

}  // namespace cubepack

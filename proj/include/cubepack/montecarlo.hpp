#pragma once

// Sequential random packing on the grid (1/N)Z^n: every step draws a cube
// uniformly among the positions that still fit.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cubepack/canonical.hpp"
#include "cubepack/packing.hpp"

namespace cubepack {

struct SimConfig {
  Space space = Space::torus;
  int dim = 1;
  long N = 2;
  long trials = 1;
  std::uint64_t seed = 0;
  bool track_lamination = false;
  bool emit_histogram = false;
  int threads = 1;
};

/// Throws std::invalid_argument unless trials >= 1, N >= 2 and dim >= 1.
void validate(const SimConfig& cfg);

/// Generator for one trial, a function of (seed, trial) only.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

struct Sample {
  /// Corners in units of 1/N: torus values in [0, 2N), cube values in [0, N].
  std::vector<std::vector<long>> corners;
  /// Combinatorial type of the final packing.
  Packing type;
  int cubes() const { return static_cast<int>(corners.size()); }
};

/// Adds uniformly drawn cubes until none fits. Throws std::logic_error when
/// a maximal non-tiling ends with 2^n-3 or more cubes.
Sample sample_packing(const SimConfig& cfg, std::mt19937_64& rng);

struct SimReport {
  SimConfig config;
  std::vector<int> counts;  // per trial
  double mean = 0;
  double variance = 0;  // sample variance
  double std_error = 0;
  double ci_low = 0, ci_high = 0;  // normal approximation, 95%
  std::optional<double> lamination;
  /// Terminal types by short digest of the canonical key, when requested.
  std::map<std::string, long> histogram;
  std::map<std::string, Packing> histogram_reps;
};

SimReport estimate_expectation(const SimConfig& cfg);

struct Frequency {
  double value = 0;
  double std_error = 0;
};

/// Fraction of laminated terminal packings in the torus. Dimension 1 is
/// reported as 1.
Frequency lamination_frequency(int n, long N, long trials, std::uint64_t seed, int threads = 1);

}  // namespace cubepack

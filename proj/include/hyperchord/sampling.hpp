#pragma once

// Seeded generation of uniform hypersphere points, chord lengths and dot
// products.
//
// Reproducibility contract (fixed across releases):
//   * The engine is std::mt19937_64, whose output sequence is pinned by the
//     C++ standard.
//   * Output index i belongs to block i / kBlockSize. Block b draws from an
//     engine seeded with stream_seed(seed, b), a SplitMix64 mix of the user
//     seed and the block index. Results therefore do not depend on how many
//     workers produce them.
//   * Uniforms in (0, 1) are ((u >> 11) + 0.5) * 2^-53 for a 64-bit draw u.
//   * Standard normals come in Box-Muller pairs, both members consumed.
//   * A point is a vector of N normals scaled to length R.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "hyperchord/errors.hpp"

namespace hyperchord {

inline constexpr std::size_t kBlockSize = 4096;

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);
/// Engine seed for block `stream` of a run seeded with `seed`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

/// Single-owner random source for one stream. Not shareable between threads.
class SphereRng {
 public:
  explicit SphereRng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Standard normal deviate.
  double normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

enum class ChordMethod { PairwisePoints, InverseCdf };

struct SampleSpec {
  int dim = 2;
  double radius = 1.0;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  ChordMethod method = ChordMethod::PairwisePoints;
  /// Worker threads; 0 picks std::thread::hardware_concurrency(). Output is
  /// identical for every value.
  unsigned workers = 1;

  /// Throws ValidationError on dim < 2, non-positive radius or count == 0.
  void validate() const;
};

/// Writes a uniform point of the radius-`radius` sphere into `out`
/// (dimension = out.size() >= 2).
void sample_sphere_point(std::span<double> out, double radius, SphereRng& rng);
std::vector<double> sample_sphere_point(int dim, double radius, SphereRng& rng);

/// `count` points, row-major (count x dim), under the block contract above.
std::vector<double> sample_sphere_points(int dim, double radius, std::size_t count,
                                         std::uint64_t seed, unsigned workers = 1);

std::vector<double> sample_chords(const SampleSpec& spec);

/// Dot products of independent uniform unit vectors. PairwisePoints draws the
/// vectors; InverseCdf pushes uniforms through the dot-product quantile.
std::vector<double> sample_dot_products(int dim, std::size_t count, std::uint64_t seed,
                                        ChordMethod method = ChordMethod::PairwisePoints,
                                        unsigned workers = 1);

/// Chords and dot products taken from the same pairs of unit-sphere points
/// scaled to `radius`; for radius 1, chord^2 + 2 dot = 2 up to rounding.
struct CoupledSample {
  std::vector<double> chords;
  std::vector<double> dots;
};
CoupledSample sample_coupled(int dim, double radius, std::size_t count, std::uint64_t seed,
                             unsigned workers = 1);

}  // namespace hyperchord

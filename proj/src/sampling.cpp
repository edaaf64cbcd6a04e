#include "hyperchord/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "detail.hpp"
#include "hyperchord/chord.hpp"
#include "hyperchord/dot.hpp"

namespace hyperchord {
namespace {

void require_dim(int dim) {
  if (dim < 2) throw ValidationError("sampling needs dimension >= 2 (got " + std::to_string(dim) + ")");
}

void require_radius(double radius) {
  if (!(std::isfinite(radius) && radius > 0.0)) {
    throw ValidationError(detail::describe("sampling needs a positive finite radius", radius));
  }
}

unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Calls fn(rng, begin, end) for every block of [0, count). Blocks are dealt
// round-robin to workers; each block owns an independent stream.
template <typename Fn>
void for_each_block(std::size_t count, std::uint64_t seed, unsigned workers, Fn&& fn) {
  const std::size_t blocks = (count + kBlockSize - 1) / kBlockSize;
  const unsigned n_workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(blocks, 1)));

  auto work = [&](unsigned worker) {
    for (std::size_t b = worker; b < blocks; b += n_workers) {
      SphereRng rng(seed, b);
      fn(rng, b * kBlockSize, std::min(count, (b + 1) * kBlockSize));
    }
  };
  if (n_workers <= 1) {
    work(0);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(n_workers);
  for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(work, w);
}

void unit_vector(std::span<double> out, SphereRng& rng) {
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& v : out) {
      v = rng.normal();
      norm2 += v * v;
    }
  } while (norm2 == 0.0);
  const double scale = 1.0 / std::sqrt(norm2);
  for (double& v : out) v *= scale;
}

void fill_coupled(int dim, double radius, std::size_t count, std::uint64_t seed, unsigned workers,
                  double* chords, double* dots) {
  for_each_block(count, seed, workers, [&](SphereRng& rng, std::size_t begin, std::size_t end) {
    std::vector<double> u(dim);
    std::vector<double> v(dim);
    for (std::size_t i = begin; i < end; ++i) {
      unit_vector(u, rng);
      unit_vector(v, rng);
      double gap2 = 0.0;
      double dot = 0.0;
      for (int k = 0; k < dim; ++k) {
        const double diff = u[k] - v[k];
        gap2 += diff * diff;
        dot += u[k] * v[k];
      }
      if (chords != nullptr) chords[i] = radius * std::sqrt(gap2);
      if (dots != nullptr) dots[i] = std::clamp(dot, -1.0, 1.0);
    }
  });
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(~stream));
}

SphereRng::SphereRng(std::uint64_t seed, std::uint64_t stream) : engine_(stream_seed(seed, stream)) {}

double SphereRng::uniform() {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
}

double SphereRng::normal() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double theta = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(theta);
  return r * std::cos(theta);
}

void SampleSpec::validate() const {
  require_dim(dim);
  require_radius(radius);
  if (count == 0) throw ValidationError("sample count must be >= 1");
}

void sample_sphere_point(std::span<double> out, double radius, SphereRng& rng) {
  require_dim(static_cast<int>(out.size()));
  require_radius(radius);
  unit_vector(out, rng);
  for (double& v : out) v *= radius;
}

std::vector<double> sample_sphere_point(int dim, double radius, SphereRng& rng) {
  require_dim(dim);
  std::vector<double> point(dim);
  sample_sphere_point(point, radius, rng);
  return point;
}

std::vector<double> sample_sphere_points(int dim, double radius, std::size_t count,
                                         std::uint64_t seed, unsigned workers) {
  require_dim(dim);
  require_radius(radius);
  std::vector<double> out(count * static_cast<std::size_t>(dim));
  for_each_block(count, seed, workers, [&](SphereRng& rng, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      sample_sphere_point(std::span<double>(out).subspan(i * dim, dim), radius, rng);
    }
  });
  return out;
}

std::vector<double> sample_chords(const SampleSpec& spec) {
  spec.validate();
  std::vector<double> out(spec.count);
  if (spec.method == ChordMethod::PairwisePoints) {
    fill_coupled(spec.dim, spec.radius, spec.count, spec.seed, spec.workers, out.data(), nullptr);
    return out;
  }
  const ChordDistribution law(spec.dim, spec.radius);
  for_each_block(spec.count, spec.seed, spec.workers,
                 [&](SphereRng& rng, std::size_t begin, std::size_t end) {
                   for (std::size_t i = begin; i < end; ++i) out[i] = law.quantile(rng.uniform());
                 });
  return out;
}

std::vector<double> sample_dot_products(int dim, std::size_t count, std::uint64_t seed,
                                        ChordMethod method, unsigned workers) {
  require_dim(dim);
  if (count == 0) throw ValidationError("sample count must be >= 1");
  std::vector<double> out(count);
  if (method == ChordMethod::PairwisePoints) {
    fill_coupled(dim, 1.0, count, seed, workers, nullptr, out.data());
    return out;
  }
  const DotProductDistribution law(dim);
  for_each_block(count, seed, workers, [&](SphereRng& rng, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = law.quantile(rng.uniform());
  });
  return out;
}

CoupledSample sample_coupled(int dim, double radius, std::size_t count, std::uint64_t seed,
                             unsigned workers) {
  require_dim(dim);
  require_radius(radius);
  CoupledSample out{std::vector<double>(count), std::vector<double>(count)};
  fill_coupled(dim, radius, count, seed, workers, out.chords.data(), out.dots.data());
  return out;
}

}  // namespace hyperchord

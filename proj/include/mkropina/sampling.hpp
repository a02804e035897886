#pragma once

#include "mkropina/flag.hpp"
#include "mkropina/metric_validity.hpp"

#include <cstdint>
#include <numbers>
#include <random>

namespace mkropina {

/// Gaussian draws from mt19937_64 with a fixed Box-Muller transform, so a
/// seed gives the same stream on every platform and standard library.
class PortableNormal {
 public:
  explicit PortableNormal(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

 private:
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Points of the <.,.>-unit sphere of m, drawn by normalizing Gaussian
/// coefficients on the basis directions of m.
class SphereSampler {
 public:
  SphereSampler(const Matrix& gram, std::vector<int> directions, std::uint64_t seed)
      : gram_(gram), dirs_(std::move(directions)), normal_(seed) {
    if (dirs_.empty()) throw DimensionError("SphereSampler: no directions");
  }

  Vector next() {
    for (;;) {
      Vector v = Vector::Zero(gram_.rows());
      for (int i : dirs_) v[i] = normal_();
      const double n2 = v.dot(gram_ * v);
      if (n2 > 1e-20) return v / std::sqrt(n2);
    }
  }

 private:
  Matrix gram_;
  std::vector<int> dirs_;
  PortableNormal normal_;
};

/// Lower bound on beta(Y) for sampled unit poles; keeps stencils in the cone.
inline constexpr double kSampleBetaMargin = 0.05;

inline bool acceptable_pole(const MKropinaMetric& met, const Vector& y, const std::vector<int>& directions) {
  return met.inner(met.x(), y) > kSampleBetaMargin && check_hessian_pd(met, y, directions).positive_definite;
}

/// Unit poles Y with beta(Y) > 0.05 and g_Y positive definite on m.
inline std::vector<Vector> sample_poles(const MKropinaMetric& met, const std::vector<int>& directions, int count,
                                        std::uint64_t seed, int max_attempts_per_sample = 1000) {
  SphereSampler sampler(met.gram(), directions, seed);
  std::vector<Vector> out;
  long attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > static_cast<long>(max_attempts_per_sample) * std::max(1, count)) {
      throw DomainError("sampling: could not find admissible poles; the cone is too thin");
    }
    Vector y = sampler.next();
    if (acceptable_pole(met, y, directions)) out.push_back(std::move(y));
  }
  return out;
}

/// Orthonormal admissible flags: Y and U drawn from the sphere, U
/// orthonormalized against Y, Y rejected unless acceptable_pole holds.
inline std::vector<Flag> sample_flags(const MKropinaMetric& met, const std::vector<int>& directions, int count,
                                      std::uint64_t seed, int max_attempts_per_sample = 1000) {
  if (directions.size() < 2) throw DimensionError("sampling flags needs dim m >= 2");
  SphereSampler sampler(met.gram(), directions, seed);
  std::vector<Flag> out;
  long attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > static_cast<long>(max_attempts_per_sample) * std::max(1, count)) {
      throw DomainError("sampling: could not find admissible flags; the cone is too thin");
    }
    const Vector y = sampler.next();
    const Vector u = sampler.next();
    if (!acceptable_pole(met, y, directions)) continue;
    try {
      out.push_back(orthonormalize_flag(met.gram(), y, u));
    } catch (const DegenerateError&) {
    }
  }
  return out;
}

}  // namespace mkropina

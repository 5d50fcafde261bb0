#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "prr/configuration.hpp"

namespace prr {

/// Spectral rank cutoff: singular values above rel_tol * sigma_max * max(m,n)
/// count toward the rank.
struct TolerancePolicy {
  double rel_tol = 1e-9;
};

template <typename Derived>
Eigen::Index numeric_rank(const Eigen::MatrixBase<Derived>& m,
                          TolerancePolicy tol = {}) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (!m.allFinite()) {
    throw std::invalid_argument("numeric_rank: non-finite entry");
  }
  Eigen::BDCSVD<MatrixX<Scalar>> svd(m.derived());
  const auto& sv = svd.singularValues();
  const Scalar sigma_max = sv(0);
  if (sigma_max == Scalar(0)) return 0;
  const Scalar cutoff = static_cast<Scalar>(tol.rel_tol) * sigma_max *
                        static_cast<Scalar>(std::max(m.rows(), m.cols()));
  return (sv.array() > cutoff).count();
}

/// Minimum-norm least-squares solution of m x = y (Moore-Penrose action).
template <typename DerivedA, typename DerivedB>
VectorX<typename DerivedA::Scalar> least_squares_solve(
    const Eigen::MatrixBase<DerivedA>& m, const Eigen::MatrixBase<DerivedB>& y,
    TolerancePolicy tol = {}) {
  using Scalar = typename DerivedA::Scalar;
  if (m.rows() != y.rows()) {
    throw std::invalid_argument("least_squares_solve: dimension mismatch");
  }
  if (m.cols() == 0) return VectorX<Scalar>();
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(
      m.derived(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(static_cast<Scalar>(tol.rel_tol) *
                   static_cast<Scalar>(std::max(m.rows(), m.cols())));
  return svd.solve(y.derived());
}

// --- seeded sampling -------------------------------------------------------
//
// Distributions are hand-rolled on top of std::mt19937_64 so that a seed
// produces the same stream on every platform (std distributions are
// implementation-defined).

inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

inline double uniform_symmetric(std::mt19937_64& rng, double range) {
  return range * (2.0 * uniform_unit(rng) - 1.0);
}

inline std::int64_t uniform_integer(std::mt19937_64& rng, std::int64_t lo,
                                    std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

inline double gaussian_sample(std::mt19937_64& rng) {
  // Box-Muller; consumes two words per pair, first component only.
  double u1 = uniform_unit(rng);
  double u2 = uniform_unit(rng);
  while (u1 <= 0.0) u1 = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

enum class SampleMode { kReal, kInteger };

struct SampleOptions {
  SampleMode mode = SampleMode::kReal;
  double range = 10.0;                         // real-mode half-width
  std::int64_t integer_range = std::int64_t(1) << 20;  // integer-mode half-width
};

/// Random configuration: positions i.i.d. uniform in the centered box of the
/// requested mode, biases uniform real. Deterministic per seed.
template <typename Scalar = double>
Configuration<Scalar> sample_configuration(int n, int d, std::uint64_t seed,
                                           const SampleOptions& opt = {}) {
  if (n < 1) throw std::invalid_argument("sample_configuration: n must be >= 1");
  if (d < 2) throw std::invalid_argument("sample_configuration: d must be >= 2");
  std::mt19937_64 rng(seed);
  MatrixX<Scalar> pos(d, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < d; ++k) {
      if (opt.mode == SampleMode::kInteger) {
        pos(k, i) = static_cast<Scalar>(
            uniform_integer(rng, -opt.integer_range, opt.integer_range));
      } else {
        pos(k, i) = static_cast<Scalar>(uniform_symmetric(rng, opt.range));
      }
    }
  }
  VectorX<Scalar> biases(n);
  for (int i = 0; i < n; ++i) {
    biases(i) = static_cast<Scalar>(uniform_symmetric(rng, opt.range));
  }
  return Configuration<Scalar>(std::move(pos), std::move(biases));
}

}  // namespace prr

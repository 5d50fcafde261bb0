#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace prr {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Positions and clock biases of a network of agents. Column i of
/// `positions` is x_i in R^d; `biases` holds the clock offsets premultiplied
/// by the signal celerity, so everything carries length units.
template <typename Scalar = double>
struct Configuration {
  MatrixX<Scalar> positions;  // d x n
  VectorX<Scalar> biases;     // n

  Configuration() = default;
  Configuration(MatrixX<Scalar> pos, VectorX<Scalar> b)
      : positions(std::move(pos)), biases(std::move(b)) {
    if (positions.cols() != biases.size()) {
      throw std::invalid_argument(
          "configuration: positions and biases disagree on agent count");
    }
  }

  int dimension() const { return static_cast<int>(positions.rows()); }
  int agent_count() const { return static_cast<int>(positions.cols()); }

  auto position(int i) const { return positions.col(i); }

  Scalar distance(int u, int v) const {
    return (positions.col(u) - positions.col(v)).norm();
  }

  /// Stacked parameter vector (x_1 ... x_n, beta_1 ... beta_n).
  VectorX<Scalar> as_parameter_vector() const {
    const int d = dimension(), n = agent_count();
    VectorX<Scalar> p(n * (d + 1));
    for (int i = 0; i < n; ++i) p.segment(i * d, d) = positions.col(i);
    p.tail(n) = biases;
    return p;
  }

  static Configuration from_parameter_vector(int d, int n,
                                             const VectorX<Scalar>& p) {
    if (p.size() != n * (d + 1)) {
      throw std::invalid_argument("parameter vector has wrong length");
    }
    MatrixX<Scalar> pos(d, n);
    for (int i = 0; i < n; ++i) pos.col(i) = p.segment(i * d, d);
    return Configuration(std::move(pos), p.tail(n));
  }
};

}  // namespace prr

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>

namespace specfilt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Truncated non-stationary spectral characteristic of a signal: the first L
/// expansion coefficients over the basis on [0, T], in basis index order.
class SpectralVec {
 public:
  SpectralVec(Vector coeffs, double horizon, std::string label = {});

  const Vector& coeffs() const noexcept { return coeffs_; }
  double horizon() const noexcept { return horizon_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(coeffs_.size()); }
  double operator[](std::size_t i) const { return coeffs_(static_cast<Eigen::Index>(i)); }

  SpectralVec relabeled(std::string label) const;

 private:
  Vector coeffs_;
  double horizon_;
  std::string label_;
};

enum class BlockKind {
  Derivative,
  Integral,
  IndicatorGain,
  ShiftNatural,
  ShiftZeroPos,
  ShiftZeroNeg,
  Identity,
  Composite,
};

const char* to_string(BlockKind kind);

/// Truncated L x L two-dimensional non-stationary transfer function.
/// `param` carries the cut point for IndicatorGain and the shift for the
/// Shift* kinds; it is zero otherwise.
class BlockMatrix {
 public:
  BlockMatrix(Matrix data, double horizon, BlockKind kind, double param = 0.0);

  const Matrix& data() const noexcept { return data_; }
  double horizon() const noexcept { return horizon_; }
  BlockKind kind() const noexcept { return kind_; }
  double param() const noexcept { return param_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(data_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return data_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  Matrix data_;
  double horizon_;
  BlockKind kind_;
  double param_;
};

}  // namespace specfilt

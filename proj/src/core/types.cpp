#include "specfilt/types.hpp"

#include <stdexcept>

namespace specfilt {

SpectralVec::SpectralVec(Vector coeffs, double horizon, std::string label)
    : coeffs_(std::move(coeffs)), horizon_(horizon), label_(std::move(label)) {
  if (coeffs_.size() < 1) throw std::invalid_argument("SpectralVec: empty coefficient vector");
  if (!(horizon_ > 0.0)) throw std::invalid_argument("SpectralVec: horizon must be positive");
  if (!coeffs_.allFinite()) throw std::invalid_argument("SpectralVec: non-finite coefficient");
}

SpectralVec SpectralVec::relabeled(std::string label) const { return SpectralVec(coeffs_, horizon_, std::move(label)); }

const char* to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::Derivative: return "derivative";
    case BlockKind::Integral: return "integral";
    case BlockKind::IndicatorGain: return "indicator-gain";
    case BlockKind::ShiftNatural: return "shift-natural";
    case BlockKind::ShiftZeroPos: return "shift-zero-pos";
    case BlockKind::ShiftZeroNeg: return "shift-zero-neg";
    case BlockKind::Identity: return "identity";
    case BlockKind::Composite: return "composite";
  }
  return "unknown";
}

BlockMatrix::BlockMatrix(Matrix data, double horizon, BlockKind kind, double param)
    : data_(std::move(data)), horizon_(horizon), kind_(kind), param_(param) {
  if (data_.rows() < 1 || data_.rows() != data_.cols()) {
    throw std::invalid_argument("BlockMatrix: data must be square and non-empty");
  }
  if (!(horizon_ > 0.0)) throw std::invalid_argument("BlockMatrix: horizon must be positive");
  if (!data_.allFinite()) throw std::invalid_argument("BlockMatrix: non-finite entry");
}

}  // namespace specfilt

#pragma once

#include "qsplit/grid.hpp"

#include <cstdint>
#include <map>
#include <memory>

namespace qsplit {

enum class FourierDirection { forward, inverse };

/// Discrete partial Fourier transforms along one axis, with scaling h_j on the
/// forward transform and eta_j / (2 pi) on the inverse. Backed by batched
/// in-place FFTW plans on strided pencils; plans are cached per shape.
///
/// Both representations are stored in FFT bin order, so the signed-index node
/// convention never requires data reordering; it only enters node evaluation.
class PartialFourier {
 public:
  PartialFourier();
  ~PartialFourier();
  PartialFourier(const PartialFourier&) = delete;
  PartialFourier& operator=(const PartialFourier&) = delete;

  /// Applies the scaled DFT along `axis` and flips its state.
  /// Preconditions: forward requires the axis physical, inverse frequency.
  void transform(Field& f, int axis, FourierDirection dir);

  void forward(Field& f, int axis) { transform(f, axis, FourierDirection::forward); }
  void inverse(Field& f, int axis) { transform(f, axis, FourierDirection::inverse); }

  /// Number of one-axis transforms executed so far (cost accounting).
  std::int64_t transform_count() const { return count_; }
  void reset_count() { count_ = 0; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::int64_t count_ = 0;
};

}  // namespace qsplit

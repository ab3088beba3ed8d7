#include "qsplit/fft.hpp"

#include <fftw3.h>

#include <numbers>
#include <stdexcept>
#include <tuple>

namespace qsplit {

struct PartialFourier::Impl {
  // key: (len, inner stride, sign)
  std::map<std::tuple<int, std::int64_t, int>, fftw_plan> plans;

  ~Impl() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }

  fftw_plan get(int len, std::int64_t inner, int sign, cplx* data) {
    auto key = std::make_tuple(len, inner, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    int n[1] = {len};
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_plan plan = fftw_plan_many_dft(
        1, n, static_cast<int>(inner), p, nullptr, static_cast<int>(inner), 1,
        p, nullptr, static_cast<int>(inner), 1, sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("fftw plan creation failed");
    plans.emplace(key, plan);
    return plan;
  }
};

PartialFourier::PartialFourier() : impl_(std::make_unique<Impl>()) {}
PartialFourier::~PartialFourier() = default;

void PartialFourier::transform(Field& f, int axis, FourierDirection dir) {
  const int n = f.spec.dims();
  if (axis < 0 || axis >= n) throw std::out_of_range("partial_fourier: axis");
  const bool fwd = dir == FourierDirection::forward;
  const AxisState need = fwd ? AxisState::physical : AxisState::frequency;
  if (f.axis_state[axis] != need)
    throw std::invalid_argument(fwd ? "partial_fourier: axis not physical"
                                    : "partial_fourier: axis not in frequency");

  const int len = f.spec.points[axis];
  const std::int64_t inner = f.spec.stride(axis);
  const std::int64_t block = inner * len;
  const std::int64_t outer = f.spec.size() / block;

  fftw_plan plan = impl_->get(len, inner, fwd ? FFTW_FORWARD : FFTW_BACKWARD,
                              f.values.data());
  for (std::int64_t o = 0; o < outer; ++o) {
    auto* p = reinterpret_cast<fftw_complex*>(f.values.data() + o * block);
    fftw_execute_dft(plan, p, p);
  }

  const double scale =
      fwd ? f.spec.step(axis)
          : f.spec.dual_step(axis) / (2.0 * std::numbers::pi);
  f.values *= scale;
  f.axis_state[axis] = fwd ? AxisState::frequency : AxisState::physical;
  ++count_;
}

}  // namespace qsplit

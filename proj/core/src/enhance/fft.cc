// Copyright 2026  The snsd Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "snsd/enhance/fft.h"

#include <mutex>
#include <vector>

#include <fftw3.h>

#include "snsd/common/error.h"

namespace snsd::enhance {

namespace {

// FFTW's planner is not re-entrant; execution with the new-array interface is.
std::mutex &PlannerMutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

struct RealFft::Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;

  Plans() = default;
  Plans(const Plans &) = delete;
  Plans &operator=(const Plans &) = delete;
  ~Plans() {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    if (forward) fftw_destroy_plan(forward);
    if (inverse) fftw_destroy_plan(inverse);
  }
};

RealFft::RealFft(std::size_t n) : n_(n), plans_(std::make_unique<Plans>()) {
  if (n < 2 || n % 2 != 0) throw InvalidArgumentError("FFT size must be even and >= 2");
  std::vector<double> real(n);
  std::vector<std::complex<double>> cplx(n / 2 + 1);
  auto *c = reinterpret_cast<fftw_complex *>(cplx.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::unique_lock<std::mutex> lock(PlannerMutex());
  plans_->forward = fftw_plan_dft_r2c_1d(static_cast<int>(n), real.data(), c, flags);
  plans_->inverse = fftw_plan_dft_c2r_1d(static_cast<int>(n), c, real.data(),
                                         flags | FFTW_DESTROY_INPUT);
  lock.unlock();
  if (!plans_->forward || !plans_->inverse) throw StateError("FFTW planning failed");
}

RealFft::~RealFft() = default;

RealFft::RealFft(RealFft &&) noexcept = default;
RealFft &RealFft::operator=(RealFft &&) noexcept = default;

void RealFft::Forward(std::span<const double> input,
                      std::span<std::complex<double>> output) const {
  if (input.size() != n_ || output.size() != num_bins())
    throw InvalidArgumentError("FFT buffer size mismatch");
  // r2c does not modify its input, but the FFTW signature is non-const.
  fftw_execute_dft_r2c(plans_->forward, const_cast<double *>(input.data()),
                       reinterpret_cast<fftw_complex *>(output.data()));
}

void RealFft::Inverse(std::span<const std::complex<double>> input,
                      std::span<double> output) const {
  if (input.size() != num_bins() || output.size() != n_)
    throw InvalidArgumentError("FFT buffer size mismatch");
  std::vector<std::complex<double>> scratch(input.begin(), input.end());
  fftw_execute_dft_c2r(plans_->inverse, reinterpret_cast<fftw_complex *>(scratch.data()),
                       output.data());
  const double scale = 1.0 / static_cast<double>(n_);
  for (double &x : output) x *= scale;
}

}  // namespace snsd::enhance

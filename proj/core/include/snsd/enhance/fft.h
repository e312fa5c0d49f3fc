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

#ifndef SNSD_ENHANCE_FFT_H_
#define SNSD_ENHANCE_FFT_H_

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace snsd::enhance {

// Real-input DFT of fixed size n, backed by FFTW. Forward produces n/2+1
// bins; Inverse includes the 1/n factor so Inverse(Forward(x)) == x.
// Const methods may be called concurrently.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(RealFft &&) noexcept;
  RealFft &operator=(RealFft &&) noexcept;

  std::size_t size() const { return n_; }
  std::size_t num_bins() const { return n_ / 2 + 1; }

  void Forward(std::span<const double> input,
               std::span<std::complex<double>> output) const;
  void Inverse(std::span<const std::complex<double>> input,
               std::span<double> output) const;

 private:
  struct Plans;
  std::size_t n_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace snsd::enhance

#endif  // SNSD_ENHANCE_FFT_H_

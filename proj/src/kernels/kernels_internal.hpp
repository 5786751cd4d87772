// Copyright 2026 The mclab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

#include "mclab/kernels/kernels.hpp"

namespace mclab::kernels::detail {

inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

// (a0, a1) <- (u00 a0 + u01 a1, u10 a0 + u11 a1), with the complex products
// spelled out so no variant depends on the library's multiply.
inline void butterfly(Complex& a0, Complex& a1, const Mat2& u) {
  auto mul = [](const Complex& x, const Complex& y, double& re, double& im) {
    re = x.real() * y.real() - x.imag() * y.imag();
    im = x.real() * y.imag() + x.imag() * y.real();
  };
  double r00, i00, r01, i01, r10, i10, r11, i11;
  mul(u[0], a0, r00, i00);
  mul(u[1], a1, r01, i01);
  mul(u[2], a0, r10, i10);
  mul(u[3], a1, r11, i11);
  a0 = Complex(r00 + r01, i00 + i01);
  a1 = Complex(r10 + r11, i10 + i11);
}

}  // namespace mclab::kernels::detail

/* Copyright 2026 The winoint Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef WINOINT_GAUSS_INT_H_
#define WINOINT_GAUSS_INT_H_

#include <cstdint>
#include <ostream>
#include <utility>

#include "winoint/error.h"

namespace winoint {

// Gaussian integer re + im·i. Values with im == 0 are rational.
struct GaussInt {
  int64_t re = 0;
  int64_t im = 0;

  constexpr GaussInt() = default;
  constexpr GaussInt(int64_t real) : re(real) {}  // NOLINT: implicit by design of literals
  constexpr GaussInt(int64_t real, int64_t imag) : re(real), im(imag) {}

  constexpr bool is_rational() const { return im == 0; }

  friend constexpr bool operator==(const GaussInt&, const GaussInt&) = default;
};

constexpr GaussInt Conj(GaussInt x) { return {x.re, -x.im}; }

inline GaussInt operator+(GaussInt a, GaussInt b) {
  return {CheckedAdd(a.re, b.re), CheckedAdd(a.im, b.im)};
}
inline GaussInt operator-(GaussInt a, GaussInt b) {
  return {CheckedSub(a.re, b.re), CheckedSub(a.im, b.im)};
}
inline GaussInt operator-(GaussInt a) { return GaussInt{0, 0} - a; }
inline GaussInt& operator+=(GaussInt& a, GaussInt b) { return a = a + b; }

// Product with an algorithm constant (transform-matrix entry). Constants are
// realized with adds and shifts in hardware, so this is never counted as a
// general multiplication.
inline GaussInt ConstMul(GaussInt constant, GaussInt value) {
  if (constant.im == 0) {
    return {CheckedMul(constant.re, value.re),
            CheckedMul(constant.re, value.im)};
  }
  return {CheckedSub(CheckedMul(constant.re, value.re),
                     CheckedMul(constant.im, value.im)),
          CheckedAdd(CheckedMul(constant.re, value.im),
                     CheckedMul(constant.im, value.re))};
}

std::ostream& operator<<(std::ostream& os, const GaussInt& x);

// Tally of general (data × data) multiplications. Confined to one worker;
// per-worker counters are merged with +=.
struct MulCounter {
  uint64_t general_muls = 0;
  uint64_t additions = 0;

  MulCounter& operator+=(const MulCounter& other) {
    general_muls += other.general_muls;
    additions += other.additions;
    return *this;
  }
  friend bool operator==(const MulCounter&, const MulCounter&) = default;
};

// Unreduced Karatsuba terms of a complex product (or a sum of them):
// p0 = x0·y0, p1 = x1·y1, p2 = (x0 + x1)(y0 + y1).
struct KaratsubaPartial {
  int64_t p0 = 0;
  int64_t p1 = 0;
  int64_t p2 = 0;

  friend bool operator==(const KaratsubaPartial&,
                         const KaratsubaPartial&) = default;
};

// (p0 − p1) + (p2 − p1 − p0)·i
GaussInt Combine(const KaratsubaPartial& partial);

KaratsubaPartial operator+(const KaratsubaPartial& a, const KaratsubaPartial& b);

// Three real multiplications, or one when both operands are rational.
GaussInt KaratsubaMul(GaussInt x, GaussInt y, MulCounter& counter);

// Returns (x·y, conj(x·y)) = (x·y, conj(x)·conj(y)) for the price of one
// Karatsuba product.
std::pair<GaussInt, GaussInt> ConjugatePairMul(GaussInt x, GaussInt y,
                                               MulCounter& counter);

// Adds the Karatsuba terms of x·y into acc without combining them.
KaratsubaPartial KaratsubaAccumulate(const KaratsubaPartial& acc, GaussInt x,
                                     GaussInt y, MulCounter& counter);

}  // namespace winoint

#endif  // WINOINT_GAUSS_INT_H_

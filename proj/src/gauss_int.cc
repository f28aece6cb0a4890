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

#include "winoint/gauss_int.h"

namespace winoint {

std::ostream& operator<<(std::ostream& os, const GaussInt& x) {
  if (x.im == 0) return os << x.re;
  if (x.re == 0) return os << x.im << "i";
  return os << x.re << (x.im < 0 ? "-" : "+")
            << (x.im < 0 ? -x.im : x.im) << "i";
}

GaussInt Combine(const KaratsubaPartial& partial) {
  return {CheckedSub(partial.p0, partial.p1),
          CheckedSub(CheckedSub(partial.p2, partial.p1), partial.p0)};
}

KaratsubaPartial operator+(const KaratsubaPartial& a,
                           const KaratsubaPartial& b) {
  return {CheckedAdd(a.p0, b.p0), CheckedAdd(a.p1, b.p1),
          CheckedAdd(a.p2, b.p2)};
}

namespace {

KaratsubaPartial Terms(GaussInt x, GaussInt y, MulCounter& counter) {
  KaratsubaPartial t;
  t.p0 = CheckedMul(x.re, y.re);
  t.p1 = CheckedMul(x.im, y.im);
  t.p2 = CheckedMul(CheckedAdd(x.re, x.im), CheckedAdd(y.re, y.im));
  counter.general_muls += 3;
  counter.additions += 2;
  return t;
}

}  // namespace

GaussInt KaratsubaMul(GaussInt x, GaussInt y, MulCounter& counter) {
  if (x.is_rational() && y.is_rational()) {
    counter.general_muls += 1;
    return {CheckedMul(x.re, y.re), 0};
  }
  GaussInt r = Combine(Terms(x, y, counter));
  counter.additions += 3;
  return r;
}

std::pair<GaussInt, GaussInt> ConjugatePairMul(GaussInt x, GaussInt y,
                                               MulCounter& counter) {
  GaussInt r = Combine(Terms(x, y, counter));
  counter.additions += 3;
  return {r, Conj(r)};
}

KaratsubaPartial KaratsubaAccumulate(const KaratsubaPartial& acc, GaussInt x,
                                     GaussInt y, MulCounter& counter) {
  KaratsubaPartial sum = acc + Terms(x, y, counter);
  counter.additions += 3;
  return sum;
}

}  // namespace winoint

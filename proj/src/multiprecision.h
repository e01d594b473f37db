// Copyright 2026 The Utildesign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UTILDESIGN_SRC_MULTIPRECISION_H_
#define UTILDESIGN_SRC_MULTIPRECISION_H_

#include <mpfr.h>

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace utildesign {

// Fixed-length array of MPFR values sharing one precision. Storage never
// reallocates, so element pointers stay valid for the object's lifetime.
class MpVector {
 public:
  MpVector(std::size_t size, mpfr_prec_t prec) : data_(size) {
    for (__mpfr_struct& v : data_) {
      mpfr_init2(&v, prec);
      mpfr_set_zero(&v, 1);
    }
  }
  ~MpVector() {
    for (__mpfr_struct& v : data_) mpfr_clear(&v);
  }
  MpVector(const MpVector&) = delete;
  MpVector& operator=(const MpVector&) = delete;

  mpfr_ptr operator[](std::size_t i) { return &data_[i]; }
  mpfr_srcptr operator[](std::size_t i) const { return &data_[i]; }
  std::size_t size() const { return data_.size(); }

 private:
  std::vector<__mpfr_struct> data_;
};

// Single MPFR scalar.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~BigFloat() { mpfr_clear(v_); }
  BigFloat(const BigFloat&) = delete;
  BigFloat& operator=(const BigFloat&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

// 128 guard bits plus log2(k!), the worst growth of products of k factors
// bounded by their index that the recursions and bases here produce.
inline mpfr_prec_t FactorialGuardPrecision(int k) {
  const double lost = k > 1 ? std::lgamma(k + 1.0) / std::numbers::ln2 : 0.0;
  return static_cast<mpfr_prec_t>(128 + std::ceil(lost));
}

}  // namespace utildesign

#endif  // UTILDESIGN_SRC_MULTIPRECISION_H_

// Copyright 2026 The fracspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FRACSPEC_PHASE_H_
#define FRACSPEC_PHASE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fracspec/linalg.h"

namespace fracspec {

// Exact fractional parts of <M^{-1} b, v> for a fixed integer matrix M, a
// fixed list of integer digits b and integer (or rational v/q) frequencies v.
//
// With D = |det M| and c_b = D * M^{-1} b (an integer vector), the pairing is
// (c_b . v) / D, so its fractional part is ((c_b . v) mod D) / D. When D fits
// in 62 bits the reduction runs in 128-bit integer arithmetic.
class ReciprocalPairing {
 public:
  ReciprocalPairing() = default;
  ReciprocalPairing(const IntegerMatrix& m, std::span<const IntegerVector> digits);

  const Integer& modulus() const { return modulus_; }
  std::size_t digit_count() const { return coefficients_.size(); }
  const IntegerVector& coefficient(std::size_t digit) const {
    return coefficients_[digit];
  }

  // out[b] = frac(<M^{-1} b, v>) in [0, 1).
  void Fractions(const IntegerVector& v, std::span<double> out) const;
  // out[b] = frac(<M^{-1} b, v> / scale) in [0, 1); scale > 0.
  void Fractions(const IntegerVector& v, const Integer& scale,
                 std::span<double> out) const;

  // (c_b . v) mod D, exactly.
  Integer Numerator(std::size_t digit, const IntegerVector& v) const;

 private:
  std::size_t dimension_ = 0;
  Integer modulus_;
  std::vector<IntegerVector> coefficients_;
  bool fast_ = false;
  std::uint64_t fast_modulus_ = 0;
  std::vector<std::uint64_t> fast_coefficients_;
};

// Largest modulus handled by the 128-bit path.
inline constexpr std::uint64_t kFastModulusLimit = std::uint64_t{1} << 62;

}  // namespace fracspec

#endif  // FRACSPEC_PHASE_H_

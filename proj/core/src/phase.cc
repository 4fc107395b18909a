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

#include "fracspec/phase.h"

#include "fracspec/errors.h"

namespace fracspec {
namespace {

__extension__ typedef unsigned __int128 Uint128;

bool FitsFast(const Integer& modulus) {
  return modulus > 0 && mpz_sizeinbase(modulus.get_mpz_t(), 2) <= 62;
}

std::uint64_t ToU64(const Integer& value) {
  static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long expected");
  return mpz_get_ui(value.get_mpz_t());
}

double RatioToDouble(const Integer& numerator, const Integer& modulus) {
  mpq_class q(numerator, modulus);
  return q.get_d();
}

}  // namespace

ReciprocalPairing::ReciprocalPairing(const IntegerMatrix& m,
                                     std::span<const IntegerVector> digits)
    : dimension_(m.rows()) {
  if (!m.is_square()) throw Error(ErrorCode::kShapeError, "pairing needs a square matrix");
  const Integer& det = m.determinant();
  if (det == 0) throw Error(ErrorCode::kInvalidArgument, "pairing needs an invertible matrix");
  modulus_ = abs(det);
  const RationalMatrix inverse = m.Inverse();
  coefficients_.reserve(digits.size());
  for (const IntegerVector& b : digits) {
    if (b.size() != dimension_) throw Error(ErrorCode::kShapeError, "digit dimension");
    const RationalVector w = inverse * b;
    IntegerVector c(dimension_);
    for (std::size_t i = 0; i < dimension_; ++i) {
      const Rational scaled = w[i] * Rational(modulus_);
      if (scaled.get_den() != 1) {
        throw Error(ErrorCode::kInvalidArgument, "adjugate scaling is not integral");
      }
      c[i] = scaled.get_num();
    }
    coefficients_.push_back(std::move(c));
  }
  fast_ = FitsFast(modulus_);
  if (fast_) {
    fast_modulus_ = ToU64(modulus_);
    fast_coefficients_.reserve(coefficients_.size() * dimension_);
    for (const IntegerVector& c : coefficients_) {
      for (const Integer& x : c) {
        fast_coefficients_.push_back(mpz_fdiv_ui(x.get_mpz_t(), fast_modulus_));
      }
    }
  }
}

void ReciprocalPairing::Fractions(const IntegerVector& v, std::span<double> out) const {
  if (fast_) {
    std::uint64_t residues[16];
    std::vector<std::uint64_t> spill;
    std::uint64_t* r = residues;
    if (dimension_ > 16) {
      spill.resize(dimension_);
      r = spill.data();
    }
    for (std::size_t i = 0; i < dimension_; ++i) {
      r[i] = mpz_fdiv_ui(v[i].get_mpz_t(), fast_modulus_);
    }
    const double inv_modulus = 1.0 / static_cast<double>(fast_modulus_);
    for (std::size_t b = 0; b < coefficients_.size(); ++b) {
      const std::uint64_t* c = &fast_coefficients_[b * dimension_];
      Uint128 acc = 0;
      for (std::size_t i = 0; i < dimension_; ++i) {
        acc += static_cast<Uint128>(c[i]) * r[i];
        acc %= fast_modulus_;
      }
      out[b] = static_cast<double>(static_cast<std::uint64_t>(acc)) * inv_modulus;
      if (out[b] >= 1.0) out[b] = 0.0;
    }
    return;
  }
  for (std::size_t b = 0; b < coefficients_.size(); ++b) {
    out[b] = RatioToDouble(Numerator(b, v), modulus_);
  }
}

void ReciprocalPairing::Fractions(const IntegerVector& v, const Integer& scale,
                                  std::span<double> out) const {
  if (scale == 1) {
    Fractions(v, out);
    return;
  }
  const Integer full = modulus_ * scale;
  if (FitsFast(full)) {
    const std::uint64_t mod = ToU64(full);
    const double inv_modulus = 1.0 / static_cast<double>(mod);
    std::vector<std::uint64_t> r(dimension_);
    for (std::size_t i = 0; i < dimension_; ++i) {
      r[i] = mpz_fdiv_ui(v[i].get_mpz_t(), mod);
    }
    for (std::size_t b = 0; b < coefficients_.size(); ++b) {
      Uint128 acc = 0;
      for (std::size_t i = 0; i < dimension_; ++i) {
        const std::uint64_t c = mpz_fdiv_ui(coefficients_[b][i].get_mpz_t(), mod);
        acc += static_cast<Uint128>(c) * r[i];
        acc %= mod;
      }
      out[b] = static_cast<double>(static_cast<std::uint64_t>(acc)) * inv_modulus;
      if (out[b] >= 1.0) out[b] = 0.0;
    }
    return;
  }
  Integer numerator;
  for (std::size_t b = 0; b < coefficients_.size(); ++b) {
    numerator = coefficients_[b].Dot(v);
    mpz_fdiv_r(numerator.get_mpz_t(), numerator.get_mpz_t(), full.get_mpz_t());
    out[b] = RatioToDouble(numerator, full);
  }
}

Integer ReciprocalPairing::Numerator(std::size_t digit, const IntegerVector& v) const {
  Integer numerator = coefficients_[digit].Dot(v);
  mpz_fdiv_r(numerator.get_mpz_t(), numerator.get_mpz_t(), modulus_.get_mpz_t());
  return numerator;
}

}  // namespace fracspec

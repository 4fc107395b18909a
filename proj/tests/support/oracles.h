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

#ifndef FRACSPEC_TESTS_SUPPORT_ORACLES_H_
#define FRACSPEC_TESTS_SUPPORT_ORACLES_H_

// Reference computations that share no code with the library. They use plain
// machine integers, long double and brute force, so they are only suitable
// for small inputs.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<long long>>;
using Vec = std::vector<long long>;
using Cld = std::complex<long double>;

__extension__ typedef __int128 Int128;

constexpr long double kTwoPi = 2.0L * std::numbers::pi_v<long double>;

inline long long FloorMod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

inline Mat Transpose(const Mat& m) {
  Mat t(m[0].size(), Vec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  }
  return t;
}

inline Vec Apply(const Mat& m, const Vec& v) {
  Vec out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

inline long long Determinant(const Mat& m) {
  const std::size_t d = m.size();
  if (d == 1) return m[0][0];
  if (d == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  long long det = 0;
  for (std::size_t c = 0; c < d; ++c) {
    Mat minor;
    for (std::size_t i = 1; i < d; ++i) {
      Vec row;
      for (std::size_t j = 0; j < d; ++j) {
        if (j != c) row.push_back(m[i][j]);
      }
      minor.push_back(row);
    }
    det += (c % 2 == 0 ? 1 : -1) * m[0][c] * Determinant(minor);
  }
  return det;
}

// adj(M) with adj(M) M = det(M) I.
inline Mat Adjugate(const Mat& m) {
  const std::size_t d = m.size();
  if (d == 1) return {{1}};
  Mat adj(d, Vec(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Mat minor;
      for (std::size_t r = 0; r < d; ++r) {
        if (r == j) continue;
        Vec row;
        for (std::size_t c = 0; c < d; ++c) {
          if (c != i) row.push_back(m[r][c]);
        }
        minor.push_back(row);
      }
      adj[i][j] = ((i + j) % 2 == 0 ? 1 : -1) * Determinant(minor);
    }
  }
  return adj;
}

// v in M Z^d, decided through the adjugate: M^{-1} v = adj(M) v / det(M).
inline bool InImage(const Mat& m, const Vec& v) {
  const long long det = Determinant(m);
  for (long long x : Apply(Adjugate(m), v)) {
    if (x % det != 0) return false;
  }
  return true;
}

inline std::vector<std::vector<long double>> InverseLd(const Mat& m) {
  const Mat adj = Adjugate(m);
  const long double det = static_cast<long double>(Determinant(m));
  std::vector<std::vector<long double>> out(m.size(), std::vector<long double>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = adj[i][j] / det;
  }
  return out;
}

inline Cld Mask(const std::vector<Vec>& digits, const std::vector<long double>& xi) {
  Cld sum = 0;
  for (const Vec& b : digits) {
    long double phase = 0;
    for (std::size_t i = 0; i < xi.size(); ++i) phase += b[i] * xi[i];
    phase -= std::floor(phase);
    sum += std::polar(1.0L, -kTwoPi * phase);
  }
  return sum / static_cast<long double>(digits.size());
}

// prod_{j=1..depth} M_B((R^T)^{-j} xi) in long double.
inline Cld MuHatProduct(const Mat& r, const std::vector<Vec>& digits,
                        std::vector<long double> xi, int depth) {
  const auto step = InverseLd(Transpose(r));
  Cld product = 1;
  for (int j = 0; j < depth; ++j) {
    std::vector<long double> next(xi.size(), 0);
    for (std::size_t a = 0; a < xi.size(); ++a) {
      for (std::size_t b = 0; b < xi.size(); ++b) next[a] += step[a][b] * xi[b];
    }
    xi = next;
    product *= Mask(digits, xi);
  }
  return product;
}

// One-dimensional mu_hat((g/G + lambda)) for mu(R, B) with phases reduced
// exactly in 128-bit arithmetic; valid while G * R^depth fits in 127 bits.
inline Cld MuHat1DExact(long long radix, const Vec& digits, long long g, long long grid,
                        long long lambda, int depth) {
  const Int128 numerator = static_cast<Int128>(grid) * lambda + g;
  Int128 denominator = grid;
  Cld product = 1;
  for (int j = 1; j <= depth; ++j) {
    denominator *= radix;
    Cld sum = 0;
    for (long long b : digits) {
      Int128 x = (static_cast<Int128>(b) * numerator) % denominator;
      if (x < 0) x += denominator;
      const long double phase = static_cast<long double>(x) / static_cast<long double>(denominator);
      sum += std::polar(1.0L, -kTwoPi * phase);
    }
    product *= sum / static_cast<long double>(digits.size());
  }
  return product;
}

// Barycenter of mu(R, B): the fixed point c = R^{-1}(c + mean B).
inline std::vector<long double> Barycenter(const Mat& r, const std::vector<Vec>& digits) {
  Mat shifted = r;
  for (std::size_t i = 0; i < r.size(); ++i) shifted[i][i] -= 1;
  const auto inv = InverseLd(shifted);
  std::vector<long double> mean(r.size(), 0), c(r.size(), 0);
  for (const Vec& b : digits) {
    for (std::size_t i = 0; i < r.size(); ++i) mean[i] += static_cast<long double>(b[i]) / digits.size();
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t k = 0; k < r.size(); ++k) c[i] += inv[i][k] * mean[k];
  }
  return c;
}

// Points sum_{j=1..depth} R^{-j} b_j + R^{-depth} seed, enumerated directly.
// Seeding with the barycenter places each point at the center of mass of its
// cylinder, which makes the Riemann sum second-order accurate.
inline std::vector<std::vector<long double>> AttractorPoints(
    const Mat& r, const std::vector<Vec>& digits, int depth,
    std::vector<long double> seed = {}) {
  const auto inv = InverseLd(r);
  const std::size_t d = r.size();
  if (seed.empty()) seed.assign(d, 0);
  std::vector<std::vector<long double>> points{seed};
  // x -> R^{-1}(x + b) applied depth times builds every word.
  for (int level = 0; level < depth; ++level) {
    std::vector<std::vector<long double>> next;
    next.reserve(points.size() * digits.size());
    for (const auto& p : points) {
      for (const Vec& b : digits) {
        std::vector<long double> q(d, 0);
        for (std::size_t i = 0; i < d; ++i) {
          for (std::size_t k = 0; k < d; ++k) q[i] += inv[i][k] * (p[k] + b[k]);
        }
        next.push_back(q);
      }
    }
    points = std::move(next);
  }
  return points;
}

// Mean of exp(-2 pi i <xi, x>) over the depth-level attractor points.
inline Cld RiemannSum(const std::vector<std::vector<long double>>& points,
                      const std::vector<long double>& xi) {
  Cld sum = 0;
  for (const auto& p : points) {
    long double phase = 0;
    for (std::size_t i = 0; i < xi.size(); ++i) phase += p[i] * xi[i];
    sum += std::polar(1.0L, -kTwoPi * phase);
  }
  return sum / static_cast<long double>(points.size());
}

// Eigenvalues of the Hermitian 2x2 matrix [[a, z], [conj z, c]].
inline std::pair<long double, long double> Eigen2x2(long double a, Cld z, long double c) {
  const long double mean = (a + c) / 2;
  const long double radius = std::sqrt((a - c) * (a - c) / 4 + std::norm(z));
  return {mean - radius, mean + radius};
}

// Gram entry (F^* F)_{b,b'} of the n = 1 frame matrix for one-dimensional
// R, B and rows J.
inline Cld Gram1D(long long radix, const Vec& digits, const Vec& rows, std::size_t i,
                  std::size_t k) {
  Cld sum = 0;
  for (long long lambda : rows) {
    const long double phase =
        static_cast<long double>(FloorMod((digits[i] - digits[k]) * lambda, radix)) / radix;
    sum += std::polar(1.0L, kTwoPi * phase);
  }
  return sum / static_cast<long double>(digits.size());
}

}  // namespace oracle

#endif  // FRACSPEC_TESTS_SUPPORT_ORACLES_H_

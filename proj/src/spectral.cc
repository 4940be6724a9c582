// Copyright 2026 The ppdo Authors
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

#include "ppdo/spectral.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ppdo/error.h"

namespace ppdo {
namespace {

constexpr int kMaxSweeps = 100;

double MaxOffDiagonal(const Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
  }
  return m;
}

double MaxDiagonal(const Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) m = std::max(m, std::abs(a(i, i)));
  return m;
}

// Zeroes a(p, q) with a plane rotation applied on both sides of `a` and
// accumulated into the columns of `v`. The diagonal is updated as
// a_pp - t a_pq / a_qq + t a_pq and the rest in the tau = s / (1 + c) form,
// which keeps round-off small.
void Rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);
  const std::size_t n = a.rows();
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    const double arp = a(r, p);
    const double arq = a(r, q);
    a(r, p) = arp - s * (arq + tau * arp);
    a(r, q) = arq + s * (arp - tau * arq);
    a(p, r) = a(r, p);
    a(q, r) = a(r, q);
  }
  for (std::size_t r = 0; r < n; ++r) {
    const double vrp = v(r, p);
    const double vrq = v(r, q);
    v(r, p) = vrp - s * (vrq + tau * vrp);
    v(r, q) = vrq + s * (vrp - tau * vrq);
  }
}

}  // namespace

EigenDecomposition SymmetricEigen(const SymMatrix& m) {
  const std::size_t n = m.size();
  Matrix a = m.matrix();
  Matrix v = Matrix::Identity(n);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double threshold = kJacobiTolerance * std::max(1.0, MaxDiagonal(a));
    if (MaxOffDiagonal(a) < threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) Rotate(a, v, p, q);
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i) > a(j, j);
  });
  EigenDecomposition out{Vector(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

double ZeroCutoff(const Vector& eigenvalues) {
  return 1e-9 * std::max(1.0, MaxAbs(eigenvalues));
}

int NumericalRank(const SymMatrix& m) {
  const Vector lambda = SymmetricEigen(m).eigenvalues;
  const double tau = ZeroCutoff(lambda);
  return static_cast<int>(std::count_if(lambda.begin(), lambda.end(),
                                        [&](double l) { return l > tau; }));
}

double SmallestNonzeroEigenvalue(const EigenDecomposition& eig) {
  const double tau = ZeroCutoff(eig.eigenvalues);
  // Descending order: the last value above the cutoff is the smallest.
  for (auto it = eig.eigenvalues.rbegin(); it != eig.eigenvalues.rend(); ++it) {
    if (*it > tau) return *it;
  }
  throw Error(ErrorCode::kAllZeroSpectrum, "no eigenvalue above the zero cutoff");
}

double SmallestNonzeroEigenvalue(const SymMatrix& m) {
  return SmallestNonzeroEigenvalue(SymmetricEigen(m));
}

SymMatrix PseudoInverse(const EigenDecomposition& eig) {
  const std::size_t n = eig.eigenvalues.size();
  const double tau = ZeroCutoff(eig.eigenvalues);
  SymMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.eigenvalues[k];
    if (lambda <= tau) continue;
    const double inv = 1.0 / lambda;
    for (std::size_t i = 0; i < n; ++i) {
      const double ui = eig.eigenvectors(i, k) * inv;
      for (std::size_t j = i; j < n; ++j) out.Add(i, j, ui * eig.eigenvectors(j, k));
    }
  }
  return out;
}

SymMatrix PseudoInverse(const SymMatrix& m) {
  return PseudoInverse(SymmetricEigen(m));
}

double PseudoDeterminant(const SymMatrix& m) {
  const Vector lambda = SymmetricEigen(m).eigenvalues;
  const double tau = ZeroCutoff(lambda);
  double product = 1.0;
  for (double l : lambda) {
    if (l > tau) product *= l;
  }
  return product;
}

}  // namespace ppdo

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

#ifndef PPDO_SPECTRAL_H_
#define PPDO_SPECTRAL_H_

#include "ppdo/linalg.h"

namespace ppdo {

struct EigenDecomposition {
  // Sorted descending.
  Vector eigenvalues;
  // Column k is the unit eigenvector for eigenvalues[k].
  Matrix eigenvectors;
};

// Cyclic Jacobi rotations. Sweeps stop once the largest off-diagonal
// magnitude drops below kJacobiTolerance * max(1, max |diagonal|).
inline constexpr double kJacobiTolerance = 1e-12;
EigenDecomposition SymmetricEigen(const SymMatrix& m);

// Eigenvalues at or below this are treated as structural zeros:
// 1e-9 * max(1, largest eigenvalue magnitude).
double ZeroCutoff(const Vector& eigenvalues);

// Count of eigenvalues above the zero cutoff.
int NumericalRank(const SymMatrix& m);

// Smallest eigenvalue above the zero cutoff. Throws kAllZeroSpectrum if
// there is none.
double SmallestNonzeroEigenvalue(const SymMatrix& m);
double SmallestNonzeroEigenvalue(const EigenDecomposition& eig);

// Moore-Penrose inverse of a symmetric PSD matrix: eigenvalues above the
// cutoff are inverted, the rest are dropped.
SymMatrix PseudoInverse(const SymMatrix& m);
SymMatrix PseudoInverse(const EigenDecomposition& eig);

// Product of eigenvalues above the cutoff; 1 when there are none.
double PseudoDeterminant(const SymMatrix& m);

}  // namespace ppdo

#endif  // PPDO_SPECTRAL_H_

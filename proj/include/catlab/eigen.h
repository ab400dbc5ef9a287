// Copyright 2026 The Catlab Authors
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

#pragma once

#include <vector>

#include "catlab/matrix.h"

namespace catlab {

struct HermitianEigen {
    /// Ascending.
    std::vector<double> values;
    /// Column k is the eigenvector for values[k].
    Matrix vectors;
};

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix. Intended for
/// the small dimensions used here (dim <= kMaxDim); converges quadratically.
HermitianEigen hermitian_eigen(const Matrix &m);

/// Eigenvalues only, ascending.
std::vector<double> hermitian_eigenvalues(const Matrix &m);

/// Number of eigenvalues above `threshold`.
std::size_t numerical_rank(const Matrix &hermitian, double threshold = 1e-9);

}  // namespace catlab

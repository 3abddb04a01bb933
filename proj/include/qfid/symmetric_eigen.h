// Copyright 2026 The qfid Authors
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

#ifndef QFID_SYMMETRIC_EIGEN_H
#define QFID_SYMMETRIC_EIGEN_H

#include <cstddef>
#include <vector>

namespace qfid {

/// Row-major dense symmetric matrix.
struct SymmetricMatrix {
    std::size_t n = 0;
    std::vector<double> data;

    SymmetricMatrix() = default;
    explicit SymmetricMatrix(std::size_t n) : n(n), data(n * n, 0.0) {
    }
    double &operator()(std::size_t r, std::size_t c) {
        return data[r * n + c];
    }
    double operator()(std::size_t r, std::size_t c) const {
        return data[r * n + c];
    }
};

/// All eigenvalues (unordered) via Householder tridiagonalisation followed by
/// implicit-shift QL. Throws NumericError if QL fails to deflate.
std::vector<double> symmetric_eigenvalues(SymmetricMatrix a);

struct EigenDecomposition {
    std::vector<double> values;
    /// Column j (stored row-major, n x n) is the eigenvector of values[j].
    std::vector<double> vectors;
};

/// Cyclic Jacobi with eigenvectors. Intended for small matrices.
EigenDecomposition jacobi_eigen(SymmetricMatrix a, double tol = 1e-14, std::size_t max_sweeps = 100);

}  // namespace qfid

#endif

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

#ifndef QFID_SPECTRAL_H
#define QFID_SPECTRAL_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qfid/dag.h"
#include "qfid/deformation.h"
#include "qfid/symmetric_eigen.h"

namespace qfid {

struct KernelConfig {
    /// Diagonal mass added to every node (lazy-walk weight). Must be > 0.
    double self_loop = 0.5;
    /// Nodes whose total degree is at or above this quantile of the degree
    /// distribution count as high fan-in.
    double fanin_quantile = 0.9;
};

/// Symmetric nonnegative dependency kernel K = (W + W^T)/2 + s I, stored as
/// CSR rows sorted by column.
///
/// W sums one unit per directed dependency edge, scaled by
/// (1 + max(0, delta_path)) when the edge lies on a longest path and by
/// (1 + max(0, delta_conn)) when either endpoint is high fan-in.
struct WeightedKernel {
    std::size_t n = 0;
    double self_loop = 0;
    std::vector<std::size_t> row_start;
    std::vector<uint32_t> cols;
    std::vector<double> values;
    /// Row sums d_i.
    std::vector<double> degrees;

    double at(std::size_t i, std::size_t j) const;
    SymmetricMatrix dense() const;
    double total_weight() const;
    std::size_t num_nonzeros() const {
        return values.size();
    }

    /// Builds from a dense symmetric matrix. Throws std::invalid_argument if
    /// the matrix is not symmetric, has negative entries, or a zero row.
    static WeightedKernel from_dense(const SymmetricMatrix &k);
};

/// Throws EmptyGraphError on an empty graph and std::invalid_argument on a
/// non-positive self loop or a quantile outside [0, 1].
WeightedKernel build_kernel(const GateDag &gt, const DeformationReport &def, const KernelConfig &cfg = {});

/// Row-stochastic P = D^{-1} K, kept implicit as a view over the kernel.
class PropagationOperator {
   public:
    explicit PropagationOperator(const WeightedKernel &kernel) : k_(&kernel) {
    }
    std::size_t n() const {
        return k_->n;
    }
    /// (column, probability) pairs of row i.
    std::vector<std::pair<uint32_t, double>> row(std::size_t i) const;
    double row_sum(std::size_t i) const;
    /// max_i |sum_j P_ij - 1|.
    double max_row_sum_deviation() const;
    /// Dense row-major P.
    std::vector<double> dense() const;

   private:
    const WeightedKernel *k_;
};

PropagationOperator operator_rows(const WeightedKernel &kernel);

/// S = D^{-1/2} K D^{-1/2}; similar to P, hence the same (real) spectrum.
SymmetricMatrix similar_symmetric(const WeightedKernel &kernel);

enum class EigenMethod {
    AUTO,
    DENSE,
    ITERATIVE,
};

struct EigenOptions {
    EigenMethod method = EigenMethod::AUTO;
    /// AUTO uses the dense solver up to this many nodes.
    std::size_t dense_limit = 1024;
    /// Residual tolerance |S v - theta v| for the iterative solver.
    double tol = 1e-8;
    std::size_t max_iterations = 10000;
    /// Extra block vectors carried by the iterative solver beyond k.
    std::size_t oversample = 8;
};

struct TopEigenvalues {
    /// Sorted by |lambda| descending, ties by lambda descending.
    std::vector<double> values;
    EigenMethod method = EigenMethod::DENSE;
    bool converged = true;
    std::size_t iterations = 0;
    double max_residual = 0;
};

/// The k eigenvalues of P largest in magnitude. Dense path: full symmetric
/// eigensolve of S. Iterative path: block power iteration on S with
/// Rayleigh-Ritz extraction; hitting the iteration cap returns the current
/// estimates with converged = false. Throws DomainError unless 1 <= k <= n.
TopEigenvalues top_eigenvalues(const WeightedKernel &kernel, std::size_t k, const EigenOptions &opts = {});

/// sum of |lambda_i| over the first min(k, size) entries of `eigs`.
double spectral_complexity(std::span<const double> eigs, std::size_t k);

/// min(10, n).
std::size_t default_mode_count(std::size_t n);

struct PropagationSpectrum {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<double> eigenvalues;
    double complexity = 0;
    bool converged = true;
    std::string method;
    double self_loop = 0;
    double fanin_quantile = 0;
    double max_row_sum_deviation = 0;
};

/// Kernel, operator and top-k spectrum of the transpiled graph. k = 0 selects
/// default_mode_count(n); larger k is truncated to n.
PropagationSpectrum analyze_spectrum(
    const GateDag &gt,
    const DeformationReport &def,
    const KernelConfig &cfg = {},
    std::size_t k = 0,
    const EigenOptions &opts = {});

}  // namespace qfid

#endif

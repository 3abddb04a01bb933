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

#include "qfid/spectral.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <tuple>

#include "qfid/error.h"

namespace qfid {

// ---------------------------------------------------------------------------
// Kernel

double WeightedKernel::at(std::size_t i, std::size_t j) const {
    auto begin = cols.begin() + static_cast<std::ptrdiff_t>(row_start[i]);
    auto end = cols.begin() + static_cast<std::ptrdiff_t>(row_start[i + 1]);
    auto it = std::lower_bound(begin, end, static_cast<uint32_t>(j));
    if (it == end || *it != j) {
        return 0;
    }
    return values[static_cast<std::size_t>(it - cols.begin())];
}

SymmetricMatrix WeightedKernel::dense() const {
    SymmetricMatrix m(n);
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t p = row_start[i]; p < row_start[i + 1]; p++) {
            m(i, cols[p]) = values[p];
        }
    }
    return m;
}

double WeightedKernel::total_weight() const {
    return std::accumulate(values.begin(), values.end(), 0.0);
}

namespace {

struct Triplet {
    uint32_t row;
    uint32_t col;
    double value;
};

WeightedKernel kernel_from_triplets(std::size_t n, double self_loop, std::vector<Triplet> triplets) {
    // Stable so that duplicate (row, col) entries are summed in insertion
    // order; mirrored entries then produce bit-identical sums.
    std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet &a, const Triplet &b) {
        return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    WeightedKernel k;
    k.n = n;
    k.self_loop = self_loop;
    k.row_start.assign(n + 1, 0);
    for (std::size_t t = 0; t < triplets.size(); t++) {
        const Triplet &cur = triplets[t];
        if (t > 0 && triplets[t - 1].row == cur.row && triplets[t - 1].col == cur.col) {
            k.values.back() += cur.value;
            continue;
        }
        k.cols.push_back(cur.col);
        k.values.push_back(cur.value);
        k.row_start[cur.row + 1]++;
    }
    for (std::size_t i = 1; i <= n; i++) {
        k.row_start[i] += k.row_start[i - 1];
    }
    k.degrees.assign(n, 0);
    for (std::size_t i = 0; i < n; i++) {
        double s = 0;
        for (std::size_t p = k.row_start[i]; p < k.row_start[i + 1]; p++) {
            s += k.values[p];
        }
        k.degrees[i] = s;
    }
    return k;
}

double quantile_type7(std::vector<double> xs, double q) {
    std::sort(xs.begin(), xs.end());
    double h = (static_cast<double>(xs.size()) - 1) * q;
    auto lo = static_cast<std::size_t>(std::floor(h));
    std::size_t hi = std::min(lo + 1, xs.size() - 1);
    return xs[lo] + (h - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

}  // namespace

WeightedKernel WeightedKernel::from_dense(const SymmetricMatrix &m) {
    std::vector<Triplet> triplets;
    for (std::size_t i = 0; i < m.n; i++) {
        double row = 0;
        for (std::size_t j = 0; j < m.n; j++) {
            double v = m(i, j);
            if (v < 0 || v != m(j, i) || !std::isfinite(v)) {
                throw std::invalid_argument("kernel must be symmetric, finite and nonnegative");
            }
            if (v != 0) {
                triplets.push_back({static_cast<uint32_t>(i), static_cast<uint32_t>(j), v});
            }
            row += v;
        }
        if (row <= 0) {
            throw std::invalid_argument("kernel row " + std::to_string(i) + " has zero mass");
        }
    }
    double s = m.n > 0 ? m(0, 0) : 0;
    return kernel_from_triplets(m.n, s, std::move(triplets));
}

WeightedKernel build_kernel(const GateDag &gt, const DeformationReport &def, const KernelConfig &cfg) {
    const std::size_t n = gt.num_nodes();
    if (n == 0) {
        throw EmptyGraphError("cannot build a propagation kernel for an empty graph");
    }
    if (!(cfg.self_loop > 0) || !std::isfinite(cfg.self_loop)) {
        throw std::invalid_argument("self_loop must be positive");
    }
    if (!(cfg.fanin_quantile >= 0 && cfg.fanin_quantile <= 1)) {
        throw std::invalid_argument("fanin_quantile must lie in [0, 1]");
    }
    std::vector<double> degree(n);
    for (uint32_t v = 0; v < n; v++) {
        degree[v] = static_cast<double>(gt.degree(v, DegreeMode::TOTAL));
    }
    const double threshold = quantile_type7(degree, cfg.fanin_quantile);
    const double path_boost = 1 + std::max(0.0, def.delta_path);
    const double conn_boost = 1 + std::max(0.0, def.delta_conn);
    const std::size_t longest = gt.longest_path();

    std::vector<Triplet> triplets;
    triplets.reserve(2 * gt.num_edges() + n);
    for (const auto &e : gt.edges()) {
        double w = 1;
        if (longest > 0 && gt.longest_to()[e.src] + 1 + gt.longest_from()[e.dst] == longest) {
            w *= path_boost;
        }
        if (degree[e.src] >= threshold || degree[e.dst] >= threshold) {
            w *= conn_boost;
        }
        triplets.push_back({e.src, e.dst, w / 2});
        triplets.push_back({e.dst, e.src, w / 2});
    }
    for (uint32_t v = 0; v < n; v++) {
        triplets.push_back({v, v, cfg.self_loop});
    }
    return kernel_from_triplets(n, cfg.self_loop, std::move(triplets));
}

// ---------------------------------------------------------------------------
// Operator

std::vector<std::pair<uint32_t, double>> PropagationOperator::row(std::size_t i) const {
    std::vector<std::pair<uint32_t, double>> out;
    for (std::size_t p = k_->row_start[i]; p < k_->row_start[i + 1]; p++) {
        out.emplace_back(k_->cols[p], k_->values[p] / k_->degrees[i]);
    }
    return out;
}

double PropagationOperator::row_sum(std::size_t i) const {
    double s = 0;
    for (std::size_t p = k_->row_start[i]; p < k_->row_start[i + 1]; p++) {
        s += k_->values[p] / k_->degrees[i];
    }
    return s;
}

double PropagationOperator::max_row_sum_deviation() const {
    double worst = 0;
    for (std::size_t i = 0; i < k_->n; i++) {
        worst = std::max(worst, std::abs(row_sum(i) - 1));
    }
    return worst;
}

std::vector<double> PropagationOperator::dense() const {
    std::vector<double> out(k_->n * k_->n, 0.0);
    for (std::size_t i = 0; i < k_->n; i++) {
        for (auto [j, p] : row(i)) {
            out[i * k_->n + j] = p;
        }
    }
    return out;
}

PropagationOperator operator_rows(const WeightedKernel &kernel) {
    return PropagationOperator(kernel);
}

SymmetricMatrix similar_symmetric(const WeightedKernel &kernel) {
    SymmetricMatrix s(kernel.n);
    for (std::size_t i = 0; i < kernel.n; i++) {
        for (std::size_t p = kernel.row_start[i]; p < kernel.row_start[i + 1]; p++) {
            std::size_t j = kernel.cols[p];
            s(i, j) = kernel.values[p] / std::sqrt(kernel.degrees[i] * kernel.degrees[j]);
        }
    }
    // Enforce exact symmetry against rounding in the product of degrees.
    for (std::size_t i = 0; i < kernel.n; i++) {
        for (std::size_t j = i + 1; j < kernel.n; j++) {
            s(j, i) = s(i, j);
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Eigenvalues

namespace {

void sort_by_magnitude(std::vector<double> &v) {
    std::sort(v.begin(), v.end(), [](double a, double b) {
        if (std::abs(a) != std::abs(b)) {
            return std::abs(a) > std::abs(b);
        }
        return a > b;
    });
}

using Block = std::vector<std::vector<double>>;

double dot(const std::vector<double> &a, const std::vector<double> &b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        s += a[i] * b[i];
    }
    return s;
}

class SymmetricOperator {
   public:
    explicit SymmetricOperator(const WeightedKernel &k) : k_(k), inv_sqrt_d_(k.n) {
        for (std::size_t i = 0; i < k.n; i++) {
            inv_sqrt_d_[i] = 1 / std::sqrt(k.degrees[i]);
        }
    }
    void apply(const std::vector<double> &x, std::vector<double> &y) const {
        y.assign(k_.n, 0.0);
        for (std::size_t i = 0; i < k_.n; i++) {
            double s = 0;
            for (std::size_t p = k_.row_start[i]; p < k_.row_start[i + 1]; p++) {
                s += k_.values[p] * inv_sqrt_d_[k_.cols[p]] * x[k_.cols[p]];
            }
            y[i] = inv_sqrt_d_[i] * s;
        }
    }

   private:
    const WeightedKernel &k_;
    std::vector<double> inv_sqrt_d_;
};

/// Modified Gram-Schmidt, two passes. Columns that vanish are refilled from
/// `rng` and re-orthogonalised.
void orthonormalize(Block &v, std::mt19937_64 &rng) {
    auto random_fill = [&](std::vector<double> &x) {
        for (auto &e : x) {
            e = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2 - 1;
        }
    };
    for (std::size_t j = 0; j < v.size(); j++) {
        for (int attempt = 0; attempt < 8; attempt++) {
            double before = std::sqrt(dot(v[j], v[j]));
            for (int pass = 0; pass < 2; pass++) {
                for (std::size_t i = 0; i < j; i++) {
                    double c = dot(v[i], v[j]);
                    for (std::size_t r = 0; r < v[j].size(); r++) {
                        v[j][r] -= c * v[i][r];
                    }
                }
            }
            double norm = std::sqrt(dot(v[j], v[j]));
            if (norm > 1e-10 * std::max(before, 1e-300) && norm > 1e-300) {
                for (auto &e : v[j]) {
                    e /= norm;
                }
                break;
            }
            random_fill(v[j]);
        }
    }
}

TopEigenvalues iterative_top(const WeightedKernel &kernel, std::size_t k, const EigenOptions &opts) {
    const std::size_t n = kernel.n;
    const std::size_t b = std::min(n, k + opts.oversample);
    SymmetricOperator op(kernel);
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    Block v(b, std::vector<double>(n));
    for (auto &col : v) {
        for (auto &e : col) {
            e = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2 - 1;
        }
    }
    orthonormalize(v, rng);

    TopEigenvalues result;
    result.method = EigenMethod::ITERATIVE;
    result.converged = false;
    Block w(b), ritz(b, std::vector<double>(n)), s_ritz(b, std::vector<double>(n));
    std::vector<double> theta;
    std::vector<std::size_t> order(b);
    for (std::size_t it = 1; it <= opts.max_iterations; it++) {
        for (std::size_t j = 0; j < b; j++) {
            op.apply(v[j], w[j]);
        }
        SymmetricMatrix h(b);
        for (std::size_t i = 0; i < b; i++) {
            for (std::size_t j = i; j < b; j++) {
                double x = (dot(v[i], w[j]) + dot(v[j], w[i])) / 2;
                h(i, j) = x;
                h(j, i) = x;
            }
        }
        EigenDecomposition eig = jacobi_eigen(h);
        theta = eig.values;
        for (std::size_t j = 0; j < b; j++) {
            std::fill(ritz[j].begin(), ritz[j].end(), 0.0);
            std::fill(s_ritz[j].begin(), s_ritz[j].end(), 0.0);
            for (std::size_t i = 0; i < b; i++) {
                double y = eig.vectors[i * b + j];
                for (std::size_t r = 0; r < n; r++) {
                    ritz[j][r] += y * v[i][r];
                    s_ritz[j][r] += y * w[i][r];
                }
            }
        }
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
            if (std::abs(theta[a]) != std::abs(theta[c])) {
                return std::abs(theta[a]) > std::abs(theta[c]);
            }
            return theta[a] > theta[c];
        });
        double worst = 0;
        for (std::size_t m = 0; m < k; m++) {
            std::size_t j = order[m];
            double res = 0;
            for (std::size_t r = 0; r < n; r++) {
                double d = s_ritz[j][r] - theta[j] * ritz[j][r];
                res += d * d;
            }
            worst = std::max(worst, std::sqrt(res));
        }
        result.iterations = it;
        result.max_residual = worst;
        if (worst <= opts.tol) {
            result.converged = true;
            break;
        }
        // Power step on the Ritz basis, ordered by magnitude.
        for (std::size_t m = 0; m < b; m++) {
            v[m] = s_ritz[order[m]];
        }
        orthonormalize(v, rng);
    }
    result.values.clear();
    for (std::size_t m = 0; m < k; m++) {
        result.values.push_back(theta[order[m]]);
    }
    sort_by_magnitude(result.values);
    return result;
}

}  // namespace

TopEigenvalues top_eigenvalues(const WeightedKernel &kernel, std::size_t k, const EigenOptions &opts) {
    if (k < 1 || k > kernel.n) {
        throw DomainError(
            "mode count k=" + std::to_string(k) + " must lie in [1, " + std::to_string(kernel.n) + "]");
    }
    EigenMethod method = opts.method;
    if (method == EigenMethod::AUTO) {
        method = kernel.n <= opts.dense_limit ? EigenMethod::DENSE : EigenMethod::ITERATIVE;
    }
    if (method == EigenMethod::ITERATIVE) {
        return iterative_top(kernel, k, opts);
    }
    TopEigenvalues result;
    result.method = EigenMethod::DENSE;
    result.values = symmetric_eigenvalues(similar_symmetric(kernel));
    sort_by_magnitude(result.values);
    result.values.resize(k);
    return result;
}

double spectral_complexity(std::span<const double> eigs, std::size_t k) {
    std::size_t m = std::min(k, eigs.size());
    double c = 0;
    for (std::size_t i = 0; i < m; i++) {
        c += std::abs(eigs[i]);
    }
    return c;
}

std::size_t default_mode_count(std::size_t n) {
    return std::min<std::size_t>(10, n);
}

PropagationSpectrum analyze_spectrum(
    const GateDag &gt, const DeformationReport &def, const KernelConfig &cfg, std::size_t k, const EigenOptions &opts) {
    WeightedKernel kernel = build_kernel(gt, def, cfg);
    PropagationSpectrum s;
    s.n = kernel.n;
    s.k = k == 0 ? default_mode_count(kernel.n) : std::min(k, kernel.n);
    s.self_loop = cfg.self_loop;
    s.fanin_quantile = cfg.fanin_quantile;
    s.max_row_sum_deviation = operator_rows(kernel).max_row_sum_deviation();
    TopEigenvalues top = top_eigenvalues(kernel, s.k, opts);
    s.eigenvalues = top.values;
    s.converged = top.converged;
    s.method = top.method == EigenMethod::DENSE ? "dense" : "iterative";
    s.complexity = spectral_complexity(s.eigenvalues, s.k);
    return s;
}

}  // namespace qfid

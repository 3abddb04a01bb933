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

#include "qfid/symmetric_eigen.h"

#include <cmath>
#include <limits>

#include "qfid/error.h"

namespace qfid {

namespace {

/// Reduces `a` to tridiagonal form in place; returns (diag, offdiag) with
/// off[i] coupling i and i+1 (off[n-1] = 0).
void tridiagonalize(SymmetricMatrix &a, std::vector<double> &diag, std::vector<double> &off) {
    const std::size_t n = a.n;
    std::vector<double> u(n), p(n);
    for (std::size_t k = 0; k + 2 < n; k++) {
        double norm = 0;
        for (std::size_t i = k + 1; i < n; i++) {
            norm += a(i, k) * a(i, k);
        }
        norm = std::sqrt(norm);
        if (norm == 0) {
            continue;
        }
        double x0 = a(k + 1, k);
        double alpha = x0 > 0 ? -norm : norm;
        // u = (x - alpha e1) / |x - alpha e1|
        for (std::size_t i = k + 1; i < n; i++) {
            u[i] = a(i, k);
        }
        u[k + 1] -= alpha;
        double unorm = 0;
        for (std::size_t i = k + 1; i < n; i++) {
            unorm += u[i] * u[i];
        }
        unorm = std::sqrt(unorm);
        if (unorm == 0) {
            continue;
        }
        for (std::size_t i = k + 1; i < n; i++) {
            u[i] /= unorm;
        }
        // Trailing block: A <- A - 2 u q^T - 2 q u^T with p = A u, q = p - (u.p) u.
        double up = 0;
        for (std::size_t i = k + 1; i < n; i++) {
            double s = 0;
            for (std::size_t j = k + 1; j < n; j++) {
                s += a(i, j) * u[j];
            }
            p[i] = s;
            up += u[i] * s;
        }
        for (std::size_t i = k + 1; i < n; i++) {
            p[i] -= up * u[i];
        }
        for (std::size_t i = k + 1; i < n; i++) {
            for (std::size_t j = k + 1; j < n; j++) {
                a(i, j) -= 2 * (u[i] * p[j] + p[i] * u[j]);
            }
        }
        a(k + 1, k) = alpha;
        a(k, k + 1) = alpha;
        for (std::size_t i = k + 2; i < n; i++) {
            a(i, k) = 0;
            a(k, i) = 0;
        }
    }
    diag.assign(n, 0);
    off.assign(n, 0);
    for (std::size_t i = 0; i < n; i++) {
        diag[i] = a(i, i);
        if (i + 1 < n) {
            off[i] = a(i + 1, i);
        }
    }
}

void tridiagonal_ql(std::vector<double> &d, std::vector<double> &e) {
    const int n = static_cast<int>(d.size());
    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; l++) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; m++) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) {
                    break;
                }
            }
            if (m != l) {
                if (iter++ == 100) {
                    throw NumericError("ConvergenceFailure: tridiagonal QL did not deflate");
                }
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1, c = 1, p = 0;
                int i;
                for (i = m - 1; i >= l; i--) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0) {
                        d[i + 1] -= p;
                        e[m] = 0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0 && i >= l) {
                    continue;
                }
                d[l] -= p;
                e[l] = g;
                e[m] = 0;
            }
        } while (m != l);
    }
}

}  // namespace

std::vector<double> symmetric_eigenvalues(SymmetricMatrix a) {
    if (a.n == 0) {
        return {};
    }
    std::vector<double> d, e;
    tridiagonalize(a, d, e);
    tridiagonal_ql(d, e);
    return d;
}

EigenDecomposition jacobi_eigen(SymmetricMatrix a, double tol, std::size_t max_sweeps) {
    const std::size_t n = a.n;
    EigenDecomposition out;
    out.vectors.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; i++) {
        out.vectors[i * n + i] = 1;
    }
    auto off_norm = [&] {
        double s = 0;
        for (std::size_t i = 0; i < n; i++) {
            for (std::size_t j = i + 1; j < n; j++) {
                s += a(i, j) * a(i, j);
            }
        }
        return std::sqrt(2 * s);
    };
    double scale = 0;
    for (double v : a.data) {
        scale += v * v;
    }
    scale = std::sqrt(scale);
    for (std::size_t sweep = 0; sweep < max_sweeps; sweep++) {
        if (off_norm() <= tol * std::max(scale, 1e-300)) {
            break;
        }
        for (std::size_t p = 0; p < n; p++) {
            for (std::size_t q = p + 1; q < n; q++) {
                double apq = a(p, q);
                if (apq == 0) {
                    continue;
                }
                double theta = (a(q, q) - a(p, p)) / (2 * apq);
                double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1);
                double s = t * c;
                for (std::size_t k = 0; k < n; k++) {
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; k++) {
                    double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; k++) {
                    double vkp = out.vectors[k * n + p], vkq = out.vectors[k * n + q];
                    out.vectors[k * n + p] = c * vkp - s * vkq;
                    out.vectors[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    out.values.resize(n);
    for (std::size_t i = 0; i < n; i++) {
        out.values[i] = a(i, i);
    }
    return out;
}

}  // namespace qfid

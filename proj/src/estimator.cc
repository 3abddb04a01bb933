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

#include "qfid/estimator.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "qfid/error.h"

namespace qfid {

namespace {

/// Acklam's rational approximation of the standard normal quantile.
double normal_quantile(double p) {
    static constexpr double a[] = {
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00};
    static constexpr double b[] = {
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01};
    static constexpr double c[] = {
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00};
    static constexpr double d[] = {
        7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    if (p < p_low) {
        double q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p > 1 - p_low) {
        double q = std::sqrt(-2 * std::log(1 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    double q = p - 0.5;
    double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

/// Welford running mean and variance.
struct RunningStats {
    std::size_t n = 0;
    double sum = 0;
    double mean = 0;
    double m2 = 0;

    void push(double x) {
        n++;
        sum += x;
        double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    /// Mean from the running sum, exact for integer-valued streams.
    double average() const {
        return n == 0 ? 0 : sum / static_cast<double>(n);
    }
    double sample_std() const {
        if (n < 2) {
            return 0;
        }
        return std::sqrt(std::max(m2, 0.0) / static_cast<double>(n - 1));
    }
};

/// Shared batch loop. `draw(k)` returns up to k per-shot values; an empty
/// result ends the run.
EstimationTrace run_loop(
    std::size_t batch,
    const PlanConfig &cfg,
    const std::function<std::vector<double>(std::size_t)> &draw) {
    cfg.validate();
    if (batch == 0) {
        throw std::invalid_argument("batch size must be at least 1");
    }
    EstimationTrace tr;
    tr.estimator = cfg.estimator;
    tr.batch_size = batch;
    tr.delta = cfg.delta;
    tr.alpha = cfg.alpha;
    tr.z_alpha = cfg.z_alpha();
    tr.p_max = cfg.p_max;

    RunningStats stats;
    while (true) {
        std::vector<double> values = draw(batch);
        if (values.empty()) {
            tr.stop_reason = StopReason::CAP_REACHED;
            break;
        }
        double batch_sum = 0;
        for (double v : values) {
            stats.push(v);
            batch_sum += v;
        }
        BatchSummary bs;
        bs.shots = values.size();
        bs.batch_mean = batch_sum / static_cast<double>(values.size());
        bs.total_shots = stats.n;
        bs.fhat = stats.average();
        bs.sigma = stats.sample_std();
        bs.ci = tr.z_alpha * bs.sigma / std::sqrt(static_cast<double>(stats.n));
        tr.batches.push_back(bs);

        if (tr.batches.size() >= cfg.min_batches_before_stop && bs.ci <= cfg.delta) {
            tr.stop_reason = StopReason::CI_MET;
            break;
        }
        if (stats.n >= cfg.p_max) {
            tr.stop_reason = StopReason::CAP_REACHED;
            break;
        }
    }
    tr.shots_used = stats.n;
    tr.fhat_raw = stats.average();
    tr.sigma = stats.sample_std();
    tr.ci = tr.batches.empty() ? 0 : tr.batches.back().ci;
    tr.fhat = cfg.estimator == EstimatorKind::XEB ? std::clamp(tr.fhat_raw, 0.0, 1.05) : tr.fhat_raw;
    return tr;
}

}  // namespace

std::string_view estimator_name(EstimatorKind kind) {
    return kind == EstimatorKind::XEB ? "xeb" : "success";
}

std::optional<EstimatorKind> estimator_from_name(std::string_view name) {
    if (name == "success") {
        return EstimatorKind::SUCCESS;
    }
    if (name == "xeb") {
        return EstimatorKind::XEB;
    }
    return std::nullopt;
}

std::string_view stop_reason_name(StopReason reason) {
    return reason == StopReason::CI_MET ? "ci_met" : "cap_reached";
}

void PlanConfig::validate() const {
    if (!(delta > 0 && delta < 1)) {
        throw std::invalid_argument("delta must lie in (0, 1)");
    }
    if (!(alpha > 0 && alpha < 1)) {
        throw std::invalid_argument("alpha must lie in (0, 1)");
    }
    if (batch_min == 0) {
        throw std::invalid_argument("batch_min must be positive");
    }
    if (p_max < batch_min) {
        throw std::invalid_argument("p_max must be at least batch_min");
    }
}

double PlanConfig::z_alpha() const {
    return z_quantile(alpha);
}

double z_quantile(double alpha) {
    if (!(alpha > 0 && alpha < 1)) {
        throw DomainError("alpha must lie in (0, 1)");
    }
    return normal_quantile(1 - alpha / 2);
}

std::size_t batch_size(double complexity, std::size_t depth_t, const PlanConfig &cfg) {
    if (!(complexity > 0) || !std::isfinite(complexity)) {
        throw DomainError("spectral complexity must be positive and finite");
    }
    double raw = std::ceil(complexity * std::log1p(static_cast<double>(depth_t)));
    std::size_t b = raw <= 0 ? 0 : static_cast<std::size_t>(raw);
    return std::max(cfg.batch_min, b);
}

double shot_value(uint64_t outcome, EstimatorKind kind, const OutcomeDistribution &ideal) {
    if (outcome >= ideal.probs.size()) {
        throw DimensionMismatchError("outcome index outside the ideal distribution");
    }
    if (kind == EstimatorKind::XEB) {
        double sum_sq = 0;
        for (double p : ideal.probs) {
            sum_sq += p * p;
        }
        if (std::abs(static_cast<double>(ideal.probs.size()) * sum_sq - 1) <= 1e-12) {
            throw UniformIdealError("XEB normalisation is undefined for a uniform ideal distribution");
        }
        return ideal.probs[outcome];
    }
    double top = *std::max_element(ideal.probs.begin(), ideal.probs.end());
    return ideal.probs[outcome] >= SUCCESS_THRESHOLD * top ? 1.0 : 0.0;
}

ShotScorer::ShotScorer(EstimatorKind kind, const OutcomeDistribution &ideal) : kind_(kind), ideal_(&ideal) {
    if (ideal.probs.empty()) {
        throw DimensionMismatchError("empty ideal distribution");
    }
    if (kind == EstimatorKind::SUCCESS) {
        success_cut_ = SUCCESS_THRESHOLD * *std::max_element(ideal.probs.begin(), ideal.probs.end());
        return;
    }
    double dim = static_cast<double>(ideal.probs.size());
    double sum_sq = 0;
    for (double p : ideal.probs) {
        sum_sq += p * p;
    }
    double denom = dim * sum_sq - 1;
    if (std::abs(denom) <= 1e-12) {
        throw UniformIdealError("XEB normalisation is undefined for a uniform ideal distribution");
    }
    scale_ = dim / denom;
    offset_ = -1 / denom;
}

double ShotScorer::operator()(uint64_t outcome) const {
    if (outcome >= ideal_->probs.size()) {
        throw DimensionMismatchError("outcome index outside the ideal distribution");
    }
    double p = ideal_->probs[outcome];
    if (kind_ == EstimatorKind::SUCCESS) {
        return p >= success_cut_ ? 1.0 : 0.0;
    }
    return scale_ * p + offset_;
}

EstimationTrace estimate(ShotOracle &oracle, std::size_t batch, const PlanConfig &cfg, const OutcomeDistribution &ideal) {
    if (oracle.num_bits() != ideal.num_bits) {
        throw DimensionMismatchError(
            "oracle yields " + std::to_string(oracle.num_bits()) + "-bit outcomes, ideal has " +
            std::to_string(ideal.num_bits));
    }
    ShotScorer score(cfg.estimator, ideal);
    Counts counts;
    counts.num_bits = ideal.num_bits;
    EstimationTrace tr = run_loop(batch, cfg, [&](std::size_t k) {
        std::vector<uint64_t> shots = oracle.sample(k);
        counts.add_all(shots);
        std::vector<double> values(shots.size());
        for (std::size_t i = 0; i < shots.size(); i++) {
            values[i] = score(shots[i]);
        }
        return values;
    });
    tr.counts = std::move(counts);
    return tr;
}

EstimationTrace estimate_values(const std::vector<double> &values, std::size_t batch, const PlanConfig &cfg) {
    std::size_t pos = 0;
    return run_loop(batch, cfg, [&](std::size_t k) {
        std::size_t take = std::min(k, values.size() - pos);
        std::vector<double> out(values.begin() + pos, values.begin() + pos + take);
        pos += take;
        return out;
    });
}

}  // namespace qfid

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

#ifndef QFID_ESTIMATOR_H
#define QFID_ESTIMATOR_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qfid/shot_oracle.h"
#include "qfid/simulator.h"

namespace qfid {

enum class EstimatorKind {
    /// 1 when the outcome is one of the ideal circuit's dominant outcomes.
    SUCCESS,
    /// Normalised linear cross-entropy value.
    XEB,
};

std::string_view estimator_name(EstimatorKind kind);
std::optional<EstimatorKind> estimator_from_name(std::string_view name);

enum class StopReason {
    CI_MET,
    CAP_REACHED,
};

std::string_view stop_reason_name(StopReason reason);

struct PlanConfig {
    double delta = 0.01;
    double alpha = 0.05;
    std::size_t p_max = 10000;
    std::size_t batch_min = 20;
    std::size_t min_batches_before_stop = 2;
    EstimatorKind estimator = EstimatorKind::SUCCESS;

    /// Throws std::invalid_argument.
    void validate() const;
    double z_alpha() const;
};

/// Two-sided normal quantile Phi^-1(1 - alpha/2). Throws DomainError unless
/// 0 < alpha < 1.
double z_quantile(double alpha);

/// max(batch_min, ceil(complexity * ln(1 + depth))). Throws DomainError on a
/// non-positive or non-finite complexity.
std::size_t batch_size(double complexity, std::size_t depth_t, const PlanConfig &cfg);

/// Outcomes whose ideal probability is at least this fraction of the maximum
/// form the success set.
constexpr double SUCCESS_THRESHOLD = 0.5;

/// Raw per-shot value: the success indicator, or p_ideal(outcome) for XEB.
double shot_value(uint64_t outcome, EstimatorKind kind, const OutcomeDistribution &ideal);

/// Maps outcomes to the per-shot values the estimator averages.
class ShotScorer {
   public:
    /// Throws UniformIdealError for XEB when the ideal distribution is uniform.
    ShotScorer(EstimatorKind kind, const OutcomeDistribution &ideal);
    double operator()(uint64_t outcome) const;
    EstimatorKind kind() const {
        return kind_;
    }

   private:
    EstimatorKind kind_;
    const OutcomeDistribution *ideal_;
    double success_cut_ = 0;
    /// XEB: value = scale * p(x) + offset.
    double scale_ = 1;
    double offset_ = 0;
};

struct BatchSummary {
    std::size_t shots = 0;
    double batch_mean = 0;
    std::size_t total_shots = 0;
    double fhat = 0;
    double sigma = 0;
    double ci = 0;
};

struct EstimationTrace {
    EstimatorKind estimator = EstimatorKind::SUCCESS;
    std::size_t batch_size = 0;
    double delta = 0;
    double alpha = 0;
    double z_alpha = 0;
    std::size_t p_max = 0;
    std::vector<BatchSummary> batches;
    /// Mean of the per-shot values.
    double fhat_raw = 0;
    /// fhat_raw clamped to [0, 1.05] (XEB) or unchanged (success).
    double fhat = 0;
    double sigma = 0;
    double ci = 0;
    std::size_t shots_used = 0;
    StopReason stop_reason = StopReason::CAP_REACHED;
    Counts counts;
};

/// Runs batches of `batch` shots until the confidence half-width meets delta
/// (after at least min_batches_before_stop batches) or p_max shots are used.
/// Throws std::invalid_argument when batch is 0; oracle errors propagate.
EstimationTrace estimate(ShotOracle &oracle, std::size_t batch, const PlanConfig &cfg, const OutcomeDistribution &ideal);

/// Same loop over a precomputed value stream (used by tests and by replay
/// analysis). Stops with CAP_REACHED when the stream runs dry.
EstimationTrace estimate_values(const std::vector<double> &values, std::size_t batch, const PlanConfig &cfg);

}  // namespace qfid

#endif

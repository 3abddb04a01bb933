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

#ifndef QFID_SHOT_ORACLE_H
#define QFID_SHOT_ORACLE_H

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qfid/circuit.h"
#include "qfid/simulator.h"

namespace qfid {

/// Source of measured bitstrings (outcome indices, bit c = clbit c).
///
/// Instances own their random stream: the same construction followed by the
/// same sequence of sample() calls yields the same outcomes. Not thread-safe.
class ShotOracle {
   public:
    virtual ~ShotOracle() = default;
    virtual uint32_t num_bits() const = 0;
    virtual std::vector<uint64_t> sample(std::size_t count) = 0;
};

/// i.i.d. inverse-CDF sampling from a fixed distribution.
class DistributionOracle : public ShotOracle {
   public:
    DistributionOracle(OutcomeDistribution dist, uint64_t seed);
    uint32_t num_bits() const override {
        return dist_.num_bits;
    }
    std::vector<uint64_t> sample(std::size_t count) override;
    const OutcomeDistribution &distribution() const {
        return dist_;
    }

   private:
    OutcomeDistribution dist_;
    std::vector<double> cdf_;
    std::mt19937_64 rng_;
};

/// Histogram of observed outcomes.
struct Counts {
    uint32_t num_bits = 0;
    std::map<uint64_t, uint64_t> counts;

    uint64_t total() const;
    void add(uint64_t outcome, uint64_t times = 1);
    void add_all(const std::vector<uint64_t> &outcomes);
    /// Normalised frequencies. Throws TooManyQubitsError above 20 bits.
    OutcomeDistribution empirical() const;

    /// {"n": ..., "counts": {"<bitstring>": count, ...}}.
    std::string to_json() const;
    /// Throws std::invalid_argument on malformed documents.
    static Counts from_json(std::string_view text);
};

/// Replays a recorded histogram as a seeded random permutation of its shots.
/// Throws ReplayExhaustedError once more shots are requested than recorded.
class ReplayOracle : public ShotOracle {
   public:
    ReplayOracle(const Counts &counts, uint64_t seed);
    uint32_t num_bits() const override {
        return num_bits_;
    }
    std::vector<uint64_t> sample(std::size_t count) override;
    std::size_t remaining() const {
        return shots_.size() - pos_;
    }

   private:
    uint32_t num_bits_;
    std::vector<uint64_t> shots_;
    std::size_t pos_ = 0;
};

/// Samples from noisy_distribution(c, noise).
std::unique_ptr<DistributionOracle> make_oracle(const Circuit &c, const NoiseModel &noise, uint64_t seed);
/// Samples from ideal_distribution(c).
std::unique_ptr<DistributionOracle> make_ideal_oracle(const Circuit &c, uint64_t seed);
/// Reads a counts file. Throws OracleError when the file cannot be opened.
std::unique_ptr<ReplayOracle> make_replay_oracle(const std::string &path, uint64_t seed);

}  // namespace qfid

#endif

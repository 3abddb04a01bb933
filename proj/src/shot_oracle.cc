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

#include "qfid/shot_oracle.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qfid/error.h"
#include "qfid/random.h"

namespace qfid {

DistributionOracle::DistributionOracle(OutcomeDistribution dist, uint64_t seed)
    : dist_(std::move(dist)), rng_(seed) {
    if (dist_.probs.empty()) {
        throw OracleError("cannot sample from an empty distribution");
    }
    cdf_.resize(dist_.probs.size());
    double acc = 0;
    for (std::size_t i = 0; i < dist_.probs.size(); i++) {
        acc += std::max(dist_.probs[i], 0.0);
        cdf_[i] = acc;
    }
    if (!(acc > 0)) {
        throw OracleError("distribution has no probability mass");
    }
    for (double &c : cdf_) {
        c /= acc;
    }
    // Pin the last reachable outcome to 1 so rounding can never leave u
    // above the table.
    std::size_t last = dist_.probs.size();
    while (last > 0 && dist_.probs[last - 1] <= 0) {
        last--;
    }
    for (std::size_t i = last - 1; i < cdf_.size(); i++) {
        cdf_[i] = 1.0;
    }
}

std::vector<uint64_t> DistributionOracle::sample(std::size_t count) {
    std::vector<uint64_t> out(count);
    for (std::size_t s = 0; s < count; s++) {
        double u = uniform01(rng_);
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        out[s] = static_cast<uint64_t>(it - cdf_.begin());
    }
    return out;
}

uint64_t Counts::total() const {
    uint64_t t = 0;
    for (const auto &[k, v] : counts) {
        t += v;
    }
    return t;
}

void Counts::add(uint64_t outcome, uint64_t times) {
    if (times > 0) {
        counts[outcome] += times;
    }
}

void Counts::add_all(const std::vector<uint64_t> &outcomes) {
    for (uint64_t o : outcomes) {
        counts[o]++;
    }
}

OutcomeDistribution Counts::empirical() const {
    if (num_bits > MAX_STATEVECTOR_QUBITS) {
        throw TooManyQubitsError("empirical distribution over " + std::to_string(num_bits) + " bits");
    }
    OutcomeDistribution d;
    d.num_bits = num_bits;
    d.probs.assign(std::size_t{1} << num_bits, 0.0);
    double t = static_cast<double>(total());
    if (t == 0) {
        return d;
    }
    for (const auto &[k, v] : counts) {
        d.probs[k] = static_cast<double>(v) / t;
    }
    return d;
}

std::string Counts::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = num_bits;
    nlohmann::ordered_json c = nlohmann::ordered_json::object();
    for (const auto &[k, v] : counts) {
        c[format_bitstring(k, num_bits)] = v;
    }
    j["counts"] = std::move(c);
    return j.dump(2) + "\n";
}

Counts Counts::from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("counts file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("counts") || !j["n"].is_number_unsigned() ||
        !j["counts"].is_object()) {
        throw std::invalid_argument("counts file must be {\"n\": int, \"counts\": {bitstring: int}}");
    }
    Counts c;
    uint64_t n = j["n"].get<uint64_t>();
    if (n > 64) {
        throw std::invalid_argument("counts file declares more than 64 bits");
    }
    c.num_bits = static_cast<uint32_t>(n);
    for (const auto &[key, value] : j["counts"].items()) {
        if (!value.is_number_unsigned()) {
            throw std::invalid_argument("count for '" + key + "' is not a nonnegative integer");
        }
        c.add(parse_bitstring(key, c.num_bits), value.get<uint64_t>());
    }
    return c;
}

ReplayOracle::ReplayOracle(const Counts &counts, uint64_t seed) : num_bits_(counts.num_bits) {
    shots_.reserve(counts.total());
    for (const auto &[k, v] : counts.counts) {
        shots_.insert(shots_.end(), v, k);
    }
    std::mt19937_64 rng(seed);
    for (std::size_t i = shots_.size(); i > 1; i--) {
        std::swap(shots_[i - 1], shots_[uniform_below(rng, i)]);
    }
}

std::vector<uint64_t> ReplayOracle::sample(std::size_t count) {
    if (count > remaining()) {
        throw ReplayExhaustedError(
            "requested " + std::to_string(count) + " shots but only " + std::to_string(remaining()) +
            " remain in the recording");
    }
    std::vector<uint64_t> out(shots_.begin() + pos_, shots_.begin() + pos_ + count);
    pos_ += count;
    return out;
}

std::unique_ptr<DistributionOracle> make_oracle(const Circuit &c, const NoiseModel &noise, uint64_t seed) {
    return std::make_unique<DistributionOracle>(noisy_distribution(c, noise), seed);
}

std::unique_ptr<DistributionOracle> make_ideal_oracle(const Circuit &c, uint64_t seed) {
    return std::make_unique<DistributionOracle>(ideal_distribution(c), seed);
}

std::unique_ptr<ReplayOracle> make_replay_oracle(const std::string &path, uint64_t seed) {
    std::ifstream in(path);
    if (!in) {
        throw OracleError("cannot open counts file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    Counts counts;
    try {
        counts = Counts::from_json(ss.str());
    } catch (const std::invalid_argument &e) {
        throw OracleError(std::string("bad counts file '") + path + "': " + e.what());
    }
    return std::make_unique<ReplayOracle>(counts, seed);
}

}  // namespace qfid

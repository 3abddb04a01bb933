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

#include "qfid/benchmarks.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "json.hpp"
#include "qfid/error.h"
#include "qfid/qasm.h"
#include "qfid/random.h"
#include "qfid/simulator.h"

namespace qfid {

namespace {

constexpr double PI = std::numbers::pi;

constexpr std::array<std::string_view, 8> FAMILIES = {
    "bv", "ghz", "qft", "qpe", "clifford", "ising", "su2", "xeb"};

const std::map<std::string_view, std::set<std::string_view>> &allowed_extras() {
    static const std::map<std::string_view, std::set<std::string_view>> table = {
        {"bv", {"secret"}},
        {"ghz", {}},
        {"qft", {"x"}},
        {"qpe", {"phase"}},
        {"clifford", {"depth"}},
        {"ising", {"steps", "J", "h", "dt"}},
        {"su2", {"layers"}},
        {"xeb", {"depth"}},
    };
    return table;
}

std::string spec_label(const BenchSpec &s) {
    return s.family + ":" + std::to_string(s.n);
}

uint64_t parse_uint(std::string_view text, std::string_view what) {
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw InvalidSpecError(std::string(what) + " '" + std::string(text) + "' is not a nonnegative integer");
    }
    return v;
}

double parse_real(std::string_view text, std::string_view what) {
    std::size_t slash = text.find('/');
    if (slash != std::string_view::npos) {
        double num = static_cast<double>(parse_uint(text.substr(0, slash), what));
        double den = static_cast<double>(parse_uint(text.substr(slash + 1), what));
        if (den == 0) {
            throw InvalidSpecError(std::string(what) + " has a zero denominator");
        }
        return num / den;
    }
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw InvalidSpecError(std::string(what) + " '" + std::string(text) + "' is not a number");
    }
    return v;
}

/// Integer option with a default and an inclusive range.
uint64_t int_option(const BenchSpec &s, const std::string &key, uint64_t fallback, uint64_t lo, uint64_t hi) {
    auto it = s.extras.find(key);
    if (it == s.extras.end()) {
        return fallback;
    }
    uint64_t v = parse_uint(it->second, key);
    if (v < lo || v > hi) {
        throw InvalidSpecError(
            spec_label(s) + ": " + key + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return v;
}

double real_option(const BenchSpec &s, const std::string &key, double fallback) {
    auto it = s.extras.find(key);
    return it == s.extras.end() ? fallback : parse_real(it->second, key);
}

void measure_all(Circuit &c, uint32_t count) {
    for (uint32_t q = 0; q < count; q++) {
        c.append_measure(q, q);
    }
}

/// Emits the QFT (or its inverse) on `qubits`, where qubits[0] carries the
/// least significant bit.
void append_qft(Circuit &c, const std::vector<uint32_t> &qubits, bool inverse) {
    uint32_t n = static_cast<uint32_t>(qubits.size());
    if (!inverse) {
        for (uint32_t j = n; j-- > 0;) {
            c.append(OpKind::H, {qubits[j]});
            for (uint32_t m = j; m-- > 0;) {
                append_controlled_phase(c, qubits[m], qubits[j], PI / static_cast<double>(uint64_t{1} << (j - m)));
            }
        }
        for (uint32_t i = 0; i < n / 2; i++) {
            c.append(OpKind::SWAP, {qubits[i], qubits[n - 1 - i]});
        }
        return;
    }
    for (uint32_t i = n / 2; i-- > 0;) {
        c.append(OpKind::SWAP, {qubits[i], qubits[n - 1 - i]});
    }
    for (uint32_t j = 0; j < n; j++) {
        for (uint32_t m = 0; m < j; m++) {
            append_controlled_phase(c, qubits[m], qubits[j], -PI / static_cast<double>(uint64_t{1} << (j - m)));
        }
        c.append(OpKind::H, {qubits[j]});
    }
}

uint64_t bv_secret(const BenchSpec &s, std::mt19937_64 &rng) {
    uint32_t bits = s.n - 1;
    auto it = s.extras.find("secret");
    if (it != s.extras.end()) {
        try {
            return parse_bitstring(it->second, bits);
        } catch (const std::invalid_argument &e) {
            throw InvalidSpecError(spec_label(s) + ": secret must be a " + std::to_string(bits) + "-bit string");
        }
    }
    return 1 + uniform_below(rng, (uint64_t{1} << bits) - 1);
}

Circuit gen_bv(const BenchSpec &s, std::mt19937_64 &rng) {
    uint64_t secret = bv_secret(s, rng);
    uint32_t data = s.n - 1;
    uint32_t anc = data;
    Circuit c(s.n, data);
    c.append(OpKind::X, {anc});
    for (uint32_t q = 0; q < s.n; q++) {
        c.append(OpKind::H, {q});
    }
    for (uint32_t q = 0; q < data; q++) {
        if ((secret >> q) & 1) {
            c.append(OpKind::CX, {q, anc});
        }
    }
    for (uint32_t q = 0; q < data; q++) {
        c.append(OpKind::H, {q});
    }
    measure_all(c, data);
    return c;
}

Circuit gen_ghz(const BenchSpec &s) {
    Circuit c(s.n, s.n);
    c.append(OpKind::H, {0});
    for (uint32_t q = 0; q + 1 < s.n; q++) {
        c.append(OpKind::CX, {q, q + 1});
    }
    measure_all(c, s.n);
    return c;
}

/// Prepares the Fourier state of -x mod 2^n as a product state; the forward
/// QFT then maps it onto the basis state x.
Circuit gen_qft(const BenchSpec &s, std::mt19937_64 &rng) {
    uint64_t dim = uint64_t{1} << s.n;
    uint64_t x = int_option(s, "x", uniform_below(rng, dim), 0, dim - 1);
    uint64_t y = (dim - x) % dim;
    Circuit c(s.n, s.n);
    for (uint32_t l = 0; l < s.n; l++) {
        c.append(OpKind::H, {l});
        double frac = static_cast<double>((y << l) % dim) / static_cast<double>(dim);
        if (frac != 0) {
            c.append(OpKind::U1, {l}, {2 * PI * frac});
        }
    }
    std::vector<uint32_t> qubits(s.n);
    for (uint32_t q = 0; q < s.n; q++) {
        qubits[q] = q;
    }
    append_qft(c, qubits, false);
    measure_all(c, s.n);
    return c;
}

Circuit gen_qpe(const BenchSpec &s, std::mt19937_64 &rng) {
    uint32_t t = s.n - 1;
    uint64_t dim = uint64_t{1} << t;
    double phase;
    if (s.extras.count("phase")) {
        phase = real_option(s, "phase", 0);
        if (!(phase >= 0 && phase < 1)) {
            throw InvalidSpecError(spec_label(s) + ": phase must lie in [0, 1)");
        }
    } else {
        phase = static_cast<double>(1 + uniform_below(rng, dim - 1)) / static_cast<double>(dim);
    }
    uint32_t eigen = t;
    Circuit c(s.n, t);
    c.append(OpKind::X, {eigen});
    std::vector<uint32_t> counting(t);
    for (uint32_t j = 0; j < t; j++) {
        counting[j] = j;
        c.append(OpKind::H, {j});
    }
    for (uint32_t j = 0; j < t; j++) {
        double angle = 2 * PI * std::fmod(phase * static_cast<double>(uint64_t{1} << j), 1.0);
        if (angle != 0) {
            append_controlled_phase(c, j, eigen, angle);
        }
    }
    append_qft(c, counting, true);
    measure_all(c, t);
    return c;
}

Circuit gen_clifford(const BenchSpec &s, std::mt19937_64 &rng) {
    uint64_t depth = int_option(s, "depth", s.n, 1, 10000);
    Circuit c(s.n, s.n);
    std::vector<uint32_t> order(s.n);
    for (uint64_t layer = 0; layer < depth; layer++) {
        for (uint32_t q = 0; q < s.n; q++) {
            order[q] = q;
        }
        for (uint32_t i = s.n; i > 1; i--) {
            std::swap(order[i - 1], order[uniform_below(rng, i)]);
        }
        for (uint32_t i = 0; i < s.n; i += 2) {
            bool paired = i + 1 < s.n;
            if (paired && uniform_below(rng, 2) == 0) {
                c.append(OpKind::CX, {order[i], order[i + 1]});
                continue;
            }
            for (uint32_t k = i; k < std::min(i + 2, s.n); k++) {
                c.append(uniform_below(rng, 2) == 0 ? OpKind::H : OpKind::S, {order[k]});
            }
        }
    }
    measure_all(c, s.n);
    return c;
}

Circuit gen_ising(const BenchSpec &s) {
    uint64_t steps = int_option(s, "steps", 3, 1, 1000);
    double coupling = real_option(s, "J", 1.0);
    double field = real_option(s, "h", 0.5);
    double dt = real_option(s, "dt", 0.2);
    Circuit c(s.n, s.n);
    for (uint64_t step = 0; step < steps; step++) {
        for (uint32_t q = 0; q + 1 < s.n; q++) {
            c.append(OpKind::CX, {q, q + 1});
            c.append(OpKind::RZ, {q + 1}, {2 * coupling * dt});
            c.append(OpKind::CX, {q, q + 1});
        }
        for (uint32_t q = 0; q < s.n; q++) {
            c.append(OpKind::RX, {q}, {2 * field * dt});
        }
    }
    measure_all(c, s.n);
    return c;
}

Circuit gen_su2(const BenchSpec &s, std::mt19937_64 &rng) {
    uint64_t layers = int_option(s, "layers", 2, 1, 1000);
    Circuit c(s.n, s.n);
    auto rotations = [&] {
        for (uint32_t q = 0; q < s.n; q++) {
            c.append(OpKind::RY, {q}, {2 * PI * uniform01(rng)});
            c.append(OpKind::RZ, {q}, {2 * PI * uniform01(rng)});
        }
    };
    for (uint64_t l = 0; l < layers; l++) {
        rotations();
        for (uint32_t q = 0; q + 1 < s.n; q++) {
            c.append(OpKind::CX, {q, q + 1});
        }
    }
    rotations();
    measure_all(c, s.n);
    return c;
}

Circuit gen_xeb(const BenchSpec &s, std::mt19937_64 &rng) {
    uint64_t depth = int_option(s, "depth", 8, 1, 10000);
    Circuit c(s.n, s.n);
    std::vector<int> last(s.n, -1);
    for (uint64_t cycle = 0; cycle < depth; cycle++) {
        for (uint32_t q = 0; q < s.n; q++) {
            int pick;
            do {
                pick = static_cast<int>(uniform_below(rng, 3));
            } while (pick == last[q]);
            last[q] = pick;
            switch (pick) {
                case 0:
                    c.append(OpKind::RX, {q}, {PI / 2});
                    break;
                case 1:
                    c.append(OpKind::RY, {q}, {PI / 2});
                    break;
                default:
                    c.append(OpKind::U3, {q}, {PI / 2, -PI / 4, PI / 4});
                    break;
            }
        }
        for (uint32_t q = static_cast<uint32_t>(cycle % 2); q + 1 < s.n; q += 2) {
            c.append(OpKind::CX, {q, q + 1});
        }
    }
    measure_all(c, s.n);
    return c;
}

}  // namespace

std::span<const std::string_view> bench_families() {
    return FAMILIES;
}

void BenchSpec::validate() const {
    auto fam = allowed_extras().find(family);
    if (fam == allowed_extras().end()) {
        throw InvalidSpecError("unknown benchmark family '" + family + "'");
    }
    if (n < MIN_BENCH_QUBITS || n > MAX_BENCH_QUBITS) {
        throw InvalidSpecError(
            spec_label(*this) + ": qubit count must lie in [" + std::to_string(MIN_BENCH_QUBITS) + ", " +
            std::to_string(MAX_BENCH_QUBITS) + "]");
    }
    for (const auto &[key, value] : extras) {
        if (!fam->second.count(key)) {
            throw InvalidSpecError(spec_label(*this) + ": unknown option '" + key + "'");
        }
    }
    // Building the circuit performs the per-option range checks.
    generate(*this);
}

std::string BenchSpec::to_string() const {
    std::string s = family + ":" + std::to_string(n) + ":" + std::to_string(seed);
    for (const auto &[k, v] : extras) {
        s += ":" + k + "=" + v;
    }
    return s;
}

BenchSpec parse_bench_spec(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        std::size_t colon = text.find(':', pos);
        parts.push_back(text.substr(pos, colon == std::string_view::npos ? std::string_view::npos : colon - pos));
        if (colon == std::string_view::npos) {
            break;
        }
        pos = colon + 1;
    }
    if (parts.size() < 2) {
        throw InvalidSpecError("benchmark spec '" + std::string(text) + "' must be family:n[:seed][:key=value...]");
    }
    BenchSpec spec;
    spec.family = std::string(parts[0]);
    uint64_t n = parse_uint(parts[1], "qubit count");
    if (n > MAX_BENCH_QUBITS) {
        throw InvalidSpecError(spec.family + ": qubit count must lie in [2, 12]");
    }
    spec.n = static_cast<uint32_t>(n);
    std::size_t i = 2;
    if (i < parts.size() && parts[i].find('=') == std::string_view::npos) {
        spec.seed = parse_uint(parts[i], "seed");
        i++;
    }
    for (; i < parts.size(); i++) {
        std::size_t eq = parts[i].find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw InvalidSpecError("benchmark option '" + std::string(parts[i]) + "' must be key=value");
        }
        std::string key(parts[i].substr(0, eq));
        if (spec.extras.count(key)) {
            throw InvalidSpecError("benchmark option '" + key + "' given twice");
        }
        spec.extras[key] = std::string(parts[i].substr(eq + 1));
    }
    spec.validate();
    return spec;
}

Circuit generate(const BenchSpec &spec) {
    if (spec.n < MIN_BENCH_QUBITS || spec.n > MAX_BENCH_QUBITS) {
        throw InvalidSpecError(spec_label(spec) + ": qubit count must lie in [2, 12]");
    }
    std::mt19937_64 rng(spec.seed);
    const std::string &f = spec.family;
    if (f == "bv") {
        return gen_bv(spec, rng);
    }
    if (f == "ghz") {
        return gen_ghz(spec);
    }
    if (f == "qft") {
        return gen_qft(spec, rng);
    }
    if (f == "qpe") {
        return gen_qpe(spec, rng);
    }
    if (f == "clifford") {
        return gen_clifford(spec, rng);
    }
    if (f == "ising") {
        return gen_ising(spec);
    }
    if (f == "su2") {
        return gen_su2(spec, rng);
    }
    if (f == "xeb") {
        return gen_xeb(spec, rng);
    }
    throw InvalidSpecError("unknown benchmark family '" + f + "'");
}

std::vector<BenchSpec> default_suite(bool include_n10) {
    std::vector<uint32_t> sizes = {4, 6, 8};
    if (include_n10) {
        sizes.push_back(10);
    }
    std::vector<BenchSpec> suite;
    for (std::string_view fam : FAMILIES) {
        for (uint32_t n : sizes) {
            BenchSpec s;
            s.family = std::string(fam);
            s.n = n;
            s.seed = 1;
            suite.push_back(std::move(s));
        }
    }
    return suite;
}

std::vector<BenchSpec> suite_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw InvalidSpecError(std::string("suite file is not valid JSON: ") + e.what());
    }
    if (!j.is_array()) {
        throw InvalidSpecError("suite file must hold a JSON array");
    }
    std::vector<BenchSpec> suite;
    for (const auto &item : j) {
        if (item.is_string()) {
            suite.push_back(parse_bench_spec(item.get<std::string>()));
            continue;
        }
        if (!item.is_object() || !item.contains("family") || !item["family"].is_string() || !item.contains("n") ||
            !item["n"].is_number_unsigned()) {
            throw InvalidSpecError("suite entries need a string 'family' and an integer 'n'");
        }
        BenchSpec s;
        s.family = item["family"].get<std::string>();
        uint64_t n = item["n"].get<uint64_t>();
        if (n > MAX_BENCH_QUBITS) {
            throw InvalidSpecError(s.family + ": qubit count must lie in [2, 12]");
        }
        s.n = static_cast<uint32_t>(n);
        if (item.contains("seed")) {
            if (!item["seed"].is_number_unsigned()) {
                throw InvalidSpecError("suite entry seed must be a nonnegative integer");
            }
            s.seed = item["seed"].get<uint64_t>();
        }
        if (item.contains("extras")) {
            if (!item["extras"].is_object()) {
                throw InvalidSpecError("suite entry extras must be an object");
            }
            for (const auto &[k, v] : item["extras"].items()) {
                s.extras[k] = v.is_string() ? v.get<std::string>() : v.dump();
            }
        }
        s.validate();
        suite.push_back(std::move(s));
    }
    return suite;
}

std::string suite_to_json(const std::vector<BenchSpec> &suite) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const BenchSpec &s : suite) {
        nlohmann::ordered_json o;
        o["family"] = s.family;
        o["n"] = s.n;
        o["seed"] = s.seed;
        nlohmann::ordered_json extras = nlohmann::ordered_json::object();
        for (const auto &[k, v] : s.extras) {
            extras[k] = v;
        }
        o["extras"] = std::move(extras);
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

Circuit qft_circuit(uint32_t n) {
    Circuit c(n, 0);
    std::vector<uint32_t> qubits(n);
    for (uint32_t q = 0; q < n; q++) {
        qubits[q] = q;
    }
    append_qft(c, qubits, false);
    return c;
}

void append_controlled_phase(Circuit &c, uint32_t control, uint32_t target, double theta) {
    c.append(OpKind::U1, {control}, {theta / 2});
    c.append(OpKind::CX, {control, target});
    c.append(OpKind::U1, {target}, {-theta / 2});
    c.append(OpKind::CX, {control, target});
    c.append(OpKind::U1, {target}, {theta / 2});
}

Circuit random_circuit(const RandomCircuitOptions &opts) {
    if (opts.num_qubits == 0) {
        throw std::invalid_argument("random_circuit needs at least one qubit");
    }
    std::mt19937_64 rng(opts.seed);
    std::vector<OpKind> kinds;
    for (OpKind k : all_op_kinds()) {
        if (k == OpKind::MEASURE || k == OpKind::BARRIER) {
            continue;
        }
        uint32_t arity = op_info(k).num_qubits;
        if (arity > opts.num_qubits || (k == OpKind::CCX && !opts.allow_ccx)) {
            continue;
        }
        kinds.push_back(k);
    }
    Circuit c(opts.num_qubits, opts.measure ? opts.num_qubits : 0);
    std::vector<uint32_t> pool(opts.num_qubits);
    for (std::size_t g = 0; g < opts.num_gates; g++) {
        OpKind k = kinds[uniform_below(rng, kinds.size())];
        const OpInfo &info = op_info(k);
        for (uint32_t q = 0; q < opts.num_qubits; q++) {
            pool[q] = q;
        }
        std::vector<uint32_t> qubits(info.num_qubits);
        for (uint32_t j = 0; j < info.num_qubits; j++) {
            std::size_t pick = j + uniform_below(rng, opts.num_qubits - j);
            std::swap(pool[j], pool[pick]);
            qubits[j] = pool[j];
        }
        std::vector<double> params(info.num_params);
        for (double &p : params) {
            p = (2 * uniform01(rng) - 1) * 2 * PI;
        }
        c.append(k, std::move(qubits), std::move(params));
    }
    if (opts.measure) {
        measure_all(c, opts.num_qubits);
    }
    return c;
}

}  // namespace qfid

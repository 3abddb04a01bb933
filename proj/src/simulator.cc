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

#include "qfid/simulator.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "qfid/error.h"
#include "qfid/qasm.h"

namespace qfid {

namespace {

/// Offsets of the 2^k local basis states inside the global index.
std::vector<uint64_t> local_offsets(std::span<const uint32_t> bits) {
    std::size_t d = std::size_t{1} << bits.size();
    std::vector<uint64_t> offsets(d, 0);
    for (std::size_t t = 0; t < d; t++) {
        for (std::size_t j = 0; j < bits.size(); j++) {
            if ((t >> j) & 1) {
                offsets[t] |= uint64_t{1} << bits[j];
            }
        }
    }
    return offsets;
}

/// In-place u (or conj(u)) on the listed bits of a 2^num_bits vector.
void apply_matrix(std::vector<Complex> &state, const Unitary &u, std::span<const uint32_t> bits, bool conjugate) {
    std::vector<uint64_t> offsets = local_offsets(bits);
    uint64_t mask = 0;
    for (uint32_t b : bits) {
        mask |= uint64_t{1} << b;
    }
    std::size_t d = offsets.size();
    std::vector<Complex> in(d);
    uint64_t size = state.size();
    for (uint64_t base = 0; base < size; base++) {
        if (base & mask) {
            continue;
        }
        for (std::size_t t = 0; t < d; t++) {
            in[t] = state[base | offsets[t]];
        }
        for (std::size_t r = 0; r < d; r++) {
            Complex acc = 0;
            for (std::size_t c = 0; c < d; c++) {
                Complex m = u(r, c);
                acc += (conjugate ? std::conj(m) : m) * in[c];
            }
            state[base | offsets[r]] = acc;
        }
    }
}

void check_statevector_size(uint32_t n) {
    if (n > MAX_STATEVECTOR_QUBITS) {
        throw TooManyQubitsError(
            std::to_string(n) + " qubits exceeds the statevector limit of " +
            std::to_string(MAX_STATEVECTOR_QUBITS));
    }
}

struct Readout {
    uint32_t num_bits = 0;
    /// (qubit, clbit) pairs in measurement order.
    std::vector<std::pair<uint32_t, uint32_t>> reads;
};

/// Resolves which qubit feeds each clbit and rejects gates after a measure.
Readout readout_of(const Circuit &c) {
    Readout out;
    std::vector<bool> measured(c.num_qubits, false);
    for (const Operation &op : c.ops) {
        if (op.kind == OpKind::MEASURE) {
            measured[op.qubits[0]] = true;
            out.reads.emplace_back(op.qubits[0], op.clbit);
        } else if (op.is_unitary()) {
            for (uint32_t q : op.qubits) {
                if (measured[q]) {
                    throw OracleError(
                        "UnsupportedOperation: gate '" + std::string(op.name()) + "' acts on qubit " +
                        std::to_string(q) + " after it was measured");
                }
            }
        }
    }
    if (out.reads.empty()) {
        out.num_bits = c.num_qubits;
        for (uint32_t q = 0; q < c.num_qubits; q++) {
            out.reads.emplace_back(q, q);
        }
    } else {
        out.num_bits = c.num_clbits;
    }
    return out;
}

/// Pushes a distribution over qubit basis states through the measure map.
OutcomeDistribution to_outcomes(const std::vector<double> &qubit_probs, const Readout &ro) {
    OutcomeDistribution d;
    d.num_bits = ro.num_bits;
    d.probs.assign(std::size_t{1} << ro.num_bits, 0.0);
    for (uint64_t x = 0; x < qubit_probs.size(); x++) {
        double p = qubit_probs[x];
        if (p == 0) {
            continue;
        }
        uint64_t y = 0;
        for (auto [q, cb] : ro.reads) {
            uint64_t bit = (x >> q) & 1;
            y = (y & ~(uint64_t{1} << cb)) | (bit << cb);
        }
        d.probs[y] += p;
    }
    return d;
}

}  // namespace

void NoiseModel::validate() const {
    auto check = [](double p, double hi, const char *name) {
        if (!(p >= 0 && p <= hi)) {
            throw std::invalid_argument(std::string("noise rate ") + name + " must lie in [0, " + format_double(hi) + "]");
        }
    };
    check(p1, 1.0, "p1");
    check(p2, 1.0, "p2");
    check(p_ro, 0.5, "ro");
}

NoiseModel NoiseModel::parse(std::string_view text) {
    NoiseModel m;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view item = text.substr(pos, end - pos);
        pos = end + 1;
        if (item.empty()) {
            continue;
        }
        std::size_t eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("noise item '" + std::string(item) + "' is not key=value");
        }
        std::string_view key = item.substr(0, eq);
        std::string value(item.substr(eq + 1));
        double v = 0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc() || ptr != value.data() + value.size()) {
            throw std::invalid_argument("noise value '" + value + "' is not a number");
        }
        if (key == "p1") {
            m.p1 = v;
        } else if (key == "p2") {
            m.p2 = v;
        } else if (key == "ro" || key == "p_ro") {
            m.p_ro = v;
        } else {
            throw std::invalid_argument("unknown noise key '" + std::string(key) + "'");
        }
    }
    m.validate();
    return m;
}

std::string NoiseModel::to_string() const {
    return "p1=" + format_double(p1) + ",p2=" + format_double(p2) + ",ro=" + format_double(p_ro);
}

double OutcomeDistribution::total() const {
    double s = 0;
    for (double p : probs) {
        s += p;
    }
    return s;
}

std::string OutcomeDistribution::bitstring(uint64_t outcome) const {
    return format_bitstring(outcome, num_bits);
}

std::string format_bitstring(uint64_t outcome, uint32_t num_bits) {
    std::string s(num_bits, '0');
    for (uint32_t b = 0; b < num_bits; b++) {
        if ((outcome >> b) & 1) {
            s[num_bits - 1 - b] = '1';
        }
    }
    return s;
}

uint64_t parse_bitstring(std::string_view text, uint32_t num_bits) {
    if (text.size() != num_bits || num_bits > 64) {
        throw std::invalid_argument(
            "bitstring '" + std::string(text) + "' does not have " + std::to_string(num_bits) + " bits");
    }
    uint64_t v = 0;
    for (char ch : text) {
        if (ch != '0' && ch != '1') {
            throw std::invalid_argument("bitstring '" + std::string(text) + "' contains a non-binary character");
        }
        v = (v << 1) | static_cast<uint64_t>(ch - '0');
    }
    return v;
}

StateVector::StateVector(uint32_t num_qubits) : n_(num_qubits) {
    check_statevector_size(num_qubits);
    amps_.assign(std::size_t{1} << num_qubits, Complex(0, 0));
    amps_[0] = 1;
}

void StateVector::apply(const Unitary &u, std::span<const uint32_t> qubits) {
    apply_matrix(amps_, u, qubits, false);
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); i++) {
        p[i] = std::norm(amps_[i]);
    }
    return p;
}

DensityMatrix::DensityMatrix(uint32_t num_qubits) : n_(num_qubits) {
    if (num_qubits > MAX_DENSITY_MATRIX_QUBITS) {
        throw TooManyQubitsError(
            std::to_string(num_qubits) + " qubits exceeds the density-matrix limit of " +
            std::to_string(MAX_DENSITY_MATRIX_QUBITS));
    }
    data_.assign(std::size_t{1} << (2 * num_qubits), Complex(0, 0));
    data_[0] = 1;
}

void DensityMatrix::apply(const Unitary &u, std::span<const uint32_t> qubits) {
    apply_matrix(data_, u, qubits, false);
    std::vector<uint32_t> cols(qubits.begin(), qubits.end());
    for (uint32_t &q : cols) {
        q += n_;
    }
    apply_matrix(data_, u, cols, true);
}

void DensityMatrix::depolarize(std::span<const uint32_t> qubits, double p) {
    if (p == 0 || qubits.empty()) {
        return;
    }
    std::vector<uint32_t> col_bits(qubits.begin(), qubits.end());
    for (uint32_t &q : col_bits) {
        q += n_;
    }
    std::vector<uint64_t> row_off = local_offsets(qubits);
    std::vector<uint64_t> col_off = local_offsets(col_bits);
    uint64_t mask = 0;
    for (uint32_t q : qubits) {
        mask |= (uint64_t{1} << q) | (uint64_t{1} << (q + n_));
    }
    std::size_t d = row_off.size();
    double inv_d = 1.0 / static_cast<double>(d);
    for (uint64_t base = 0; base < data_.size(); base++) {
        if (base & mask) {
            continue;
        }
        Complex tr = 0;
        for (std::size_t t = 0; t < d; t++) {
            tr += data_[base | row_off[t] | col_off[t]];
        }
        for (std::size_t r = 0; r < d; r++) {
            for (std::size_t c = 0; c < d; c++) {
                Complex &e = data_[base | row_off[r] | col_off[c]];
                e *= (1 - p);
                if (r == c) {
                    e += p * tr * inv_d;
                }
            }
        }
    }
}

double DensityMatrix::trace() const {
    double s = 0;
    uint64_t dim = uint64_t{1} << n_;
    for (uint64_t i = 0; i < dim; i++) {
        s += at(i, i).real();
    }
    return s;
}

double DensityMatrix::hermiticity_error() const {
    double worst = 0;
    uint64_t dim = uint64_t{1} << n_;
    for (uint64_t r = 0; r < dim; r++) {
        for (uint64_t c = r; c < dim; c++) {
            worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
        }
    }
    return worst;
}

std::vector<double> DensityMatrix::diagonal() const {
    uint64_t dim = uint64_t{1} << n_;
    std::vector<double> d(dim);
    for (uint64_t i = 0; i < dim; i++) {
        d[i] = at(i, i).real();
    }
    return d;
}

std::vector<Complex> final_state(const Circuit &c) {
    StateVector sv(c.num_qubits);
    for (const Operation &op : c.ops) {
        if (op.is_unitary()) {
            sv.apply(gate_unitary(op), op.qubits);
        }
    }
    return sv.amplitudes();
}

Unitary circuit_unitary(const Circuit &c) {
    if (c.num_qubits > 12) {
        throw TooManyQubitsError("circuit_unitary is limited to 12 qubits");
    }
    std::size_t dim = std::size_t{1} << c.num_qubits;
    Unitary u(dim);
    std::vector<Complex> col(dim);
    std::vector<std::pair<Unitary, const Operation *>> gates;
    for (const Operation &op : c.ops) {
        if (op.kind == OpKind::MEASURE) {
            throw NonUnitaryOpError("circuit_unitary on a circuit with measurements");
        }
        if (op.is_unitary()) {
            gates.emplace_back(gate_unitary(op), &op);
        }
    }
    for (std::size_t j = 0; j < dim; j++) {
        std::fill(col.begin(), col.end(), Complex(0, 0));
        col[j] = 1;
        for (const auto &[g, op] : gates) {
            apply_matrix(col, g, op->qubits, false);
        }
        for (std::size_t i = 0; i < dim; i++) {
            u(i, j) = col[i];
        }
    }
    return u;
}

OutcomeDistribution ideal_distribution(const Circuit &c) {
    check_statevector_size(c.num_qubits);
    Readout ro = readout_of(c);
    StateVector sv(c.num_qubits);
    for (const Operation &op : c.ops) {
        if (op.is_unitary()) {
            sv.apply(gate_unitary(op), op.qubits);
        }
    }
    return to_outcomes(sv.probabilities(), ro);
}

OutcomeDistribution noisy_distribution(const Circuit &c, const NoiseModel &noise, const DensityObserver &observer) {
    noise.validate();
    if (c.num_qubits > MAX_DENSITY_MATRIX_QUBITS) {
        throw TooManyQubitsError(
            std::to_string(c.num_qubits) + " qubits exceeds the density-matrix limit of " +
            std::to_string(MAX_DENSITY_MATRIX_QUBITS));
    }
    Readout ro = readout_of(c);
    DensityMatrix rho(c.num_qubits);
    for (const Operation &op : c.ops) {
        if (op.is_unitary()) {
            rho.apply(gate_unitary(op), op.qubits);
            rho.depolarize(op.qubits, op.qubits.size() == 1 ? noise.p1 : noise.p2);
        }
        if (observer) {
            observer(rho, op);
        }
    }
    std::vector<double> diag = rho.diagonal();
    for (double &p : diag) {
        p = std::max(p, 0.0);
    }
    OutcomeDistribution d = to_outcomes(diag, ro);
    if (noise.p_ro > 0) {
        std::vector<bool> flipped(ro.num_bits, false);
        for (auto [q, cb] : ro.reads) {
            if (flipped[cb]) {
                continue;
            }
            flipped[cb] = true;
            uint64_t bit = uint64_t{1} << cb;
            std::vector<double> next(d.probs.size());
            for (uint64_t y = 0; y < d.probs.size(); y++) {
                next[y] = (1 - noise.p_ro) * d.probs[y] + noise.p_ro * d.probs[y ^ bit];
            }
            d.probs = std::move(next);
        }
    }
    return d;
}

double hellinger_distance(const OutcomeDistribution &p, const OutcomeDistribution &q) {
    if (p.num_bits != q.num_bits || p.probs.size() != q.probs.size()) {
        throw DimensionMismatchError(
            "distributions over " + std::to_string(p.num_bits) + " and " + std::to_string(q.num_bits) + " bits");
    }
    double bc = 0;
    for (std::size_t i = 0; i < p.probs.size(); i++) {
        bc += std::sqrt(std::max(p.probs[i], 0.0) * std::max(q.probs[i], 0.0));
    }
    return std::sqrt(std::clamp(1.0 - bc, 0.0, 1.0));
}

}  // namespace qfid

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

// End-to-end acceptance checks. Prints one line per criterion:
//   AC<k> PASS|FAIL <measured values>
// and exits nonzero if any selected criterion fails.
//
//   acceptance            # all criteria
//   acceptance --only 6   # a single criterion

#include <sys/wait.h>

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qfid/benchmarks.h"
#include "qfid/dag.h"
#include "qfid/deformation.h"
#include "qfid/error.h"
#include "qfid/estimator.h"
#include "qfid/harness.h"
#include "qfid/qasm.h"
#include "qfid/simulator.h"
#include "qfid/spectral.h"
#include "qfid/transpiler.h"

using namespace qfid;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v, int digits = 6) {
    std::ostringstream s;
    s.precision(digits);
    s << v;
    return s.str();
}

// ---------------------------------------------------------------------------
// AC1: operator properties on random circuits.

Outcome ac1() {
    auto start = Clock::now();
    double worst_row = 0, worst_top = 0, worst_imag = 0;
    std::size_t general_checked = 0, largest = 0;
    constexpr std::size_t GENERAL_SOLVER_LIMIT = 500;
    double oracle_secs = 0;
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 200; trial++) {
        RandomCircuitOptions o;
        o.num_qubits = 2 + static_cast<uint32_t>(rng() % 9);
        o.num_gates = 5 + rng() % 196;
        o.seed = rng();
        Circuit c = random_circuit(o);
        TranspileResult tr = transpile(c, CouplingMap::linear(o.num_qubits), 0);
        GateDag g0 = build_dag(c), gt = build_dag(tr.circuit);
        DeformationReport def = measure_deformation(g0, gt);
        WeightedKernel k = build_kernel(gt, def);
        PropagationOperator p = operator_rows(k);
        worst_row = std::max(worst_row, p.max_row_sum_deviation());
        TopEigenvalues top = top_eigenvalues(k, default_mode_count(k.n));
        worst_top = std::max(worst_top, std::abs(std::abs(top.values.front()) - 1));
        largest = std::max(largest, k.n);
        if (k.n <= GENERAL_SOLVER_LIMIT) {
            auto oracle_start = Clock::now();
            std::vector<double> dense = p.dense();
            Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
                dense.data(), static_cast<Eigen::Index>(k.n), static_cast<Eigen::Index>(k.n));
            Eigen::EigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(m), false);
            worst_imag = std::max(worst_imag, es.eigenvalues().imag().cwiseAbs().maxCoeff());
            double max_mod = es.eigenvalues().cwiseAbs().maxCoeff();
            worst_top = std::max(worst_top, std::abs(max_mod - 1));
            general_checked++;
            oracle_secs += seconds_since(oracle_start);
        }
    }
    double secs = seconds_since(start);
    Outcome out;
    out.pass = worst_row <= 1e-9 && worst_top <= 1e-9 && worst_imag <= 1e-8 && secs < 60;
    out.detail = "max|rowsum-1|=" + fmt(worst_row) + " max||lambda|max-1|=" + fmt(worst_top) +
                 " max|Im|=" + fmt(worst_imag) + " general-solver=" + std::to_string(general_checked) +
                 "/200 (largest n=" + std::to_string(largest) + ") time=" + fmt(secs, 3) + "s, of which oracle " +
                 fmt(oracle_secs, 3) + "s";
    return out;
}

// ---------------------------------------------------------------------------
// AC2: iterative eigensolver against Eigen's dense symmetric solver.

std::vector<double> eigen_oracle(const WeightedKernel &k) {
    Eigen::MatrixXd m(k.n, k.n);
    for (std::size_t i = 0; i < k.n; i++) {
        for (std::size_t j = 0; j < k.n; j++) {
            m(i, j) = k.at(i, j);
        }
    }
    Eigen::VectorXd inv_sqrt = m.rowwise().sum().array().rsqrt();
    Eigen::MatrixXd s = inv_sqrt.asDiagonal() * m * inv_sqrt.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + k.n);
    std::sort(v.begin(), v.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
    return v;
}

Outcome ac2() {
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> weight(0.05, 4.0);
    double worst = 0;
    bool all_converged = true;
    for (int trial = 0; trial < 50; trial++) {
        std::size_t n = 1 + rng() % 64;
        double density = 0.05 + 0.5 * static_cast<double>(rng() % 100) / 100;
        SymmetricMatrix m(n);
        for (std::size_t i = 0; i < n; i++) {
            m(i, i) = 0.5;
            for (std::size_t j = i + 1; j < n; j++) {
                if (static_cast<double>(rng() % 1000) / 1000 < density) {
                    m(i, j) = m(j, i) = weight(rng);
                }
            }
        }
        WeightedKernel k = WeightedKernel::from_dense(m);
        std::size_t kk = std::min<std::size_t>(n, 10);
        EigenOptions opts;
        opts.method = EigenMethod::ITERATIVE;
        TopEigenvalues top = top_eigenvalues(k, kk, opts);
        all_converged = all_converged && top.converged;
        std::vector<double> want = eigen_oracle(k);
        for (std::size_t i = 0; i < kk; i++) {
            worst = std::max(worst, std::abs(std::abs(top.values[i]) - std::abs(want[i])));
        }
    }

    SymmetricMatrix two(2);
    two(0, 0) = two(1, 1) = 0.5;
    two(0, 1) = two(1, 0) = 1.0;
    WeightedKernel k2 = WeightedKernel::from_dense(two);
    double worst2 = 0;
    for (EigenMethod method : {EigenMethod::DENSE, EigenMethod::ITERATIVE}) {
        EigenOptions opts;
        opts.method = method;
        TopEigenvalues t = top_eigenvalues(k2, 2, opts);
        worst2 = std::max({worst2, std::abs(t.values[0] - 1), std::abs(t.values[1] + 1.0 / 3)});
    }
    Outcome out;
    out.pass = worst <= 1e-6 && worst2 <= 1e-12 && all_converged;
    out.detail = "max top-k |lambda| error=" + fmt(worst) + " 2x2 error=" + fmt(worst2) +
                 (all_converged ? "" : " (iterative solver did not converge)");
    return out;
}

// ---------------------------------------------------------------------------
// AC3: transpiler semantics and coupling legality.

std::vector<Complex> strip_and_run(const Circuit &c) {
    Circuit out(c.num_qubits, c.num_clbits);
    for (const Operation &op : c.ops) {
        if (op.kind != OpKind::MEASURE) {
            out.append_op(op);
        }
    }
    return final_state(out);
}

double layout_overlap(const Circuit &logical, const TranspileResult &tr) {
    std::vector<Complex> a = strip_and_run(logical);
    std::vector<Complex> b = strip_and_run(tr.circuit);
    Complex acc = 0;
    for (std::size_t x = 0; x < a.size(); x++) {
        std::size_t y = 0;
        for (uint32_t l = 0; l < logical.num_qubits; l++) {
            y |= ((x >> l) & 1) << tr.final_layout[l];
        }
        acc += std::conj(a[x]) * b[y];
    }
    return std::abs(acc);
}

Outcome ac3() {
    double worst_overlap = 1;
    std::size_t circuits = 0;
    for (std::string_view family : bench_families()) {
        for (uint32_t n : {2u, 3u}) {
            Circuit c = generate(BenchSpec{std::string(family), n, 1, {}});
            for (const char *map : {"linear", "ring"}) {
                TranspileResult tr = transpile(c, coupling_from_spec(map, n), 0);
                worst_overlap = std::min(worst_overlap, layout_overlap(c, tr));
                circuits++;
            }
        }
    }
    for (uint64_t seed = 1; seed <= 100; seed++) {
        RandomCircuitOptions o;
        o.num_qubits = 2 + static_cast<uint32_t>(seed % 5);
        o.num_gates = 10 + seed % 60;
        o.seed = seed;
        Circuit c = random_circuit(o);
        TranspileResult tr = transpile(c, CouplingMap::linear(o.num_qubits), 0);
        worst_overlap = std::min(worst_overlap, layout_overlap(c, tr));
        circuits++;
    }

    std::size_t two_qubit = 0, legal = 0;
    for (const BenchSpec &spec : default_suite(true)) {
        Circuit c = generate(spec);
        for (const char *map : {"linear", "ring", "heavyhex27"}) {
            CouplingMap cm = coupling_from_spec(map, c.num_qubits);
            TranspileResult tr = transpile(c, cm, 0);
            for (const Operation &op : tr.circuit.ops) {
                if (op.is_unitary() && op.qubits.size() == 2) {
                    two_qubit++;
                    legal += cm.adjacent(op.qubits[0], op.qubits[1]) ? 1 : 0;
                }
            }
        }
    }
    Outcome out;
    out.pass = worst_overlap >= 1 - 1e-9 && legal == two_qubit;
    out.detail = "min overlap=" + fmt(worst_overlap, 17) + " over " + std::to_string(circuits) +
                 " circuits; legal 2q gates " + std::to_string(legal) + "/" + std::to_string(two_qubit);
    return out;
}

// ---------------------------------------------------------------------------
// AC4: simulator exactness.

Outcome ac4() {
    Circuit ghz = generate(parse_bench_spec("ghz:3"));
    OutcomeDistribution d = noisy_distribution(ghz, NoiseModel{});
    double ghz_err = 0;
    for (std::size_t i = 0; i < 8; i++) {
        ghz_err = std::max(ghz_err, std::abs(d.probs[i] - ((i == 0 || i == 7) ? 0.5 : 0.0)));
    }
    OutcomeDistribution sv = ideal_distribution(ghz);
    for (std::size_t i = 0; i < 8; i++) {
        ghz_err = std::max(ghz_err, std::abs(sv.probs[i] - ((i == 0 || i == 7) ? 0.5 : 0.0)));
    }

    double depol_err = 0;
    for (OpKind k : {OpKind::X, OpKind::H, OpKind::SX}) {
        Circuit c(1, 1);
        c.append(k, {0});
        c.append_measure(0, 0);
        OutcomeDistribution u = noisy_distribution(c, NoiseModel{1.0, 0.0, 0.0});
        depol_err = std::max({depol_err, std::abs(u.probs[0] - 0.5), std::abs(u.probs[1] - 0.5)});
    }

    double trace_err = 0;
    std::size_t steps = 0;
    Circuit qft6 = generate(parse_bench_spec("qft:6"));
    noisy_distribution(qft6, NoiseModel{1e-3, 1e-2, 1e-2}, [&](const DensityMatrix &rho, const Operation &) {
        trace_err = std::max(trace_err, std::abs(rho.trace() - 1));
        steps++;
    });

    Outcome out;
    out.pass = ghz_err <= 1e-12 && depol_err <= 1e-12 && trace_err <= 1e-10;
    out.detail = "ghz3 error=" + fmt(ghz_err) + " full depolarization error=" + fmt(depol_err) +
                 " max|tr(rho)-1|=" + fmt(trace_err) + " over " + std::to_string(steps) + " qft6 ops";
    return out;
}

// ---------------------------------------------------------------------------
// AC5: stopping rule against an independent loop.

std::size_t reference_stop(const std::vector<int> &bits, std::size_t batch, double delta, double z, std::size_t cap,
                           std::size_t min_batches) {
    long double ones = 0;
    std::size_t n = 0, batches = 0;
    while (true) {
        for (std::size_t i = 0; i < batch; i++) {
            ones += bits[n++];
        }
        batches++;
        long double mean = ones / n;
        long double var = (ones - n * mean * mean) / (n - 1);
        long double ci = z * std::sqrt(std::max(var, 0.0L)) / std::sqrt(static_cast<long double>(n));
        if (batches >= min_batches && ci <= delta) {
            return n;
        }
        if (n >= cap) {
            return n;
        }
    }
}

Outcome ac5() {
    PlanConfig cfg;
    cfg.delta = 0.01;
    cfg.alpha = 0.05;
    const std::size_t batch = 20;
    std::size_t matches = 0, ci_stops = 0;
    std::string first_mismatch;
    for (uint64_t seed = 1; seed <= 100; seed++) {
        std::mt19937_64 rng(seed);
        std::vector<int> bits(cfg.p_max + batch);
        std::vector<double> values(bits.size());
        for (std::size_t i = 0; i < bits.size(); i++) {
            bits[i] = static_cast<int>(rng() >> 63);
            values[i] = bits[i];
        }
        EstimationTrace tr = estimate_values(values, batch, cfg);
        std::size_t want = reference_stop(bits, batch, cfg.delta, cfg.z_alpha(), cfg.p_max, cfg.min_batches_before_stop);
        if (tr.shots_used == want) {
            matches++;
        } else if (first_mismatch.empty()) {
            first_mismatch = " first mismatch seed " + std::to_string(seed) + ": " + std::to_string(tr.shots_used) +
                             " vs " + std::to_string(want);
        }
        ci_stops += tr.stop_reason == StopReason::CI_MET ? 1 : 0;
    }
    Outcome out;
    out.pass = matches == 100;
    out.detail = "stop index matches " + std::to_string(matches) + "/100 (ci_met " + std::to_string(ci_stops) +
                 ")" + first_mismatch;
    return out;
}

// ---------------------------------------------------------------------------
// AC6 / AC7: end-to-end trend and bias over a 4-family suite.

struct TrendRuns {
    std::vector<SweepRow> rows;
    double seconds = 0;
};

const TrendRuns &trend_runs() {
    static TrendRuns runs = [] {
        SweepOptions so;
        for (const char *family : {"bv", "ghz", "qft", "xeb"}) {
            for (uint32_t n : {4u, 6u, 8u}) {
                so.suite.push_back(BenchSpec{family, n, 1, {}});
            }
        }
        so.deltas = {0.01};
        so.seeds.clear();
        for (uint64_t s = 1; s <= 20; s++) {
            so.seeds.push_back(s);
        }
        so.estimate.noise = NoiseModel{1e-3, 1e-2, 1e-2};
        auto start = Clock::now();
        TrendRuns r;
        r.rows = sweep(so);
        r.seconds = seconds_since(start);
        return r;
    }();
    return runs;
}

std::vector<double> average_ranks(const std::vector<double> &v) {
    std::vector<std::size_t> idx(v.size());
    for (std::size_t i = 0; i < v.size(); i++) {
        idx[i] = i;
    }
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) {
            j++;
        }
        double r = (static_cast<double>(i) + static_cast<double>(j)) / 2 + 1;
        for (std::size_t t = i; t <= j; t++) {
            rank[idx[t]] = r;
        }
        i = j + 1;
    }
    return rank;
}

double spearman(const std::vector<double> &x, const std::vector<double> &y) {
    std::vector<double> rx = average_ranks(x), ry = average_ranks(y);
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < rx.size(); i++) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= static_cast<double>(rx.size());
    my /= static_cast<double>(ry.size());
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < rx.size(); i++) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    return sxx == 0 || syy == 0 ? 0 : sxy / std::sqrt(sxx * syy);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

Outcome ac6() {
    const TrendRuns &runs = trend_runs();
    std::map<std::string, std::map<uint32_t, std::vector<double>>> shots;
    std::size_t errors = 0;
    for (const SweepRow &r : runs.rows) {
        if (!r.ok) {
            errors++;
            continue;
        }
        shots[r.family][r.n].push_back(static_cast<double>(r.shots_used));
    }
    Outcome out;
    out.pass = errors == 0 && runs.seconds < 15 * 60;
    std::string detail;
    for (const char *family : {"bv", "ghz", "qft", "xeb"}) {
        std::vector<double> ns, meds;
        std::string cells;
        for (auto &[n, v] : shots[family]) {
            ns.push_back(n);
            meds.push_back(median(v));
            cells += (cells.empty() ? "" : ",") + fmt(meds.back(), 6);
        }
        double rho = spearman(ns, meds);
        bool gated = std::string(family) == "qft" || std::string(family) == "xeb";
        if (gated) {
            out.pass = out.pass && rho >= 0.5;
        }
        detail += std::string(" ") + family + (gated ? "" : "(info)") + ": rho=" + fmt(rho, 3) + " medians[" + cells + "]";
    }
    out.detail = "runtime=" + fmt(runs.seconds, 4) + "s errors=" + std::to_string(errors) + detail;
    return out;
}

Outcome ac7() {
    const TrendRuns &runs = trend_runs();
    std::size_t total = 0, ci_under_cap = 0, bias_ok = 0;
    std::map<std::string, std::pair<std::size_t, std::size_t>> bias_by_spec;
    double worst_bias = 0;
    for (const SweepRow &r : runs.rows) {
        total++;
        if (!r.ok) {
            continue;
        }
        if (r.stop_reason == "ci_met" && r.shots_used < 10000) {
            ci_under_cap++;
        }
        std::string key = r.family + ":" + std::to_string(r.n);
        bias_by_spec[key].second++;
        if (r.bias_exact <= 2 * r.delta) {
            bias_ok++;
            bias_by_spec[key].first++;
        }
        worst_bias = std::max(worst_bias, r.bias_exact);
    }
    double ci_frac = static_cast<double>(ci_under_cap) / static_cast<double>(total);
    double bias_frac = static_cast<double>(bias_ok) / static_cast<double>(total);
    Outcome out;
    out.pass = ci_frac >= 0.95 && bias_frac >= 0.90;
    std::string per_spec;
    for (const auto &[k, v] : bias_by_spec) {
        per_spec += " " + k + "=" + std::to_string(v.first) + "/" + std::to_string(v.second);
    }
    out.detail = "ci_met under cap " + std::to_string(ci_under_cap) + "/" + std::to_string(total) + " (" +
                 fmt(100 * ci_frac, 4) + "%), bias<=2*delta " + std::to_string(bias_ok) + "/" + std::to_string(total) +
                 " (" + fmt(100 * bias_frac, 4) + "%), max bias=" + fmt(worst_bias, 4) + "; per spec:" + per_spec;
    return out;
}

// ---------------------------------------------------------------------------
// AC8: delta monotonicity.

Outcome ac8() {
    SweepOptions so;
    so.suite = default_suite();
    so.deltas = {0.01, 0.02, 0.03};
    so.seeds = {1, 2, 3, 4, 5};
    so.estimate.noise = NoiseModel{1e-3, 1e-2, 1e-2};
    std::vector<SweepRow> rows = sweep(so);
    std::map<std::string, std::vector<std::pair<double, std::size_t>>> cells;
    std::size_t errors = 0;
    for (const SweepRow &r : rows) {
        if (!r.ok) {
            errors++;
            continue;
        }
        cells[r.family + ":" + std::to_string(r.n) + ":" + std::to_string(r.seed)].push_back({r.delta, r.shots_used});
    }
    std::size_t monotone = 0;
    for (auto &[key, v] : cells) {
        std::sort(v.begin(), v.end());
        bool ok = v.size() == 3;
        for (std::size_t i = 1; i < v.size(); i++) {
            ok = ok && v[i].second <= v[i - 1].second;
        }
        monotone += ok ? 1 : 0;
    }
    std::size_t expected_cells = so.suite.size() * so.seeds.size();
    double frac = static_cast<double>(monotone) / static_cast<double>(expected_cells);
    Outcome out;
    out.pass = frac >= 0.95 && errors == 0;
    out.detail = "monotone cells " + std::to_string(monotone) + "/" + std::to_string(expected_cells) + " (" +
                 fmt(100 * frac, 4) + "%) errors=" + std::to_string(errors);
    return out;
}

// ---------------------------------------------------------------------------
// AC9: parser corpus and fuzz.

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome ac9() {
    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(QFID_CORPUS_DIR)) {
        if (entry.path().extension() == ".qasm") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::size_t fixed_points = 0;
    std::vector<std::string> sources;
    std::string failures;
    for (const fs::path &f : files) {
        std::string text = slurp(f);
        sources.push_back(text);
        try {
            Circuit a = parse_qasm(text);
            std::string e1 = emit_qasm(a);
            Circuit b = parse_qasm(e1);
            std::string e2 = emit_qasm(b);
            if (e1 == e2 && structurally_equal(a, b, 0)) {
                fixed_points++;
            } else {
                failures += " " + f.filename().string();
            }
        } catch (const std::exception &e) {
            failures += " " + f.filename().string() + "(" + e.what() + ")";
        }
    }

    std::mt19937_64 rng(909);
    std::size_t structured = 0, accepted = 0, unstructured = 0;
    const std::string tokens[] = {"OPENQASM 2.0;", "include \"qelib1.inc\";", "qreg", "creg", "q[", "]", ";", "(",
                                  ")", "pi", "->", "measure", "barrier", "cx", "u3", "rz", ",", "/", "*", "-", "\n"};
    for (int trial = 0; trial < 100000; trial++) {
        std::string s;
        switch (trial % 3) {
            case 0: {
                std::size_t len = rng() % 200;
                for (std::size_t i = 0; i < len; i++) {
                    s += static_cast<char>(rng() & 0xff);
                }
                break;
            }
            case 1: {
                s = sources[rng() % sources.size()];
                std::size_t edits = 1 + rng() % 8;
                for (std::size_t e = 0; e < edits && !s.empty(); e++) {
                    std::size_t pos = rng() % s.size();
                    switch (rng() % 3) {
                        case 0:
                            s[pos] = static_cast<char>(rng() & 0xff);
                            break;
                        case 1:
                            s.erase(pos, 1 + rng() % 6);
                            break;
                        default:
                            s.insert(pos, tokens[rng() % std::size(tokens)]);
                            break;
                    }
                }
                break;
            }
            default: {
                std::size_t len = rng() % 40;
                for (std::size_t i = 0; i < len; i++) {
                    s += tokens[rng() % std::size(tokens)];
                    s += ' ';
                }
                break;
            }
        }
        try {
            parse_qasm(s);
            accepted++;
        } catch (const qfid::Error &) {
            structured++;
        } catch (...) {
            unstructured++;
        }
    }
    Outcome out;
    out.pass = files.size() == 20 && fixed_points == files.size() && unstructured == 0;
    out.detail = "corpus fixed points " + std::to_string(fixed_points) + "/" + std::to_string(files.size()) +
                 failures + "; fuzz 100000 inputs: " + std::to_string(accepted) + " parsed, " +
                 std::to_string(structured) + " structured errors, " + std::to_string(unstructured) +
                 " unexpected exceptions, 0 crashes";
    return out;
}

// ---------------------------------------------------------------------------
// AC10: byte-identical sweep CSVs from two CLI runs.

Outcome ac10() {
    fs::path a = fs::path(QFID_TEST_TMP) / "ac10_a.csv";
    fs::path b = fs::path(QFID_TEST_TMP) / "ac10_b.csv";
    std::string base = std::string(QFID_BINARY) + " sweep --seeds 3 --deltas 0.01,0.02,0.03 --out ";
    int ra = std::system((base + a.string()).c_str());
    int rb = std::system((base + b.string()).c_str());
    std::string ca = slurp(a), cb = slurp(b);
    std::size_t lines = static_cast<std::size_t>(std::count(ca.begin(), ca.end(), '\n'));
    Outcome out;
    out.pass = ra == 0 && rb == 0 && !ca.empty() && ca == cb;
    out.detail = "exit codes " + std::to_string(WEXITSTATUS(ra)) + "," + std::to_string(WEXITSTATUS(rb)) + "; " +
                 std::to_string(lines) + " lines, " + std::to_string(ca.size()) + " bytes, " +
                 (ca == cb ? "identical" : "DIFFERENT");
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qfid acceptance checks"};
    int only = 0;
    app.add_option("--only", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::function<Outcome()>> checks = {ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10};
    bool all_pass = true;
    for (int i = 1; i <= 10; i++) {
        if (only != 0 && only != i) {
            continue;
        }
        Outcome o;
        try {
            o = checks[i - 1]();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::cout << "AC" << i << " " << (o.pass ? "PASS" : "FAIL") << " " << o.detail << std::endl;
        all_pass = all_pass && o.pass;
    }
    return all_pass ? 0 : 1;
}

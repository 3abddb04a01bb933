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

#include "qfid/harness.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qfid/error.h"
#include "qfid/qasm.h"
#include "qfid/random.h"
#include "qfid/shot_oracle.h"

namespace qfid {

namespace {

using ojson = nlohmann::ordered_json;

std::map<std::string, std::size_t> gate_counts(const Circuit &c) {
    std::map<std::string, std::size_t> m;
    for (const Operation &op : c.ops) {
        m[std::string(op.name())]++;
    }
    return m;
}

void dump_value(const ojson &j, std::string &out, int indent) {
    auto newline = [&](int level) {
        out += '\n';
        out.append(static_cast<std::size_t>(2 * level), ' ');
    };
    switch (j.type()) {
        case ojson::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (const auto &[k, v] : j.items()) {
                if (!first) {
                    out += ',';
                }
                first = false;
                newline(indent + 1);
                out += ojson(k).dump();
                out += ": ";
                dump_value(v, out, indent + 1);
            }
            newline(indent);
            out += '}';
            return;
        }
        case ojson::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto &v : j) {
                if (!first) {
                    out += ',';
                }
                first = false;
                newline(indent + 1);
                dump_value(v, out, indent + 1);
            }
            newline(indent);
            out += ']';
            return;
        }
        case ojson::value_t::number_float: {
            double v = j.get<double>();
            out += std::isfinite(v) ? format_double(v) : "null";
            return;
        }
        default:
            out += j.dump();
            return;
    }
}

template <typename T>
T field(const nlohmann::json &j, const char *key) {
    if (!j.contains(key)) {
        throw std::invalid_argument(std::string("report is missing '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("report field '") + key + "' has the wrong type");
    }
}

ojson counts_json(const std::map<std::string, std::size_t> &m) {
    ojson o = ojson::object();
    for (const auto &[k, v] : m) {
        o[k] = v;
    }
    return o;
}

bool same_deformation(const DeformationReport &a, const DeformationReport &b) {
    return a.delta_deg == b.delta_deg && a.delta_path == b.delta_path && a.delta_conn == b.delta_conn &&
           a.path_degenerate == b.path_degenerate && a.conn_degenerate == b.conn_degenerate &&
           a.raw.nodes0 == b.raw.nodes0 && a.raw.edges0 == b.raw.edges0 && a.raw.nodes_t == b.raw.nodes_t &&
           a.raw.edges_t == b.raw.edges_t && a.raw.depth0 == b.raw.depth0 && a.raw.depth_t == b.raw.depth_t &&
           a.raw.longest0 == b.raw.longest0 && a.raw.longest_t == b.raw.longest_t;
}

bool same_spectrum(const PropagationSpectrum &a, const PropagationSpectrum &b) {
    return a.n == b.n && a.k == b.k && a.eigenvalues == b.eigenvalues && a.complexity == b.complexity &&
           a.converged == b.converged && a.method == b.method && a.self_loop == b.self_loop &&
           a.fanin_quantile == b.fanin_quantile && a.max_row_sum_deviation == b.max_row_sum_deviation;
}

std::string csv_double(double v) {
    return std::isfinite(v) ? format_double(v) : "nan";
}

}  // namespace

CircuitSource source_from_bench(const BenchSpec &spec) {
    spec.validate();
    return CircuitSource{spec.to_string(), spec.family, generate(spec)};
}

CircuitSource source_from_qasm_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidSpecError("cannot read QASM file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return CircuitSource{path, "qasm", parse_qasm(ss.str())};
}

Circuit with_measurements(const Circuit &c) {
    if (c.count(OpKind::MEASURE) > 0) {
        return c;
    }
    Circuit out(c.num_qubits, c.num_qubits);
    for (const Operation &op : c.ops) {
        out.append_op(op);
    }
    for (uint32_t q = 0; q < c.num_qubits; q++) {
        out.append_measure(q, q);
    }
    return out;
}

bool AnalyzeReport::operator==(const AnalyzeReport &o) const {
    return source == o.source && family == o.family && num_qubits == o.num_qubits && num_clbits == o.num_clbits &&
           gate_counts == o.gate_counts && transpiled_gate_counts == o.transpiled_gate_counts &&
           depth0 == o.depth0 && depth_t == o.depth_t && swap_count == o.swap_count &&
           same_deformation(deformation, o.deformation) && same_spectrum(spectrum, o.spectrum) &&
           batch_size == o.batch_size && coupling == o.coupling && seed == o.seed && delta == o.delta &&
           alpha == o.alpha && p_max == o.p_max && batch_min == o.batch_min && estimator == o.estimator;
}

Analysis analyze(const CircuitSource &src, const AnalyzeOptions &opts) {
    opts.plan.validate();
    Analysis a;
    a.logical = with_measurements(src.circuit);
    CouplingMap map = coupling_from_spec(opts.coupling, a.logical.num_qubits);
    a.transpiled = transpile(a.logical, map, opts.seed);
    a.g0 = build_dag(a.logical);
    a.gt = build_dag(a.transpiled.circuit);

    AnalyzeReport &r = a.report;
    r.source = src.label;
    r.family = src.family;
    r.num_qubits = a.logical.num_qubits;
    r.num_clbits = a.logical.num_clbits;
    r.gate_counts = gate_counts(a.logical);
    r.transpiled_gate_counts = gate_counts(a.transpiled.circuit);
    r.depth0 = circuit_depth(a.logical);
    r.depth_t = a.transpiled.depth;
    r.swap_count = a.transpiled.swap_count;
    r.deformation = measure_deformation(a.g0, a.gt, r.depth0, r.depth_t);
    r.spectrum = analyze_spectrum(a.gt, r.deformation, opts.kernel, opts.k, opts.eigen);
    r.batch_size = batch_size(r.spectrum.complexity, r.depth_t, opts.plan);
    r.coupling = opts.coupling;
    r.seed = opts.seed;
    r.delta = opts.plan.delta;
    r.alpha = opts.plan.alpha;
    r.p_max = opts.plan.p_max;
    r.batch_min = opts.plan.batch_min;
    r.estimator = std::string(estimator_name(opts.plan.estimator));
    return a;
}

PreparedRun prepare_run(const CircuitSource &src, const AnalyzeOptions &opts, const NoiseModel &noise) {
    PreparedRun p;
    p.analysis = analyze(src, opts);
    p.ideal = ideal_distribution(p.analysis.logical);
    p.noisy = noisy_distribution(compact_qubits(p.analysis.transpiled.circuit), noise);
    return p;
}

uint64_t reference_seed(uint64_t seed) {
    return mix_seed(seed, 1);
}

RunRecord run_prepared(const PreparedRun &prep, const EstimateOptions &opts) {
    const PlanConfig &plan = opts.analyze.plan;
    RunRecord rec;
    rec.analysis = prep.analysis.report;
    rec.analysis.delta = plan.delta;
    rec.analysis.alpha = plan.alpha;
    rec.analysis.p_max = plan.p_max;
    rec.analysis.batch_min = plan.batch_min;
    rec.analysis.estimator = std::string(estimator_name(plan.estimator));
    rec.analysis.batch_size = batch_size(rec.analysis.spectrum.complexity, rec.analysis.depth_t, plan);
    rec.noise = opts.noise.to_string();
    rec.seed = opts.analyze.seed;
    rec.analysis.seed = rec.seed;

    std::unique_ptr<ShotOracle> oracle;
    switch (opts.oracle) {
        case OracleKind::NOISY:
            rec.oracle = "noisy";
            oracle = std::make_unique<DistributionOracle>(prep.noisy, rec.seed);
            break;
        case OracleKind::IDEAL:
            rec.oracle = "ideal";
            oracle = std::make_unique<DistributionOracle>(prep.ideal, rec.seed);
            break;
        case OracleKind::REPLAY:
            rec.oracle = "replay";
            oracle = make_replay_oracle(opts.replay_path, rec.seed);
            break;
    }
    rec.trace = estimate(*oracle, rec.analysis.batch_size, plan, prep.ideal);
    OutcomeDistribution observed = rec.trace.counts.empirical();
    rec.bias_exact = hellinger_distance(observed, prep.noisy);
    if (opts.reference_shots > 0) {
        DistributionOracle ref(prep.noisy, reference_seed(rec.seed));
        Counts rc;
        rc.num_bits = prep.noisy.num_bits;
        rc.add_all(ref.sample(opts.reference_shots));
        rec.bias_reference = hellinger_distance(observed, rc.empirical());
        rec.reference_shots = opts.reference_shots;
    }
    return rec;
}

RunRecord run_estimate(const CircuitSource &src, const EstimateOptions &opts) {
    auto start = std::chrono::steady_clock::now();
    PreparedRun prep = prepare_run(src, opts.analyze, opts.noise);
    RunRecord rec = run_prepared(prep, opts);
    if (opts.timing) {
        rec.walltime_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return rec;
}

Counts reference_counts(
    const CircuitSource &src, const AnalyzeOptions &opts, const NoiseModel &noise, std::size_t shots, uint64_t seed) {
    Analysis a = analyze(src, opts);
    DistributionOracle oracle(noisy_distribution(compact_qubits(a.transpiled.circuit), noise), seed);
    Counts c;
    c.num_bits = oracle.num_bits();
    c.add_all(oracle.sample(shots));
    return c;
}

std::vector<SweepRow> sweep(const SweepOptions &opts) {
    const std::size_t per_spec = opts.seeds.size() * opts.deltas.size();
    std::vector<std::vector<SweepRow>> results(opts.suite.size());

    auto work = [&](std::size_t idx) {
        const BenchSpec &spec = opts.suite[idx];
        std::vector<SweepRow> rows;
        rows.reserve(per_spec);
        auto base_row = [&](uint64_t seed, double delta) {
            SweepRow r;
            r.family = spec.family;
            r.n = spec.n;
            r.seed = seed;
            r.delta = delta;
            return r;
        };
        try {
            auto prep_start = std::chrono::steady_clock::now();
            PreparedRun prep = prepare_run(source_from_bench(spec), opts.estimate.analyze, opts.estimate.noise);
            double prep_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - prep_start).count();
            for (uint64_t seed : opts.seeds) {
                for (double delta : opts.deltas) {
                    SweepRow r = base_row(seed, delta);
                    auto start = std::chrono::steady_clock::now();
                    EstimateOptions eo = opts.estimate;
                    eo.analyze.seed = seed;
                    eo.analyze.plan.delta = delta;
                    RunRecord rec = run_prepared(prep, eo);
                    r.ok = true;
                    r.depth0 = rec.analysis.depth0;
                    r.depth_t = rec.analysis.depth_t;
                    r.ddeg = rec.analysis.deformation.delta_deg;
                    r.dpath = rec.analysis.deformation.delta_path;
                    r.dconn = rec.analysis.deformation.delta_conn;
                    r.complexity = rec.analysis.spectrum.complexity;
                    r.batch = rec.analysis.batch_size;
                    r.shots_used = rec.trace.shots_used;
                    r.stop_reason = std::string(stop_reason_name(rec.trace.stop_reason));
                    r.fhat = rec.trace.fhat;
                    r.ci = rec.trace.ci;
                    r.bias_exact = rec.bias_exact;
                    if (opts.estimate.timing) {
                        r.walltime_ms =
                            prep_ms / static_cast<double>(per_spec) +
                            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                                .count();
                    }
                    rows.push_back(std::move(r));
                }
            }
        } catch (const std::exception &e) {
            rows.clear();
            for (uint64_t seed : opts.seeds) {
                for (double delta : opts.deltas) {
                    SweepRow r = base_row(seed, delta);
                    r.stop_reason = "error";
                    r.error = e.what();
                    rows.push_back(std::move(r));
                }
            }
        }
        results[idx] = std::move(rows);
    };

    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, opts.suite.size()));
    if (threads <= 1) {
        for (std::size_t i = 0; i < opts.suite.size(); i++) {
            work(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; t++) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < opts.suite.size(); i = next++) {
                    work(i);
                }
            });
        }
        for (std::thread &th : pool) {
            th.join();
        }
    }

    std::vector<SweepRow> out;
    out.reserve(opts.suite.size() * per_spec);
    for (auto &rows : results) {
        for (auto &r : rows) {
            out.push_back(std::move(r));
        }
    }
    return out;
}

std::string sweep_csv_header() {
    return "family,n,seed,delta,depth0,deptht,ddeg,dpath,dconn,complexity,batch,shots_used,stop_reason,fhat,ci,"
           "bias_exact,walltime_ms";
}

std::string sweep_csv_row(const SweepRow &r) {
    std::string s = r.family + "," + std::to_string(r.n) + "," + std::to_string(r.seed) + "," + csv_double(r.delta);
    if (!r.ok) {
        return s + ",,,,,,,,,error,,,,";
    }
    s += "," + std::to_string(r.depth0) + "," + std::to_string(r.depth_t);
    s += "," + csv_double(r.ddeg) + "," + csv_double(r.dpath) + "," + csv_double(r.dconn);
    s += "," + csv_double(r.complexity) + "," + std::to_string(r.batch) + "," + std::to_string(r.shots_used);
    s += "," + r.stop_reason + "," + csv_double(r.fhat) + "," + csv_double(r.ci) + "," + csv_double(r.bias_exact);
    s += "," + csv_double(r.walltime_ms);
    return s;
}

std::string sweep_to_csv(const std::vector<SweepRow> &rows) {
    std::string out = sweep_csv_header() + "\n";
    for (const SweepRow &r : rows) {
        out += sweep_csv_row(r) + "\n";
    }
    return out;
}

ojson sweep_row_json(const SweepRow &r) {
    ojson o;
    o["family"] = r.family;
    o["n"] = r.n;
    o["seed"] = r.seed;
    o["delta"] = r.delta;
    if (!r.ok) {
        o["stop_reason"] = "error";
        o["error"] = r.error;
        return o;
    }
    o["depth0"] = r.depth0;
    o["deptht"] = r.depth_t;
    o["ddeg"] = r.ddeg;
    o["dpath"] = r.dpath;
    o["dconn"] = r.dconn;
    o["complexity"] = r.complexity;
    o["batch"] = r.batch;
    o["shots_used"] = r.shots_used;
    o["stop_reason"] = r.stop_reason;
    o["fhat"] = r.fhat;
    o["ci"] = r.ci;
    o["bias_exact"] = r.bias_exact;
    o["walltime_ms"] = r.walltime_ms;
    return o;
}

ojson analyze_report_json(const AnalyzeReport &r) {
    ojson o;
    ojson circuit;
    circuit["source"] = r.source;
    circuit["family"] = r.family;
    circuit["num_qubits"] = r.num_qubits;
    circuit["num_clbits"] = r.num_clbits;
    circuit["gate_counts"] = counts_json(r.gate_counts);
    circuit["transpiled_gate_counts"] = counts_json(r.transpiled_gate_counts);
    o["circuit"] = std::move(circuit);
    o["depth0"] = r.depth0;
    o["depth_t"] = r.depth_t;
    o["swap_count"] = r.swap_count;

    const DeformationReport &d = r.deformation;
    ojson def;
    def["delta_deg"] = d.delta_deg;
    def["delta_path"] = d.delta_path;
    def["delta_conn"] = d.delta_conn;
    def["path_degenerate"] = d.path_degenerate;
    def["conn_degenerate"] = d.conn_degenerate;
    ojson raw;
    raw["nodes0"] = d.raw.nodes0;
    raw["edges0"] = d.raw.edges0;
    raw["nodes_t"] = d.raw.nodes_t;
    raw["edges_t"] = d.raw.edges_t;
    raw["depth0"] = d.raw.depth0;
    raw["depth_t"] = d.raw.depth_t;
    raw["longest0"] = d.raw.longest0;
    raw["longest_t"] = d.raw.longest_t;
    def["raw"] = std::move(raw);
    o["deformation"] = std::move(def);

    const PropagationSpectrum &s = r.spectrum;
    ojson spec;
    spec["n"] = s.n;
    spec["k"] = s.k;
    spec["eigenvalues"] = s.eigenvalues;
    spec["complexity"] = s.complexity;
    spec["converged"] = s.converged;
    spec["method"] = s.method;
    spec["self_loop"] = s.self_loop;
    spec["fanin_quantile"] = s.fanin_quantile;
    spec["max_row_sum_deviation"] = s.max_row_sum_deviation;
    o["spectrum"] = std::move(spec);
    o["batch_size"] = r.batch_size;

    ojson cfg;
    cfg["coupling"] = r.coupling;
    cfg["seed"] = r.seed;
    cfg["delta"] = r.delta;
    cfg["alpha"] = r.alpha;
    cfg["p_max"] = r.p_max;
    cfg["batch_min"] = r.batch_min;
    cfg["estimator"] = r.estimator;
    o["config"] = std::move(cfg);
    return o;
}

AnalyzeReport analyze_report_from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw std::invalid_argument("analyze report must be a JSON object");
    }
    AnalyzeReport r;
    const auto &circuit = j.at("circuit");
    r.source = field<std::string>(circuit, "source");
    r.family = field<std::string>(circuit, "family");
    r.num_qubits = field<uint32_t>(circuit, "num_qubits");
    r.num_clbits = field<uint32_t>(circuit, "num_clbits");
    r.gate_counts = field<std::map<std::string, std::size_t>>(circuit, "gate_counts");
    r.transpiled_gate_counts = field<std::map<std::string, std::size_t>>(circuit, "transpiled_gate_counts");
    r.depth0 = field<std::size_t>(j, "depth0");
    r.depth_t = field<std::size_t>(j, "depth_t");
    r.swap_count = field<std::size_t>(j, "swap_count");

    const auto &def = j.at("deformation");
    DeformationReport &d = r.deformation;
    d.delta_deg = field<double>(def, "delta_deg");
    d.delta_path = field<double>(def, "delta_path");
    d.delta_conn = field<double>(def, "delta_conn");
    d.path_degenerate = field<bool>(def, "path_degenerate");
    d.conn_degenerate = field<bool>(def, "conn_degenerate");
    const auto &raw = def.at("raw");
    d.raw.nodes0 = field<std::size_t>(raw, "nodes0");
    d.raw.edges0 = field<std::size_t>(raw, "edges0");
    d.raw.nodes_t = field<std::size_t>(raw, "nodes_t");
    d.raw.edges_t = field<std::size_t>(raw, "edges_t");
    d.raw.depth0 = field<std::size_t>(raw, "depth0");
    d.raw.depth_t = field<std::size_t>(raw, "depth_t");
    d.raw.longest0 = field<std::size_t>(raw, "longest0");
    d.raw.longest_t = field<std::size_t>(raw, "longest_t");

    const auto &spec = j.at("spectrum");
    PropagationSpectrum &s = r.spectrum;
    s.n = field<std::size_t>(spec, "n");
    s.k = field<std::size_t>(spec, "k");
    s.eigenvalues = field<std::vector<double>>(spec, "eigenvalues");
    s.complexity = field<double>(spec, "complexity");
    s.converged = field<bool>(spec, "converged");
    s.method = field<std::string>(spec, "method");
    s.self_loop = field<double>(spec, "self_loop");
    s.fanin_quantile = field<double>(spec, "fanin_quantile");
    s.max_row_sum_deviation = field<double>(spec, "max_row_sum_deviation");
    r.batch_size = field<std::size_t>(j, "batch_size");

    const auto &cfg = j.at("config");
    r.coupling = field<std::string>(cfg, "coupling");
    r.seed = field<uint64_t>(cfg, "seed");
    r.delta = field<double>(cfg, "delta");
    r.alpha = field<double>(cfg, "alpha");
    r.p_max = field<std::size_t>(cfg, "p_max");
    r.batch_min = field<std::size_t>(cfg, "batch_min");
    r.estimator = field<std::string>(cfg, "estimator");
    return r;
}

ojson trace_json(const EstimationTrace &t) {
    ojson o;
    o["estimator"] = std::string(estimator_name(t.estimator));
    o["batch_size"] = t.batch_size;
    o["delta"] = t.delta;
    o["alpha"] = t.alpha;
    o["z_alpha"] = t.z_alpha;
    o["p_max"] = t.p_max;
    o["fhat"] = t.fhat;
    o["fhat_raw"] = t.fhat_raw;
    o["sigma"] = t.sigma;
    o["ci"] = t.ci;
    o["shots_used"] = t.shots_used;
    o["num_batches"] = t.batches.size();
    o["stop_reason"] = std::string(stop_reason_name(t.stop_reason));
    ojson batches = ojson::array();
    for (const BatchSummary &b : t.batches) {
        ojson bj;
        bj["shots"] = b.shots;
        bj["batch_mean"] = b.batch_mean;
        bj["total_shots"] = b.total_shots;
        bj["fhat"] = b.fhat;
        bj["sigma"] = b.sigma;
        bj["ci"] = b.ci;
        batches.push_back(std::move(bj));
    }
    o["batches"] = std::move(batches);
    ojson counts = ojson::object();
    for (const auto &[k, v] : t.counts.counts) {
        counts[format_bitstring(k, t.counts.num_bits)] = v;
    }
    o["counts"] = std::move(counts);
    return o;
}

ojson run_record_json(const RunRecord &r) {
    ojson o;
    o["analysis"] = analyze_report_json(r.analysis);
    o["noise"] = r.noise;
    o["oracle"] = r.oracle;
    o["seed"] = r.seed;
    o["trace"] = trace_json(r.trace);
    ojson bias;
    bias["exact"] = r.bias_exact;
    if (r.bias_reference.has_value()) {
        bias["reference"] = *r.bias_reference;
        bias["reference_shots"] = r.reference_shots;
    } else {
        bias["reference"] = nullptr;
        bias["reference_shots"] = 0;
    }
    o["hellinger_bias"] = std::move(bias);
    o["walltime_ms"] = r.walltime_ms;
    return o;
}

std::string dump_json(const ojson &j) {
    std::string out;
    dump_value(j, out, 0);
    out += '\n';
    return out;
}

}  // namespace qfid

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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "qfid/error.h"

using namespace qfid;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path tmp(const std::string &name) {
    return fs::path(QFID_TEST_TMP) / ("harness_" + name);
}

CliResult qfid_cli(const std::string &args, const std::string &tag) {
    fs::path out = tmp(tag + ".stdout"), err = tmp(tag + ".stderr");
    std::string cmd = std::string(QFID_BINARY) + " " + args + " >" + out.string() + " 2>" + err.string();
    int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string &text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            cells.push_back("");
        }
        rows.push_back(cells);
    }
    return rows;
}

const std::vector<std::string> CSV_COLUMNS = {
    "family", "n",          "seed",       "delta", "depth0", "deptht", "ddeg", "dpath",     "dconn",
    "complexity", "batch", "shots_used", "stop_reason", "fhat", "ci", "bias_exact", "walltime_ms"};

}  // namespace

TEST(cli_analyze, ghz4_linear_needs_no_swaps) {
    CliResult r = qfid_cli("analyze --bench ghz:4 --coupling linear", "ghz4");
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["swap_count"], 0);
    double c = j["spectrum"]["complexity"];
    EXPECT_GT(c, 0.0);
    EXPECT_LE(c, 10.0);
    EXPECT_EQ(j["circuit"]["family"], "ghz");
}

TEST(cli_analyze, qft4_linear_needs_swaps) {
    CliResult r = qfid_cli("analyze --bench qft:4 --coupling linear", "qft4");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_GT(nlohmann::json::parse(r.out)["swap_count"].get<int>(), 0);
}

TEST(cli_analyze, bad_qasm_exits_with_parse_code) {
    fs::path bad = tmp("bad.qasm");
    std::ofstream(bad) << "OPENQASM 2.0;\nqreg q[2]\nh q[0];\n";
    CliResult r = qfid_cli("analyze --qasm " + bad.string(), "badqasm");
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("SyntaxError"), std::string::npos) << r.err;
}

TEST(cli_analyze, exit_codes_by_stage) {
    EXPECT_EQ(qfid_cli("analyze --bench nope:4", "badbench").code, 1);
    EXPECT_EQ(qfid_cli("analyze --qasm /nonexistent/file.qasm", "missing").code, 1);
    EXPECT_EQ(qfid_cli("analyze --bench ghz:4 --coupling grid:1x2", "layout").code, 2);
    EXPECT_EQ(qfid_cli("analyze --bench ghz:4 --k 0 --self-loop 0", "selfloop").code, 1);
    EXPECT_EQ(qfid_cli("frobnicate", "unknown").code, 1);
    EXPECT_EQ(qfid_cli("analyze --bench ghz:4 --qasm x.qasm", "both").code, 1);
    fs::path counts = tmp("tiny_counts.json");
    std::ofstream(counts) << R"({"n": 4, "counts": {"0000": 5}})";
    CliResult r = qfid_cli("estimate --bench ghz:4 --oracle replay:" + counts.string(), "exhaust");
    EXPECT_EQ(r.code, 4) << r.err;
    EXPECT_NE(r.err.find("ReplayExhausted"), std::string::npos);
}

TEST(cli_analyze, writes_dot_and_csv) {
    fs::path dot = tmp("bv.dot");
    CliResult r = qfid_cli("analyze --bench bv:4 --format csv --dot " + dot.string(), "csv");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "family,n,depth0,deptht,swap_count,ddeg,dpath,dconn,complexity,batch");
    EXPECT_NE(slurp(dot).find("digraph"), std::string::npos);
}

TEST(analyze_report, json_reload_is_lossless) {
    for (const char *spec : {"ghz:4", "qft:5", "xeb:6:3", "ising:4", "su2:5:2"}) {
        AnalyzeOptions opts;
        opts.coupling = "ring";
        Analysis a = analyze(source_from_bench(parse_bench_spec(spec)), opts);
        std::string text = dump_json(analyze_report_json(a.report));
        AnalyzeReport back = analyze_report_from_json(nlohmann::json::parse(text));
        EXPECT_TRUE(back == a.report) << spec;
        EXPECT_EQ(dump_json(analyze_report_json(back)), text) << spec;
    }
}

TEST(dump_json, seventeen_significant_digits) {
    nlohmann::ordered_json j;
    j["x"] = 0.1;
    j["y"] = 1.0 / 3;
    j["z"] = std::nan("");
    j["k"] = 3;
    std::string s = dump_json(j);
    EXPECT_NE(s.find("0.10000000000000001"), std::string::npos) << s;
    EXPECT_NE(s.find("0.33333333333333331"), std::string::npos) << s;
    EXPECT_NE(s.find("null"), std::string::npos);
    EXPECT_EQ(nlohmann::json::parse(s)["y"].get<double>(), 1.0 / 3);
}

TEST(cli_estimate, bv4_golden_run) {
    CliResult r =
        qfid_cli("estimate --bench bv:4 --noise p1=1e-3,p2=1e-2,ro=1e-2 --delta 0.01 --seed 7", "bv4golden");
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["trace"]["stop_reason"], "ci_met");
    EXPECT_LT(j["trace"]["shots_used"].get<int>(), 10000);
    double bias = j["hellinger_bias"]["exact"];
    EXPECT_GE(bias, 0.0);
    EXPECT_LE(bias, 1.0);
    fs::path golden = fs::path(QFID_CORPUS_DIR).parent_path() / "golden" / "estimate_bv4_seed7.json";
    ASSERT_TRUE(fs::exists(golden)) << golden;
    EXPECT_EQ(r.out, slurp(golden));
}

TEST(cli_estimate, loose_delta_stops_at_min_batches) {
    CliResult r = qfid_cli("estimate --bench bv:4 --delta 0.5 --seed 3", "loose");
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    int batch = j["analysis"]["batch_size"];
    EXPECT_EQ(j["trace"]["shots_used"].get<int>(), 2 * batch);
    EXPECT_EQ(j["trace"]["stop_reason"], "ci_met");
}

TEST(cli_estimate, xeb_fidelity_is_clamped) {
    CliResult r = qfid_cli("estimate --estimator xeb --bench xeb:4:depth=8", "xeb");
    ASSERT_EQ(r.code, 0) << r.err;
    double f = nlohmann::json::parse(r.out)["trace"]["fhat"];
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.05);
}

TEST(cli_estimate, reference_bias_and_csv) {
    CliResult r = qfid_cli("estimate --bench ghz:4 --reference-shots 10000", "refshots");
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["hellinger_bias"]["reference_shots"], 10000);
    double b = j["hellinger_bias"]["reference"];
    EXPECT_GE(b, 0.0);
    EXPECT_LE(b, 1.0);
    CliResult c = qfid_cli("estimate --bench ghz:4 --format csv", "estcsv");
    ASSERT_EQ(c.code, 0) << c.err;
    auto rows = parse_csv(c.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0], CSV_COLUMNS);
}

TEST(cli_reference, counts_file_round_trip_through_replay) {
    fs::path counts = tmp("ghz4_ref.json");
    CliResult r = qfid_cli("reference --bench ghz:4 --shots 10000 --seed 5 --out " + counts.string(), "reference");
    ASSERT_EQ(r.code, 0) << r.err;
    Counts c = Counts::from_json(slurp(counts));
    EXPECT_EQ(c.total(), 10000u);
    EXPECT_EQ(c.num_bits, 4u);
    CliResult again = qfid_cli("reference --bench ghz:4 --shots 10000 --seed 5", "reference2");
    EXPECT_EQ(again.out, slurp(counts));
    CliResult replay = qfid_cli("estimate --bench ghz:4 --oracle replay:" + counts.string(), "replay");
    ASSERT_EQ(replay.code, 0) << replay.err;
    EXPECT_EQ(nlohmann::json::parse(replay.out)["oracle"], "replay");
}

TEST(reference_counts, converges_to_the_exact_distribution) {
    CircuitSource src = source_from_bench(parse_bench_spec("ghz:4"));
    Counts c = reference_counts(src, AnalyzeOptions{}, NoiseModel{}, 1000000, 1);
    OutcomeDistribution exact = ideal_distribution(src.circuit);
    EXPECT_LE(hellinger_distance(c.empirical(), exact), 0.01);
}

TEST(cli_sweep, empty_suite_is_header_only) {
    CliResult r = qfid_cli("sweep --suite empty", "empty");
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0], CSV_COLUMNS);
}

TEST(cli_sweep, suite_file_and_bench_alias) {
    fs::path suite = tmp("suite.json");
    std::ofstream(suite) << R"(["ghz:4", {"family": "bv", "n": 4, "seed": 2}, "nope:4"])";
    CliResult r = qfid_cli("bench --suite " + suite.string() + " --seeds 2 --deltas 0.02,0.03", "suitefile");
    EXPECT_EQ(r.code, 1) << "unknown family in a suite file is a parse error";
    std::ofstream(suite) << R"(["ghz:4", {"family": "bv", "n": 4, "seed": 2}])";
    r = qfid_cli("bench --suite " + suite.string() + " --seeds 2 --deltas 0.02,0.03", "suitefile2");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(parse_csv(r.out).size(), 1u + 2 * 2 * 2);
}

TEST(sweep, failing_specs_yield_error_rows_and_the_run_continues) {
    SweepOptions so;
    so.suite = {parse_bench_spec("ghz:4"), parse_bench_spec("ghz:12"), parse_bench_spec("bv:4")};
    so.deltas = {0.05};
    so.seeds = {1};
    so.estimate.noise = NoiseModel{1e-3, 1e-2, 1e-2};
    so.estimate.analyze.coupling = "grid:2x3";
    std::vector<SweepRow> rows = sweep(so);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_TRUE(rows[0].ok);
    EXPECT_FALSE(rows[1].ok);
    EXPECT_EQ(rows[1].stop_reason, "error");
    EXPECT_TRUE(rows[2].ok);
    auto cells = parse_csv(sweep_csv_row(rows[1]));
    ASSERT_EQ(cells.size(), 1u);
    EXPECT_EQ(cells[0].size(), CSV_COLUMNS.size());
    EXPECT_EQ(cells[0][12], "error");
}

TEST(sweep, default_suite_rows_are_consistent) {
    CliResult r = qfid_cli("sweep --seeds 5 --deltas 0.01,0.02,0.03", "default");
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 361u);
    EXPECT_EQ(rows[0], CSV_COLUMNS);

    // Per (spec, seed): shots_used non-increasing in delta.
    std::map<std::string, std::vector<std::pair<double, long>>> cells;
    for (std::size_t i = 1; i < rows.size(); i++) {
        const auto &row = rows[i];
        ASSERT_EQ(row.size(), CSV_COLUMNS.size());
        ASSERT_NE(row[12], "error") << row[0] << ":" << row[1];
        double delta = std::stod(row[3]);
        double ci = std::stod(row[14]);
        EXPECT_EQ(ci <= delta, row[12] == "ci_met") << row[0] << ":" << row[1] << " seed " << row[2];
        cells[row[0] + ":" + row[1] + ":" + row[2]].push_back({delta, std::stol(row[11])});
        double bias = std::stod(row[15]);
        EXPECT_GE(bias, 0.0);
        EXPECT_LE(bias, 1.0);
        EXPECT_EQ(row[16], "0");
    }
    EXPECT_EQ(cells.size(), 120u);
    for (auto &[key, v] : cells) {
        std::sort(v.begin(), v.end());
        for (std::size_t i = 1; i < v.size(); i++) {
            EXPECT_LE(v[i].second, v[i - 1].second) << key;
        }
    }
}

TEST(sweep, byte_identical_across_runs_and_thread_counts) {
    fs::path a = tmp("sweep_a.csv"), b = tmp("sweep_b.csv");
    std::string flags = "sweep --seeds 2 --deltas 0.02,0.05 ";
    ASSERT_EQ(qfid_cli(flags + "--threads 1 --out " + a.string(), "det_a").code, 0);
    ASSERT_EQ(qfid_cli(flags + "--threads 4 --out " + b.string(), "det_b").code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_FALSE(slurp(a).empty());
}

TEST(run_estimate, reports_are_byte_identical_for_a_fixed_seed) {
    EstimateOptions eo;
    eo.noise = NoiseModel{1e-3, 1e-2, 1e-2};
    eo.analyze.seed = 9;
    eo.reference_shots = 2000;
    CircuitSource src = source_from_bench(parse_bench_spec("qpe:5:phase=3/16"));
    std::string a = dump_json(run_record_json(run_estimate(src, eo)));
    std::string b = dump_json(run_record_json(run_estimate(src, eo)));
    EXPECT_EQ(a, b);
}

TEST(with_measurements, adds_measures_only_when_absent) {
    Circuit c(3, 0);
    c.append(OpKind::H, {0});
    Circuit m = with_measurements(c);
    EXPECT_EQ(m.num_clbits, 3u);
    EXPECT_EQ(m.count(OpKind::MEASURE), 3u);
    EXPECT_TRUE(structurally_equal(with_measurements(m), m));
}

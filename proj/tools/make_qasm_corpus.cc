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

// Regenerates the benchmark part of the QASM test corpus:
//   make_qasm_corpus tests/data/qasm_corpus

#include <filesystem>
#include <fstream>
#include <iostream>

#include "qfid/benchmarks.h"
#include "qfid/qasm.h"

int main(int argc, char **argv) {
    if (argc != 2) {
        std::cerr << "usage: make_qasm_corpus <output-dir>\n";
        return 2;
    }
    std::filesystem::path dir(argv[1]);
    std::filesystem::create_directories(dir);
    for (std::string_view family : qfid::bench_families()) {
        for (uint32_t n : {3u, 5u}) {
            qfid::BenchSpec spec;
            spec.family = std::string(family);
            spec.n = n;
            spec.seed = 7;
            std::string name = "gen_" + spec.family + "_" + std::to_string(n) + ".qasm";
            std::ofstream out(dir / name, std::ios::binary);
            out << qfid::emit_qasm(qfid::generate(spec));
            std::cout << "wrote " << (dir / name).string() << "\n";
        }
    }
    return 0;
}

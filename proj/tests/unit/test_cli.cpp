// Copyright 2026 The gaussphase Authors
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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gaussphase/gaussphase.h"

namespace {

struct Result {
    int code;
    std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " '" GAUSSPHASE_CLI_PATH "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return {-1, ""};
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        bool quoted = false;
        for (char c : line) {
            if (c == '"') {
                quoted = !quoted;
            } else if (c == ',' && !quoted) {
                cells.push_back(cell);
                cell.clear();
            } else {
                cell += c;
            }
        }
        cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

int column(const std::vector<std::string>& header, const std::string& name) {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    ADD_FAILURE() << "missing column " << name;
    return 0;
}

}  // namespace

TEST(Cli, FidelityCoherentMatchesCApi) {
    const Result r = run("fidelity coherent --alpha 0.5,1,2 --nbeta 0.5 --format csv");
    ASSERT_EQ(r.code, 0);
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 4u);
    const int a = column(rows[0], "alpha");
    const int f = column(rows[0], "fidelity[1;coherent_thermal]");
    for (size_t i = 1; i < rows.size(); ++i) {
        gp_fidelity ref;
        ASSERT_EQ(gp_coherent_thermal_fidelity(std::stod(rows[i][a]), 0.5, &ref), GP_OK);
        EXPECT_EQ(std::stod(rows[i][f]), ref.value);
    }
}

TEST(Cli, FidelityOracleCheckPasses) {
    const Result r = run("fidelity squeezed --r 0.3,0.6 --modes pure,half-loss --check --format csv");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("oracle["), std::string::npos);
}

TEST(Cli, JsonAndCsvCarryTheSameValues) {
    const std::string args = "bounds --family squeezed --n0 1,10,100 --T 0.5 --N 10";
    const Result csv = run(args + " --format csv");
    const Result js = run(args + " --format json");
    ASSERT_EQ(csv.code, 0);
    ASSERT_EQ(js.code, 0);
    const auto rows = parse_csv(csv.out);
    const auto doc = nlohmann::json::parse(js.out);
    EXPECT_EQ(doc["command"], "bounds");
    ASSERT_EQ(doc["rows"].size() + 1, rows.size());
    const int v = column(rows[0], "var_phi[rad^2]");
    for (size_t i = 1; i < rows.size(); ++i) {
        const auto& cell = doc["rows"][i - 1]["var_phi[rad^2]"];
        if (cell.is_number()) EXPECT_EQ(std::stod(rows[i][v]), cell.get<double>());
    }
}

TEST(Cli, BoundsMatchCApi) {
    const Result r = run("bounds --family squeezed --schemes homodyne --n0 4 --T 1 --N 3 --format csv");
    ASSERT_EQ(r.code, 0);
    const auto rows = parse_csv(r.out);
    ASSERT_GE(rows.size(), 2u);
    gp_variance_report ref;
    ASSERT_EQ(gp_homodyne_var_lossy(4.0, 1.0, 3, &ref), GP_OK);
    EXPECT_EQ(std::stod(rows[1][column(rows[0], "var_phi[rad^2]")]), ref.variance);
}

TEST(Cli, SimulateIsDeterministicAcrossThreadCounts) {
    const std::string args =
        "simulate --scheme heterodyne --family coherent --nalpha 2 --N 200 --trials 40 --seed 11 --format csv";
    const Result a = run(args + " --threads 1");
    const Result b = run(args + " --threads 4");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind("scheme,family", 0), 0u);
}

TEST(Cli, FrequencyTableMatchesCApi) {
    const Result r = run("frequency --n0 0.5,50 --format csv");
    ASSERT_EQ(r.code, 0);
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 3u);
    const double n0[] = {0.5, 50.0};
    gp_freq_row ref[2];
    ASSERT_EQ(gp_frequency_comparison(1.0, 1, n0, 2, ref), GP_OK);
    EXPECT_EQ(std::stod(rows[2][column(rows[0], "n0")]), 50.0);
    EXPECT_NEAR(std::stod(rows[2][1 + column(rows[0], "n0")]), ref[1].coherent, 1e-15 * ref[1].coherent + 1e-300);
}

TEST(Cli, FockAndXiCommands) {
    const Result f = run("fock --family coherent --alpha 1 --nbeta 0 --nmax 40 --format csv");
    ASSERT_EQ(f.code, 0);
    const auto rows = parse_csv(f.out);
    EXPECT_EQ(rows.size(), 1u + 41u * 41u);
    const Result x = run("xi --T 0.5,1 --format csv");
    ASSERT_EQ(x.code, 0);
    EXPECT_EQ(parse_csv(x.out).size(), 3u);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("simulate --family coherent --nalpha 1 --trials 0").code, 2);
    EXPECT_EQ(run("xi --T 1:-0.1:2").code, 2);
    EXPECT_EQ(run("xi --T 1.5").code, 2);
    EXPECT_EQ(run("no-such-command").code, 2);
    EXPECT_EQ(run("fock --family coherent --alpha 3 --nbeta 0 --nmax 10").code, 3);
}

TEST(Cli, OutputDirectoryFromEnvironment) {
    const auto dir = std::filesystem::temp_directory_path() / "gaussphase_cli_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const Result r = run("xi --T 1 --format json", "GAUSSPHASE_OUTPUT_DIR='" + dir.string() + "'");
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(dir / "xi.json");
    ASSERT_TRUE(in.good());
    const auto doc = nlohmann::json::parse(in);
    EXPECT_EQ(doc["command"], "xi");
    std::filesystem::remove_all(dir);
}

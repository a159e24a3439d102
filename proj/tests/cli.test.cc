// Copyright 2026 The cgdist Authors
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

#include "cgdist/cli.h"

#include <filesystem>
#include <fstream>
#include <gtest/gtest.h>
#include <json.hpp>
#include <sstream>

#include "cgdist/spectral_rg.h"

using namespace cgdist;
using namespace cgdist::cli;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "cgdist");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return Outcome{code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string &csv) {
    std::vector<std::string> lines;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') {
            lines.push_back(line);
        }
    }
    return lines;
}

}  // namespace

TEST(cli, parse_scaled_units) {
    EXPECT_EQ(parse_scaled("0.25", 2.0), 0.25);
    EXPECT_EQ(parse_scaled("1e-3s0", 2.0), 1e-3 / 2.0);
    EXPECT_EQ(parse_scaled("1e10/s0", 2.0), 1e10 * 2.0);
    EXPECT_THROW(parse_scaled("abc", 1.0), std::invalid_argument);
    EXPECT_THROW(parse_scaled("1e-3s0", 0.0), std::invalid_argument);
    EXPECT_THROW(parse_scaled("1.0xyz", 1.0), std::invalid_argument);
}

TEST(cli, parse_sigma_grid) {
    auto g = parse_sigma_grid("1e-4s0:1e2s0:7", 1.0);
    ASSERT_EQ(g.size(), 7u);
    EXPECT_DOUBLE_EQ(g.front(), 1e-4);
    EXPECT_DOUBLE_EQ(g.back(), 1e2);
    EXPECT_NEAR(g[1], 1e-3, 1e-15);
    auto lin = parse_sigma_grid("0:1:5:lin", 1.0);
    ASSERT_EQ(lin.size(), 5u);
    EXPECT_DOUBLE_EQ(lin[2], 0.5);
    EXPECT_THROW(parse_sigma_grid("0:1:5", 1.0), std::invalid_argument);
    EXPECT_THROW(parse_sigma_grid("1:2", 1.0), std::invalid_argument);
    EXPECT_THROW(parse_sigma_grid("1:2:0", 1.0), std::invalid_argument);
}

TEST(cli, parse_modes) {
    auto m = parse_modes("0.5,0;-0.5,0");
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m[1], (Momentum{-0.5, 0.0}));
    EXPECT_THROW(parse_modes("0.5;x"), std::invalid_argument);
}

TEST(cli, density_csv) {
    Outcome r = invoke({"density", "--dim", "1", "--beta", "1", "--classical", "--sigma", "0", "--yphi2", "0"});
    ASSERT_EQ(r.code, kOk) << r.err;
    EXPECT_EQ(r.out.rfind("# schema: 1\n", 0), 0u);
    auto lines = data_lines(r.out);
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(lines[0], "value,rel_err_estimate");
    double value = std::stod(lines[1].substr(0, lines[1].find(',')));
    EXPECT_NEAR(value, M_PI / 4, 1e-8);
}

TEST(cli, validate_exit_codes) {
    Outcome bad = invoke({"validate", "--sigma", "1", "--yphi2", "0.5", "--ypi2", "0.4"});
    EXPECT_EQ(bad.code, kValidationFailure);
    EXPECT_NE(bad.out.find(",false,"), std::string::npos);
    Outcome good = invoke({"validate", "--sigma", "1", "--yphi2", "2", "--ypi2", "2"});
    EXPECT_EQ(good.code, kOk);
    EXPECT_EQ(good.out.find(",false,"), std::string::npos);
    // An invalid channel used by a density run maps to the same code.
    Outcome dens = invoke({"density", "--dim", "1", "--sigma", "1", "--yphi2", "0.1", "--ypi2", "0.1"});
    EXPECT_EQ(dens.code, kValidationFailure);
}

TEST(cli, usage_errors) {
    EXPECT_EQ(invoke({"bogus"}).code, kUsage);
    EXPECT_EQ(invoke({"density", "--dim", "zero"}).code, kUsage);
    EXPECT_EQ(invoke({"density", "--metric", "hellinger"}).code, kUsage);
    EXPECT_EQ(invoke({"alpha-sweep", "--perturbation", "v4"}).code, kUsage);
    EXPECT_EQ(invoke({"spectrum"}).code, kUsage);
    EXPECT_EQ(invoke({"density", "--beta", "2"}).code, kUsage);
    EXPECT_EQ(invoke({}).code, kUsage);
}

TEST(cli, numerical_error_exit) {
    // d = 5 quantum V2 at sigma = 0 is ultraviolet divergent.
    Outcome r = invoke({"density", "--dim", "5", "--sigma", "0", "--yphi2", "1", "--ypi2", "1"});
    EXPECT_EQ(r.code, kNumericalError);
    EXPECT_FALSE(r.err.empty());
}

TEST(cli, json_round_trip) {
    Outcome r = invoke({"spectrum", "--modes", "0.5;-0.5", "--sigma", "1", "--yphi2", "10", "--ypi2", "10", "--format", "json"});
    ASSERT_EQ(r.code, kOk) << r.err;
    auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["schema"], 1);
    EXPECT_EQ(doc["config"]["command"], "spectrum");
    ASSERT_EQ(doc["rows"].size(), 4u);
    SpectrumResult s = sector_spectrum(
        {Momentum{0.5}, Momentum{-0.5}}, ModelParams{1.0, InverseTemperature::infinite(), 1}, [] {
            ChannelParams c;
            c.sigma = 1;
            c.y_phi2 = 10;
            c.y_pi2 = 10;
            return c;
        }());
    for (size_t i = 0; i < 4; i++) {
        EXPECT_EQ(doc["rows"][i]["eigenvalue"].get<double>(), s.eigenvalues[i]);
    }
}

TEST(cli, csv_floats_round_trip) {
    Outcome r = invoke({"alpha-sweep", "--perturbation", "v2", "--dim", "3", "--yphi2", "0.5", "--ypi2", "2", "--sigma-grid", "0.1:10:3"});
    ASSERT_EQ(r.code, kOk) << r.err;
    auto lines = data_lines(r.out);
    ASSERT_EQ(lines.size(), 4u);
    EXPECT_EQ(lines[0], "sigma,alpha,std_err,acceptance_rate,seed,status");
    double sigma = std::stod(lines[2].substr(0, lines[2].find(',')));
    EXPECT_NEAR(sigma, 1, 1e-15);
    std::string alpha_text = lines[2].substr(lines[2].find(',') + 1);
    alpha_text = alpha_text.substr(0, alpha_text.find(','));
    ChannelParams c;
    c.sigma = sigma;
    c.y_phi2 = 0.5;
    c.y_pi2 = 2;
    AlphaEstimate direct = fd_alpha_v2(ModelParams{1.0, InverseTemperature::infinite(), 3}, c, sigma, 1e-2);
    EXPECT_EQ(std::stod(alpha_text), direct.alpha);
}

TEST(cli, config_file_with_flag_override) {
    auto path = std::filesystem::temp_directory_path() / "cgdist_cli_test.toml";
    {
        std::ofstream f(path);
        f << "command = \"density\"\ndim = 3\nsigma = \"0.5\"\nyphi2 = \"1\"\nypi2 = \"1\"\n";
    }
    Outcome from_file = invoke({"--config", path.string()});
    Outcome direct = invoke({"density", "--dim", "3", "--sigma", "0.5", "--yphi2", "1", "--ypi2", "1"});
    ASSERT_EQ(from_file.code, kOk) << from_file.err;
    EXPECT_EQ(data_lines(from_file.out), data_lines(direct.out));
    Outcome overridden = invoke({"--config", path.string(), "--dim", "1"});
    Outcome d1 = invoke({"density", "--dim", "1", "--sigma", "0.5", "--yphi2", "1", "--ypi2", "1"});
    EXPECT_EQ(data_lines(overridden.out), data_lines(d1.out));
    std::filesystem::remove(path);
}

TEST(cli, output_file_and_determinism) {
    auto path = std::filesystem::temp_directory_path() / "cgdist_cli_test.csv";
    std::vector<std::string> args{
        "alpha", "--perturbation", "v4", "--dim", "2", "--sigma", "0.5", "--yphi2", "0.1", "--ypi2", "10",
        "--steps", "8000", "--burn", "1000", "--chains", "2", "--seed", "11", "--out", path.string()};
    auto read = [&] {
        std::ifstream f(path);
        return std::string(std::istreambuf_iterator<char>(f), {});
    };
    ASSERT_EQ(invoke(args).code, kOk);
    std::string first = read();
    ASSERT_EQ(invoke(args).code, kOk);
    EXPECT_EQ(first, read());
    EXPECT_NE(first.find(",11,ok"), std::string::npos);
    std::filesystem::remove(path);
}

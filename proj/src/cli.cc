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

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <sstream>
#include <variant>

#include "cgdist/spectral_rg.h"

namespace cgdist::cli {

namespace {

using Json = nlohmann::ordered_json;
using Cell = std::variant<double, uint64_t, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct RawOptions {
    std::string command;
    int dim = 1;
    double mass = 1.0;
    std::string beta = "inf";
    std::string sigma = "0";
    std::string yphi2 = "0";
    std::string ypi2 = "0";
    std::string perturbation = "v2";
    bool classical = false;
    std::string metric = "large-noise";
    uint64_t seed = 0;
    uint64_t steps = 200000;
    uint64_t burn = 20000;
    int chains = 8;
    uint64_t thinning = 10;
    double step_scale = 0.5;
    std::string out;
    std::string format = "csv";
    std::string sigma_grid;
    bool allow_invalid = false;
    std::string modes;
    double cutoff = 0;
};

void build_app(CLI::App &app, RawOptions &o) {
    app.set_config("--config", "", "TOML file with the same keys as the long flags; flags win");
    app.add_option("command,--command", o.command, "density | alpha | alpha-sweep | spectrum | validate")
        ->check(CLI::IsMember({"density", "alpha", "alpha-sweep", "spectrum", "validate"}));
    app.add_option("--dim", o.dim, "spatial dimension");
    app.add_option("--mass", o.mass, "field mass m; sigma0 = 1/m");
    app.add_option("--beta", o.beta, "inverse temperature, or inf");
    app.add_option("--sigma", o.sigma, "spatial resolution (suffix s0 for units of 1/m)");
    app.add_option("--yphi2", o.yphi2, "squared field resolution (suffix s0 or /s0)");
    app.add_option("--ypi2", o.ypi2, "squared momentum resolution (suffix s0 or /s0)");
    app.add_option("--perturbation", o.perturbation)->check(CLI::IsMember({"v2", "v4", "phik", "pik"}));
    app.add_flag("--classical", o.classical, "classical field instead of quantum");
    app.add_option("--metric", o.metric)->check(CLI::IsMember({"chi2", "fisher", "large-noise", "raw-bures"}));
    app.add_option("--seed", o.seed);
    app.add_option("--steps", o.steps, "Metropolis steps per chain, burn-in included");
    app.add_option("--burn", o.burn, "burn-in steps per chain");
    app.add_option("--chains", o.chains);
    app.add_option("--thinning", o.thinning);
    app.add_option("--step-scale", o.step_scale, "initial proposal width in units of max(m, 1/sigma)");
    app.add_option("--out", o.out, "output path (default stdout)");
    app.add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--sigma-grid", o.sigma_grid, "lo:hi:n[:log|:lin]");
    app.add_flag("--allow-invalid", o.allow_invalid, "skip the per-mode complete positivity check");
    app.add_option("--modes", o.modes, "sector momenta, e.g. \"0.5,0;-0.5,0\"");
    app.add_option("--cutoff", o.cutoff, "eigenvalue threshold for spectrum");
}

MetricKind parse_metric(const std::string &s) {
    if (s == "chi2") {
        return MetricKind::kChi2;
    }
    if (s == "fisher") {
        return MetricKind::kFisher;
    }
    if (s == "raw-bures") {
        return MetricKind::kRawBures;
    }
    if (s == "large-noise") {
        return MetricKind::kLargeNoise;
    }
    throw std::invalid_argument("unknown metric: " + s);
}

double parse_number(const std::string &text) {
    size_t used = 0;
    double v;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    if (used != text.size()) {
        throw std::invalid_argument("trailing characters in number: '" + text + "'");
    }
    return v;
}

RunConfig convert(const RawOptions &o) {
    if (o.command.empty()) {
        throw std::invalid_argument("no command given");
    }
    RunConfig c;
    c.command = o.command;
    c.model.dim = o.dim;
    c.model.mass = o.mass;
    c.model.beta = o.beta == "inf" ? InverseTemperature::infinite() : InverseTemperature::finite(parse_number(o.beta));
    c.model.validate();
    c.channel.sigma = parse_scaled(o.sigma, o.mass);
    c.channel.y_phi2 = parse_scaled(o.yphi2, o.mass);
    c.channel.y_pi2 = parse_scaled(o.ypi2, o.mass);
    c.channel.allow_invalid = o.allow_invalid;
    c.channel.validate();
    c.perturbation = o.perturbation;
    c.classical = o.classical;
    c.metric = parse_metric(o.metric);
    c.mc.seed = o.seed;
    c.mc.n_steps = o.steps;
    c.mc.n_burn = o.burn;
    c.mc.n_chains = o.chains;
    c.mc.thinning = o.thinning;
    c.mc.step_scale = o.step_scale;
    c.mc.validate();
    c.out_path = o.out;
    c.format = o.format;
    if (!o.sigma_grid.empty()) {
        c.sigma_grid = parse_sigma_grid(o.sigma_grid, o.mass);
    }
    if (!o.modes.empty()) {
        c.modes = parse_modes(o.modes);
    }
    c.cutoff = o.cutoff;
    return c;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_cell(const Cell &cell) {
    if (auto d = std::get_if<double>(&cell)) {
        return format_double(*d);
    }
    if (auto u = std::get_if<uint64_t>(&cell)) {
        return std::to_string(*u);
    }
    if (auto b = std::get_if<bool>(&cell)) {
        return *b ? "true" : "false";
    }
    const auto &s = std::get<std::string>(cell);
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char ch : s) {
        q += ch;
        if (ch == '"') {
            q += '"';
        }
    }
    return q + "\"";
}

Json json_cell(const Cell &cell) {
    if (auto d = std::get_if<double>(&cell)) {
        return std::isfinite(*d) ? Json(*d) : Json(nullptr);
    }
    if (auto u = std::get_if<uint64_t>(&cell)) {
        return Json(*u);
    }
    if (auto b = std::get_if<bool>(&cell)) {
        return Json(*b);
    }
    return Json(std::get<std::string>(cell));
}

Json config_json(const RunConfig &c) {
    Json j;
    j["command"] = c.command;
    j["dim"] = c.model.dim;
    j["mass"] = c.model.mass;
    if (c.model.beta.is_infinite()) {
        j["beta"] = "inf";
    } else {
        j["beta"] = c.model.beta.value();
    }
    j["sigma"] = c.channel.sigma;
    j["y_phi2"] = c.channel.y_phi2;
    j["y_pi2"] = c.channel.y_pi2;
    j["allow_invalid"] = c.channel.allow_invalid;
    j["perturbation"] = c.perturbation;
    j["classical"] = c.classical;
    j["metric"] = metric_kind_name(c.metric);
    j["seed"] = c.mc.seed;
    j["steps"] = c.mc.n_steps;
    j["burn"] = c.mc.n_burn;
    j["chains"] = c.mc.n_chains;
    j["thinning"] = c.mc.thinning;
    j["step_scale"] = c.mc.step_scale;
    j["sigma_grid"] = c.sigma_grid;
    j["modes"] = c.modes;
    j["cutoff"] = c.cutoff;
    return j;
}

void emit(const RunConfig &c, const Table &t, std::ostream &out) {
    if (c.format == "json") {
        Json doc;
        doc["schema"] = 1;
        doc["config"] = config_json(c);
        Json rows = Json::array();
        for (const auto &r : t.rows) {
            Json row;
            for (size_t i = 0; i < t.columns.size(); i++) {
                row[t.columns[i]] = json_cell(r[i]);
            }
            rows.push_back(row);
        }
        doc["rows"] = rows;
        out << doc.dump(2) << "\n";
        return;
    }
    out << "# schema: 1\n";
    out << "# config: " << config_json(c).dump() << "\n";
    for (size_t i = 0; i < t.columns.size(); i++) {
        out << (i ? "," : "") << t.columns[i];
    }
    out << "\n";
    for (const auto &r : t.rows) {
        for (size_t i = 0; i < r.size(); i++) {
            out << (i ? "," : "") << csv_cell(r[i]);
        }
        out << "\n";
    }
}

PerturbationKind sampled_kind(const RunConfig &c) {
    if (c.perturbation == "v2") {
        return c.classical ? PerturbationKind::kV2Classical : PerturbationKind::kV2Quantum;
    }
    if (c.perturbation == "v4") {
        return c.classical ? PerturbationKind::kV4Classical : PerturbationKind::kV4Quantum;
    }
    throw std::invalid_argument("alpha estimates need --perturbation v2 or v4");
}

std::string status_of(const AlphaEstimate &e) {
    std::string s = "ok";
    for (const auto &w : e.warnings) {
        s += "; warning: " + w;
    }
    return s;
}

Table run_density(const RunConfig &c) {
    Table t{{"value", "rel_err_estimate"}, {}};
    if (c.perturbation == "v2") {
        if (c.metric != MetricKind::kLargeNoise && !c.classical) {
            throw std::invalid_argument("the quantum V2 density uses the large-noise metric");
        }
        auto r = quad_density_v2(c.model, c.channel, c.classical ? Statistics::kClassical : Statistics::kQuantum);
        t.rows.push_back({r.value, r.rel_err_estimate});
        return t;
    }
    if (c.perturbation == "phik" || c.perturbation == "pik") {
        if (c.modes.size() != 1) {
            throw std::invalid_argument("phik/pik densities need exactly one mode in --modes");
        }
        SectorBlock g = cg_metric_block(c.modes, c.model, c.channel, c.metric);
        int i = c.perturbation == "phik" ? 0 : 1;
        double rel_err = c.model.beta.is_infinite() ? 0.0 : 1e-9;
        t.rows.push_back({g.matrix(i, i).real(), rel_err});
        return t;
    }
    throw std::invalid_argument("density supports v2, phik and pik; use alpha for v4");
}

Table run_alpha(const RunConfig &c) {
    Table t{{"sigma", "alpha", "std_err", "acceptance_rate", "seed", "status"}, {}};
    AlphaEstimate e = mc_alpha(sampled_kind(c), c.model, c.channel, c.mc);
    t.rows.push_back({c.channel.sigma, e.alpha, e.std_err, e.acceptance_rate, c.mc.seed, status_of(e)});
    return t;
}

Table run_sweep(const RunConfig &c) {
    if (c.sigma_grid.empty()) {
        throw std::invalid_argument("alpha-sweep needs --sigma-grid");
    }
    Table t{{"sigma", "alpha", "std_err", "acceptance_rate", "seed", "status"}, {}};
    auto points = alpha_sweep(sampled_kind(c), c.model, c.channel, c.sigma_grid, c.mc);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto &p : points) {
        if (p.estimate) {
            const auto &e = *p.estimate;
            t.rows.push_back({p.sigma, e.alpha, e.std_err, e.acceptance_rate, p.seed, status_of(e)});
        } else {
            t.rows.push_back({p.sigma, nan, nan, nan, p.seed, "error: " + p.error});
        }
    }
    return t;
}

Table run_spectrum(const RunConfig &c) {
    if (c.modes.empty()) {
        throw std::invalid_argument("spectrum needs --modes");
    }
    Table t{{"eigenvalue", "observable"}, {}};
    for (const auto &r : relevance_report(c.modes, c.model, c.channel, c.cutoff, c.metric)) {
        t.rows.push_back({r.eigenvalue, r.observable});
    }
    return t;
}

Table run_validate(const RunConfig &c, bool &all_valid) {
    Table t{{"k_norm", "valid", "min_eigenvalue"}, {}};
    std::vector<double> norms;
    if (!c.modes.empty()) {
        for (const auto &k : c.modes) {
            norms.push_back(std::sqrt(norm2(k)));
        }
    } else {
        double unit = c.channel.sigma > 0 ? 1 / c.channel.sigma : (c.model.mass > 0 ? c.model.mass : 1.0);
        norms.push_back(0.0);
        for (int i = 0; i <= 24; i++) {
            norms.push_back(unit * std::pow(10.0, -3 + 0.25 * i));
        }
        norms.push_back(std::numeric_limits<double>::infinity());
    }
    all_valid = true;
    for (double k : norms) {
        auto v = validate_channel_norm2(k * k, c.channel);
        all_valid = all_valid && v.valid;
        t.rows.push_back({k, v.valid, v.min_eigenvalue});
    }
    return t;
}

}  // namespace

double parse_scaled(const std::string &text, double mass) {
    auto ends_with = [&](const std::string &suffix) {
        return text.size() > suffix.size() && text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends_with("/s0") || ends_with("s0")) {
        if (!(mass > 0)) {
            throw std::invalid_argument("s0 units need a positive mass");
        }
        if (ends_with("/s0")) {
            return parse_number(text.substr(0, text.size() - 3)) * mass;
        }
        return parse_number(text.substr(0, text.size() - 2)) / mass;
    }
    return parse_number(text);
}

std::vector<double> parse_sigma_grid(const std::string &text, double mass) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        parts.push_back(item);
    }
    if (parts.size() != 3 && parts.size() != 4) {
        throw std::invalid_argument("sigma grid must look like lo:hi:n[:log|:lin]");
    }
    double lo = parse_scaled(parts[0], mass);
    double hi = parse_scaled(parts[1], mass);
    double n_real = parse_number(parts[2]);
    bool log_spaced = parts.size() == 3 || parts[3] == "log";
    if (parts.size() == 4 && parts[3] != "log" && parts[3] != "lin") {
        throw std::invalid_argument("sigma grid spacing must be log or lin");
    }
    if (!(n_real >= 1) || n_real != std::floor(n_real) || n_real > 1e6) {
        throw std::invalid_argument("sigma grid point count must be a positive integer");
    }
    size_t n = static_cast<size_t>(n_real);
    if (!(hi >= lo) || (log_spaced && !(lo > 0))) {
        throw std::invalid_argument("sigma grid needs 0 < lo <= hi (log) or lo <= hi (lin)");
    }
    std::vector<double> grid;
    for (size_t i = 0; i < n; i++) {
        double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        grid.push_back(log_spaced ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo));
    }
    // Endpoints exactly as given.
    grid.front() = lo;
    if (n > 1) {
        grid.back() = hi;
    }
    return grid;
}

std::vector<Momentum> parse_modes(const std::string &text) {
    std::vector<Momentum> modes;
    std::stringstream ss(text);
    std::string vec;
    while (std::getline(ss, vec, ';')) {
        Momentum k;
        std::stringstream vs(vec);
        std::string comp;
        while (std::getline(vs, comp, ',')) {
            comp.erase(0, comp.find_first_not_of(' '));
            comp.erase(comp.find_last_not_of(' ') + 1);
            k.push_back(parse_number(comp));
        }
        if (k.empty()) {
            throw std::invalid_argument("empty momentum vector in --modes");
        }
        modes.push_back(k);
    }
    return modes;
}

RunConfig parse_args(int argc, const char *const *argv) {
    CLI::App app{"cgdist"};
    RawOptions o;
    build_app(app, o);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        throw std::invalid_argument(e.what());
    }
    return convert(o);
}

int run(const RunConfig &config, std::ostream &out, std::ostream &err) {
    try {
        Table table;
        int code = kOk;
        if (config.command == "density") {
            table = run_density(config);
        } else if (config.command == "alpha") {
            table = run_alpha(config);
        } else if (config.command == "alpha-sweep") {
            table = run_sweep(config);
        } else if (config.command == "spectrum") {
            table = run_spectrum(config);
        } else if (config.command == "validate") {
            bool all_valid;
            table = run_validate(config, all_valid);
            if (!all_valid) {
                err << "channel is not completely positive at some evaluated modes\n";
                code = kValidationFailure;
            }
        } else {
            throw std::invalid_argument("unknown command: " + config.command);
        }
        if (config.out_path.empty()) {
            emit(config, table, out);
        } else {
            std::ofstream f(config.out_path, std::ios::binary);
            if (!f) {
                throw std::invalid_argument("cannot write " + config.out_path);
            }
            emit(config, table, f);
        }
        return code;
    } catch (const ChannelInvalid &e) {
        err << "validation failure: " << e.what() << "\n";
        return kValidationFailure;
    } catch (const std::invalid_argument &e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        err << "numerical error: " << e.what() << "\n";
        return kNumericalError;
    }
}

int main_entry(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"cgdist: coarse-grained distinguishability of free bosonic fields"};
    RawOptions o;
    build_app(app, o);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kUsage;
    }
    RunConfig config;
    try {
        config = convert(o);
    } catch (const std::exception &e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }
    return run(config, out, err);
}

}  // namespace cgdist::cli

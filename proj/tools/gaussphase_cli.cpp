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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "gaussphase/gaussphase.h"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct CliFailure {
    int code;
    std::string message;
};

[[noreturn]] void invalid(const std::string& message) { throw CliFailure{kExitValidation, message}; }

void check(gp_status status, const std::string& what) {
    if (status == GP_OK) return;
    const int code = (status == GP_ERR_DOMAIN || status == GP_ERR_INVALID_ARGUMENT) ? kExitValidation : kExitNumerical;
    throw CliFailure{code, what + ": " + gp_status_name(status) + ": " + gp_last_error()};
}

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_field(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    const auto& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    return quoted + "\"";
}

void write_csv(std::ostream& out, const Table& t) {
    for (size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << "\n";
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
        out << "\n";
    }
}

void write_json(std::ostream& out, const std::string& command, const Table& t) {
    nlohmann::ordered_json doc;
    doc["command"] = command;
    doc["version"] = gp_version();
    doc["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (size_t i = 0; i < row.size(); ++i) {
            std::visit(
                [&](const auto& v) {
                    using V = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<V, double>) {
                        // JSON has no NaN or infinity; keep them as the same strings the CSV uses.
                        if (std::isfinite(v)) obj[t.columns[i]] = v;
                        else obj[t.columns[i]] = format_double(v);
                    } else {
                        obj[t.columns[i]] = v;
                    }
                },
                row[i]);
        }
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << "\n";
}

double parse_number(const std::string& token) {
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        invalid("not a number: '" + token + "'");
    }
    if (used != token.size()) invalid("not a number: '" + token + "'");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        parts.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
    }
    return parts;
}

// Comma list whose items are numbers or inclusive start:step:stop ranges.
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> values;
    for (const auto& item : split(text, ',')) {
        if (item.empty()) invalid("empty grid item in '" + text + "'");
        const auto parts = split(item, ':');
        if (parts.size() == 1) {
            values.push_back(parse_number(parts[0]));
            continue;
        }
        if (parts.size() != 3) invalid("range must be start:step:stop, got '" + item + "'");
        const double start = parse_number(parts[0]);
        const double step = parse_number(parts[1]);
        const double stop = parse_number(parts[2]);
        if (step == 0.0 || !std::isfinite(step) || (stop - start) * step < 0.0) invalid("bad range step in '" + item + "'");
        const double slack = 1e-12 * std::max(1.0, std::max(std::abs(start), std::abs(stop)));
        const long long count = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (count > 10000000) invalid("range too long: '" + item + "'");
        for (long long i = 0; i < count; ++i) {
            double v = start + static_cast<double>(i) * step;
            if (std::abs(v - stop) <= slack) v = stop;
            if ((step > 0 && v > stop + slack) || (step < 0 && v < stop - slack)) break;
            values.push_back(v);
        }
    }
    return values;
}

std::vector<std::string> parse_list(const std::string& text, const std::vector<std::string>& allowed) {
    auto items = split(text, ',');
    for (const auto& item : items) {
        if (std::find(allowed.begin(), allowed.end(), item) == allowed.end()) invalid("unknown value '" + item + "'");
    }
    return items;
}

struct OutputOptions {
    std::string format = "csv";
    std::string output;
};

void add_output_options(CLI::App* cmd, OutputOptions& o) {
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", o.output, "output file (default: $GAUSSPHASE_OUTPUT_DIR/<command>.<format>, else stdout)");
}

void emit(const std::string& command, const Table& t, const OutputOptions& o) {
    std::string path = o.output;
    if (path.empty()) {
        if (const char* dir = std::getenv("GAUSSPHASE_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
            std::string stem = command;
            std::replace(stem.begin(), stem.end(), ' ', '_');
            path = (std::filesystem::path(dir) / (stem + "." + o.format)).string();
        }
    }
    std::ofstream file;
    if (!path.empty()) {
        file.open(path);
        if (!file) invalid("cannot open output file " + path);
    }
    std::ostream& out = path.empty() ? std::cout : file;
    if (o.format == "json") write_json(out, command, t);
    else write_csv(out, t);
}

std::string method_name(int method) {
    switch (method) {
        case GP_METHOD_QUADRATURE: return "quadrature";
        case GP_METHOD_SERIES: return "series";
        case GP_METHOD_ASYMPTOTIC_LARGE: return "asymptotic_large";
        case GP_METHOD_ASYMPTOTIC_SMALL: return "asymptotic_small";
    }
    return "unknown";
}

const char* scheme_name(int scheme) {
    switch (scheme) {
        case GP_SCHEME_OPTIMAL: return "optimal";
        case GP_SCHEME_HETERODYNE: return "heterodyne";
        case GP_SCHEME_HOMODYNE: return "homodyne";
        case GP_SCHEME_CANONICAL: return "canonical";
    }
    return "unknown";
}

int scheme_code(const std::string& name) {
    if (name == "optimal") return GP_SCHEME_OPTIMAL;
    if (name == "heterodyne") return GP_SCHEME_HETERODYNE;
    if (name == "homodyne") return GP_SCHEME_HOMODYNE;
    if (name == "canonical") return GP_SCHEME_CANONICAL;
    invalid("unknown scheme '" + name + "'");
}

// ---- fidelity ----

struct FidelityArgs {
    std::string alpha = "1";
    std::string nbeta = "0";
    std::string r = "0.5";
    std::string r0;
    std::string T;
    std::string modes = "pure";
    bool check = false;
    bool asymptotic = false;
    double tolerance = 1e-6;
    OutputOptions out;
};

Table fidelity_coherent(const FidelityArgs& a) {
    Table t;
    t.columns = {"alpha", "n_beta", "n_alpha", "fidelity[1;coherent_thermal]", "error_estimate", "method", "converged"};
    if (a.asymptotic) {
        t.columns.insert(t.columns.end(), {"fidelity[1;coherent_large_alpha]", "fidelity[1;coherent_small_alpha]",
                                           "small_alpha_near_boundary", "large_alpha_rel_diff", "small_alpha_rel_diff"});
    }
    if (a.check) t.columns.insert(t.columns.end(), {"oracle[1;fock_l1]", "oracle_tail_bound", "abs_diff", "agree"});
    for (double nb : parse_grid(a.nbeta)) {
        for (double alpha : parse_grid(a.alpha)) {
            gp_fidelity f;
            check(gp_coherent_thermal_fidelity(alpha, nb, &f), "coherent fidelity");
            const double n_alpha = alpha * alpha;
            std::vector<Cell> row{alpha, nb, n_alpha, f.value, f.error_estimate, method_name(f.method),
                                  static_cast<long long>(f.converged)};
            if (a.asymptotic) {
                double large = NAN;
                gp_small_alpha_fidelity small{NAN, NAN, NAN, 0};
                if (n_alpha > 0.0) check(gp_coherent_fidelity_large_alpha(n_alpha, nb, &large), "large-alpha asymptote");
                check(gp_coherent_fidelity_small_alpha(n_alpha, nb, &small), "small-alpha asymptote");
                row.insert(row.end(), {large, small.value, static_cast<long long>(small.near_boundary),
                                       std::abs(large - f.value) / std::max(f.value, 1e-300),
                                       std::abs(small.value - f.value) / std::max(f.value, 1e-300)});
            }
            if (a.check) {
                gp_fock* rho = nullptr;
                check(gp_fock_adaptive_displaced_thermal(alpha, 0.0, nb, 1, &rho), "Fock oracle");
                double oracle = 0.0, tail = 0.0;
                const gp_status s = gp_fock_optimal_fidelity(rho, 1, &oracle, &tail);
                gp_fock_free(rho);
                check(s, "Fock oracle fidelity");
                const double diff = std::abs(oracle - f.value);
                row.insert(row.end(), {oracle, tail, diff, static_cast<long long>(diff <= a.tolerance)});
            }
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

struct SqueezedPoint {
    std::string mode;
    double r;
    double r0;
    double T;
};

Table fidelity_squeezed(const FidelityArgs& a) {
    std::vector<SqueezedPoint> points;
    if (!a.r0.empty() || !a.T.empty()) {
        if (a.r0.empty() || a.T.empty()) invalid("--r0 and --T must be given together");
        for (double T : parse_grid(a.T))
            for (double r0 : parse_grid(a.r0)) points.push_back({"lossy", r0, r0, T});
    } else {
        const auto modes = parse_list(a.modes, {"pure", "half-loss", "energy-matched"});
        for (const auto& mode : modes) {
            for (double r : parse_grid(a.r)) {
                if (mode == "pure") {
                    points.push_back({mode, r, r, 1.0});
                } else if (mode == "half-loss") {
                    points.push_back({mode, r, 2.0 * r, 0.5});
                } else {
                    double matched = 0.0;
                    check(gp_energy_matched_squeeze(2.0 * r, 0.5, &matched), "energy-matched squeezing");
                    points.push_back({mode, r, matched, 1.0});
                }
            }
        }
    }
    Table t;
    t.columns = {"mode", "r", "r0", "T", "mean_photons", "fidelity[1;squeezed_thermal]", "error_estimate", "method",
                 "converged"};
    if (a.check) t.columns.insert(t.columns.end(), {"oracle[1;fock_l2]", "oracle_tail_bound", "abs_diff", "agree"});
    for (const auto& p : points) {
        gp_fidelity f;
        check(gp_squeezed_thermal_fidelity(p.r0, p.T, &f), "squeezed fidelity");
        double nb = 0.0, r_out = 0.0, mean = 0.0;
        check(gp_lossy_channel_output(p.r0, p.T, &nb, &r_out), "lossy channel");
        check(gp_mean_photon_number(nb, r_out, 0.0, 0.0, &mean), "mean photon number");
        std::vector<Cell> row{p.mode, p.r, p.r0, p.T, mean, f.value, f.error_estimate, method_name(f.method),
                              static_cast<long long>(f.converged)};
        if (a.check) {
            gp_fock* rho = nullptr;
            check(gp_fock_adaptive_lossy_squeezed(p.r0, p.T, 2, &rho), "Fock oracle");
            double oracle = 0.0, tail = 0.0;
            const gp_status s = gp_fock_optimal_fidelity(rho, 2, &oracle, &tail);
            gp_fock_free(rho);
            check(s, "Fock oracle fidelity");
            const double diff = std::abs(oracle - f.value);
            row.insert(row.end(), {oracle, tail, diff, static_cast<long long>(diff <= a.tolerance)});
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

// ---- bounds ----

struct BoundsArgs {
    std::string family = "squeezed";
    std::string schemes = "optimal,heterodyne,homodyne,canonical";
    std::string n0, T, nr, nalpha, nbeta;
    long long n_copies = 1;
    OutputOptions out;
};

struct BoundRow {
    std::string formula;
    gp_variance_report report;
};

Table bounds(const BoundsArgs& a) {
    const auto schemes = parse_list(a.schemes, {"optimal", "heterodyne", "homodyne", "canonical"});
    if (a.n_copies < 1) invalid("--N must be at least 1");
    Table t;
    t.columns = {"family", "scheme", "formula", "n_alpha", "n_r", "n_beta", "n0", "T", "N", "fisher_per_copy[rad^-2]",
                 "var_phi[rad^2]", "ratio_to_optimal", "outside_regime", "regime_note"};
    auto push = [&](const std::vector<BoundRow>& reports, double n_alpha, double n_r, double n_beta, double n0,
                    double T) {
        double optimal = NAN;
        for (const auto& b : reports)
            if (b.report.scheme == GP_SCHEME_OPTIMAL) optimal = b.report.variance;
        for (const auto& b : reports) {
            t.rows.push_back({a.family, std::string(scheme_name(b.report.scheme)), b.formula, n_alpha, n_r, n_beta, n0,
                              T, a.n_copies, b.report.fisher_per_copy, b.report.variance, b.report.variance / optimal,
                              static_cast<long long>(b.report.outside_regime), std::string(b.report.regime_note)});
        }
    };
    auto run = [&](std::vector<BoundRow>& rows, const std::string& scheme, const std::string& formula, auto&& call) {
        if (std::find(schemes.begin(), schemes.end(), scheme) == schemes.end() && scheme != "optimal") return;
        BoundRow b{formula, {}};
        check(call(&b.report), formula);
        rows.push_back(b);
    };
    const long long N = a.n_copies;
    if (a.family == "coherent") {
        if (!a.n0.empty() || !a.T.empty() || !a.nr.empty()) invalid("coherent family takes --nalpha and --nbeta");
        for (double nb : parse_grid(a.nbeta.empty() ? "0" : a.nbeta)) {
            for (double na : parse_grid(a.nalpha.empty() ? "1" : a.nalpha)) {
                std::vector<BoundRow> rows;
                run(rows, "optimal", "optimal_coherent", [&](auto* r) { return gp_optimal_var_coherent(na, nb, N, r); });
                run(rows, "heterodyne", "heterodyne_coherent", [&](auto* r) { return gp_heterodyne_var_coherent(na, nb, N, r); });
                run(rows, "homodyne", "homodyne_coherent", [&](auto* r) { return gp_homodyne_var_coherent(na, nb, N, r); });
                run(rows, "canonical", "canonical_coherent", [&](auto* r) { return gp_canonical_var_coherent(na, nb, N, r); });
                push(rows, na, NAN, nb, NAN, NAN);
            }
        }
    } else if (a.family == "squeezed") {
        if (!a.nalpha.empty()) invalid("squeezed family does not take --nalpha");
        const bool lossy = !a.n0.empty() || !a.T.empty();
        if (lossy) {
            if (!a.nr.empty() || !a.nbeta.empty()) invalid("give either --n0/--T or --nr/--nbeta, not both");
            for (double T : parse_grid(a.T.empty() ? "1" : a.T)) {
                for (double n0 : parse_grid(a.n0.empty() ? "1" : a.n0)) {
                    std::vector<BoundRow> rows;
                    run(rows, "optimal", "optimal_squeezed_lossy", [&](auto* r) { return gp_optimal_var_squeezed_lossy(n0, T, N, r); });
                    run(rows, "heterodyne", "heterodyne_lossy", [&](auto* r) { return gp_heterodyne_var_lossy(n0, T, N, r); });
                    run(rows, "homodyne", "homodyne_lossy", [&](auto* r) { return gp_homodyne_var_lossy(n0, T, N, r); });
                    run(rows, "canonical", "canonical_squeezed_low", [&](auto* r) { return gp_canonical_var_squeezed_low(n0, T, N, r); });
                    if (T < 1.0) {
                        run(rows, "canonical", "canonical_squeezed_large", [&](auto* r) { return gp_canonical_var_squeezed_large(n0, T, N, r); });
                    }
                    push(rows, NAN, NAN, NAN, n0, T);
                }
            }
        } else {
            if (std::find(schemes.begin(), schemes.end(), "canonical") != schemes.end() && a.schemes.find(',') == std::string::npos)
                invalid("canonical bounds for squeezed states need --n0 and --T");
            for (double nb : parse_grid(a.nbeta.empty() ? "0" : a.nbeta)) {
                for (double nr : parse_grid(a.nr.empty() ? "1" : a.nr)) {
                    std::vector<BoundRow> rows;
                    run(rows, "optimal", "optimal_squeezed", [&](auto* r) { return gp_optimal_var_squeezed(nr, nb, N, r); });
                    run(rows, "heterodyne", "heterodyne_squeezed", [&](auto* r) { return gp_heterodyne_var_squeezed(nr, nb, N, r); });
                    run(rows, "homodyne", "homodyne_squeezed", [&](auto* r) { return gp_homodyne_var_squeezed(nr, N, r); });
                    push(rows, NAN, nr, nb, NAN, NAN);
                }
            }
        }
    } else {
        invalid("--family must be coherent or squeezed");
    }
    return t;
}

// ---- simulate ----

struct SimulateArgs {
    std::string config;
    std::vector<std::pair<std::string, std::string>> overrides;
    std::string scheme, family, n_alpha, n_r, n_beta, r0, T, phi, theta, fraction, N, trials, seed, threads;
    OutputOptions out;
};

// True if a `key = value` line in the config text sets key.
bool mentions_key(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = line.substr(0, line.find('#'));
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string k = line.substr(0, eq);
        k.erase(0, k.find_first_not_of(" \t"));
        k.erase(k.find_last_not_of(" \t\r") + 1);
        if (k == key) return true;
    }
    return false;
}

Table simulate(const SimulateArgs& a) {
    std::string text;
    if (!a.config.empty()) {
        std::ifstream file(a.config);
        if (!file) invalid("cannot read config file " + a.config);
        std::ostringstream buf;
        buf << file.rdbuf();
        text = buf.str();
    }
    gp_experiment* e = nullptr;
    check(gp_experiment_parse(text.c_str(), &e), "experiment config");
    std::unique_ptr<gp_experiment, void (*)(gp_experiment*)> guard(e, gp_experiment_free);
    const std::pair<const char*, const std::string*> flags[] = {
        {"scheme", &a.scheme}, {"family", &a.family}, {"n_alpha", &a.n_alpha}, {"n_r", &a.n_r},
        {"n_beta", &a.n_beta}, {"r0", &a.r0},         {"T", &a.T},             {"phi", &a.phi},
        {"theta", &a.theta},   {"fraction", &a.fraction}, {"N", &a.N},         {"trials", &a.trials},
        {"seed", &a.seed}};
    for (const auto& [key, value] : flags)
        if (!value->empty()) check(gp_experiment_set(e, key, value->c_str()), std::string("--") + key);
    if (!a.threads.empty()) {
        check(gp_experiment_set(e, "threads", a.threads.c_str()), "--threads");
    } else if (!mentions_key(text, "threads")) {
        const std::string threads = std::to_string(std::max(1u, std::thread::hardware_concurrency()));
        check(gp_experiment_set(e, "threads", threads.c_str()), "--threads");
    }
    check(gp_experiment_validate(e), "experiment config");

    gp_experiment_summary summary;
    check(gp_experiment_run(e, &summary), "experiment");
    std::vector<char> buf(4096);
    check(gp_experiment_csv_row(e, &summary, buf.data(), buf.size()), "experiment row");

    Table t;
    t.columns = split(gp_experiment_csv_header(), ',');
    std::vector<Cell> row;
    for (const auto& field : split(buf.data(), ',')) {
        char* end = nullptr;
        const double v = std::strtod(field.c_str(), &end);
        if (!field.empty() && end == field.c_str() + field.size()) row.emplace_back(v);
        else row.emplace_back(field);
    }
    t.rows.push_back(std::move(row));
    return t;
}

// ---- frequency ----

struct FrequencyArgs {
    std::string r0;
    std::string n0;
    std::string schemes = "optimal,homodyne,heterodyne";
    double eta = 1.0;
    long long n_copies = 1;
    OutputOptions out;
};

Table frequency(const FrequencyArgs& a) {
    if (a.r0.empty() == a.n0.empty()) invalid("give exactly one of --r0 (interrogation-time table) or --n0 (input comparison)");
    if (a.n_copies < 1) invalid("--N must be at least 1");
    const auto schemes = parse_list(a.schemes, {"optimal", "homodyne", "heterodyne"});
    Table t;
    if (!a.r0.empty()) {
        t.columns = {"r0", "n0"};
        for (const auto& s : schemes) {
            t.columns.push_back("eta_t_star[1;" + s + "_squeezed]");
            t.columns.push_back("N_var_omega_per_eta2[1;" + s + "_squeezed]");
        }
        for (double r0 : parse_grid(a.r0)) {
            double n0 = 0.0;
            check(gp_mean_photon_number(0.0, r0, 0.0, 0.0, &n0), "mean photon number");
            std::vector<Cell> row{r0, n0};
            for (const auto& s : schemes) {
                gp_freq_optimum f;
                check(gp_squeezed_freq_optimum(r0, a.eta, a.n_copies, scheme_code(s), &f), s + " frequency optimum");
                row.emplace_back(f.eta_t_star);
                row.emplace_back(f.rescaled_var);
            }
            t.rows.push_back(std::move(row));
        }
        return t;
    }
    const auto n0 = parse_grid(a.n0);
    std::vector<gp_freq_row> rows(n0.size());
    check(gp_frequency_comparison(a.eta, a.n_copies, n0.data(), n0.size(), rows.data()), "frequency comparison");
    t.columns = {"n0", "N_var_omega_per_eta2[1;coherent_lossy]", "eta_t_star[1;coherent_lossy]"};
    for (const auto& s : schemes) {
        t.columns.push_back("N_var_omega_per_eta2[1;" + s + "_squeezed]");
        t.columns.push_back("eta_t_star[1;" + s + "_squeezed]");
    }
    for (const auto& r : rows) {
        std::vector<Cell> row{r.n0, r.coherent, r.eta_t_coherent};
        for (const auto& s : schemes) {
            if (s == "optimal") row.insert(row.end(), {r.squeezed_optimal, r.eta_t_optimal});
            else if (s == "homodyne") row.insert(row.end(), {r.squeezed_homodyne, r.eta_t_homodyne});
            else row.insert(row.end(), {r.squeezed_heterodyne, r.eta_t_heterodyne});
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

// ---- fock ----

struct FockArgs {
    std::string family = "coherent";
    double alpha = 1.0;
    double n_beta = 0.0;
    double r0 = 0.5;
    double T = 1.0;
    int n_max = -1;
    int l = 1;
    OutputOptions out;
};

Table fock(const FockArgs& a) {
    gp_fock* rho = nullptr;
    if (a.family == "coherent") {
        if (a.n_max >= 0) check(gp_fock_displaced_thermal(a.alpha, 0.0, a.n_beta, a.n_max, &rho), "Fock state");
        else check(gp_fock_adaptive_displaced_thermal(a.alpha, 0.0, a.n_beta, a.l, &rho), "Fock state");
    } else if (a.family == "squeezed") {
        if (a.n_max >= 0) check(gp_fock_lossy_squeezed(a.r0, a.T, a.n_max, &rho), "Fock state");
        else check(gp_fock_adaptive_lossy_squeezed(a.r0, a.T, a.l, &rho), "Fock state");
    } else {
        invalid("--family must be coherent or squeezed");
    }
    std::unique_ptr<gp_fock, void (*)(gp_fock*)> guard(rho, gp_fock_free);
    int n_max = 0;
    double deficit = 0.0;
    check(gp_fock_n_max(rho, &n_max), "Fock cutoff");
    check(gp_fock_trace_deficit(rho, &deficit), "Fock trace deficit");
    Table t;
    t.columns = {"n", "m", "re", "im", "n_max", "trace_deficit"};
    for (int n = 0; n <= n_max; ++n) {
        for (int m = 0; m <= n_max; ++m) {
            double re = 0.0, im = 0.0;
            check(gp_fock_entry(rho, n, m, &re, &im), "Fock entry");
            t.rows.push_back({static_cast<long long>(n), static_cast<long long>(m), re, im,
                              static_cast<long long>(n_max), deficit});
        }
    }
    return t;
}

// ---- xi ----

Table xi(const std::string& grid) {
    Table t;
    t.columns = {"T", "xi[1;xi_of_T]", "xi[1;xi_interpolated]", "rel_diff"};
    for (double T : parse_grid(grid)) {
        double exact = 0.0, approx = 0.0;
        check(gp_xi_of_T(T, &exact), "xi(T)");
        check(gp_xi_interpolated(T, &approx), "xi interpolation");
        t.rows.push_back({T, exact, approx, std::abs(approx - exact) / exact});
    }
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phase-estimation bounds for Gaussian states of light"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(gp_version()));

    FidelityArgs fid;
    auto* fidelity_cmd = app.add_subcommand("fidelity", "average phase-estimation fidelity");
    std::string fid_family;
    fidelity_cmd->add_option("family", fid_family, "coherent or squeezed")->required()->check(CLI::IsMember({"coherent", "squeezed"}));
    fidelity_cmd->add_option("--alpha", fid.alpha, "coherent amplitude grid |alpha|");
    fidelity_cmd->add_option("--nbeta", fid.nbeta, "thermal photon number grid");
    fidelity_cmd->add_option("--r", fid.r, "squeezing grid for --modes");
    fidelity_cmd->add_option("--modes", fid.modes, "pure,half-loss,energy-matched");
    fidelity_cmd->add_option("--r0", fid.r0, "input squeezing grid (with --T)");
    fidelity_cmd->add_option("--T", fid.T, "transmittance grid (with --r0)");
    fidelity_cmd->add_flag("--check", fid.check, "compare against the truncated Fock-space oracle");
    fidelity_cmd->add_option("--tolerance", fid.tolerance, "agreement tolerance for --check");
    fidelity_cmd->add_flag("--asymptotic", fid.asymptotic, "add coherent asymptotic forms and their disagreement");
    add_output_options(fidelity_cmd, fid.out);

    BoundsArgs bnd;
    auto* bounds_cmd = app.add_subcommand("bounds", "phase-variance bounds per measurement scheme");
    bounds_cmd->add_option("--family", bnd.family, "coherent or squeezed");
    bounds_cmd->add_option("--schemes", bnd.schemes, "comma list of optimal,heterodyne,homodyne,canonical");
    bounds_cmd->add_option("--n0", bnd.n0, "input photon number grid (lossy squeezed)");
    bounds_cmd->add_option("--T", bnd.T, "transmittance grid (lossy squeezed)");
    bounds_cmd->add_option("--nr", bnd.nr, "squeezing photon number grid sinh^2 r");
    bounds_cmd->add_option("--nalpha", bnd.nalpha, "coherent photon number grid |alpha|^2");
    bounds_cmd->add_option("--nbeta", bnd.nbeta, "thermal photon number grid");
    bounds_cmd->add_option("--N", bnd.n_copies, "number of copies");
    add_output_options(bounds_cmd, bnd.out);

    SimulateArgs sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo CRLB attainment experiment");
    simulate_cmd->add_option("--config", sim.config, "key = value experiment file");
    simulate_cmd->add_option("--scheme", sim.scheme, "heterodyne, homodyne or adaptive_homodyne");
    simulate_cmd->add_option("--family", sim.family, "coherent or squeezed");
    simulate_cmd->add_option("--nalpha", sim.n_alpha, "coherent photon number |alpha|^2");
    simulate_cmd->add_option("--nr", sim.n_r, "squeezing photon number sinh^2 r");
    simulate_cmd->add_option("--nbeta", sim.n_beta, "thermal photon number");
    simulate_cmd->add_option("--r0", sim.r0, "input squeezing before loss (with --T)");
    simulate_cmd->add_option("--T", sim.T, "loss channel transmittance (with --r0)");
    simulate_cmd->add_option("--phi", sim.phi, "true phase");
    simulate_cmd->add_option("--theta", sim.theta, "fixed homodyne angle");
    simulate_cmd->add_option("--fraction", sim.fraction, "first-stage fraction for adaptive homodyne");
    simulate_cmd->add_option("--N", sim.N, "copies per trial");
    simulate_cmd->add_option("--trials", sim.trials, "independent repetitions");
    simulate_cmd->add_option("--seed", sim.seed, "master seed; trial i uses a seed derived from it");
    simulate_cmd->add_option("--threads", sim.threads, "worker threads (default: config file, else hardware count)");
    add_output_options(simulate_cmd, sim.out);

    FrequencyArgs freq;
    auto* frequency_cmd = app.add_subcommand("frequency", "optimal interrogation time for frequency estimation");
    frequency_cmd->add_option("--r0", freq.r0, "input squeezing grid: eta t* and rescaled variance per scheme");
    frequency_cmd->add_option("--n0", freq.n0, "photon number grid: coherent vs squeezed rescaled variance");
    frequency_cmd->add_option("--schemes", freq.schemes, "comma list of optimal,homodyne,heterodyne");
    frequency_cmd->add_option("--eta", freq.eta, "loss rate");
    frequency_cmd->add_option("--N", freq.n_copies, "number of copies");
    add_output_options(frequency_cmd, freq.out);

    FockArgs fk;
    auto* fock_cmd = app.add_subcommand("fock", "dump a truncated Fock-space density matrix");
    fock_cmd->add_option("--family", fk.family, "coherent or squeezed");
    fock_cmd->add_option("--alpha", fk.alpha, "real coherent amplitude");
    fock_cmd->add_option("--nbeta", fk.n_beta, "thermal photon number (coherent family)");
    fock_cmd->add_option("--r0", fk.r0, "input squeezing (squeezed family)");
    fock_cmd->add_option("--T", fk.T, "transmittance (squeezed family)");
    fock_cmd->add_option("--nmax", fk.n_max, "fixed cutoff (default: adaptive)");
    fock_cmd->add_option("--l", fk.l, "fidelity order driving the adaptive cutoff");
    add_output_options(fock_cmd, fk.out);

    std::string xi_grid = "0.1:0.1:1";
    OutputOptions xi_out;
    auto* xi_cmd = app.add_subcommand("xi", "large-squeezing fidelity coefficient xi(T)");
    xi_cmd->add_option("--T", xi_grid, "transmittance grid");
    add_output_options(xi_cmd, xi_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (fidelity_cmd->parsed()) {
            emit("fidelity " + fid_family, fid_family == "coherent" ? fidelity_coherent(fid) : fidelity_squeezed(fid), fid.out);
        } else if (bounds_cmd->parsed()) {
            emit("bounds", bounds(bnd), bnd.out);
        } else if (simulate_cmd->parsed()) {
            emit("simulate", simulate(sim), sim.out);
        } else if (frequency_cmd->parsed()) {
            emit("frequency", frequency(freq), freq.out);
        } else if (fock_cmd->parsed()) {
            emit("fock", fock(fk), fk.out);
        } else if (xi_cmd->parsed()) {
            emit("xi", xi(xi_grid), xi_out);
        }
    } catch (const CliFailure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}

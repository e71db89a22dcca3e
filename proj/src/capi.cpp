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

#include "gaussphase/gaussphase.h"

#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include "gaussphase/crlb.hpp"
#include "gaussphase/error.hpp"
#include "gaussphase/fidelity.hpp"
#include "gaussphase/fock.hpp"
#include "gaussphase/frequency.hpp"
#include "gaussphase/gaussian.hpp"
#include "gaussphase/measurement.hpp"
#include "gaussphase/numerics.hpp"

namespace gp = gaussphase;

struct gp_fock {
    gp::FockMatrix rho;
};

struct gp_experiment {
    std::map<std::string, std::string> entries;
    gp::ExperimentConfig config;
};

namespace {

thread_local std::string g_last_error;

gp_status fail(gp_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

template <typename F>
gp_status guarded(F&& body) {
    try {
        g_last_error.clear();
        body();
        return GP_OK;
    } catch (const gp::DomainError& e) {
        return fail(GP_ERR_DOMAIN, e.what());
    } catch (const gp::TruncationError& e) {
        return fail(GP_ERR_TRUNCATION, e.what());
    } catch (const gp::ConvergenceError& e) {
        return fail(GP_ERR_CONVERGENCE, e.what());
    } catch (const gp::OverflowError& e) {
        return fail(GP_ERR_OVERFLOW, e.what());
    } catch (const std::exception& e) {
        return fail(GP_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(GP_ERR_INTERNAL, "unknown exception");
    }
}

#define GP_REQUIRE(ptr)                                                                   \
    do {                                                                                  \
        if ((ptr) == nullptr) return fail(GP_ERR_INVALID_ARGUMENT, #ptr " must not be null"); \
    } while (0)

void fill(const gp::FidelityValue& v, gp_fidelity* out) {
    out->value = v.value;
    out->error_estimate = v.error_estimate;
    out->method = static_cast<int>(v.method);
    out->converged = v.converged ? 1 : 0;
}

void fill(const gp::VarianceReport& r, gp_variance_report* out) {
    out->scheme = static_cast<int>(r.scheme);
    out->family = static_cast<int>(r.state_family);
    out->fisher_per_copy = r.fisher_per_copy;
    out->variance = r.variance;
    out->n_copies = r.n_copies;
    out->outside_regime = r.outside_regime ? 1 : 0;
    std::memset(out->regime_note, 0, sizeof out->regime_note);
    std::strncpy(out->regime_note, r.regime_note.c_str(), sizeof out->regime_note - 1);
}

void fill(const gp::FrequencyOptimum& f, gp_freq_optimum* out) {
    out->scheme = static_cast<int>(f.scheme);
    out->input = static_cast<int>(f.input);
    out->input_parameter = f.input_parameter;
    out->eta = f.eta;
    out->n_copies = f.n_copies;
    out->t_star = f.t_star;
    out->var_omega = f.var_omega;
    out->eta_t_star = f.eta_t_star;
    out->numeric_t_star = f.numeric_t_star;
    out->rescaled_var = f.rescaled_var;
}

gp::Scheme to_scheme(int scheme) {
    if (scheme < GP_SCHEME_OPTIMAL || scheme > GP_SCHEME_CANONICAL) throw gp::DomainError("unknown scheme code");
    return static_cast<gp::Scheme>(scheme);
}

gp::FrequencyInput to_input(int input) {
    if (input != GP_INPUT_COHERENT && input != GP_INPUT_SQUEEZED) throw gp::DomainError("unknown input code");
    return static_cast<gp::FrequencyInput>(input);
}

template <typename F>
gp_status report(gp_variance_report* out, F&& make) {
    GP_REQUIRE(out);
    return guarded([&] { fill(make(), out); });
}

template <typename F>
gp_status scalar(double* out, F&& compute) {
    GP_REQUIRE(out);
    return guarded([&] { *out = compute(); });
}

gp_status make_fock(gp_fock** out, const std::function<gp::FockMatrix()>& build) {
    GP_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new gp_fock{build()}; });
}

void rebuild(gp_experiment& e) {
    std::ostringstream text;
    for (const auto& [k, v] : e.entries) text << k << " = " << v << "\n";
    std::istringstream in(text.str());
    e.config = gp::parse_experiment_config(in);
}

}  // namespace

extern "C" {

const char* gp_version(void) { return "0.1.0"; }
const char* gp_last_error(void) { return g_last_error.c_str(); }

const char* gp_status_name(gp_status status) {
    switch (status) {
        case GP_OK: return "ok";
        case GP_ERR_DOMAIN: return "domain error";
        case GP_ERR_TRUNCATION: return "truncation error";
        case GP_ERR_CONVERGENCE: return "convergence error";
        case GP_ERR_OVERFLOW: return "overflow";
        case GP_ERR_INVALID_ARGUMENT: return "invalid argument";
        case GP_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

gp_status gp_bessel_i0(double t, double* out) { return scalar(out, [&] { return gp::bessel_i0(t); }); }
gp_status gp_lambert_w0(double x, double* out) { return scalar(out, [&] { return gp::lambert_w0(x); }); }

gp_status gp_lossy_channel_output(double r0, double T, double* n_beta, double* r) {
    GP_REQUIRE(n_beta);
    GP_REQUIRE(r);
    return guarded([&] {
        const gp::StateParams p = gp::lossy_channel_output({r0, T});
        *n_beta = p.n_beta;
        *r = p.r;
    });
}

gp_status gp_energy_matched_squeeze(double r0, double T, double* out) {
    return scalar(out, [&] { return gp::energy_matched_squeeze({r0, T}); });
}

gp_status gp_mean_photon_number(double n_beta, double r, double alpha_re, double alpha_im, double* out) {
    return scalar(out, [&] {
        gp::StateParams p;
        p.n_beta = n_beta;
        p.r = r;
        p.alpha = {alpha_re, alpha_im};
        return gp::mean_photon_number(gp::make_state(p));
    });
}

gp_status gp_coherent_thermal_fidelity(double alpha_abs, double n_beta, gp_fidelity* out) {
    GP_REQUIRE(out);
    return guarded([&] { fill(gp::coherent_thermal_fidelity(alpha_abs, n_beta), out); });
}

gp_status gp_coherent_fidelity_large_alpha(double n_alpha, double n_beta, double* out) {
    return scalar(out, [&] { return gp::coherent_fidelity_large_alpha(n_alpha, n_beta); });
}

gp_status gp_coherent_fidelity_small_alpha(double n_alpha, double n_beta, gp_small_alpha_fidelity* out) {
    GP_REQUIRE(out);
    return guarded([&] {
        const gp::SmallAlphaFidelity f = gp::coherent_fidelity_small_alpha(n_alpha, n_beta);
        out->value = f.value;
        out->high_temperature = f.high_temperature;
        out->low_temperature = f.low_temperature;
        out->near_boundary = f.near_boundary ? 1 : 0;
    });
}

gp_status gp_squeezed_thermal_fidelity(double r0, double T, gp_fidelity* out) {
    GP_REQUIRE(out);
    return guarded([&] { fill(gp::squeezed_thermal_fidelity({r0, T}), out); });
}

gp_status gp_squeezed_thermal_fidelity_series(double r0, double T, int term_budget, gp_fidelity* out) {
    GP_REQUIRE(out);
    return guarded([&] { fill(gp::squeezed_thermal_fidelity_series({r0, T}, term_budget), out); });
}

gp_status gp_xi_of_T(double T, double* out) { return scalar(out, [&] { return gp::xi_of_T(T); }); }
gp_status gp_xi_interpolated(double T, double* out) { return scalar(out, [&] { return gp::xi_interpolated(T); }); }
gp_status gp_squeezed_fidelity_large(double n0, double T, double* out) {
    return scalar(out, [&] { return gp::squeezed_fidelity_large(n0, T); });
}

gp_status gp_optimal_var_coherent(double n_alpha, double n_beta, long long n, gp_variance_report* out) {
    return report(out, [&] { return gp::optimal_var_coherent(n_alpha, n_beta, n); });
}
gp_status gp_optimal_var_squeezed(double n_r, double n_beta, long long n, gp_variance_report* out) {
    return report(out, [&] { return gp::optimal_var_squeezed(n_r, n_beta, n); });
}
gp_status gp_optimal_var_squeezed_lossy(double n0, double T, long long n, gp_variance_report* out) {
    return report(out, [&] { return gp::optimal_var_squeezed_lossy(n0, T, n); });
}
gp_status gp_heterodyne_var_squeezed(double n_r, double n_beta, long long n, gp_variance_report* out) {
    return report(out, [&] { return gp::heterodyne_var_squeezed(n_r, n_beta, n); });
}
gp_status gp_heterodyne_var_lossy(double n0, double T, long long n, gp_variance_report* out) {
    return report(out, [&] { return gp::heterodyne_var_lossy(n0, T, n); });
}
gp_status gp_heterodyne_var_coherent(double n_alpha, double n_beta, long long n, gp_variance_report* out) {
    return report(out, [&] { return gp::heterodyne_var_coherent(n_alpha, n_beta, n); });
}
gp_status gp_homodyne_var_squeezed(double n_r, long long n, gp_variance_report* out) {
    return report(out, [&] { return gp::homodyne_var_squeezed(n_r, n); });
}
gp_status gp_homodyne_var_lossy(double n0, double T, long long n, gp_variance_report* out) {
    return report(out, [&] { return gp::homodyne_var_lossy(n0, T, n); });
}
gp_status gp_homodyne_var_coherent(double n_alpha, double n_beta, long long n, gp_variance_report* out) {
    return report(out, [&] { return gp::homodyne_var_coherent(n_alpha, n_beta, n); });
}
gp_status gp_canonical_var_coherent(double n_alpha, double n_beta, long long n, gp_variance_report* out) {
    return report(out, [&] { return gp::canonical_var_coherent(n_alpha, n_beta, n); });
}
gp_status gp_canonical_var_squeezed_large(double n0, double T, long long n, gp_variance_report* out) {
    return report(out, [&] { return gp::canonical_var_squeezed_large(n0, T, n); });
}
gp_status gp_canonical_var_squeezed_low(double n0, double T, long long n, gp_variance_report* out) {
    return report(out, [&] { return gp::canonical_var_squeezed_low(n0, T, n); });
}

gp_status gp_heterodyne_fisher_squeezed(double n_r, double n_beta, double* out) {
    return scalar(out, [&] { return gp::heterodyne_fisher_squeezed(n_r, n_beta); });
}
gp_status gp_homodyne_fisher(double r, double delta, double* out) {
    return scalar(out, [&] { return gp::homodyne_fisher(r, delta); });
}
gp_status gp_homodyne_optimal_angle(double r, double* out) {
    return scalar(out, [&] { return gp::homodyne_optimal_angle(r); });
}
gp_status gp_homodyne_fisher_coherent(double n_alpha, double n_beta, double delta, double* out) {
    return scalar(out, [&] { return gp::homodyne_fisher_coherent(n_alpha, n_beta, delta); });
}
gp_status gp_canonical_prob_large_squeezing(double phi_bar, double lambda0, double T, double* out) {
    return scalar(out, [&] { return gp::canonical_prob_large_squeezing(phi_bar, lambda0, T); });
}

gp_status gp_fock_thermal(double n_beta, int n_max, gp_fock** out) {
    return make_fock(out, [&] { return gp::thermal_fock(n_beta, n_max); });
}
gp_status gp_fock_displaced_thermal(double re, double im, double n_beta, int n_max, gp_fock** out) {
    return make_fock(out, [&] { return gp::displaced_thermal_fock({re, im}, n_beta, n_max); });
}
gp_status gp_fock_squeezed_vacuum(double r, int n_max, gp_fock** out) {
    return make_fock(out, [&] { return gp::squeezed_vacuum_fock(r, n_max); });
}
gp_status gp_fock_lossy_squeezed(double r0, double T, int n_max, gp_fock** out) {
    return make_fock(out, [&] { return gp::lossy_squeezed_fock({r0, T}, n_max); });
}

gp_status gp_fock_adaptive_displaced_thermal(double re, double im, double n_beta, int l, gp_fock** out) {
    return make_fock(out, [&] {
        const std::complex<double> alpha(re, im);
        const gp::FockOptions loose{1.0};
        return gp::adaptive_fock([&](int n) { return gp::displaced_thermal_fock(alpha, n_beta, n, loose); }, l,
                                 gp::min_cutoff_for_displacement(alpha));
    });
}

gp_status gp_fock_adaptive_lossy_squeezed(double r0, double T, int l, gp_fock** out) {
    return make_fock(out, [&] {
        const gp::LossChannelSpec spec{r0, T};
        const gp::FockOptions loose{1.0};
        return gp::adaptive_fock([&](int n) { return gp::lossy_squeezed_fock(spec, n, loose); }, l);
    });
}

void gp_fock_free(gp_fock* rho) { delete rho; }

gp_status gp_fock_n_max(const gp_fock* rho, int* out) {
    GP_REQUIRE(rho);
    GP_REQUIRE(out);
    *out = rho->rho.n_max();
    return GP_OK;
}

gp_status gp_fock_trace_deficit(const gp_fock* rho, double* out) {
    GP_REQUIRE(rho);
    GP_REQUIRE(out);
    *out = rho->rho.trace_deficit();
    return GP_OK;
}

gp_status gp_fock_entry(const gp_fock* rho, int n, int m, double* re, double* im) {
    GP_REQUIRE(rho);
    GP_REQUIRE(re);
    GP_REQUIRE(im);
    const int n_max = rho->rho.n_max();
    if (n < 0 || m < 0 || n > n_max || m > n_max) return fail(GP_ERR_INVALID_ARGUMENT, "index outside the cutoff");
    const std::complex<double> v = rho->rho(n, m);
    *re = v.real();
    *im = v.imag();
    return GP_OK;
}

gp_status gp_fock_phase_shift(const gp_fock* rho, double phi, gp_fock** out) {
    GP_REQUIRE(rho);
    return make_fock(out, [&] { return gp::phase_shift_fock(rho->rho, phi); });
}

gp_status gp_fock_optimal_fidelity(const gp_fock* rho, int l, double* value, double* tail_bound) {
    GP_REQUIRE(rho);
    GP_REQUIRE(value);
    return guarded([&] {
        const gp::OptimalFidelity f = gp::optimal_fidelity(rho->rho, l);
        *value = f.value;
        if (tail_bound != nullptr) *tail_bound = f.tail_bound;
    });
}

gp_status gp_fock_canonical_distribution(const gp_fock* rho, double phi, int grid_size, double* density) {
    GP_REQUIRE(rho);
    GP_REQUIRE(density);
    return guarded([&] {
        const gp::PhaseDistribution d = gp::canonical_phase_distribution(rho->rho, phi, grid_size);
        std::copy(d.density.begin(), d.density.end(), density);
    });
}

gp_status gp_fock_canonical_fisher(const gp_fock* rho, double phi, double h, int grid_size, double* value,
                                   double* error_estimate) {
    GP_REQUIRE(rho);
    GP_REQUIRE(value);
    return guarded([&] {
        const gp::FisherEstimate f = gp::canonical_fisher(rho->rho, phi, h, grid_size);
        *value = f.value;
        if (error_estimate != nullptr) *error_estimate = f.error_estimate;
    });
}

gp_status gp_fock_write_csv(const gp_fock* rho, const char* path) {
    GP_REQUIRE(rho);
    GP_REQUIRE(path);
    std::ofstream file(path);
    if (!file) return fail(GP_ERR_INVALID_ARGUMENT, std::string("cannot open ") + path);
    return guarded([&] { gp::write_fock_csv(file, rho->rho); });
}

gp_status gp_experiment_parse(const char* text, gp_experiment** out) {
    GP_REQUIRE(text);
    GP_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        auto e = std::make_unique<gp_experiment>();
        std::istringstream in(text);
        e->config = gp::parse_experiment_config(in);
        // Keep the raw entries so later gp_experiment_set calls re-parse the whole configuration.
        std::istringstream again(text);
        std::string line;
        while (std::getline(again, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t\r");
                const auto end = s.find_last_not_of(" \t\r");
                return b == std::string::npos ? std::string() : s.substr(b, end - b + 1);
            };
            e->entries[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        }
        *out = e.release();
    });
}

gp_status gp_experiment_set(gp_experiment* experiment, const char* key, const char* value) {
    GP_REQUIRE(experiment);
    GP_REQUIRE(key);
    GP_REQUIRE(value);
    return guarded([&] {
        gp_experiment trial = *experiment;
        trial.entries[key] = value;
        rebuild(trial);
        *experiment = std::move(trial);
    });
}

gp_status gp_experiment_validate(const gp_experiment* experiment) {
    GP_REQUIRE(experiment);
    return guarded([&] { experiment->config.validate(); });
}

gp_status gp_experiment_run(const gp_experiment* experiment, gp_experiment_summary* out) {
    GP_REQUIRE(experiment);
    GP_REQUIRE(out);
    return guarded([&] {
        const gp::ExperimentSummary s = gp::crlb_attainment_experiment(experiment->config);
        out->n_copies = s.n_copies;
        out->n_trials = s.n_trials;
        out->empirical_variance = s.empirical_variance;
        out->predicted_crlb = s.predicted_crlb;
        out->ratio = s.ratio;
        out->confidence_halfwidth = s.confidence_halfwidth;
    });
}

gp_status gp_experiment_predicted_crlb(const gp_experiment* experiment, double* out) {
    GP_REQUIRE(experiment);
    return scalar(out, [&] { return gp::predicted_crlb(experiment->config); });
}

const char* gp_experiment_csv_header(void) {
    static const std::string header = gp::experiment_csv_header();
    return header.c_str();
}

gp_status gp_experiment_csv_row(const gp_experiment* experiment, const gp_experiment_summary* summary, char* buf,
                                size_t buf_len) {
    GP_REQUIRE(experiment);
    GP_REQUIRE(summary);
    GP_REQUIRE(buf);
    std::string row;
    const gp_status status = guarded([&] {
        gp::ExperimentSummary s;
        s.n_copies = summary->n_copies;
        s.n_trials = summary->n_trials;
        s.empirical_variance = summary->empirical_variance;
        s.predicted_crlb = summary->predicted_crlb;
        s.ratio = summary->ratio;
        s.confidence_halfwidth = summary->confidence_halfwidth;
        row = gp::experiment_csv_row(experiment->config, s);
    });
    if (status != GP_OK) return status;
    if (row.size() + 1 > buf_len) return fail(GP_ERR_INVALID_ARGUMENT, "buffer too small for CSV row");
    std::memcpy(buf, row.c_str(), row.size() + 1);
    return GP_OK;
}

void gp_experiment_free(gp_experiment* experiment) { delete experiment; }

gp_status gp_coherent_freq_optimum(double alpha_abs, double eta, long long n, gp_freq_optimum* out) {
    GP_REQUIRE(out);
    return guarded([&] { fill(gp::coherent_freq_optimum(alpha_abs, eta, n), out); });
}

gp_status gp_squeezed_freq_optimum(double r0, double eta, long long n, int scheme, gp_freq_optimum* out) {
    GP_REQUIRE(out);
    return guarded([&] { fill(gp::squeezed_freq_optimum(r0, eta, n, to_scheme(scheme)), out); });
}

gp_status gp_frequency_variance(int input, int scheme, double param, double eta, long long n, double t, double* out) {
    return scalar(out, [&] { return gp::frequency_variance(to_input(input), to_scheme(scheme), param, eta, n, t); });
}

gp_status gp_frequency_comparison(double eta, long long n, const double* n0, size_t count, gp_freq_row* rows) {
    GP_REQUIRE(n0);
    GP_REQUIRE(rows);
    return guarded([&] {
        const auto table = gp::frequency_comparison_curve(eta, n, std::vector<double>(n0, n0 + count));
        for (size_t i = 0; i < table.size(); ++i) {
            const auto& r = table[i];
            rows[i] = {r.n0, r.coherent, r.squeezed_optimal, r.squeezed_homodyne, r.squeezed_heterodyne,
                       r.eta_t_coherent, r.eta_t_optimal, r.eta_t_homodyne, r.eta_t_heterodyne};
        }
    });
}

gp_status gp_scaling_exponent(int input, int scheme, double lo, double hi, double eta, double* out) {
    return scalar(out, [&] { return gp::scaling_exponent(to_input(input), to_scheme(scheme), lo, hi, eta); });
}

gp_status gp_lossless_scaling_exponent(double lo, double hi, double* out) {
    return scalar(out, [&] { return gp::lossless_scaling_exponent(lo, hi); });
}

}  // extern "C"

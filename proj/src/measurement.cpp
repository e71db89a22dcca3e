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

#include "gaussphase/measurement.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "gaussphase/error.hpp"
#include "gaussphase/numerics.hpp"

namespace gaussphase {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMleGrid = 360;
constexpr double kMleTol = 1e-10;

bool is_squeezed(const StateParams& p) { return std::abs(p.alpha) == 0.0; }

void require_valid(const StateParams& p, const char* op) {
    if (!(p.n_beta >= 0.0) || !std::isfinite(p.n_beta) || !std::isfinite(p.r) || !std::isfinite(p.phi)) {
        throw DomainError(std::string(op) + ": invalid state parameters");
    }
    if (std::abs(p.alpha) != 0.0 && p.r != 0.0) {
        throw DomainError(std::string(op) + ": displaced squeezed states are not supported");
    }
}

// Negative log-likelihood as a function of phi, from sufficient statistics of a record.
class Likelihood {
   public:
    Likelihood(const MeasurementRecord& record, const StateParams& known) : known_(known) {
        scheme_ = record.scheme;
        if (scheme_ == MeasurementScheme::heterodyne) {
            squeezed_ = is_squeezed(known);
            for (const auto& a : record.heterodyne) {
                sxx_ += a.real() * a.real();
                sxp_ += a.real() * a.imag();
                spp_ += a.imag() * a.imag();
                sum_ += a;
            }
            const double gamma = 2.0 * known.n_beta + 1.0;
            v_minus_ = 1.0 + gamma * std::exp(-2.0 * known.r);
            v_plus_ = 1.0 + gamma * std::exp(2.0 * known.r);
            degenerate_ = squeezed_ ? known.r == 0.0 : false;
        } else {
            squeezed_ = true;
            if (record.angles.size() != record.homodyne.size()) {
                throw DomainError("mle_phase: homodyne record needs one angle per outcome");
            }
            std::map<double, std::pair<double, double>> groups;
            for (std::size_t i = 0; i < record.homodyne.size(); ++i) {
                auto& g = groups[record.angles[i]];
                g.first += 1.0;
                g.second += record.homodyne[i] * record.homodyne[i];
            }
            for (const auto& [theta, g] : groups) groups_.push_back({theta, g.first, g.second});
            degenerate_ = known.r == 0.0;
        }
    }

    bool squeezed() const { return squeezed_; }
    bool degenerate() const { return degenerate_; }

    double operator()(double phi) const {
        if (scheme_ == MeasurementScheme::heterodyne) {
            if (!squeezed_) {
                const double re = (std::polar(1.0, -phi) * std::conj(known_.alpha) * sum_).real();
                return -2.0 * re / (known_.n_beta + 1.0);
            }
            const double c = std::cos(phi);
            const double s = std::sin(phi);
            const double m11 = c * c * sxx_ + 2.0 * c * s * sxp_ + s * s * spp_;
            const double m22 = s * s * sxx_ - 2.0 * c * s * sxp_ + c * c * spp_;
            return 2.0 * (m11 / v_minus_ + m22 / v_plus_);
        }
        double out = 0.0;
        for (const auto& g : groups_) {
            const double var = homodyne_variance(known_.n_beta, known_.r, g.theta - phi);
            out += 0.5 * g.count * std::log(var) + 0.5 * g.sum_sq / var;
        }
        return out;
    }

   private:
    struct Group {
        double theta;
        double count;
        double sum_sq;
    };
    StateParams known_;
    MeasurementScheme scheme_;
    bool squeezed_ = false;
    bool degenerate_ = false;
    double sxx_ = 0.0, sxp_ = 0.0, spp_ = 0.0;
    std::complex<double> sum_{};
    double v_minus_ = 1.0, v_plus_ = 1.0;
    std::vector<Group> groups_;
};

MleResult maximize(const Likelihood& nll, MleWindow window, bool periodic) {
    if (!(window.lo < window.hi)) throw DomainError("mle_phase: empty search window");
    const double width = window.hi - window.lo;
    const std::size_t points = kMleGrid;
    const double step = periodic ? width / points : width / (points - 1);
    std::size_t best = 0;
    double best_value = nll(window.lo);
    for (std::size_t i = 1; i < points; ++i) {
        const double v = nll(window.lo + step * i);
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    const double centre = window.lo + step * best;
    double lo = centre - step;
    double hi = centre + step;
    if (!periodic) {
        lo = std::max(lo, window.lo);
        hi = std::min(hi, window.hi);
    }
    const MinimizeResult refined = golden_section_minimize(nll, lo, hi, 0.0, kMleTol);
    MleResult out;
    out.phi = refined.value <= best_value ? refined.x : centre;
    out.log_likelihood = -std::min(refined.value, best_value);
    if (periodic) out.phi = window.lo + (out.phi - window.lo) - width * std::floor((out.phi - window.lo) / width);
    out.degenerate = nll.degenerate();
    return out;
}

}  // namespace

double NormalSampler::operator()() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    double u, v, s;
    do {
        u = uniform(engine_);
        v = uniform(engine_);
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
    return splitmix64(splitmix64(master) ^ (trial * 0xD1B54A32D192ED03ULL));
}

MeasurementRecord sample_heterodyne(const StateParams& params, std::size_t n_copies, std::uint64_t seed) {
    require_valid(params, "sample_heterodyne");
    MeasurementRecord rec;
    rec.scheme = MeasurementScheme::heterodyne;
    rec.true_phi = params.phi;
    rec.seed = seed;
    rec.heterodyne.reserve(n_copies);
    NormalSampler normal(seed);
    if (is_squeezed(params)) {
        const double gamma = 2.0 * params.n_beta + 1.0;
        const double vm = 1.0 + gamma * std::exp(-2.0 * params.r);
        const double vp = 1.0 + gamma * std::exp(2.0 * params.r);
        const double c = std::cos(params.phi);
        const double s = std::sin(params.phi);
        // C = (1/4) O diag(vm, vp) O^T and its lower Cholesky factor.
        const double c11 = 0.25 * (c * c * vm + s * s * vp);
        const double c12 = 0.25 * c * s * (vm - vp);
        const double c22 = 0.25 * (s * s * vm + c * c * vp);
        const double l11 = std::sqrt(c11);
        const double l21 = c12 / l11;
        const double l22 = std::sqrt(std::max(0.0, c22 - l21 * l21));
        for (std::size_t i = 0; i < n_copies; ++i) {
            const double z1 = normal();
            const double z2 = normal();
            rec.heterodyne.emplace_back(l11 * z1, l21 * z1 + l22 * z2);
        }
    } else {
        const std::complex<double> mean = params.alpha * std::polar(1.0, params.phi);
        const double sd = std::sqrt(0.5 * (params.n_beta + 1.0));
        for (std::size_t i = 0; i < n_copies; ++i) {
            const double z1 = normal();
            const double z2 = normal();
            rec.heterodyne.emplace_back(mean.real() + sd * z1, mean.imag() + sd * z2);
        }
    }
    return rec;
}

double homodyne_variance(double n_beta, double r, double delta) {
    const double c = std::cos(delta);
    const double s = std::sin(delta);
    return (2.0 * n_beta + 1.0) * (std::exp(2.0 * r) * c * c + std::exp(-2.0 * r) * s * s);
}

void append_homodyne(MeasurementRecord& record, const StateParams& params, double theta, std::size_t n_copies,
                     NormalSampler& normal) {
    require_valid(params, "sample_homodyne");
    if (!is_squeezed(params)) throw DomainError("sample_homodyne: requires alpha = 0");
    if (!std::isfinite(theta)) throw DomainError("sample_homodyne: theta must be finite");
    const double sd = std::sqrt(homodyne_variance(params.n_beta, params.r, theta - params.phi));
    for (std::size_t i = 0; i < n_copies; ++i) {
        record.homodyne.push_back(sd * normal());
        record.angles.push_back(theta);
    }
}

MeasurementRecord sample_homodyne(const StateParams& params, double theta, std::size_t n_copies,
                                  std::uint64_t seed) {
    MeasurementRecord rec;
    rec.scheme = MeasurementScheme::homodyne;
    rec.true_phi = params.phi;
    rec.seed = seed;
    rec.homodyne.reserve(n_copies);
    rec.angles.reserve(n_copies);
    NormalSampler normal(seed);
    append_homodyne(rec, params, theta, n_copies, normal);
    return rec;
}

MleWindow default_mle_window(const MeasurementRecord& record, const StateParams& known) {
    if (record.scheme == MeasurementScheme::heterodyne) {
        return is_squeezed(known) ? MleWindow{0.0, kPi} : MleWindow{0.0, 2.0 * kPi};
    }
    if (!record.angles.empty() &&
        std::all_of(record.angles.begin(), record.angles.end(), [&](double a) { return a == record.angles[0]; })) {
        const double theta = record.angles[0];
        return {theta - 0.5 * kPi, theta};
    }
    return {0.0, kPi};
}

MleResult mle_phase(const MeasurementRecord& record, const StateParams& known) {
    return mle_phase(record, known, default_mle_window(record, known));
}

MleResult mle_phase(const MeasurementRecord& record, const StateParams& known, MleWindow window) {
    require_valid(known, "mle_phase");
    if (record.size() == 0) throw DomainError("mle_phase: empty record");
    const Likelihood nll(record, known);
    const double period = nll.squeezed() ? kPi : 2.0 * kPi;
    const bool periodic = std::fabs((window.hi - window.lo) - period) < 1e-12;
    return maximize(nll, window, periodic);
}

AdaptiveResult two_step_adaptive_homodyne(const StateParams& known, double true_phi, std::size_t n_copies,
                                          double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction <= 1.0)) throw DomainError("two_step_adaptive_homodyne: fraction in (0, 1]");
    if (n_copies < 2) throw DomainError("two_step_adaptive_homodyne: need at least 2 copies");
    if (!(known.r > 0.0)) throw DomainError("two_step_adaptive_homodyne: requires r > 0");
    StateParams truth = known;
    truth.phi = true_phi;

    const std::size_t stage1 =
        std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(fraction * n_copies)), 2, n_copies);
    const std::size_t at_zero = (stage1 + 1) / 2;
    AdaptiveResult out;
    out.record.scheme = MeasurementScheme::homodyne;
    out.record.true_phi = true_phi;
    out.record.seed = seed;
    NormalSampler normal(seed);
    append_homodyne(out.record, truth, 0.0, at_zero, normal);
    append_homodyne(out.record, truth, 0.25 * kPi, stage1 - at_zero, normal);
    out.phi_stage1 = mle_phase(out.record, known, {0.0, kPi}).phi;
    if (stage1 == n_copies) {
        out.phi = out.phi_stage1;
        return out;
    }
    const double theta_star = out.phi_stage1 + homodyne_optimal_angle(known.r);
    append_homodyne(out.record, truth, theta_star, n_copies - stage1, normal);
    out.phi = mle_phase(out.record, known, {out.phi_stage1 - 0.5 * kPi, out.phi_stage1 + 0.5 * kPi}).phi;
    return out;
}

double wrap_phase(double x, double period) {
    double y = std::fmod(x, period);
    if (y > 0.5 * period) y -= period;
    if (y <= -0.5 * period) y += period;
    return y;
}

const char* to_string(ExperimentScheme scheme) {
    switch (scheme) {
        case ExperimentScheme::heterodyne: return "heterodyne";
        case ExperimentScheme::homodyne: return "homodyne";
        case ExperimentScheme::adaptive_homodyne: return "adaptive_homodyne";
    }
    return "unknown";
}

namespace {

bool lossy_parametrization(const ExperimentConfig& c) { return c.r0 >= 0.0 || c.T >= 0.0; }

}  // namespace

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& msg) { throw DomainError("experiment config: " + msg); };
    if (n_copies < 1) fail("N must be >= 1");
    if (trials < 1) fail("trials must be >= 1");
    if (threads < 1) fail("threads must be >= 1");
    if (!std::isfinite(phi)) fail("phi must be finite");
    if (!(n_beta >= 0.0) || !std::isfinite(n_beta)) fail("n_beta must be >= 0");
    if (family == StateFamily::coherent_thermal) {
        if (scheme != ExperimentScheme::heterodyne) fail("coherent family supports only heterodyne");
        if (!(n_alpha > 0.0) || !std::isfinite(n_alpha)) fail("n_alpha must be > 0");
        if (n_r != 0.0 || lossy_parametrization(*this)) fail("coherent family takes no squeezing parameters");
        return;
    }
    if (n_alpha != 0.0) fail("squeezed family takes no n_alpha");
    if (lossy_parametrization(*this)) {
        if (n_r != 0.0 || n_beta != 0.0) fail("give either (n_r, n_beta) or (r0, T), not both");
        if (!(r0 > 0.0) || !std::isfinite(r0)) fail("r0 must be > 0");
        if (!(T > 0.0 && T <= 1.0)) fail("T must be in (0, 1]");
    } else if (!(n_r > 0.0) || !std::isfinite(n_r)) {
        fail("n_r must be > 0");
    }
    if (scheme == ExperimentScheme::adaptive_homodyne) {
        if (!(fraction > 0.0 && fraction < 1.0)) fail("fraction must be in (0, 1)");
        if (n_copies < 2) fail("adaptive homodyne needs N >= 2");
    }
    if (scheme == ExperimentScheme::homodyne && !std::isnan(theta)) {
        if (!std::isfinite(theta)) fail("theta must be finite");
        if (!(homodyne_fisher(state().r, theta - phi) > 0.0)) fail("theta gives zero Fisher information");
    }
}

StateParams ExperimentConfig::state() const {
    StateParams p;
    p.phi = phi;
    if (family == StateFamily::coherent_thermal) {
        p.alpha = std::sqrt(n_alpha);
        p.n_beta = n_beta;
        return p;
    }
    if (lossy_parametrization(*this)) {
        const StateParams out = lossy_channel_output({r0, T});
        p.n_beta = out.n_beta;
        p.r = out.r;
        return p;
    }
    p.n_beta = n_beta;
    p.r = std::asinh(std::sqrt(n_r));
    return p;
}

ExperimentConfig parse_experiment_config(std::istream& in) {
    ExperimentConfig c;
    std::string line;
    int line_no = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = "experiment config line " + std::to_string(line_no);
        if (eq == std::string::npos) throw DomainError(where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto real = [&]() {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(value, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != value.size()) throw DomainError(where + ": bad number for " + key);
            return v;
        };
        auto count = [&]() -> std::uint64_t {
            std::size_t used = 0;
            unsigned long long v = 0;
            if (!value.empty() && value[0] != '-') {
                try {
                    v = std::stoull(value, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
            }
            if (used == 0 || used != value.size()) throw DomainError(where + ": bad integer for " + key);
            return v;
        };
        if (key == "scheme") {
            if (value == "heterodyne") c.scheme = ExperimentScheme::heterodyne;
            else if (value == "homodyne") c.scheme = ExperimentScheme::homodyne;
            else if (value == "adaptive_homodyne") c.scheme = ExperimentScheme::adaptive_homodyne;
            else throw DomainError(where + ": unknown scheme '" + value + "'");
        } else if (key == "family") {
            if (value == "coherent") c.family = StateFamily::coherent_thermal;
            else if (value == "squeezed") c.family = StateFamily::squeezed_thermal;
            else throw DomainError(where + ": unknown family '" + value + "'");
        } else if (key == "n_alpha") c.n_alpha = real();
        else if (key == "n_r") c.n_r = real();
        else if (key == "n_beta") c.n_beta = real();
        else if (key == "r0") c.r0 = real();
        else if (key == "T") c.T = real();
        else if (key == "phi") c.phi = real();
        else if (key == "theta") c.theta = real();
        else if (key == "fraction") c.fraction = real();
        else if (key == "N") c.n_copies = count();
        else if (key == "trials") c.trials = count();
        else if (key == "seed") c.seed = count();
        else if (key == "threads") c.threads = static_cast<int>(count());
        else throw DomainError(where + ": unknown key '" + key + "'");
    }
    return c;
}

double predicted_crlb(const ExperimentConfig& config) {
    config.validate();
    const StateParams s = config.state();
    const long long n = static_cast<long long>(config.n_copies);
    if (config.family == StateFamily::coherent_thermal) {
        return heterodyne_var_coherent(config.n_alpha, s.n_beta, n).variance;
    }
    const double sh = std::sinh(s.r);
    const double n_r = sh * sh;
    switch (config.scheme) {
        case ExperimentScheme::heterodyne: return heterodyne_var_squeezed(n_r, s.n_beta, n).variance;
        case ExperimentScheme::homodyne: {
            const double delta = std::isnan(config.theta) ? homodyne_optimal_angle(s.r) : config.theta - s.phi;
            return 1.0 / (static_cast<double>(n) * homodyne_fisher(s.r, delta));
        }
        case ExperimentScheme::adaptive_homodyne: return homodyne_var_squeezed(n_r, n).variance;
    }
    return 0.0;
}

ExperimentSummary crlb_attainment_experiment(const ExperimentConfig& config) {
    const double crlb = predicted_crlb(config);
    const StateParams truth = config.state();
    const bool squeezed = config.family == StateFamily::squeezed_thermal;
    const double period = squeezed ? kPi : 2.0 * kPi;
    const double theta = std::isnan(config.theta) && squeezed
                             ? config.phi + homodyne_optimal_angle(truth.r)
                             : config.theta;

    std::vector<double> errors(config.trials);
    auto run_trial = [&](std::size_t i) {
        const std::uint64_t seed = trial_seed(config.seed, i);
        double estimate = 0.0;
        switch (config.scheme) {
            case ExperimentScheme::heterodyne:
                estimate = mle_phase(sample_heterodyne(truth, config.n_copies, seed), truth).phi;
                break;
            case ExperimentScheme::homodyne:
                estimate = mle_phase(sample_homodyne(truth, theta, config.n_copies, seed), truth).phi;
                break;
            case ExperimentScheme::adaptive_homodyne:
                estimate = two_step_adaptive_homodyne(truth, config.phi, config.n_copies, config.fraction, seed).phi;
                break;
        }
        errors[i] = wrap_phase(estimate - config.phi, period);
    };

    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(config.threads), config.trials);
    if (workers <= 1) {
        for (std::size_t i = 0; i < config.trials; ++i) run_trial(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < config.trials; i = next++) {
                    try {
                        run_trial(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    ExperimentSummary out;
    out.n_copies = config.n_copies;
    out.n_trials = config.trials;
    double sum_sq = 0.0;
    for (double e : errors) sum_sq += e * e;
    out.empirical_variance = sum_sq / static_cast<double>(config.trials);
    out.predicted_crlb = crlb;
    out.ratio = out.empirical_variance / crlb;
    // n s^2 / sigma^2 ~ chi^2_n with the mean known, so sigma^2 lies in [n s^2/q_hi, n s^2/q_lo].
    const double dof = static_cast<double>(config.trials);
    const boost::math::chi_squared chi(dof);
    const double q_lo = boost::math::quantile(chi, 0.025);
    const double q_hi = boost::math::quantile(chi, 0.975);
    out.confidence_halfwidth = 0.5 * (dof / q_lo - dof / q_hi);
    out.errors = std::move(errors);
    return out;
}

std::string experiment_csv_header() {
    return "scheme,family,n_alpha,n_r,n_beta,phi,fraction,N,trials,seed,empirical_var,crlb,ratio,ci";
}

std::string experiment_csv_row(const ExperimentConfig& config, const ExperimentSummary& summary) {
    const StateParams s = config.state();
    const double sh = std::sinh(s.r);
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s,%s,%.10g,%.10g,%.10g,%.10g,%.10g,%zu,%zu,%llu,%.10g,%.10g,%.10g,%.10g",
                  to_string(config.scheme), to_string(config.family), config.n_alpha, sh * sh, s.n_beta, config.phi,
                  config.scheme == ExperimentScheme::adaptive_homodyne ? config.fraction : 0.0, summary.n_copies,
                  summary.n_trials, static_cast<unsigned long long>(config.seed), summary.empirical_variance,
                  summary.predicted_crlb, summary.ratio, summary.confidence_halfwidth);
    return buf;
}

}  // namespace gaussphase

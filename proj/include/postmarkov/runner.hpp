// runner.hpp: Turns a ScenarioConfig into trajectories and CSV tables

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "postmarkov/bath.hpp"
#include "postmarkov/errors.hpp"
#include "postmarkov/generators.hpp"
#include "postmarkov/integrator.hpp"
#include "postmarkov/linalg.hpp"
#include "postmarkov/oracles.hpp"
#include "postmarkov/scenario.hpp"
#include "postmarkov/simulation.hpp"

namespace postmarkov {

inline std::vector<double> scenario_grid(const ScenarioConfig& cfg) {
    if (cfg.time.t_end == 0.0) return {0.0};
    return uniform_grid(0.0, cfg.time.t_end, cfg.time.n_samples);
}

// Normalised initial amplitudes (a_e, a_g).
inline ComplexVector initial_amplitudes(const ScenarioConfig& cfg) {
    ComplexVector psi(2);
    psi << cfg.initial.a_e, cfg.initial.a_g;
    const double n = psi.norm();
    if (!(n > 0.0)) throw UsageError("initial_amplitudes: zero state vector");
    return psi / n;
}

inline ComplexMatrix initial_density(const ScenarioConfig& cfg) {
    const ComplexVector psi = initial_amplitudes(cfg);
    return psi * psi.adjoint();
}

inline CoefficientSchedule schedule_for(const ScenarioConfig& cfg, Method method) {
    switch (method) {
    case Method::Markov: return CoefficientSchedule::lindblad();
    case Method::PostMarkov:
    case Method::Exact: return CoefficientSchedule::time_dependent(cfg.kernel.value().build(), cfg.time.tol);
    case Method::PostMarkovAsymptotic: break;
    }
    return CoefficientSchedule::frozen_asymptotic(cfg.kernel.value().build());
}

inline void require_method_valid(const ScenarioConfig& cfg, Method method) {
    if (method != Method::Markov && !cfg.kernel)
        throw ConfigError(std::string("method '") + to_string(method) + "' requires a [kernel] section");
    if (method == Method::Exact &&
        (cfg.model != ModelType::Tls || cfg.kernel->type != KernelType::Exponential))
        throw ConfigError("method 'exact' requires model tls with an exponential kernel");
    if (method == Method::PostMarkovAsymptotic && cfg.kernel->type == KernelType::Discrete)
        throw ConfigError("a discrete kernel has no asymptotic coefficients");
}

inline GeneratorSpec build_generator(const ScenarioConfig& cfg, Method method) {
    require_method_valid(cfg, method);
    if (method == Method::Exact) throw UsageError("build_generator: the exact method has no generator");
    CoefficientSchedule schedule = schedule_for(cfg, method);
    switch (cfg.model) {
    case ModelType::Tls:
        if (method == Method::Markov) return GeneratorSpec::lindblad(tls_system(cfg.omega, cfg.gamma));
        return GeneratorSpec(TlsKind{cfg.omega, cfg.gamma}, std::move(schedule));
    case ModelType::SpinBoson:
        return GeneratorSpec(SpinBosonKind{cfg.omega, cfg.bias, cfg.gamma}, std::move(schedule));
    case ModelType::Qbm: break;
    }
    return GeneratorSpec(QbmKind{cfg.omega0, cfg.gamma}, std::move(schedule));
}

inline Trajectory run_method(const ScenarioConfig& cfg, Method method, const std::vector<double>& grid) {
    require_method_valid(cfg, method);
    if (method == Method::Exact) {
        const TlsExactSolution sol(TlsParameters{cfg.omega, cfg.gamma, cfg.kernel->tau});
        return exact_tls_trajectory(sol, initial_amplitudes(cfg), grid);
    }
    const GeneratorSpec gen = build_generator(cfg, method);
    if (cfg.two_level()) return simulate(gen, initial_density(cfg), grid, cfg.time.tol);
    return simulate(gen, cfg.initial.moments, grid, cfg.time.tol);
}

// ---------------------------------------------------------------------------
// CSV

namespace csv {

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

inline const std::vector<std::string>& coefficient_columns() {
    static const std::vector<std::string> c = {"g0_re", "g0_im", "g1_re", "g1_im", "g2_re", "g2_im"};
    return c;
}

inline std::vector<std::string> observable_columns(ModelType model) {
    if (model == ModelType::Qbm) return {"mq", "mp", "sqq", "spp", "sqp", "rs_value"};
    return {"sx", "sy", "sz", "bloch_norm", "trace_err", "herm_err", "min_eig"};
}

inline std::vector<double> coefficient_values(const CoefficientSet& c) {
    return {c.g0.real(), c.g0.imag(), c.g1.real(), c.g1.imag(), c.g2.real(), c.g2.imag()};
}

inline std::vector<double> observable_values(const TrajectorySample& s) {
    if (const auto* g = std::get_if<GaussianState>(&s.state))
        return {g->mq, g->mp, g->sqq, g->spp, g->sqp, s.diagnostics.rs_value.value_or(rs_uncertainty(*g))};
    const BlochVector b = bloch_vector(s.matrix());
    return {b.x,
            b.y,
            b.z,
            b.norm(),
            s.diagnostics.trace_error,
            s.diagnostics.hermiticity_error,
            s.diagnostics.min_eigenvalue};
}

inline void append_row(std::string& out, const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += num(values[i]);
    }
    out += '\n';
}

inline void append_header(std::string& out, const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ',';
        out += names[i];
    }
    out += '\n';
}

} // namespace csv

inline std::string trajectory_csv(const Trajectory& tr, ModelType model) {
    std::vector<std::string> header = {"t"};
    for (const auto& c : csv::coefficient_columns()) header.push_back(c);
    for (const auto& c : csv::observable_columns(model)) header.push_back(c);

    std::string out;
    csv::append_header(out, header);
    for (const auto& s : tr.samples) {
        std::vector<double> row = {s.t};
        for (double v : csv::coefficient_values(s.coefficients)) row.push_back(v);
        for (double v : csv::observable_values(s)) row.push_back(v);
        csv::append_row(out, row);
    }
    return out;
}

struct RunResult {
    Trajectory trajectory;
    std::string csv;
};

inline RunResult run_scenario(const ScenarioConfig& cfg) {
    RunResult r;
    r.trajectory = run_method(cfg, cfg.method, scenario_grid(cfg));
    r.csv = trajectory_csv(r.trajectory, cfg.model);
    return r;
}

struct MethodRun {
    std::string label; // column prefix, unique within a comparison
    Method method;
    Trajectory trajectory;
};

struct Comparison {
    std::vector<double> grid;
    std::vector<MethodRun> runs;
    std::string csv;
};

// One run per method on the shared grid. Repeated methods get a numeric suffix. When
// exact is among the methods every other two-level run gains a trace-distance column.
inline Comparison compare_scenarios(const ScenarioConfig& cfg, const std::vector<Method>& methods) {
    if (methods.empty()) throw ConfigError("compare needs at least one method");
    for (Method m : methods) require_method_valid(cfg, m);

    Comparison cmp;
    cmp.grid = scenario_grid(cfg);
    for (Method m : methods) {
        std::string label = to_string(m);
        int seen = 0;
        for (const auto& r : cmp.runs) seen += r.method == m ? 1 : 0;
        if (seen) label += "_" + std::to_string(seen + 1);
        cmp.runs.push_back({label, m, run_method(cfg, m, cmp.grid)});
    }

    const MethodRun* exact = nullptr;
    for (const auto& r : cmp.runs)
        if (r.method == Method::Exact && !exact) exact = &r;

    std::vector<std::string> header = {"t"};
    for (const auto& r : cmp.runs)
        for (const auto& c : csv::observable_columns(cfg.model)) header.push_back(r.label + "_" + c);
    if (exact)
        for (const auto& r : cmp.runs)
            if (&r != exact) header.push_back("tdist_" + r.label + "_exact");

    csv::append_header(cmp.csv, header);
    for (std::size_t i = 0; i < cmp.grid.size(); ++i) {
        std::vector<double> row = {cmp.grid[i]};
        for (const auto& r : cmp.runs)
            for (double v : csv::observable_values(r.trajectory.samples[i])) row.push_back(v);
        if (exact)
            for (const auto& r : cmp.runs)
                if (&r != exact)
                    row.push_back(trace_distance(r.trajectory.samples[i].matrix(), exact->trajectory.samples[i].matrix()));
        csv::append_row(cmp.csv, row);
    }
    return cmp;
}

// Coefficient table g_i(t) of the configured kernel on [0, t_max].
inline std::string coefficients_csv(const ScenarioConfig& cfg, double t_max) {
    if (!cfg.kernel) throw ConfigError("coeffs requires a [kernel] section");
    if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw ConfigError("--t-max must be a non-negative number");
    const CorrelationKernel k = cfg.kernel->build();
    const std::vector<double> grid =
        t_max == 0.0 ? std::vector<double>{0.0} : uniform_grid(0.0, t_max, std::max<std::size_t>(cfg.time.n_samples, 2));

    std::vector<std::string> header = {"t"};
    for (const auto& c : csv::coefficient_columns()) header.push_back(c);
    std::string out;
    csv::append_header(out, header);
    for (double t : grid) {
        std::vector<double> row = {t};
        for (double v : csv::coefficient_values(coefficients_at(k, t, cfg.time.tol))) row.push_back(v);
        csv::append_row(out, row);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Figure presets

enum class Figure { Fig1, Fig2 };

// Damped atom with omega = gamma = 1, gamma tau = 0.2, starting in (|e> - |g>)/sqrt 2.
inline ScenarioConfig fig1_config() {
    ScenarioConfig c;
    c.model = ModelType::Tls;
    c.method = Method::PostMarkov;
    c.omega = 1.0;
    c.gamma = 1.0;
    c.kernel = KernelConfig{KernelType::Exponential, 0.2, 0.0, 0.0, {}};
    const double r = 1.0 / std::sqrt(2.0);
    c.initial.preset = "minus";
    c.initial.a_e = r;
    c.initial.a_g = -r;
    c.time = TimeConfig{5.0, 501, 1e-10};
    return c;
}

// Spin-boson model with Omega = 0, omega tau = 0.01, kT tau = 20, gamma = 0.3 omega, over ten
// correlation times.
inline ScenarioConfig fig2_config() {
    ScenarioConfig c;
    c.model = ModelType::SpinBoson;
    c.method = Method::PostMarkov;
    c.omega = 1.0;
    c.bias = 0.0;
    c.gamma = 0.3;
    const double tau = 0.01;
    c.kernel = KernelConfig{KernelType::OhmicHighTemp, 0.0, 20.0 / tau, 1.0 / tau, {}};
    c.initial.preset = "plus";
    c.initial.a_e = c.initial.a_g = 1.0 / std::sqrt(2.0);
    c.time = TimeConfig{10.0 * tau, 1001, 1e-10};
    return c;
}

struct FigureResult {
    std::vector<MethodRun> runs;
    std::string csv;
};

inline FigureResult preset_figure(Figure which) {
    FigureResult res;
    if (which == Figure::Fig1) {
        Comparison cmp = compare_scenarios(fig1_config(), {Method::Markov, Method::PostMarkov, Method::Exact});
        res.runs = std::move(cmp.runs);
        res.csv = std::move(cmp.csv);
        return res;
    }

    // The sigma_x eigenstate and the excited state, each under the time-dependent and the
    // frozen-asymptotic coefficients.
    const ScenarioConfig base = fig2_config();
    const std::vector<double> grid = scenario_grid(base);
    struct Start {
        const char* name;
        cplx a_e, a_g;
    };
    const double r = 1.0 / std::sqrt(2.0);
    for (const Start& s : {Start{"xplus", r, r}, Start{"excited", 1.0, 0.0}}) {
        ScenarioConfig cfg = base;
        cfg.initial.preset.clear();
        cfg.initial.a_e = s.a_e;
        cfg.initial.a_g = s.a_g;
        for (Method m : {Method::PostMarkov, Method::PostMarkovAsymptotic})
            res.runs.push_back({std::string(to_string(m)) + "_" + s.name, m, run_method(cfg, m, grid)});
    }

    std::vector<std::string> header = {"t"};
    for (const auto& r : res.runs) header.push_back(r.label + "_bloch_norm");
    csv::append_header(res.csv, header);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<double> row = {grid[i]};
        for (const auto& r : res.runs) row.push_back(r.trajectory.samples[i].diagnostics.bloch_norm.value());
        csv::append_row(res.csv, row);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Output

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << text;
    f.flush();
    if (!f) throw IoError("failed writing '" + path + "'");
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for reading");
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (f.bad()) throw IoError("failed reading '" + path + "'");
    return text;
}

} // namespace postmarkov

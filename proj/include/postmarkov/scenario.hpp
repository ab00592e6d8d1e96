// scenario.hpp: Scenario files: an INI-style description of one simulation
//
//   [model]    type = tls|spin_boson|qbm, method = markov|post_markov|post_markov_asymptotic|exact,
//              omega, gamma, Omega (spin_boson), omega0 (qbm)
//   [kernel]   type = exponential|ohmic_high_t|discrete, tau | kT, Lambda | modes = g:w, g:w, ...
//   [initial]  state = e|g|plus|minus, or a_e = re,im and a_g = re,im; qbm: mq, mp, sqq, spp, sqp
//   [time]     t_end, n_samples (500), tol (1e-10)
//   [output]   path
//
// '#' starts a comment. Unknown keys, duplicate keys and keys that do not apply to the
// chosen model are rejected with the offending line number.

#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "postmarkov/bath.hpp"
#include "postmarkov/errors.hpp"
#include "postmarkov/generators.hpp"
#include "postmarkov/linalg.hpp"

namespace postmarkov {

enum class ModelType { Tls, SpinBoson, Qbm };
enum class Method { Markov, PostMarkov, PostMarkovAsymptotic, Exact };
enum class KernelType { Exponential, OhmicHighTemp, Discrete };

inline const char* to_string(ModelType m) {
    switch (m) {
    case ModelType::Tls: return "tls";
    case ModelType::SpinBoson: return "spin_boson";
    case ModelType::Qbm: return "qbm";
    }
    return "?";
}

inline const char* to_string(Method m) {
    switch (m) {
    case Method::Markov: return "markov";
    case Method::PostMarkov: return "post_markov";
    case Method::PostMarkovAsymptotic: return "post_markov_asymptotic";
    case Method::Exact: return "exact";
    }
    return "?";
}

inline const char* to_string(KernelType k) {
    switch (k) {
    case KernelType::Exponential: return "exponential";
    case KernelType::OhmicHighTemp: return "ohmic_high_t";
    case KernelType::Discrete: return "discrete";
    }
    return "?";
}

inline std::optional<Method> parse_method(std::string_view s) {
    for (Method m : {Method::Markov, Method::PostMarkov, Method::PostMarkovAsymptotic, Method::Exact})
        if (s == to_string(m)) return m;
    return std::nullopt;
}

struct KernelConfig {
    KernelType type{KernelType::Exponential};
    double tau{0.0};
    double kT{0.0};
    double lambda{0.0};
    std::vector<BathMode> modes;

    CorrelationKernel build() const {
        switch (type) {
        case KernelType::Exponential: return CorrelationKernel(ExponentialZeroT{tau});
        case KernelType::OhmicHighTemp: return CorrelationKernel(OhmicHighTemp{kT, lambda});
        case KernelType::Discrete: break;
        }
        return CorrelationKernel(DiscreteModes{modes});
    }

    bool operator==(const KernelConfig&) const = default;
};

struct InitialConfig {
    std::string preset; // e, g, plus, minus; empty when amplitudes are given explicitly
    cplx a_e{1.0, 0.0};
    cplx a_g{0.0, 0.0};
    GaussianState moments;

    bool operator==(const InitialConfig&) const = default;
};

struct TimeConfig {
    double t_end{0.0};
    std::size_t n_samples{500};
    double tol{1e-10};

    bool operator==(const TimeConfig&) const = default;
};

struct ScenarioConfig {
    ModelType model{ModelType::Tls};
    Method method{Method::Markov};
    double omega{0.0};
    double gamma{0.0};
    double bias{0.0};   // Omega
    double omega0{0.0};
    std::optional<KernelConfig> kernel;
    InitialConfig initial;
    TimeConfig time;
    std::optional<std::string> output_path;

    bool two_level() const noexcept { return model != ModelType::Qbm; }

    bool operator==(const ScenarioConfig&) const = default;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Entry {
    std::string value;
    int line{0};
};

using Section = std::map<std::string, Entry>;

inline double parse_number(std::string_view text, int line, std::string_view key) {
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || !std::isfinite(v))
        throw ConfigError("'" + std::string(key) + "' expects a decimal number, got '" + std::string(text) + "'",
                          line);
    return v;
}

inline std::size_t parse_count(std::string_view text, int line, std::string_view key) {
    text = trim(text);
    unsigned long long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw ConfigError("'" + std::string(key) + "' expects a positive integer, got '" + std::string(text) + "'",
                          line);
    return static_cast<std::size_t>(v);
}

// "re,im"
inline cplx parse_complex(std::string_view text, int line, std::string_view key) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos)
        throw ConfigError("'" + std::string(key) + "' expects 're,im'", line);
    return {parse_number(text.substr(0, comma), line, key), parse_number(text.substr(comma + 1), line, key)};
}

// "g1:w1, g2:w2, ..."
inline std::vector<BathMode> parse_modes(std::string_view text, int line) {
    std::vector<BathMode> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view item = trim(text.substr(0, comma));
        const auto colon = item.find(':');
        if (colon == std::string_view::npos) throw ConfigError("mode '" + std::string(item) + "' is not g:w", line);
        out.push_back({parse_number(item.substr(0, colon), line, "modes"),
                       parse_number(item.substr(colon + 1), line, "modes")});
        if (comma == std::string_view::npos) break;
        text = text.substr(comma + 1);
    }
    if (out.empty()) throw ConfigError("'modes' lists no modes", line);
    return out;
}

class SectionReader {
public:
    SectionReader(const std::map<std::string, Section>& all, const std::string& name, int header_line)
        : name_(name), header_line_(header_line) {
        if (auto it = all.find(name); it != all.end()) section_ = &it->second;
    }

    bool present() const noexcept { return section_ != nullptr; }
    bool has(const std::string& key) const { return section_ && section_->count(key); }

    const Entry& required(const std::string& key) const {
        if (!has(key)) throw ConfigError("missing required key '" + key + "' in [" + name_ + "]", header_line_);
        return section_->at(key);
    }

    const Entry* optional(const std::string& key) const { return has(key) ? &section_->at(key) : nullptr; }

    // Keys outside `allowed` are rejected; keys listed in `known` get the more specific message.
    void restrict_to(const std::vector<std::string>& allowed, const std::vector<std::string>& known,
                     const std::string& context) const {
        if (!section_) return;
        for (const auto& [key, entry] : *section_) {
            bool ok = false;
            for (const auto& a : allowed) ok = ok || a == key;
            if (ok) continue;
            bool recognised = false;
            for (const auto& k : known) recognised = recognised || k == key;
            if (recognised)
                throw ConfigError("key '" + key + "' in [" + name_ + "] does not apply to " + context, entry.line);
            throw ConfigError("unknown key '" + key + "' in [" + name_ + "]", entry.line);
        }
    }

private:
    std::string name_;
    int header_line_;
    const Section* section_{nullptr};
};

inline double positive(double v, const Entry& e, const char* key) {
    if (!(v > 0.0)) throw ConfigError(std::string("'") + key + "' must be positive", e.line);
    return v;
}

} // namespace detail

inline ScenarioConfig parse_scenario(std::string_view text) {
    using detail::Entry;
    using detail::trim;

    static const std::vector<std::string> kSections = {"model", "kernel", "initial", "time", "output"};

    std::map<std::string, detail::Section> sections;
    std::map<std::string, int> header_lines;
    std::string current;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view s = raw;
        if (line == 1 && s.size() >= 3 && s.substr(0, 3) == "\xEF\xBB\xBF") s.remove_prefix(3);
        if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;

        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError("malformed section header", line);
            const std::string name(trim(s.substr(1, s.size() - 2)));
            bool known = false;
            for (const auto& k : kSections) known = known || k == name;
            if (!known) throw ConfigError("unknown section [" + name + "]", line);
            if (header_lines.count(name)) throw ConfigError("duplicate section [" + name + "]", line);
            header_lines[name] = line;
            sections[name];
            current = name;
            continue;
        }

        const auto eq = s.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line);
        if (current.empty()) throw ConfigError("entry outside of any section", line);
        const std::string key(trim(s.substr(0, eq)));
        const std::string value(trim(s.substr(eq + 1)));
        if (key.empty()) throw ConfigError("empty key", line);
        if (value.empty()) throw ConfigError("key '" + key + "' has no value", line);
        auto& sec = sections[current];
        if (sec.count(key)) throw ConfigError("duplicate key '" + key + "' in [" + current + "]", line);
        sec[key] = Entry{value, line};
    }

    auto reader = [&](const std::string& name) {
        const auto it = header_lines.find(name);
        return detail::SectionReader(sections, name, it == header_lines.end() ? 0 : it->second);
    };
    const auto model = reader("model");
    const auto kernel = reader("kernel");
    const auto initial = reader("initial");
    const auto time = reader("time");
    const auto output = reader("output");

    if (!model.present()) throw ConfigError("missing [model] section");
    if (!time.present()) throw ConfigError("missing [time] section");
    if (!initial.present()) throw ConfigError("missing [initial] section");

    ScenarioConfig cfg;

    // [model]
    {
        const Entry& type = model.required("type");
        if (type.value == "tls") cfg.model = ModelType::Tls;
        else if (type.value == "spin_boson") cfg.model = ModelType::SpinBoson;
        else if (type.value == "qbm") cfg.model = ModelType::Qbm;
        else throw ConfigError("unknown model type '" + type.value + "'", type.line);

        const Entry& method = model.required("method");
        const auto m = parse_method(method.value);
        if (!m) throw ConfigError("unknown method '" + method.value + "'", method.line);
        cfg.method = *m;
        if (cfg.method == Method::Exact && cfg.model != ModelType::Tls)
            throw ConfigError("method 'exact' is only available for model tls", method.line);

        const std::vector<std::string> all = {"type", "method", "omega", "gamma", "Omega", "omega0"};
        std::vector<std::string> allowed = {"type", "method", "gamma"};
        const std::string context = std::string("model ") + to_string(cfg.model);
        switch (cfg.model) {
        case ModelType::Tls: allowed.push_back("omega"); break;
        case ModelType::SpinBoson:
            allowed.push_back("omega");
            allowed.push_back("Omega");
            break;
        case ModelType::Qbm: allowed.push_back("omega0"); break;
        }
        model.restrict_to(allowed, all, context);

        const Entry& g = model.required("gamma");
        cfg.gamma = detail::parse_number(g.value, g.line, "gamma");
        if (cfg.gamma < 0.0) throw ConfigError("'gamma' must be non-negative", g.line);
        if (cfg.model == ModelType::Qbm) {
            const Entry& w0 = model.required("omega0");
            cfg.omega0 = detail::positive(detail::parse_number(w0.value, w0.line, "omega0"), w0, "omega0");
        } else {
            const Entry& w = model.required("omega");
            cfg.omega = detail::parse_number(w.value, w.line, "omega");
        }
        if (cfg.model == ModelType::SpinBoson) {
            const Entry& b = model.required("Omega");
            cfg.bias = detail::parse_number(b.value, b.line, "Omega");
        }
    }

    // [kernel]
    if (kernel.present()) {
        KernelConfig k;
        const Entry& type = kernel.required("type");
        const std::vector<std::string> all = {"type", "tau", "kT", "Lambda", "modes"};
        if (type.value == "exponential") {
            k.type = KernelType::Exponential;
            kernel.restrict_to({"type", "tau"}, all, "kernel exponential");
            const Entry& e = kernel.required("tau");
            k.tau = detail::positive(detail::parse_number(e.value, e.line, "tau"), e, "tau");
        } else if (type.value == "ohmic_high_t") {
            k.type = KernelType::OhmicHighTemp;
            kernel.restrict_to({"type", "kT", "Lambda"}, all, "kernel ohmic_high_t");
            const Entry& e1 = kernel.required("kT");
            k.kT = detail::positive(detail::parse_number(e1.value, e1.line, "kT"), e1, "kT");
            const Entry& e2 = kernel.required("Lambda");
            k.lambda = detail::positive(detail::parse_number(e2.value, e2.line, "Lambda"), e2, "Lambda");
        } else if (type.value == "discrete") {
            k.type = KernelType::Discrete;
            kernel.restrict_to({"type", "modes"}, all, "kernel discrete");
            const Entry& e = kernel.required("modes");
            k.modes = detail::parse_modes(e.value, e.line);
        } else {
            throw ConfigError("unknown kernel type '" + type.value + "'", type.line);
        }
        cfg.kernel = std::move(k);
    } else if (cfg.method != Method::Markov) {
        throw ConfigError(std::string("method '") + to_string(cfg.method) + "' requires a [kernel] section");
    }
    if (cfg.kernel) {
        const int kline = kernel.required("type").line;
        if (cfg.method == Method::Exact && cfg.kernel->type != KernelType::Exponential)
            throw ConfigError("method 'exact' requires kernel type exponential", kline);
        if (cfg.method == Method::PostMarkovAsymptotic && cfg.kernel->type == KernelType::Discrete)
            throw ConfigError("a discrete kernel has no asymptotic coefficients", kline);
    }

    // [initial]
    if (cfg.two_level()) {
        initial.restrict_to({"state", "a_e", "a_g"}, {"state", "a_e", "a_g", "mq", "mp", "sqq", "spp", "sqp"},
                            "two-level models");
        if (const Entry* st = initial.optional("state")) {
            if (initial.has("a_e") || initial.has("a_g"))
                throw ConfigError("give either 'state' or amplitudes 'a_e'/'a_g', not both", st->line);
            const double r = 1.0 / std::sqrt(2.0);
            auto& ic = cfg.initial;
            ic.preset = st->value;
            const std::map<std::string, std::pair<double, double>> presets = {
                {"e", {1.0, 0.0}}, {"g", {0.0, 1.0}}, {"plus", {r, r}}, {"minus", {r, -r}}};
            const auto it = presets.find(st->value);
            if (it == presets.end())
                throw ConfigError("unknown state '" + st->value + "' (expected e, g, plus or minus)", st->line);
            ic.a_e = it->second.first;
            ic.a_g = it->second.second;
        } else {
            if (!initial.has("a_e") && !initial.has("a_g"))
                throw ConfigError("[initial] needs 'state' or amplitudes 'a_e'/'a_g'");
            const Entry* ae = initial.optional("a_e");
            const Entry* ag = initial.optional("a_g");
            cfg.initial.a_e = ae ? detail::parse_complex(ae->value, ae->line, "a_e") : cplx{};
            cfg.initial.a_g = ag ? detail::parse_complex(ag->value, ag->line, "a_g") : cplx{};
            if (std::norm(cfg.initial.a_e) + std::norm(cfg.initial.a_g) == 0.0)
                throw ConfigError("amplitudes 'a_e' and 'a_g' are both zero", (ae ? ae : ag)->line);
        }
    } else {
        initial.restrict_to({"mq", "mp", "sqq", "spp", "sqp"},
                            {"state", "a_e", "a_g", "mq", "mp", "sqq", "spp", "sqp"}, "model qbm");
        // Unset variances default to the oscillator ground state.
        GaussianState& g = cfg.initial.moments;
        g = GaussianState{0.0, 0.0, 0.5 / cfg.omega0, 0.5 * cfg.omega0, 0.0};
        auto read = [&](const char* key, double& dst) {
            if (const Entry* e = initial.optional(key)) dst = detail::parse_number(e->value, e->line, key);
        };
        read("mq", g.mq);
        read("mp", g.mp);
        read("sqq", g.sqq);
        read("spp", g.spp);
        read("sqp", g.sqp);
        if (!(g.sqq > 0.0) || !(g.spp > 0.0) || g.sqq * g.spp - g.sqp * g.sqp < 0.25 - 1e-12)
            throw ConfigError("initial moments violate the uncertainty relation sqq spp - sqp^2 >= 1/4",
                              header_lines["initial"]);
    }

    // [time]
    {
        time.restrict_to({"t_end", "n_samples", "tol"}, {}, "");
        const Entry& te = time.required("t_end");
        cfg.time.t_end = detail::parse_number(te.value, te.line, "t_end");
        if (cfg.time.t_end < 0.0) throw ConfigError("'t_end' must be non-negative", te.line);
        if (const Entry* n = time.optional("n_samples")) {
            cfg.time.n_samples = detail::parse_count(n->value, n->line, "n_samples");
            if (cfg.time.n_samples < 1) throw ConfigError("'n_samples' must be at least 1", n->line);
            if (cfg.time.t_end > 0.0 && cfg.time.n_samples < 2)
                throw ConfigError("'n_samples' must be at least 2 when t_end > 0", n->line);
        }
        if (const Entry* e = time.optional("tol"))
            cfg.time.tol = detail::positive(detail::parse_number(e->value, e->line, "tol"), *e, "tol");
    }

    // [output]
    if (output.present()) {
        output.restrict_to({"path"}, {}, "");
        cfg.output_path = output.required("path").value;
    }
    return cfg;
}

namespace detail {

inline std::string exact_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

// Writes cfg back in the file grammar; parse_scenario(serialize(cfg)) == cfg.
inline std::string serialize(const ScenarioConfig& cfg) {
    using detail::exact_number;
    std::ostringstream os;
    os << "[model]\n";
    os << "type = " << to_string(cfg.model) << "\n";
    os << "method = " << to_string(cfg.method) << "\n";
    if (cfg.model == ModelType::Qbm) os << "omega0 = " << exact_number(cfg.omega0) << "\n";
    else os << "omega = " << exact_number(cfg.omega) << "\n";
    os << "gamma = " << exact_number(cfg.gamma) << "\n";
    if (cfg.model == ModelType::SpinBoson) os << "Omega = " << exact_number(cfg.bias) << "\n";

    if (cfg.kernel) {
        const KernelConfig& k = *cfg.kernel;
        os << "\n[kernel]\n";
        os << "type = " << to_string(k.type) << "\n";
        switch (k.type) {
        case KernelType::Exponential: os << "tau = " << exact_number(k.tau) << "\n"; break;
        case KernelType::OhmicHighTemp:
            os << "kT = " << exact_number(k.kT) << "\n";
            os << "Lambda = " << exact_number(k.lambda) << "\n";
            break;
        case KernelType::Discrete:
            os << "modes = ";
            for (std::size_t i = 0; i < k.modes.size(); ++i)
                os << (i ? ", " : "") << exact_number(k.modes[i].coupling) << ":"
                   << exact_number(k.modes[i].frequency);
            os << "\n";
            break;
        }
    }

    os << "\n[initial]\n";
    if (cfg.two_level()) {
        if (!cfg.initial.preset.empty()) {
            os << "state = " << cfg.initial.preset << "\n";
        } else {
            os << "a_e = " << exact_number(cfg.initial.a_e.real()) << "," << exact_number(cfg.initial.a_e.imag())
               << "\n";
            os << "a_g = " << exact_number(cfg.initial.a_g.real()) << "," << exact_number(cfg.initial.a_g.imag())
               << "\n";
        }
    } else {
        const GaussianState& g = cfg.initial.moments;
        os << "mq = " << exact_number(g.mq) << "\n";
        os << "mp = " << exact_number(g.mp) << "\n";
        os << "sqq = " << exact_number(g.sqq) << "\n";
        os << "spp = " << exact_number(g.spp) << "\n";
        os << "sqp = " << exact_number(g.sqp) << "\n";
    }

    os << "\n[time]\n";
    os << "t_end = " << exact_number(cfg.time.t_end) << "\n";
    os << "n_samples = " << cfg.time.n_samples << "\n";
    os << "tol = " << exact_number(cfg.time.tol) << "\n";

    if (cfg.output_path) os << "\n[output]\npath = " << *cfg.output_path << "\n";
    return os.str();
}

} // namespace postmarkov

// postmarkov: command-line front end for scenario files
//
//   postmarkov simulate <file>
//   postmarkov compare <file> --methods markov,post_markov,exact
//   postmarkov coeffs <file> --t-max T
//   postmarkov preset fig1|fig2 --out <path>
//
// Exit status: 0 success, 2 configuration error, 3 numerical error, 4 I/O error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "postmarkov/postmarkov.hpp"

namespace pm = postmarkov;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

pm::ScenarioConfig load(const std::string& path) { return pm::parse_scenario(pm::read_text_file(path)); }

void emit(const std::string& text, const std::optional<std::string>& path) {
    if (path) {
        pm::write_text_file(*path, text);
        return;
    }
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw pm::IoError("failed writing to standard output");
}

std::vector<pm::Method> parse_methods(const std::vector<std::string>& names) {
    std::vector<pm::Method> out;
    for (const auto& n : names) {
        const auto m = pm::parse_method(n);
        if (!m) throw pm::ConfigError("unknown method '" + n + "'");
        out.push_back(*m);
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Post-Markov master equation simulator"};
    app.require_subcommand(1);

    std::string file;
    std::vector<std::string> methods;
    double t_max = 0.0;
    std::string figure;
    std::string out_path;

    auto* simulate = app.add_subcommand("simulate", "Run the scenario and write its CSV");
    simulate->add_option("file", file, "Scenario file")->required();

    auto* compare = app.add_subcommand("compare", "Run several methods on one scenario");
    compare->add_option("file", file, "Scenario file")->required();
    compare->add_option("--methods", methods, "Comma-separated methods")->required()->delimiter(',');

    auto* coeffs = app.add_subcommand("coeffs", "Dump the memory coefficients g0, g1, g2");
    coeffs->add_option("file", file, "Scenario file")->required();
    coeffs->add_option("--t-max", t_max, "Upper end of the time grid")->required();

    auto* preset = app.add_subcommand("preset", "Regenerate a figure data set");
    preset->add_option("figure", figure, "fig1 or fig2")->required()->check(CLI::IsMember({"fig1", "fig2"}));
    preset->add_option("--out", out_path, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*simulate) {
            const auto cfg = load(file);
            emit(pm::run_scenario(cfg).csv, cfg.output_path);
        } else if (*compare) {
            const auto cfg = load(file);
            emit(pm::compare_scenarios(cfg, parse_methods(methods)).csv, cfg.output_path);
        } else if (*coeffs) {
            const auto cfg = load(file);
            emit(pm::coefficients_csv(cfg, t_max), cfg.output_path);
        } else if (*preset) {
            const auto which = figure == "fig1" ? pm::Figure::Fig1 : pm::Figure::Fig2;
            emit(pm::preset_figure(which).csv, out_path);
        }
    } catch (const pm::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const pm::UsageError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const pm::NumericalError& e) {
        std::fprintf(stderr, "numerical error at t = %.6g: %s\n", e.time(), e.what());
        return kExitNumerical;
    } catch (const pm::IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return kExitIo;
    }
    return kExitOk;
}

// Copyright 2026 The Chiral Devices Authors
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

// Command-line front end: amplitudes, sweeps, oracle verification,
// wavefunction dumps and the invariant suite.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "chiral/chiral.hpp"

namespace {

enum ExitCode { kOk = 0, kInvalidConfig = 1, kInfeasible = 2, kVerificationFailed = 3 };

struct CommonFlags {
    std::string config;
    std::string out;
    std::string format;
    unsigned threads = 1;
    std::uint64_t seed = 1;
    bool allow_infeasible = false;
};

chiral::Config load(const CommonFlags& f) {
    if (f.config.empty()) throw chiral::ConfigError("--config is required");
    chiral::Config cfg = chiral::load_config(f.config, {f.allow_infeasible});
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << '\n';
    return cfg;
}

chiral::OutputFormat resolve_format(const CommonFlags& f, chiral::OutputFormat fallback) {
    return f.format.empty() ? fallback : chiral::output_format_from_string(f.format);
}

void emit(const chiral::Table& t, chiral::OutputFormat fmt, const std::string& path) {
    if (path.empty() || path == "-") {
        chiral::write_table(t, fmt, std::cout);
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw chiral::ConfigError("cannot write '" + path + "'");
    chiral::write_table(t, fmt, os);
}

int cmd_amplitudes(const CommonFlags& f, bool backward) {
    const chiral::Config cfg = load(f);
    if (!cfg.device) throw chiral::ConfigError("config needs a device");
    const chiral::DeviceParams& p = *cfg.device;
    std::vector<double> omegas = cfg.omegas;
    if (omegas.empty()) omegas.push_back(p.emitter.omega_eg);
    chiral::Table t;
    t.columns = {"direction", "omega", "t_re", "t_im", "r_re", "r_im", "t_tilde_re", "t_tilde_im", "r_tilde_re",
                 "r_tilde_im", "T", "R", "T_tilde", "R_tilde", "total"};
    for (double w : omegas) {
        const chiral::Amplitudes a = backward ? chiral::amplitudes_backward(p, w) : chiral::amplitudes_forward(p, w);
        t.rows.push_back({std::string(backward ? "r->l" : "l->r"), w, a.t.real(), a.t.imag(), a.r.real(), a.r.imag(),
                          a.t_tilde.real(), a.t_tilde.imag(), a.r_tilde.real(), a.r_tilde.imag(), a.T(), a.R(),
                          a.T_tilde(), a.R_tilde(), a.total()});
    }
    emit(t, resolve_format(f, chiral::OutputFormat::Csv), f.out);
    return kOk;
}

int cmd_sweep(const CommonFlags& f) {
    const chiral::Config cfg = load(f);
    if (!cfg.sweep) throw chiral::ConfigError("config needs a 'sweep' section");
    const chiral::SweepSpec& spec = *cfg.sweep;
    const chiral::Table t = chiral::run_sweep(spec, f.threads);
    emit(t, resolve_format(f, spec.format), f.out.empty() ? spec.output : f.out);
    return kOk;
}

int cmd_oracle_verify(const CommonFlags& f, std::size_t points, double tolerance) {
    const auto rows = chiral::oracle_verification(points, f.seed, 1e-3, f.threads);
    chiral::Table t;
    t.columns = {"point", "quantity", "analytic", "oracle", "abs_error"};
    double worst = 0.0;
    for (const auto& r : rows) {
        t.rows.push_back({r.point, r.quantity, r.analytic, r.oracle, r.abs_error});
        worst = std::max(worst, r.abs_error);
    }
    emit(t, resolve_format(f, chiral::OutputFormat::Csv), f.out);
    std::cerr << "max |analytic - oracle| = " << chiral::format_number(worst) << " (tolerance "
              << chiral::format_number(tolerance) << ")\n";
    return worst < tolerance ? kOk : kVerificationFailed;
}

int cmd_dump(const CommonFlags& f, double x_min, double x_max, std::size_t count) {
    const chiral::Config cfg = load(f);
    if (!cfg.device) throw chiral::ConfigError("config needs a device");
    chiral::SweepSpec spec;
    spec.target = chiral::SweepTarget::WavefunctionDump;
    spec.device = cfg.device;
    if (cfg.input) {
        spec.fixed["k1"] = cfg.input->k1;
        spec.fixed["k2"] = cfg.input->k2;
    }
    if (x_max > x_min) spec.axes.push_back({"x", x_min, x_max, count, chiral::AxisScale::Linear});
    emit(chiral::run_sweep(spec, f.threads), resolve_format(f, chiral::OutputFormat::Csv), f.out);
    return kOk;
}

int cmd_check(const CommonFlags& f) {
    bool ok = true;
    for (const auto& r : chiral::run_invariant_suite(f.seed, f.threads)) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << chiral::format_number(r.measured)
                  << " (tolerance " << chiral::format_number(r.tolerance) << ")\n";
        ok = ok && r.passed;
    }
    return ok ? kOk : kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chiral Lambda-emitter device calculator"};
    app.require_subcommand(1);
    CommonFlags flags;
    auto add_common = [&](CLI::App* sub, bool config, bool output) {
        if (config) {
            sub->add_option("--config", flags.config, "JSON configuration file")->required();
            sub->add_flag("--allow-infeasible", flags.allow_infeasible,
                          "replace an infeasible rectification request by gamma_u = 0");
        }
        if (output) {
            sub->add_option("--out", flags.out, "output file (default stdout)");
            sub->add_option("--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        }
        sub->add_option("--threads", flags.threads, "worker threads")->check(CLI::Range(1u, 1024u));
        sub->add_option("--seed", flags.seed, "seed for randomized verification");
    };

    bool backward = false;
    auto* amplitudes = app.add_subcommand("amplitudes", "single-photon amplitudes at the configured energies");
    add_common(amplitudes, true, true);
    amplitudes->add_flag("--backward", backward, "photon entering through port 2");

    auto* sweep = app.add_subcommand("sweep", "run the configured parameter sweep");
    add_common(sweep, true, true);

    std::size_t points = 50;
    double tolerance = 1e-6;
    auto* oracle = app.add_subcommand("oracle-verify", "lattice oracle against the closed-form amplitudes");
    add_common(oracle, false, true);
    oracle->add_option("--points", points, "random parameter points")->check(CLI::PositiveNumber);
    oracle->add_option("--tolerance", tolerance, "maximum accepted deviation");

    double x_min = 0.0, x_max = 0.0;
    std::size_t count = 41;
    auto* dump = app.add_subcommand("dump-wavefunction", "sample the two-photon eigenstate on a grid");
    add_common(dump, true, true);
    dump->add_option("--x-min", x_min, "grid start");
    dump->add_option("--x-max", x_max, "grid end");
    dump->add_option("--count", count, "points per axis")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));

    auto* check = app.add_subcommand("check", "run the invariant suite");
    add_common(check, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalidConfig;
    }

    try {
        if (*amplitudes) return cmd_amplitudes(flags, backward);
        if (*sweep) return cmd_sweep(flags);
        if (*oracle) return cmd_oracle_verify(flags, points, tolerance);
        if (*dump) return cmd_dump(flags, x_min, x_max, count);
        if (*check) return cmd_check(flags);
    } catch (const chiral::InfeasibleDesignError& e) {
        std::cerr << "error: " << e.what() << " (pass --allow-infeasible to continue with gamma_u = 0)\n";
        return kInfeasible;
    } catch (const chiral::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalidConfig;
    }
    return kOk;
}

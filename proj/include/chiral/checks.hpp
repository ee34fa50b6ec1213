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

#ifndef CHIRAL_CHECKS_HPP_
#define CHIRAL_CHECKS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "chiral/finite_window.hpp"
#include "chiral/oracle.hpp"
#include "chiral/params.hpp"
#include "chiral/scattering.hpp"
#include "chiral/twophoton.hpp"

namespace chiral {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;   // worst deviation found
    double tolerance = 0.0;
};

/// Random device with unit waveguide linewidth; `lossy` adds Gamma* in
/// [0, 0.5).
inline DeviceParams random_device(std::mt19937_64& rng, bool lossy) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    DeviceParams p;
    double r[4];
    double total = 0.0;
    for (double& x : r) total += (x = unit(rng) + 1e-3);
    p.couplings = {r[0] / total, r[1] / total, r[2] / total, r[3] / total};
    p.emitter.omega_eg = 2.0 * unit(rng) - 1.0;
    p.emitter.omega_g = unit(rng);
    p.emitter.gamma_star = lossy ? 0.5 * unit(rng) : 0.0;
    return p;
}

/// Feasible design point with D_d, D_u in [0.3, 1] and P_F above threshold.
inline DesignPoint random_feasible_design(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    DesignPoint d;
    d.D_d = 0.3 + 0.7 * unit(rng);
    d.D_u = 0.3 + 0.7 * unit(rng);
    d.P_F = (1.0 / d.D_d) * (1.0 + 0.05 + 50.0 * unit(rng));
    d.gamma_d = 0.5 + unit(rng);
    return d;
}

/// The library's invariant suite at reduced sample sizes. Each entry reports
/// the largest deviation against its tolerance.
inline std::vector<CheckResult> run_invariant_suite(std::uint64_t seed, unsigned threads = 1) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<CheckResult> out;
    auto add = [&](std::string name, double measured, double tol) {
        out.push_back({std::move(name), measured <= tol, measured, tol});
    };

    double single = 0.0, pair = 0.0, lossy_excess = 0.0, symmetry = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const DeviceParams p = random_device(rng, false);
        const double w1 = p.emitter.omega_eg + 10.0 * unit(rng) - 5.0;
        const double w2 = p.emitter.omega_eg + 10.0 * unit(rng) - 5.0;
        single = std::max(single, std::abs(amplitudes_forward(p, w1).total() - 1.0));
        const PortProbabilities a = detection_probabilities(p, {w1, w2});
        const PortProbabilities b = detection_probabilities(p, {w2, w1});
        pair = std::max(pair, std::abs(a.total() - 1.0));
        for (int m = 1; m <= 4; ++m) {
            for (int n = 1; n <= 4; ++n) symmetry = std::max(symmetry, std::abs(a(m, n) - b(m, n)));
        }
        const DeviceParams q = random_device(rng, true);
        lossy_excess = std::max(lossy_excess, detection_probabilities(q, {w1, w2}).total() - 1.0);
    }
    add("single-photon unitarity (lossless)", single, 1e-12);
    add("two-photon closure (lossless)", pair, 1e-12);
    add("two-photon total <= 1 (lossy)", std::max(0.0, lossy_excess), 1e-12);
    add("k1 <-> k2 symmetry", symmetry, 1e-14);

    double transistor = 0.0;
    for (int i = 0; i < 5; ++i) {
        const DesignPoint d = random_feasible_design(rng);
        const DeviceParams p = rectifier_device(d.D_d, d.D_u, d.P_F, d.gamma_d);
        const double k = p.emitter.omega_eg / p.v_g;
        const PortProbabilities a = transistor_probabilities(d.D_d, d.D_u, d.P_F);
        const PortProbabilities b = detection_probabilities(p, {k, k});
        for (int m = 1; m <= 4; ++m) {
            for (int n = m; n <= 4; ++n) transistor = std::max(transistor, std::abs(a(m, n) - b(m, n)));
        }
    }
    add("transistor form vs explicit device", transistor, 1e-10);

    double oracle = 0.0;
    for (const auto& row : oracle_verification(10, seed, 1e-3, threads)) oracle = std::max(oracle, row.abs_error);
    add("lattice oracle vs closed forms", oracle, 1e-6);

    double residual = 0.0;
    {
        DeviceParams p = random_device(rng, true);
        p.emitter.omega_eg = 0.3;
        const TwoPhotonState s(p, {0.3 + 2.0 * unit(rng) - 1.0, 0.3 + 2.0 * unit(rng) - 1.0});
        for (const auto& e : wavefunction_residuals(s)) residual = std::max(residual, e.max_residual);
    }
    add("eigenstate residuals", residual, 1e-6);

    double window = 0.0;
    {
        const DeviceParams p = random_device(rng, false);
        const double k1 = p.emitter.omega_eg + 0.7, k2 = p.emitter.omega_eg - 0.4;
        const PortProbabilities a = oracle_pmn(p, {k1, k2}, 100.0, WindowOptions{0.0, threads});
        const PortProbabilities b = detection_probabilities(p, {k1, k2});
        for (int m = 1; m <= 4; ++m) {
            for (int n = m; n <= 4; ++n) window = std::max(window, std::abs(a(m, n) - b(m, n)));
        }
    }
    add("finite-window P_mn at L*gamma/v_g = 100", window, 0.05);
    return out;
}

}  // namespace chiral

#endif  // CHIRAL_CHECKS_HPP_

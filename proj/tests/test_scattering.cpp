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

#include "chiral/scattering.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "chiral/checks.hpp"

using namespace chiral;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

DeviceParams device(double dR, double dL, double uR, double uL, double loss = 0.0, double omega_eg = 0.0) {
    DeviceParams p;
    p.couplings = {dR, dL, uR, uL};
    p.emitter.gamma_star = loss;
    p.emitter.omega_eg = omega_eg;
    return p;
}

void expect_complex_near(cplx a, cplx b, double tol) {
    EXPECT_NEAR(a.real(), b.real(), tol);
    EXPECT_NEAR(a.imag(), b.imag(), tol);
}

}  // namespace

TEST(scattering, symmetric_two_level_reflects) {
    const Amplitudes a = amplitudes_forward(device(0.5, 0.5, 0.0, 0.0), 0.0);
    expect_complex_near(a.t, 0.0, 1e-15);
    expect_complex_near(a.r, -1.0, 1e-15);
}

TEST(scattering, ideal_rectifier_routes_to_port_three) {
    const Amplitudes a = amplitudes_forward(device(1.0, 0.0, 1.0, 0.0), 0.0);
    EXPECT_NEAR(std::abs(a.t), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(a.r), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(a.r_tilde), 0.0, 1e-15);
    EXPECT_NEAR(a.T_tilde(), 1.0, 1e-15);
}

TEST(scattering, chiral_pass_through_phase) {
    const Amplitudes a = amplitudes_forward(device(1.0, 0.0, 0.0, 0.0), 0.0);
    expect_complex_near(a.t, -1.0, 1e-15);
}

TEST(scattering, uncoupled_resonant_emitter_is_singular) {
    EXPECT_THROW(amplitudes_forward(device(0.0, 0.0, 0.0, 0.0), 0.0), SingularSystemError);
    // Off resonance the photon simply passes.
    expect_complex_near(amplitudes_forward(device(0.0, 0.0, 0.0, 0.0), 0.5).t, 1.0, 1e-15);
}

TEST(scattering, generic_point_reference_values) {
    // Independent evaluation of the defining linear system (frozen).
    const Amplitudes a = amplitudes_forward(device(0.95, 0.05, 0.9, 0.1, 0.05), 0.3);
    const cplx D(0.3, 1.025);
    expect_complex_near(a.t, cplx(0.3, 0.075) / D, 1e-15);
    expect_complex_near(a.r, cplx(0.0, -std::sqrt(0.95 * 0.05)) / D, 1e-15);
    expect_complex_near(a.t_tilde, cplx(0.0, -std::sqrt(0.95 * 0.9)) / D, 1e-15);
    expect_complex_near(a.r_tilde, cplx(0.0, -std::sqrt(0.95 * 0.1)) / D, 1e-15);
}

TEST(scattering, unitarity_property) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 5000; ++i) {
        const DeviceParams p = random_device(rng, false);
        const double w = p.emitter.omega_eg + 20.0 * unit(rng) - 10.0;
        EXPECT_NEAR(amplitudes_forward(p, w).total(), 1.0, 1e-12);
        EXPECT_NEAR(amplitudes_backward(p, w).total(), 1.0, 1e-12);
        const DeviceParams q = random_device(rng, true);
        EXPECT_LE(amplitudes_forward(q, w).total(), 1.0 + 1e-12);
    }
}

TEST(scattering, backward_is_mirrored_device) {
    DeviceParams p = device(0.7, 0.2, 0.3, 0.1, 0.05, 0.2);
    DeviceParams mirror = p;
    std::swap(mirror.couplings.gamma_dR, mirror.couplings.gamma_dL);
    const Amplitudes a = amplitudes_backward(p, 0.6);
    const Amplitudes b = amplitudes_forward(mirror, 0.6);
    expect_complex_near(a.t, b.t, 1e-15);
    expect_complex_near(a.r, b.r, 1e-15);
    expect_complex_near(a.t_tilde, b.t_tilde, 1e-15);
    expect_complex_near(a.r_tilde, b.r_tilde, 1e-15);
}

TEST(scattering, backward_resonant_matches_mirror) {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 200; ++i) {
        const DeviceParams p = random_device(rng, true);
        const Amplitudes a = amplitudes_backward_resonant(p);
        const Amplitudes b = amplitudes_backward(p, p.emitter.omega_eg);
        expect_complex_near(a.t, b.t, 1e-12);
        expect_complex_near(a.r, b.r, 1e-12);
        expect_complex_near(a.t_tilde, b.t_tilde, 1e-12);
        expect_complex_near(a.r_tilde, b.r_tilde, 1e-12);
    }
}

TEST(scattering, backward_resonant_ideal_diode) {
    const Amplitudes a = amplitudes_backward_resonant(rectifier_device(1.0, 1.0, kInf));
    EXPECT_NEAR(std::norm(a.t), 1.0, 1e-15);
    EXPECT_NEAR(a.R() + a.T_tilde() + a.R_tilde(), 0.0, 1e-15);
}

TEST(scattering, backward_resonant_without_left_coupling) {
    const Amplitudes a = amplitudes_backward_resonant(device(0.8, 0.0, 0.3, 0.4, 0.1));
    EXPECT_EQ(std::abs(a.t_tilde), 0.0);
    EXPECT_EQ(std::abs(a.r_tilde), 0.0);
    EXPECT_THROW(amplitudes_backward_resonant(device(0.0, 0.8, 0.3, 0.4)), SingularSystemError);
}

TEST(scattering, backward_transmission_matches_diode_formula) {
    for (double D : {0.9, 0.8}) {
        const DeviceParams p = rectifier_device(D, 0.4, 30.0);
        const double R = diode_reflection(D);
        EXPECT_NEAR(std::norm(amplitudes_backward_resonant(p).t), (1.0 - R) * (1.0 - R), 1e-12);
        EXPECT_NEAR(std::norm(amplitudes_backward_resonant(p).t), diode_report(D).T_rl, 1e-12);
    }
}

TEST(scattering, rectification_gamma_u_values) {
    EXPECT_NEAR(rectification_gamma_u(1.0, 1.0, 0.0), 1.0, 1e-15);
    EXPECT_NEAR(rectification_gamma_u(1.0, 0.9, 0.5), 0.4, 1e-15);
    EXPECT_THROW(rectification_gamma_u(1.0, 0.5, 0.6), InfeasibleDesignError);
    DesignPoint d{0.9, 0.3, 1.4 / 0.5, 1.0};
    const DeviceParams p = from_design(d, rectification_gamma_u(1.0, 0.9, 0.5));
    EXPECT_NEAR(p.emitter.gamma_star, 0.5, 1e-15);
    EXPECT_LT(std::abs(amplitudes_forward(p, 0.0).t), 1e-12);
}

TEST(scattering, rectification_independent_of_upper_split) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double gd = 0.2 + unit(rng), Dd = 0.3 + 0.7 * unit(rng), loss = 0.2 * gd * Dd * unit(rng);
        const double gu = rectification_gamma_u(gd, Dd, loss);
        const double split = unit(rng);
        DeviceParams p = device(gd * (1 + Dd) / 2, gd * (1 - Dd) / 2, gu * split, gu * (1 - split), loss,
                                2.0 * unit(rng) - 1.0);
        EXPECT_LT(std::abs(amplitudes_forward(p, p.emitter.omega_eg).t), 1e-12);
    }
}

TEST(scattering, purcell_threshold_values) {
    EXPECT_DOUBLE_EQ(purcell_threshold(1.0), 1.0);
    EXPECT_NEAR(purcell_threshold(0.8), 1.25, 1e-15);
    EXPECT_THROW(purcell_threshold(0.0), InfeasibleDesignError);
    EXPECT_THROW(purcell_threshold(-0.5), InfeasibleDesignError);
}

TEST(scattering, feasibility_at_threshold) {
    EXPECT_TRUE(rectification_feasible(0.9, 1.0 / 0.9));
    EXPECT_FALSE(rectification_feasible(0.9, 1.0 / 0.9 - 1e-9));
    EXPECT_FALSE(rectification_feasible(-0.2, 100.0));
    EXPECT_TRUE(rectification_feasible(0.1, kInf));
}

TEST(scattering, rectifier_efficiency_values) {
    EXPECT_NEAR(rectifier_efficiency(0.9, 0.9, 15.0), 0.78125, 1e-12);
    EXPECT_DOUBLE_EQ(rectifier_efficiency(1.0, 1.0, kInf), 1.0);
    EXPECT_EQ(rectifier_efficiency(0.9, 0.9, 1.0 / 0.9), 0.0);
    EXPECT_THROW(rectifier_efficiency(0.9, 0.9, 1.0), InfeasibleDesignError);
    EXPECT_THROW(rectifier_efficiency(0.9, 1.2, 10.0), InvalidDesignError);
}

TEST(scattering, rectifier_efficiency_matches_device_property) {
    std::mt19937_64 rng(24);
    for (int i = 0; i < 1000; ++i) {
        const DesignPoint d = random_feasible_design(rng);
        const DeviceParams p = rectifier_device(d.D_d, d.D_u, d.P_F, d.gamma_d, 0.4);
        const Amplitudes a = amplitudes_forward(p, 0.4);
        EXPECT_NEAR(a.T_tilde(), rectifier_efficiency(d.D_d, d.D_u, d.P_F), 1e-12);
        EXPECT_LT(std::abs(a.t), 1e-12);
    }
}

TEST(scattering, diode_values) {
    EXPECT_EQ(diode_reflection(1.0), 0.0);
    EXPECT_NEAR(diode_reflection(0.9), 1.0 / 19.0, 1e-15);
    EXPECT_NEAR(diode_reflection(0.5), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(diode_report(0.9).T_rl, std::pow(18.0 / 19.0, 2), 1e-15);
    EXPECT_NEAR(diode_report(0.8).R, 1.0 / 9.0, 1e-15);
    EXPECT_NEAR(diode_report(0.8).T_rl, std::pow(8.0 / 9.0, 2), 1e-15);
    const DiodeReport ideal = diode_report(1.0);
    EXPECT_EQ(ideal.R, 0.0);
    EXPECT_EQ(ideal.T_rl, 1.0);
    EXPECT_THROW(diode_reflection(0.0), InfeasibleDesignError);
}

TEST(scattering, diode_reflection_matches_device) {
    const DeviceParams p = rectifier_device(0.5, 0.2, 50.0);
    EXPECT_NEAR(amplitudes_forward(p, 0.0).R(), 1.0 / 3.0, 1e-12);
}

TEST(scattering, reflection_depends_only_on_lower_directionality) {
    std::mt19937_64 rng(25);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double Dd : {0.35, 0.7, 0.95}) {
        for (int i = 0; i < 200; ++i) {
            const double gd = 0.1 + unit(rng);
            const double loss = gd * Dd * 0.9 * unit(rng);
            const double gu = rectification_gamma_u(gd, Dd, loss);
            const double split = unit(rng);
            const DeviceParams p = device(gd * (1 + Dd) / 2, gd * (1 - Dd) / 2, gu * split, gu * (1 - split), loss);
            EXPECT_NEAR(amplitudes_forward(p, 0.0).R(), diode_reflection(Dd), 1e-12);
        }
    }
}

TEST(scattering, transmission_dip_width) {
    std::mt19937_64 rng(26);
    for (int i = 0; i < 50; ++i) {
        const DesignPoint d = random_feasible_design(rng);
        const DeviceParams p = rectifier_device(d.D_d, d.D_u, d.P_F, d.gamma_d);
        // |t|^2 has its minimum at resonance and reaches 1/2 at half the linewidth.
        const double half = p.linewidth() / 2.0;
        EXPECT_LT(amplitudes_forward(p, 0.0).T(), 1e-24);
        EXPECT_NEAR(amplitudes_forward(p, half).T(), 0.5, 1e-12);
        EXPECT_GT(amplitudes_forward(p, 1e-3).T(), 0.0);
        EXPECT_GT(half, p.emitter.gamma_star * (1.0 / d.D_d - 1.0) / 2.0);
    }
}

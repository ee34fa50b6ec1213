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

#include "chiral/twophoton.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "chiral/checks.hpp"
#include "chiral/oracle.hpp"

using namespace chiral;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

DeviceParams generic_device() {
    DeviceParams p;
    p.couplings = {0.55, 0.1, 0.3, 0.15};
    p.emitter = {0.4, 0.25, 0.1};
    return p;
}

void expect_tables_near(const PortProbabilities& a, const PortProbabilities& b, double tol) {
    for (int m = 1; m <= 4; ++m) {
        for (int n = 1; n <= 4; ++n) {
            EXPECT_NEAR(a(m, n), b(m, n), tol) << "P_" << m << n;
        }
    }
}

}  // namespace

TEST(twophoton, fifteen_region_functions) {
    const TwoPhotonState s(generic_device(), {0.7, -0.2});
    EXPECT_EQ(s.regions().size() + s.lines().size(), 15u);
    for (const auto& f : s.regions()) {
        EXPECT_FALSE(f.terms.empty());
        EXPECT_EQ(f.id, s.region(f.id).id);
    }
}

TEST(twophoton, requires_coupled_emitter) {
    DeviceParams p;
    p.emitter.gamma_star = 0.3;
    EXPECT_THROW(TwoPhotonState(p, {0.1, 0.2}), InvalidDesignError);
    EXPECT_THROW(TwoPhotonState(generic_device(), {kInf, 0.2}), InvalidDesignError);
}

TEST(twophoton, bound_state_seam_is_continuous) {
    const TwoPhotonState s(generic_device(), {0.9, 0.1});
    const RegionFunction& f = s.region(Component::PhiRR_iii);
    for (double x : {0.0, 0.3, 1.7, 4.0}) {
        const double eps = 1e-9;
        EXPECT_LT(std::abs(f(x, x + eps) - f(x + eps, x)), 1e-7);
        EXPECT_LT(std::abs(f(x, x) - f(x, x + eps)), 1e-7);
    }
}

TEST(twophoton, bosonic_symmetry) {
    const TwoPhotonState s(generic_device(), {0.9, 0.1});
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 200; ++i) {
        const double a = u(rng), b = u(rng);
        EXPECT_LT(std::abs(s.phi_RR(a, b) - s.phi_RR(b, a)), 1e-13);
        EXPECT_LT(std::abs(s.phi_LL(a, b) - s.phi_LL(b, a)), 1e-13);
    }
}

TEST(twophoton, input_order_does_not_matter) {
    const TwoPhotonState a(generic_device(), {0.9, 0.1});
    const TwoPhotonState b(generic_device(), {0.1, 0.9});
    for (double x1 : {-2.0, -0.5, 0.7, 3.0}) {
        for (double x2 : {-1.5, 0.2, 2.5}) {
            EXPECT_LT(std::abs(a.phi_RR(x1, x2) - b.phi_RR(x1, x2)), 1e-13);
            EXPECT_LT(std::abs(a.phi_RL(x1, x2) - b.phi_RL(x1, x2)), 1e-13);
            EXPECT_LT(std::abs(a.psi_RR(x1, x2) - b.psi_RR(x1, x2)), 1e-13);
        }
    }
}

TEST(twophoton, forbidden_regions_vanish) {
    const TwoPhotonState s(generic_device(), {0.9, 0.1});
    EXPECT_EQ(s.phi_LL(1.0, -1.0), cplx(0.0, 0.0));
    EXPECT_EQ(s.phi_LL(1.0, 1.0), cplx(0.0, 0.0));
    EXPECT_EQ(s.phi_RL(1.0, 1.0), cplx(0.0, 0.0));
    EXPECT_EQ(s.psi_LR(1.0, 1.0), cplx(0.0, 0.0));
    EXPECT_EQ(s.psi_LL(1.0, -1.0), cplx(0.0, 0.0));
    EXPECT_EQ(s.varphi_L(0.5), cplx(0.0, 0.0));
    // psi_LL needs the upper photon closer to the emitter; psi_LR needs x + y < 0.
    EXPECT_EQ(s.psi_LL(-1.0, -2.0), cplx(0.0, 0.0));
    EXPECT_EQ(s.psi_LR(-1.0, 2.0), cplx(0.0, 0.0));
}

TEST(twophoton, ideal_rectifier_transmitted_pair_is_bound) {
    // No plane-wave part survives in the transmitted pair: what is left
    // depends on x1 - x2 alone and decays away from the diagonal.
    const DeviceParams p = rectifier_device(1.0, 1.0, kInf);
    const TwoPhotonState s(p, {0.0, 0.0});
    const RegionFunction& f = s.region(Component::PhiRR_iii);
    for (double d = 0.0; d <= 6.0; d += 0.25) {
        const double ref = std::abs(f(1.0, 1.0 + d));
        for (double x = 0.0; x <= 6.0; x += 0.5) {
            EXPECT_NEAR(std::abs(f(x, x + d)), ref, 1e-13);
            EXPECT_NEAR(std::abs(f(x + d, x)), ref, 1e-13);
        }
    }
    EXPECT_LT(std::abs(f(0.0, 40.0)), 1e-14);
    EXPECT_LT(std::abs(f(40.0, 0.0)), 1e-14);
}

TEST(twophoton, emitter_source_condition_at_the_origin_line) {
    const DeviceParams p = generic_device();
    const TwoPhotonState s(p, {0.7, -0.2});
    const double VR = std::sqrt(p.couplings.gamma_dR * p.v_g);
    for (double x : {-0.1, -1.3, -4.0}) {
        const cplx lhs = cplx(0.0, p.v_g) * (s.region(Component::PhiRR_ii)(x, 0.0) - s.region(Component::PhiRR_i)(x, 0.0));
        EXPECT_LT(std::abs(lhs - VR / 2.0 * s.varphi_R(x)), 1e-14);
    }
}

TEST(twophoton, eigenstate_residuals_small) {
    for (double v : {1.0, 2.5}) {
        DeviceParams p = generic_device();
        p.v_g = v;
        p.emitter.omega_eg = 0.3;
        const TwoPhotonState s(p, TwoPhotonInput::from_energies(0.9, -0.4, v));
        for (const auto& e : wavefunction_residuals(s)) {
            EXPECT_LT(e.max_residual, 1e-6) << e.check << " v_g=" << v;
        }
    }
}

TEST(twophoton, closed_forms_on_reference_device) {
    // Frozen from an independent evaluation of the single-photon probabilities.
    DeviceParams p;
    p.couplings = {0.5, 0.5, 0.0, 0.0};
    const PortProbabilities P = detection_probabilities(p, {0.0, 0.0});
    EXPECT_NEAR(P(1, 1), 1.0, 1e-15);
    EXPECT_NEAR(P.total(), 1.0, 1e-15);
}

TEST(twophoton, perfect_routing_limit) {
    const PortProbabilities P = detection_probabilities(rectifier_device(1.0, 1.0, kInf), {0.0, 0.0});
    EXPECT_NEAR(P(2, 3), 1.0, 1e-12);
    EXPECT_NEAR(P.total() - P(2, 3), 0.0, 1e-12);
}

TEST(twophoton, closure_and_factorization_property) {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 3000; ++i) {
        const DeviceParams p = random_device(rng, false);
        const double k1 = p.emitter.omega_eg + 8.0 * unit(rng) - 4.0;
        const double k2 = p.emitter.omega_eg + 8.0 * unit(rng) - 4.0;
        const PortProbabilities P = detection_probabilities(p, {k1, k2});
        EXPECT_NEAR(P.total(), 1.0, 1e-12);
        const Amplitudes a = amplitudes_forward(p, k1), b = amplitudes_forward(p, k2);
        EXPECT_NEAR(P(1, 1), a.R() * b.R(), 1e-15);
        EXPECT_NEAR(P(2, 2), a.T() * b.T(), 1e-15);
        EXPECT_EQ(P(3, 3), 0.0);
        EXPECT_EQ(P(3, 4), 0.0);
        EXPECT_EQ(P(4, 4), 0.0);
        expect_tables_near(P, detection_probabilities(p, {k2, k1}), 1e-15);
        const DeviceParams q = random_device(rng, true);
        EXPECT_LE(detection_probabilities(q, {k1, k2}).total(), 1.0 + 1e-12);
    }
}

TEST(twophoton, transistor_reference_values) {
    const PortProbabilities P = transistor_probabilities(0.9, 0.9, 20.0);
    const double q = 1.0 / 19.0;
    EXPECT_NEAR(P(2, 3), 17.0 / 21.0, 1e-12);
    EXPECT_NEAR(P(1, 1), q * q, 1e-15);
    EXPECT_NEAR(P(1, 3), q * 17.0 / 21.0, 1e-15);
    EXPECT_NEAR(P(2, 4), q * 17.0 / 21.0, 1e-15);
    EXPECT_NEAR(P(1, 4), q * q * 17.0 / 21.0, 1e-15);
    EXPECT_NEAR(P(1, 3), 0.0426, 5e-5);
    EXPECT_EQ(P(1, 2), 0.0);
    EXPECT_EQ(P(2, 2), 0.0);
}

TEST(twophoton, transistor_ideal_directionality) {
    for (double pf : {1.0, 3.0, 50.0}) {
        const PortProbabilities P = transistor_probabilities(1.0, 1.0, pf);
        EXPECT_NEAR(P(2, 3), (pf - 1.0) / (pf + 1.0), 1e-15);
        EXPECT_EQ(P.total(), P(2, 3));
    }
    EXPECT_THROW(transistor_probabilities(0.9, 0.9, 1.0), InfeasibleDesignError);
}

TEST(twophoton, transistor_matches_explicit_device) {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 500; ++i) {
        const DesignPoint d = random_feasible_design(rng);
        const DeviceParams p = rectifier_device(d.D_d, d.D_u, d.P_F, d.gamma_d, 0.7);
        expect_tables_near(transistor_probabilities(d.D_d, d.D_u, d.P_F),
                           detection_probabilities(p, {0.7, 0.7}), 1e-10);
    }
    // Lossless limit and the maximally backward upper waveguide.
    const DeviceParams p = rectifier_device(0.8, -1.0, kInf);
    expect_tables_near(transistor_probabilities(0.8, -1.0, kInf), detection_probabilities(p, {0.0, 0.0}), 1e-12);
}

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

#ifndef CHIRAL_TWOPHOTON_HPP_
#define CHIRAL_TWOPHOTON_HPP_

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "chiral/errors.hpp"
#include "chiral/params.hpp"
#include "chiral/scattering.hpp"

namespace chiral {

/// Two photons entering through port 1 with wavevectors k1, k2.
struct TwoPhotonInput {
    double k1 = 0.0;
    double k2 = 0.0;

    static TwoPhotonInput from_energies(double omega1, double omega2, double v_g = 1.0) {
        return {omega1 / v_g, omega2 / v_g};
    }

    void validate() const {
        if (!std::isfinite(k1) || !std::isfinite(k2)) {
            throw InvalidDesignError("two-photon wavevectors must be finite");
        }
    }
};

/// Half-plane restriction attached to a term. Points on the boundary line get
/// weight 1/2.
enum class Mask { None, X2AboveX1, X1AboveX2, SumPositive, SumNegative };

inline double mask_weight(Mask m, double x1, double x2) {
    double s = 0.0;
    switch (m) {
        case Mask::None:
            return 1.0;
        case Mask::X2AboveX1:
            s = x2 - x1;
            break;
        case Mask::X1AboveX2:
            s = x1 - x2;
            break;
        case Mask::SumPositive:
            s = x1 + x2;
            break;
        case Mask::SumNegative:
            s = -x1 - x2;
            break;
    }
    return s > 0.0 ? 1.0 : (s < 0.0 ? 0.0 : 0.5);
}

/// coefficient * exp(i (p x1 + q x2)) restricted by a mask. Complex p, q
/// carry the exponential envelopes of bound-state terms.
struct PlaneTerm {
    cplx coefficient;
    cplx p;
    cplx q;
    Mask mask = Mask::None;

    cplx operator()(double x1, double x2) const {
        double w = mask_weight(mask, x1, x2);
        if (w == 0.0) {
            return {0.0, 0.0};
        }
        return w * coefficient * std::exp(cplx(0.0, 1.0) * (p * x1 + q * x2));
    }
};

struct LineTerm {
    cplx coefficient;
    cplx p;

    cplx operator()(double x) const { return coefficient * std::exp(cplx(0.0, 1.0) * p * x); }
};

/// The twelve two-variable pieces of the eigenstate. phi_* live in the lower
/// waveguide (both photons), psi_* have the first photon in the lower and the
/// second in the upper waveguide. Suffix = region of (x1, x2):
/// i: both < 0, ii: x1 < 0 < x2, iii: both > 0, iv: x2 < 0 < x1.
enum class Component {
    PhiRR_i,
    PhiRR_ii,
    PhiRR_iii,
    PhiRL_i,
    PhiRL_iv,
    PhiLL_i,
    PsiRR_ii,
    PsiRR_iii,
    PsiRL_i,
    PsiRL_iv,
    PsiLR_ii,
    PsiLL_i,
};
inline constexpr std::size_t kComponentCount = 12;

/// Pieces with the emitter excited and one photon in the lower waveguide.
enum class OneExcitation { VarphiR_below, VarphiR_above, VarphiL_below };
inline constexpr std::size_t kOneExcitationCount = 3;

struct RegionFunction {
    Component id = Component::PhiRR_i;
    std::string_view component;  // "phi_RR", "psi_RL", ...
    std::string_view region;     // "i" .. "iv"
    int sign1 = 1;               // quadrant: sign of x1 (or x)
    int sign2 = 1;               // quadrant: sign of x2 (or y)
    std::vector<PlaneTerm> terms;

    cplx operator()(double x1, double x2) const {
        cplx sum(0.0, 0.0);
        for (const auto& term : terms) {
            sum += term(x1, x2);
        }
        return sum;
    }

    bool in_region(double x1, double x2) const { return sign1 * x1 >= 0.0 && sign2 * x2 >= 0.0; }
};

struct LineFunction {
    OneExcitation id = OneExcitation::VarphiR_below;
    std::string_view component;  // "varphi_R", "varphi_L"
    std::string_view region;     // "<" or ">"
    int sign = -1;               // support: sign * x >= 0
    std::vector<LineTerm> terms;

    cplx operator()(double x) const {
        cplx sum(0.0, 0.0);
        for (const auto& term : terms) {
            sum += term(x);
        }
        return sum;
    }
};

/// Detection ports of an outgoing two-photon piece.
struct OutputChannel {
    Component id;
    int port_a;
    int port_b;
    double multiplicity;  // 2 for the bosonic phi_RR / phi_LL pieces
};

/// Asymptotic (output) pieces of the eigenstate and the ports they feed.
inline constexpr std::array<OutputChannel, 7> kOutputChannels{{
    {Component::PhiLL_i, 1, 1, 2.0},
    {Component::PhiRL_iv, 1, 2, 1.0},
    {Component::PhiRR_iii, 2, 2, 2.0},
    {Component::PsiLR_ii, 1, 3, 1.0},
    {Component::PsiLL_i, 1, 4, 1.0},
    {Component::PsiRR_iii, 2, 3, 1.0},
    {Component::PsiRL_iv, 2, 4, 1.0},
}};

/// Two-photon scattering eigenstate for two photons entering through port 1
/// with the emitter in |g>, normalized so that the incoming plane wave has
/// unit amplitude. Immutable once built.
class TwoPhotonState {
   public:
    TwoPhotonState(const DeviceParams& device, const TwoPhotonInput& input) : device_(device), input_(input) {
        device_.validate();
        input_.validate();
        if (!(device_.couplings.total() > 0.0)) {
            throw InvalidDesignError("two-photon state needs a coupled emitter (gamma > 0)");
        }
        const double v = device_.v_g;
        first_ = amplitudes_forward(device_, v * input_.k1);
        second_ = amplitudes_forward(device_, v * input_.k2);
        build_region_functions();
        build_line_functions();
    }

    const DeviceParams& device() const { return device_; }
    const TwoPhotonInput& input() const { return input_; }
    /// Single-photon amplitudes at omega_1 and omega_2.
    const Amplitudes& first() const { return first_; }
    const Amplitudes& second() const { return second_; }
    /// Waveguide linewidth gamma_dR + gamma_dL + gamma_uR + gamma_uL.
    double gamma() const { return device_.couplings.total(); }
    /// gamma + Gamma*; sets the bound-state decay and the resonance width.
    double linewidth() const { return device_.linewidth(); }
    /// Total photon energy omega_1 + omega_2.
    double total_energy() const { return device_.v_g * (input_.k1 + input_.k2); }

    const RegionFunction& region(Component c) const { return regions_[static_cast<std::size_t>(c)]; }
    const std::array<RegionFunction, kComponentCount>& regions() const { return regions_; }
    const LineFunction& line(OneExcitation c) const { return lines_[static_cast<std::size_t>(c)]; }
    const std::array<LineFunction, kOneExcitationCount>& lines() const { return lines_; }

    // Full piecewise amplitudes of the eigenstate; zero in regions that the
    // port-1 input cannot populate.

    cplx phi_RR(double x1, double x2) const {
        if (x1 < 0.0 && x2 < 0.0) return region(Component::PhiRR_i)(x1, x2);
        if (x1 < 0.0) return region(Component::PhiRR_ii)(x1, x2);
        if (x2 < 0.0) return region(Component::PhiRR_ii)(x2, x1);
        return region(Component::PhiRR_iii)(x1, x2);
    }
    cplx phi_RL(double x1, double x2) const {
        if (x2 >= 0.0) return {0.0, 0.0};
        return x1 < 0.0 ? region(Component::PhiRL_i)(x1, x2) : region(Component::PhiRL_iv)(x1, x2);
    }
    cplx phi_LL(double x1, double x2) const {
        return (x1 < 0.0 && x2 < 0.0) ? region(Component::PhiLL_i)(x1, x2) : cplx(0.0, 0.0);
    }
    cplx psi_RR(double x, double y) const {
        if (y < 0.0) return {0.0, 0.0};
        return x < 0.0 ? region(Component::PsiRR_ii)(x, y) : region(Component::PsiRR_iii)(x, y);
    }
    cplx psi_RL(double x, double y) const {
        if (y >= 0.0) return {0.0, 0.0};
        return x < 0.0 ? region(Component::PsiRL_i)(x, y) : region(Component::PsiRL_iv)(x, y);
    }
    cplx psi_LR(double x, double y) const {
        return (x < 0.0 && y >= 0.0) ? region(Component::PsiLR_ii)(x, y) : cplx(0.0, 0.0);
    }
    cplx psi_LL(double x, double y) const {
        return (x < 0.0 && y < 0.0) ? region(Component::PsiLL_i)(x, y) : cplx(0.0, 0.0);
    }
    cplx varphi_R(double x) const {
        return x < 0.0 ? line(OneExcitation::VarphiR_below)(x) : line(OneExcitation::VarphiR_above)(x);
    }
    cplx varphi_L(double x) const { return x < 0.0 ? line(OneExcitation::VarphiL_below)(x) : cplx(0.0, 0.0); }

   private:
    void set_region(Component id, std::string_view component, std::string_view region, int s1, int s2,
                    std::vector<PlaneTerm> terms) {
        RegionFunction& f = regions_[static_cast<std::size_t>(id)];
        f.id = id;
        f.component = component;
        f.region = region;
        f.sign1 = s1;
        f.sign2 = s2;
        f.terms = std::move(terms);
    }

    void build_region_functions() {
        const double v = device_.v_g;
        const double k1 = input_.k1;
        const double k2 = input_.k2;
        const double k = k1 + k2;
        const double eg = device_.emitter.omega_eg / v;
        const double g0 = device_.emitter.omega_g / v;
        const cplx kappa(0.0, linewidth() / (2.0 * v));  // i * (decay wavevector)

        const cplx t1 = first_.t, t2 = second_.t;
        const cplx r1 = first_.r, r2 = second_.r;
        const cplx tt1 = first_.t_tilde, tt2 = second_.t_tilde;
        const cplx rt1 = first_.r_tilde, rt2 = second_.r_tilde;
        const cplx one(1.0, 0.0);
        using M = Mask;

        set_region(Component::PhiRR_i, "phi_RR", "i", -1, -1, {{one, k1, k2}, {one, k2, k1}});
        set_region(Component::PhiRR_ii, "phi_RR", "ii", -1, 1, {{t2, k1, k2}, {t1, k2, k1}});

        const cplx bound_rr = -2.0 * (t1 - one) * (t2 - one);
        set_region(Component::PhiRR_iii, "phi_RR", "iii", 1, 1,
                   {{t1 * t2, k1, k2},
                    {t1 * t2, k2, k1},
                    {bound_rr, eg - kappa, k - eg + kappa, M::X2AboveX1},
                    {bound_rr, k - eg + kappa, eg - kappa, M::X1AboveX2}});

        set_region(Component::PhiRL_i, "phi_RL", "i", -1, -1, {{2.0 * r2, k1, -k2}, {2.0 * r1, k2, -k1}});
        const cplx bound_rl = -4.0 * r1 * (t2 - one);
        set_region(Component::PhiRL_iv, "phi_RL", "iv", 1, -1,
                   {{2.0 * r2 * t1, k1, -k2},
                    {2.0 * r1 * t2, k2, -k1},
                    {bound_rl, k - eg + kappa, -eg + kappa, M::SumPositive},
                    {bound_rl, eg - kappa, -k + eg - kappa, M::SumNegative}});

        const cplx bound_ll = -2.0 * r1 * r2;
        set_region(Component::PhiLL_i, "phi_LL", "i", -1, -1,
                   {{r1 * r2, -k1, -k2},
                    {r1 * r2, -k2, -k1},
                    {bound_ll, -k + eg - kappa, -eg + kappa, M::X2AboveX1},
                    {bound_ll, -eg + kappa, -k + eg - kappa, M::X1AboveX2}});

        set_region(Component::PsiRR_ii, "psi_RR", "ii", -1, 1, {{2.0 * tt2, k1, k2 + g0}, {2.0 * tt1, k2, k1 + g0}});
        set_region(Component::PsiRR_iii, "psi_RR", "iii", 1, 1,
                   {{2.0 * tt2, k1, k2 + g0, M::X2AboveX1},
                    {2.0 * tt1, k2, k1 + g0, M::X2AboveX1},
                    {2.0 * tt2 * t1, k1, k2 + g0, M::X1AboveX2},
                    {2.0 * tt1 * t2, k2, k1 + g0, M::X1AboveX2},
                    {-4.0 * tt1 * (t2 - one), k - eg + kappa, eg + g0 - kappa, M::X1AboveX2}});

        set_region(Component::PsiRL_i, "psi_RL", "i", -1, -1, {{2.0 * rt2, k1, -k2 - g0}, {2.0 * rt1, k2, -k1 - g0}});
        set_region(Component::PsiRL_iv, "psi_RL", "iv", 1, -1,
                   {{2.0 * rt2, k1, -k2 - g0, M::SumNegative},
                    {2.0 * rt1, k2, -k1 - g0, M::SumNegative},
                    {2.0 * rt2 * t1, k1, -k2 - g0, M::SumPositive},
                    {2.0 * rt1 * t2, k2, -k1 - g0, M::SumPositive},
                    {-4.0 * rt1 * (t2 - one), k - eg + kappa, -eg - g0 + kappa, M::SumPositive}});

        const cplx lr = 2.0 * tt1 * r2;
        set_region(Component::PsiLR_ii, "psi_LR", "ii", -1, 1,
                   {{lr, -k1, k2 + g0, M::SumNegative},
                    {lr, -k2, k1 + g0, M::SumNegative},
                    {-2.0 * lr, -k + eg - kappa, eg + g0 - kappa, M::SumNegative}});

        const cplx ll = 2.0 * rt1 * r2;
        set_region(Component::PsiLL_i, "psi_LL", "i", -1, -1,
                   {{ll, -k1, -k2 - g0, M::X2AboveX1},
                    {ll, -k2, -k1 - g0, M::X2AboveX1},
                    {-2.0 * ll, -k + eg - kappa, -eg - g0 + kappa, M::X2AboveX1}});
    }

    void build_line_functions() {
        const double v = device_.v_g;
        const double k1 = input_.k1;
        const double k2 = input_.k2;
        const double k = k1 + k2;
        const double eg = device_.emitter.omega_eg / v;
        const cplx kappa(0.0, linewidth() / (2.0 * v));
        const double coupling = std::sqrt(device_.couplings.gamma_dR * v);  // V_R
        const double omega_eg = device_.emitter.omega_eg;
        const cplx d1(v * k1 - omega_eg, linewidth() / 2.0);
        const cplx d2(v * k2 - omega_eg, linewidth() / 2.0);
        const cplx t1 = first_.t, t2 = second_.t, r1 = first_.r;

        auto set_line = [this](OneExcitation id, std::string_view component, std::string_view region, int sign,
                               std::vector<LineTerm> terms) {
            LineFunction& f = lines_[static_cast<std::size_t>(id)];
            f.id = id;
            f.component = component;
            f.region = region;
            f.sign = sign;
            f.terms = std::move(terms);
        };

        set_line(OneExcitation::VarphiR_below, "varphi_R", "<", -1,
                 {{2.0 * coupling / d2, k1}, {2.0 * coupling / d1, k2}});
        set_line(OneExcitation::VarphiR_above, "varphi_R", ">", 1,
                 {{2.0 * coupling * t1 / d2, k1},
                  {2.0 * coupling * t2 / d1, k2},
                  {2.0 * coupling * cplx(0.0, 2.0 * device_.couplings.gamma_dR) / (d1 * d2), k - eg + kappa}});
        const cplx left = 2.0 * coupling * r1 / d2;
        set_line(OneExcitation::VarphiL_below, "varphi_L", "<", -1,
                 {{left, -k1}, {left, -k2}, {-2.0 * left, -(k - eg) - kappa}});
    }

    DeviceParams device_;
    TwoPhotonInput input_;
    Amplitudes first_;
    Amplitudes second_;
    std::array<RegionFunction, kComponentCount> regions_;
    std::array<LineFunction, kOneExcitationCount> lines_;
};

inline TwoPhotonState build_state(const DeviceParams& p, const TwoPhotonInput& in) { return TwoPhotonState(p, in); }

/// Symmetric table of two-photon detection probabilities P_mn, ports 1..4.
class PortProbabilities {
   public:
    double operator()(int m, int n) const { return table_.at(m - 1).at(n - 1); }

    void set(int m, int n, double value) {
        table_.at(m - 1).at(n - 1) = value;
        table_.at(n - 1).at(m - 1) = value;
    }

    /// Sum over unordered port pairs m <= n.
    double total() const {
        double sum = 0.0;
        for (int m = 1; m <= 4; ++m) {
            for (int n = m; n <= 4; ++n) {
                sum += (*this)(m, n);
            }
        }
        return sum;
    }

   private:
    std::array<std::array<double, 4>, 4> table_{};
};

/// Plane-wave detection probabilities for two photons entering port 1.
inline PortProbabilities detection_probabilities(const DeviceParams& p, const TwoPhotonInput& in) {
    p.validate();
    in.validate();
    const Amplitudes a = amplitudes_forward(p, p.v_g * in.k1);
    const Amplitudes b = amplitudes_forward(p, p.v_g * in.k2);
    const double T1 = a.T(), R1 = a.R(), Tt1 = a.T_tilde(), Rt1 = a.R_tilde();
    const double T2 = b.T(), R2 = b.R(), Tt2 = b.T_tilde(), Rt2 = b.R_tilde();
    PortProbabilities out;
    out.set(1, 1, R1 * R2);
    out.set(1, 2, R1 * T2 + R2 * T1);
    out.set(2, 2, T1 * T2);
    out.set(1, 3, (Tt1 * R2 + Tt2 * R1) / 2.0);
    out.set(1, 4, (Rt1 * R2 + Rt2 * R1) / 2.0);
    out.set(2, 3, (Tt2 * (T1 + 1.0) + Tt1 * (T2 + 1.0)) / 2.0);
    out.set(2, 4, (Rt2 * (T1 + 1.0) + Rt1 * (T2 + 1.0)) / 2.0);
    return out;
}

/// Reflection ratio Q_j = (1 - D_j) / (1 + D_j).
inline double reflection_ratio(double D) { return (1.0 - D) / (1.0 + D); }

/// Detection probabilities of a rectifying device (t(omega_eg) = 0) driven by
/// two resonant photons, in design-space form.
inline PortProbabilities transistor_probabilities(double D_d, double D_u, double P_F) {
    const double p23 = rectifier_efficiency(D_d, D_u, P_F);
    const double qd = reflection_ratio(D_d);
    // Q_u diverges at D_u = -1 where P_23 = 0; the product is the mirrored
    // efficiency there.
    const double p24 = D_u > -1.0 ? reflection_ratio(D_u) * p23 : rectifier_efficiency(D_d, -D_u, P_F);
    PortProbabilities out;
    out.set(2, 3, p23);
    out.set(1, 1, qd * qd);
    out.set(1, 3, qd * p23);
    out.set(2, 4, p24);
    out.set(1, 4, qd * p24);
    return out;
}

}  // namespace chiral

#endif  // CHIRAL_TWOPHOTON_HPP_

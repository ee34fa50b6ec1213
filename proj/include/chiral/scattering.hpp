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

#ifndef CHIRAL_SCATTERING_HPP_
#define CHIRAL_SCATTERING_HPP_

#include <cmath>
#include <complex>
#include <limits>
#include <utility>

#include "chiral/errors.hpp"
#include "chiral/params.hpp"

namespace chiral {

using cplx = std::complex<double>;

/// Single-photon scattering amplitudes for a photon entering through port 1
/// (right-moving, lower waveguide) with the emitter in |g>.
///
///   t        -> port 2 (transmitted)
///   r        -> port 1 (reflected)
///   t_tilde  -> port 3 (rectified, right-moving in the upper waveguide)
///   r_tilde  -> port 4 (rectified, left-moving in the upper waveguide)
///
/// Phases are those of the closed forms: an ideal chiral pass-through gives
/// t = -1.
struct Amplitudes {
    cplx t;
    cplx r;
    cplx t_tilde;
    cplx r_tilde;
    double omega = 0.0;

    double T() const { return std::norm(t); }
    double R() const { return std::norm(r); }
    double T_tilde() const { return std::norm(t_tilde); }
    double R_tilde() const { return std::norm(r_tilde); }
    double total() const { return T() + R() + T_tilde() + R_tilde(); }
};

struct DiodeReport {
    double R = 0.0;     // reflection probability along l -> r
    double T_rl = 0.0;  // transmission probability along r -> l
};

/// Relative slack used when deciding whether P_F sits on the threshold 1/D_d.
inline constexpr double kThresholdTolerance = 1e-12;

namespace detail {

inline Amplitudes closed_form_amplitudes(double gamma_in, double gamma_out, double gamma_uR, double gamma_uL,
                                         double gamma_star, double omega_eg, double omega) {
    const double detuning = omega - omega_eg;
    const double width = gamma_in + gamma_out + gamma_uR + gamma_uL + gamma_star;
    const cplx denominator(detuning, width / 2.0);
    if (denominator == cplx(0.0, 0.0)) {
        throw SingularSystemError("scattering amplitudes undefined: uncoupled lossless emitter driven on resonance");
    }
    const cplx minus_i(0.0, -1.0);
    Amplitudes a;
    a.omega = omega;
    a.t = cplx(detuning, (gamma_star + gamma_out - gamma_in + gamma_uR + gamma_uL) / 2.0) / denominator;
    a.r = minus_i * std::sqrt(gamma_in * gamma_out) / denominator;
    a.t_tilde = minus_i * std::sqrt(gamma_in * gamma_uR) / denominator;
    a.r_tilde = minus_i * std::sqrt(gamma_in * gamma_uL) / denominator;
    return a;
}

// Margin P_F * D_d - 1, snapped to zero within the threshold tolerance.
// Throws when the rectification condition cannot be met.
inline double threshold_margin(double D_d, double P_F) {
    if (!(D_d > 0.0)) {
        throw InfeasibleDesignError("rectification needs D_d > 0");
    }
    if (D_d > 1.0) {
        throw InvalidDesignError("directionality must lie in [-1, 1]");
    }
    if (!(P_F > 0.0)) {
        throw InvalidDesignError("Purcell factor must be positive");
    }
    if (std::isinf(P_F)) {
        return std::numeric_limits<double>::infinity();
    }
    double margin = P_F * D_d - 1.0;
    if (std::abs(margin) <= kThresholdTolerance * std::max(1.0, P_F * D_d)) {
        return 0.0;
    }
    if (margin < 0.0) {
        throw InfeasibleDesignError("Purcell factor below the rectification threshold 1/D_d");
    }
    return margin;
}

}  // namespace detail

/// Amplitudes for a photon entering through port 1 at energy omega.
inline Amplitudes amplitudes_forward(const DeviceParams& p, double omega) {
    p.validate();
    const CouplingSet& c = p.couplings;
    return detail::closed_form_amplitudes(c.gamma_dR, c.gamma_dL, c.gamma_uR, c.gamma_uL, p.emitter.gamma_star,
                                          p.emitter.omega_eg, omega);
}

/// Amplitudes for a photon entering through port 2 (path r -> l). A
/// left-moving photon sees the device with gamma_dR and gamma_dL exchanged;
/// field meanings are kept per port: t -> port 1, r -> port 2, t_tilde ->
/// port 3, r_tilde -> port 4.
inline Amplitudes amplitudes_backward(const DeviceParams& p, double omega) {
    p.validate();
    const CouplingSet& c = p.couplings;
    return detail::closed_form_amplitudes(c.gamma_dL, c.gamma_dR, c.gamma_uR, c.gamma_uL, p.emitter.gamma_star,
                                          p.emitter.omega_eg, omega);
}

/// Backward-path amplitudes at resonance expressed through the forward ones:
/// r_{r->l} = r_{l->r}, and the rectified amplitudes scale by
/// sqrt(gamma_dL / gamma_dR). t_{r->l} is the exact mirrored amplitude; on the
/// rectification manifold t(omega_eg) = 0 it equals 1 - R_{l->r}.
inline Amplitudes amplitudes_backward_resonant(const DeviceParams& p) {
    p.validate();
    const CouplingSet& c = p.couplings;
    if (!(c.gamma_dR > 0.0)) {
        throw SingularSystemError("backward resonant amplitudes need gamma_dR > 0");
    }
    const double omega = p.emitter.omega_eg;
    const Amplitudes forward = amplitudes_forward(p, omega);
    const double scale = std::sqrt(c.gamma_dL / c.gamma_dR);
    Amplitudes b;
    b.omega = omega;
    b.t = amplitudes_backward(p, omega).t;
    b.r = forward.r;
    b.t_tilde = forward.t_tilde * scale;
    b.r_tilde = forward.r_tilde * scale;
    return b;
}

/// Total upper-waveguide rate that cancels t(omega_eg): gamma_d D_d - Gamma*.
inline double rectification_gamma_u(double gamma_d, double D_d, double gamma_star) {
    if (!(gamma_d > 0.0)) {
        throw InvalidDesignError("rectification needs gamma_d > 0");
    }
    if (!(std::abs(D_d) <= 1.0)) {
        throw InvalidDesignError("directionality must lie in [-1, 1]");
    }
    if (!(gamma_star >= 0.0)) {
        throw InvalidDesignError("gamma_star must be non-negative");
    }
    const double gamma_u = gamma_d * D_d - gamma_star;
    if (!(gamma_u > 0.0)) {
        throw InfeasibleDesignError("rectification infeasible: gamma_d * D_d <= gamma_star (P_F below 1/D_d)");
    }
    return gamma_u;
}

/// Minimum Purcell factor for which t(omega_eg) = 0 is reachable.
inline double purcell_threshold(double D_d) {
    if (!(D_d > 0.0)) {
        throw InfeasibleDesignError("rectification impossible for D_d <= 0");
    }
    if (D_d > 1.0) {
        throw InvalidDesignError("directionality must lie in [-1, 1]");
    }
    return 1.0 / D_d;
}

inline bool rectification_feasible(double D_d, double P_F) {
    try {
        detail::threshold_margin(D_d, P_F);
        return true;
    } catch (const InfeasibleDesignError&) {
        return false;
    }
}

/// Total upper rate gamma_d (D_d P_F - 1) / (P_F + 1) of the design whose
/// resonant transmission vanishes.
inline double rectified_gamma_u(double D_d, double P_F, double gamma_d) {
    const double margin = detail::threshold_margin(D_d, P_F);
    if (std::isinf(P_F)) {
        return gamma_d * D_d;
    }
    return gamma_d * margin / (P_F + 1.0);
}

/// Explicit device on the rectification manifold for the given design.
inline DeviceParams rectifier_device(double D_d, double D_u, double P_F, double gamma_d = 1.0,
                                     double omega_eg = 0.0, double omega_g = 0.0) {
    DesignPoint d{D_d, D_u, P_F, gamma_d};
    return from_design(d, rectified_gamma_u(D_d, P_F, gamma_d), omega_eg, omega_g);
}

/// Resonant rectification probability |t_tilde(omega_eg)|^2 under t = 0.
inline double rectifier_efficiency(double D_d, double D_u, double P_F) {
    if (!(std::abs(D_u) <= 1.0)) {
        throw InvalidDesignError("directionality must lie in [-1, 1]");
    }
    const double margin = detail::threshold_margin(D_d, P_F);
    const double ratio = (1.0 + D_u) / (1.0 + D_d);
    if (std::isinf(P_F)) {
        return ratio * D_d;
    }
    return ratio * margin / (P_F + 1.0);
}

/// Reflection probability along l -> r of a device with t(omega_eg) = 0.
inline double diode_reflection(double D_d) {
    if (!(D_d > 0.0)) {
        throw InfeasibleDesignError("diode operation needs D_d > 0");
    }
    if (D_d > 1.0) {
        throw InvalidDesignError("directionality must lie in [-1, 1]");
    }
    return (1.0 - D_d) / (1.0 + D_d);
}

inline DiodeReport diode_report(double D_d) {
    DiodeReport d;
    d.R = diode_reflection(D_d);
    d.T_rl = (1.0 - d.R) * (1.0 - d.R);
    return d;
}

}  // namespace chiral

#endif  // CHIRAL_SCATTERING_HPP_

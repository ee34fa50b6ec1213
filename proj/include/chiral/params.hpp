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

#ifndef CHIRAL_PARAMS_HPP_
#define CHIRAL_PARAMS_HPP_

#include <cmath>
#include <limits>
#include <string>

#include "chiral/errors.hpp"

namespace chiral {

// Units: hbar = 1, v_g = 1 unless set otherwise. Rates and energies share the
// unit of a caller-chosen reference rate.

enum class Waveguide { Lower, Upper };

/// Decay rates gamma_{j alpha} of |e> into the right/left modes of the lower
/// (d) and upper (u) waveguides.
struct CouplingSet {
    double gamma_dR = 0.0;
    double gamma_dL = 0.0;
    double gamma_uR = 0.0;
    double gamma_uL = 0.0;

    double gamma_d() const { return gamma_dR + gamma_dL; }
    double gamma_u() const { return gamma_uR + gamma_uL; }
    double total() const { return gamma_d() + gamma_u(); }
    double right(Waveguide j) const { return j == Waveguide::Lower ? gamma_dR : gamma_uR; }
    double left(Waveguide j) const { return j == Waveguide::Lower ? gamma_dL : gamma_uL; }

    void validate() const {
        if (!(gamma_dR >= 0.0 && gamma_dL >= 0.0 && gamma_uR >= 0.0 && gamma_uL >= 0.0)) {
            throw InvalidDesignError("coupling rates must be finite and non-negative");
        }
        if (!std::isfinite(total())) {
            throw InvalidDesignError("coupling rates must be finite");
        }
    }
};

struct EmitterSpec {
    double omega_eg = 0.0;    // |g> <-> |e> transition energy
    double omega_g = 0.0;     // ground-state energy; only enters two-photon phases
    double gamma_star = 0.0;  // free-space loss rate

    void validate() const {
        if (!std::isfinite(omega_eg) || !std::isfinite(omega_g)) {
            throw InvalidDesignError("emitter energies must be finite");
        }
        if (!(gamma_star >= 0.0) || !std::isfinite(gamma_star)) {
            throw InvalidDesignError("gamma_star must be finite and non-negative");
        }
    }
};

struct DeviceParams {
    CouplingSet couplings;
    EmitterSpec emitter;
    double v_g = 1.0;

    void validate() const {
        couplings.validate();
        emitter.validate();
        if (!(v_g > 0.0) || !std::isfinite(v_g)) {
            throw InvalidDesignError("group velocity must be positive");
        }
    }

    /// Full width of |e>: waveguide rates plus free-space loss.
    double linewidth() const { return couplings.total() + emitter.gamma_star; }

    bool lossless() const { return emitter.gamma_star == 0.0; }

    DeviceParams without_loss() const {
        DeviceParams p = *this;
        p.emitter.gamma_star = 0.0;
        return p;
    }
};

/// Device described by directionalities and Purcell factor. P_F may be
/// +infinity, meaning a lossless emitter.
struct DesignPoint {
    double D_d = 1.0;
    double D_u = 1.0;
    double P_F = std::numeric_limits<double>::infinity();
    double gamma_d = 1.0;

    void validate() const {
        if (!(std::abs(D_d) <= 1.0) || !(std::abs(D_u) <= 1.0)) {
            throw InvalidDesignError("directionalities must lie in [-1, 1]");
        }
        if (!(P_F > 0.0)) {
            throw InvalidDesignError("Purcell factor must be positive");
        }
        if (!(gamma_d > 0.0) || !std::isfinite(gamma_d)) {
            throw InvalidDesignError("gamma_d must be positive");
        }
    }
};

/// Inverted-W level scheme driven by two off-resonant classical fields. The
/// bare rates are renormalized by the Raman factors |Omega_j|^2 / Delta_j^2.
struct WSystemSpec {
    double Omega_d = 0.0;
    double Omega_u = 0.0;
    double Delta_d = 1.0;
    double Delta_u = 1.0;
    CouplingSet bare;
    EmitterSpec emitter;  // gamma_star here is the bare loss rate
    double v_g = 1.0;
};

inline double directionality(const CouplingSet& c, Waveguide j) {
    double total = c.right(j) + c.left(j);
    if (!(total > 0.0)) {
        throw DegenerateCouplingError(std::string("directionality undefined: zero total coupling in the ") +
                                      (j == Waveguide::Lower ? "lower" : "upper") + " waveguide");
    }
    return (c.right(j) - c.left(j)) / total;
}

inline double purcell_factor(const DeviceParams& p) {
    if (p.emitter.gamma_star == 0.0) {
        throw InfinitePurcellError("Purcell factor is infinite for a lossless emitter (gamma_star = 0)");
    }
    return p.couplings.total() / p.emitter.gamma_star;
}

inline double beta_from_purcell(double purcell) {
    if (!(purcell > 0.0)) {
        throw InvalidDesignError("beta factor needs a positive Purcell factor");
    }
    if (std::isinf(purcell)) {
        return 1.0;
    }
    return 1.0 - 1.0 / (purcell + 1.0);
}

inline double beta_factor(const DeviceParams& p) { return beta_from_purcell(purcell_factor(p)); }

/// Builds the raw-rate device for a design point and a chosen total upper rate.
inline DeviceParams from_design(const DesignPoint& d, double gamma_u, double omega_eg = 0.0,
                                double omega_g = 0.0) {
    d.validate();
    if (!(gamma_u >= 0.0) || !std::isfinite(gamma_u)) {
        throw InvalidDesignError("gamma_u must be finite and non-negative");
    }
    DeviceParams p;
    p.couplings.gamma_dR = d.gamma_d * (1.0 + d.D_d) / 2.0;
    p.couplings.gamma_dL = d.gamma_d * (1.0 - d.D_d) / 2.0;
    p.couplings.gamma_uR = gamma_u * (1.0 + d.D_u) / 2.0;
    p.couplings.gamma_uL = gamma_u * (1.0 - d.D_u) / 2.0;
    p.emitter.gamma_star = std::isinf(d.P_F) ? 0.0 : (d.gamma_d + gamma_u) / d.P_F;
    p.emitter.omega_eg = omega_eg;
    p.emitter.omega_g = omega_g;
    const CouplingSet& c = p.couplings;
    if (c.gamma_dR < 0.0 || c.gamma_dL < 0.0 || c.gamma_uR < 0.0 || c.gamma_uL < 0.0) {
        throw InvalidDesignError("design point reconstructs a negative rate");
    }
    return p;
}

/// True when some drive is not deep in the adiabatic regime (Omega / |Delta| > 0.1).
inline bool raman_adiabaticity_warning(const WSystemSpec& w) {
    return std::abs(w.Omega_d) > 0.1 * std::abs(w.Delta_d) || std::abs(w.Omega_u) > 0.1 * std::abs(w.Delta_u);
}

/// Effective Lambda-system parameters after adiabatic elimination of the
/// driven levels. Directionalities are unchanged.
inline DeviceParams raman_effective(const WSystemSpec& w) {
    if (w.Delta_d == 0.0 || w.Delta_u == 0.0) {
        throw ZeroDetuningError("Raman renormalization needs nonzero drive detunings");
    }
    if (!std::isfinite(w.Delta_d) || !std::isfinite(w.Delta_u) || !std::isfinite(w.Omega_d) ||
        !std::isfinite(w.Omega_u)) {
        throw InvalidDesignError("drive parameters must be finite");
    }
    w.bare.validate();
    w.emitter.validate();
    const double factor_d = (w.Omega_d * w.Omega_d) / (w.Delta_d * w.Delta_d);
    const double factor_u = (w.Omega_u * w.Omega_u) / (w.Delta_u * w.Delta_u);
    DeviceParams p;
    p.couplings.gamma_dR = factor_d * w.bare.gamma_dR;
    p.couplings.gamma_dL = factor_d * w.bare.gamma_dL;
    p.couplings.gamma_uR = factor_u * w.bare.gamma_uR;
    p.couplings.gamma_uL = factor_u * w.bare.gamma_uL;
    p.emitter = w.emitter;
    p.emitter.gamma_star = (factor_d + factor_u) * w.emitter.gamma_star;
    p.v_g = w.v_g;
    return p;
}

}  // namespace chiral

#endif  // CHIRAL_PARAMS_HPP_

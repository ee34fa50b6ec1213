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

#ifndef CHIRAL_ORACLE_HPP_
#define CHIRAL_ORACLE_HPP_

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "chiral/errors.hpp"
#include "chiral/finite_window.hpp"
#include "chiral/parallel.hpp"
#include "chiral/params.hpp"
#include "chiral/scattering.hpp"
#include "chiral/twophoton.hpp"

namespace chiral {

/// One-dimensional lattice for the single-excitation problem. Each of the
/// four chiral channels (lower R/L, upper R/L) is sampled on nodes
/// j = -N..-1, 1..N at x = j a; the emitter sits inside the cell [-a, a].
struct LatticeModel {
    std::size_t sites = 2000;  // N, per side
    double spacing = 1e-3;     // a, in length units
    bool richardson = true;    // combine a and a/2 to cancel the O(a^2) error

    /// Rate that sets the lattice resolution: gamma, or gamma + Gamma* for an
    /// emitter without waveguide coupling.
    static double resolution_rate(const DeviceParams& p) {
        return p.couplings.total() > 0.0 ? p.couplings.total() : p.linewidth();
    }

    /// Lattice with a = factor * v_g / gamma.
    static LatticeModel for_device(const DeviceParams& p, double factor = 1e-3, std::size_t sites = 2000) {
        LatticeModel m;
        m.sites = sites;
        m.spacing = factor * p.v_g / resolution_rate(p);
        return m;
    }

    void validate(const DeviceParams& p) const {
        if (!(resolution_rate(p) > 0.0)) {
            throw InvalidDesignError("lattice oracle needs a coupled or lossy emitter");
        }
        if (sites < 1000) {
            throw InvalidDesignError("lattice needs at least 1000 sites per side");
        }
        if (!(spacing > 0.0) || spacing * resolution_rate(p) / p.v_g > 0.01 * (1.0 + 1e-12)) {
            throw InvalidDesignError("lattice spacing must satisfy 0 < a*gamma/v_g <= 0.01");
        }
    }
};

namespace detail {

// Box-scheme transport per channel; the emitter couples to the average of the
// fields propagated half a cell from each side.
inline Amplitudes solve_lattice(const DeviceParams& p, double omega, std::size_t sites, double a) {
    using Sparse = Eigen::SparseMatrix<cplx>;
    const long N = static_cast<long>(sites);
    const double v = p.v_g;
    const double delta = omega - p.emitter.omega_eg;
    const cplx eps = delta * a / cplx(0.0, 2.0 * v);
    const cplx z = (1.0 - eps) / (1.0 + eps);  // right-mover growth per site
    const cplx iv(0.0, v);

    const CouplingSet& c = p.couplings;
    // Channels: 0 lower R, 1 lower L, 2 upper R, 3 upper L.
    const std::array<double, 4> V = {std::sqrt(c.gamma_dR * v), std::sqrt(c.gamma_dL * v), std::sqrt(c.gamma_uR * v),
                                     std::sqrt(c.gamma_uL * v)};
    const std::array<bool, 4> right = {true, false, true, false};

    const long per_channel = 2 * N;
    const long alpha = 4 * per_channel;
    auto node = [&](int ch, long j) { return ch * per_channel + (j < 0 ? j + N : j + N - 1); };

    std::vector<Eigen::Triplet<cplx>> entries;
    entries.reserve(static_cast<std::size_t>(4 * per_channel * 2 + 16));
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(alpha + 1);
    long row = 0;
    for (int ch = 0; ch < 4; ++ch) {
        if (right[ch]) {
            // Incoming unit plane wave in the lower channel only.
            entries.emplace_back(row, node(ch, -N), 1.0);
            rhs[row] = ch == 0 ? std::pow(z, -static_cast<double>(N)) : cplx(0.0, 0.0);
            ++row;
            for (long j = -N; j <= N - 1; ++j) {
                if (j == -1 || j == 0) continue;
                entries.emplace_back(row, node(ch, j + 1), 1.0 + eps);
                entries.emplace_back(row, node(ch, j), -(1.0 - eps));
                ++row;
            }
            entries.emplace_back(row, node(ch, 1), 1.0 + 2.0 * eps);
            entries.emplace_back(row, node(ch, -1), -(1.0 - 2.0 * eps));
            entries.emplace_back(row, alpha, -V[ch] / iv);
            ++row;
        } else {
            entries.emplace_back(row, node(ch, N), 1.0);
            ++row;
            for (long j = -N; j <= N - 1; ++j) {
                if (j == -1 || j == 0) continue;
                entries.emplace_back(row, node(ch, j + 1), 1.0 - eps);
                entries.emplace_back(row, node(ch, j), -(1.0 + eps));
                ++row;
            }
            entries.emplace_back(row, node(ch, -1), 1.0 + 2.0 * eps);
            entries.emplace_back(row, node(ch, 1), -(1.0 - 2.0 * eps));
            entries.emplace_back(row, alpha, -V[ch] / iv);
            ++row;
        }
    }
    entries.emplace_back(row, alpha, cplx(delta, p.emitter.gamma_star / 2.0));
    for (int ch = 0; ch < 4; ++ch) {
        const cplx from_left = right[ch] ? z : 1.0 / z;   // phi(0-) / phi_{-1}
        const cplx from_right = right[ch] ? 1.0 / z : z;  // phi(0+) / phi_{1}
        entries.emplace_back(row, node(ch, -1), -V[ch] * from_left / 2.0);
        entries.emplace_back(row, node(ch, 1), -V[ch] * from_right / 2.0);
    }

    Sparse A(alpha + 1, alpha + 1);
    A.setFromTriplets(entries.begin(), entries.end());
    A.makeCompressed();
    Eigen::SparseLU<Sparse, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success) {
        throw SingularSystemError("lattice system is singular");
    }
    const Eigen::VectorXcd sol = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !sol.allFinite()) {
        throw SingularSystemError("lattice solve failed");
    }

    // Far-field values referenced back to x = 0 through the lattice mode.
    const cplx zN = std::pow(z, static_cast<double>(N));
    Amplitudes out;
    out.omega = omega;
    out.t = sol[node(0, N)] / zN;
    out.r = sol[node(1, -N)] / zN;
    out.t_tilde = sol[node(2, N)] / zN;
    out.r_tilde = sol[node(3, -N)] / zN;
    return out;
}

inline Amplitudes extrapolate(const Amplitudes& coarse, const Amplitudes& fine) {
    Amplitudes out = fine;
    out.t = (4.0 * fine.t - coarse.t) / 3.0;
    out.r = (4.0 * fine.r - coarse.r) / 3.0;
    out.t_tilde = (4.0 * fine.t_tilde - coarse.t_tilde) / 3.0;
    out.r_tilde = (4.0 * fine.r_tilde - coarse.r_tilde) / 3.0;
    return out;
}

}  // namespace detail

/// Raw lattice amplitudes at spacing model.spacing (no extrapolation).
inline Amplitudes lattice_amplitudes(const DeviceParams& p, double omega, const LatticeModel& model) {
    p.validate();
    model.validate(p);
    return detail::solve_lattice(p, omega, model.sites, model.spacing);
}

/// Single-photon amplitudes from the lattice; with model.richardson the
/// spacings a and a/2 are combined.
inline Amplitudes oracle_amplitudes(const DeviceParams& p, double omega, const LatticeModel& model) {
    p.validate();
    model.validate(p);
    const Amplitudes coarse = detail::solve_lattice(p, omega, model.sites, model.spacing);
    if (!model.richardson) {
        return coarse;
    }
    const Amplitudes fine = detail::solve_lattice(p, omega, 2 * model.sites, model.spacing / 2.0);
    return detail::extrapolate(coarse, fine);
}

inline double max_amplitude_error(const Amplitudes& a, const Amplitudes& b) {
    return std::max({std::abs(a.t - b.t), std::abs(a.r - b.r), std::abs(a.t_tilde - b.t_tilde),
                     std::abs(a.r_tilde - b.r_tilde)});
}

/// Finite-window detection probabilities; requires L*gamma/v_g >= 100.
inline PortProbabilities oracle_pmn(const DeviceParams& p, const TwoPhotonInput& in, double L,
                                    const WindowOptions& opts = {}) {
    p.validate();
    check_window(p, L, 100.0);
    return finite_window_probabilities(p, in, L, opts).probabilities;
}

/// One row of an oracle report.
struct VerificationRow {
    std::string point;  // parameter point description
    std::string quantity;
    double analytic = 0.0;
    double oracle = 0.0;
    double abs_error = 0.0;
};

/// A random lossy device with linewidth 1 and a detuning in [-5 gamma, 5 gamma].
struct RandomPoint {
    DeviceParams device;
    double omega = 0.0;
};

inline RandomPoint random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::array<double, 4> rates{};
    for (double& r : rates) r = unit(rng);
    double loss = 0.3 * unit(rng);
    const double total = rates[0] + rates[1] + rates[2] + rates[3] + loss;
    RandomPoint pt;
    pt.device.couplings = {rates[0] / total, rates[1] / total, rates[2] / total, rates[3] / total};
    pt.device.emitter.gamma_star = loss / total;
    pt.device.emitter.omega_eg = 2.0 * unit(rng) - 1.0;
    pt.omega = pt.device.emitter.omega_eg + (10.0 * unit(rng) - 5.0) * pt.device.couplings.total();
    return pt;
}

inline std::string describe(const DeviceParams& p, double omega) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "gdR=%.6g gdL=%.6g guR=%.6g guL=%.6g G*=%.6g weg=%.6g w=%.6g",
                  p.couplings.gamma_dR, p.couplings.gamma_dL, p.couplings.gamma_uR, p.couplings.gamma_uL,
                  p.emitter.gamma_star, p.emitter.omega_eg, omega);
    return buf;
}

/// Lattice amplitudes against the closed forms at `count` random points.
/// Rows are ordered by point, then t, r, t_tilde, r_tilde.
inline std::vector<VerificationRow> oracle_verification(std::size_t count, std::uint64_t seed, double factor = 1e-3,
                                                        unsigned threads = 1) {
    std::mt19937_64 rng(seed);
    std::vector<RandomPoint> points;
    for (std::size_t i = 0; i < count; ++i) points.push_back(random_point(rng));
    std::vector<VerificationRow> rows(4 * count);
    parallel_for(count, threads, [&](std::size_t i) {
        const RandomPoint& pt = points[i];
        const Amplitudes exact = amplitudes_forward(pt.device, pt.omega);
        const Amplitudes lat = oracle_amplitudes(pt.device, pt.omega, LatticeModel::for_device(pt.device, factor));
        const std::array<const char*, 4> names = {"t", "r", "t_tilde", "r_tilde"};
        const std::array<cplx, 4> a = {exact.t, exact.r, exact.t_tilde, exact.r_tilde};
        const std::array<cplx, 4> b = {lat.t, lat.r, lat.t_tilde, lat.r_tilde};
        for (std::size_t q = 0; q < 4; ++q) {
            VerificationRow& row = rows[4 * i + q];
            row.point = describe(pt.device, pt.omega);
            row.quantity = names[q];
            row.analytic = std::abs(a[q]);
            row.oracle = std::abs(b[q]);
            row.abs_error = std::abs(a[q] - b[q]);
        }
    });
    return rows;
}

/// Largest deviation of a named relation of the eigenstate.
struct ResidualEntry {
    std::string check;
    double max_residual = 0.0;
};

namespace detail {

inline int direction_of(char c) { return c == 'R' ? 1 : -1; }

}  // namespace detail

/// Residuals of the eigenstate: bulk transport equations (central
/// differences at step h, sampled away from seams), the jump conditions at
/// x = 0 and the emitter equations for the one-excitation pieces.
inline std::vector<ResidualEntry> wavefunction_residuals(const TwoPhotonState& s, double h = 0.0,
                                                         std::size_t samples = 32, std::uint64_t seed = 1) {
    const DeviceParams& p = s.device();
    const double v = p.v_g;
    if (!(h > 0.0)) h = 1e-3 * v / s.linewidth();
    const cplx I(0.0, 1.0);
    const double E = s.total_energy();
    const double wg = p.emitter.omega_g;
    const CouplingSet& c = p.couplings;
    const double VR = std::sqrt(c.gamma_dR * v), VL = std::sqrt(c.gamma_dL * v);
    const double WR = std::sqrt(c.gamma_uR * v), WL = std::sqrt(c.gamma_uL * v);
    const double scale = v / s.linewidth();  // correlation length

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mag(0.05 * scale, 3.0 * scale);
    std::vector<ResidualEntry> out;

    for (const RegionFunction& f : s.regions()) {
        const bool photon_pair = f.component[1] == 'h';  // phi_*
        const double energy = photon_pair ? E : E + wg;
        const int e1 = detail::direction_of(f.component[4]);
        const int e2 = detail::direction_of(f.component[5]);
        double worst = 0.0;
        std::size_t taken = 0;
        while (taken < samples) {
            const double x1 = f.sign1 * mag(rng), x2 = f.sign2 * mag(rng);
            const double gap = 10.0 * h;
            if (std::abs(x1 - x2) < gap || std::abs(x1 + x2) < gap) continue;
            // Five-point stencils: O(h^4), so fast plane-wave phases stay resolved.
            const cplx d1 = (8.0 * (f(x1 + h, x2) - f(x1 - h, x2)) - (f(x1 + 2.0 * h, x2) - f(x1 - 2.0 * h, x2))) /
                            (12.0 * h);
            const cplx d2 = (8.0 * (f(x1, x2 + h) - f(x1, x2 - h)) - (f(x1, x2 + 2.0 * h) - f(x1, x2 - 2.0 * h))) /
                            (12.0 * h);
            const cplx r = energy * f(x1, x2) + I * v * (double(e1) * d1 + double(e2) * d2);
            worst = std::max(worst, std::abs(r));
            ++taken;
        }
        out.push_back({"bulk " + std::string(f.component) + "^(" + std::string(f.region) + ")", worst});
    }

    auto R = [&](Component id) -> const RegionFunction& { return s.region(id); };
    auto Lf = [&](OneExcitation id) -> const LineFunction& { return s.line(id); };
    using C = Component;
    using O = OneExcitation;
    struct Acc {
        std::string name;
        double worst = 0.0;
    };
    std::vector<Acc> acc;
    auto record = [&](const std::string& name, cplx value) {
        for (auto& a : acc) {
            if (a.name == name) {
                a.worst = std::max(a.worst, std::abs(value));
                return;
            }
        }
        acc.push_back({name, std::abs(value)});
    };

    const cplx lw(0.0, p.emitter.gamma_star / 2.0);
    const double detune = E - p.emitter.omega_eg;
    const double fd = 1e-5 * scale;
    auto deriv = [&](const LineFunction& g, double x) { return (g(x + fd) - g(x - fd)) / (2.0 * fd); };
    std::uniform_real_distribution<double> pos(0.1 * scale, 3.0 * scale);
    for (std::size_t n = 0; n < samples; ++n) {
        const double xp = pos(rng), xm = -pos(rng);
        record("jump phi_RR (ii)-(i) at x2=0",
               I * v * (R(C::PhiRR_ii)(xm, 0.0) - R(C::PhiRR_i)(xm, 0.0)) - VR / 2.0 * Lf(O::VarphiR_below)(xm));
        record("jump phi_RR (iii)-(ii) at x1=0",
               I * v * (R(C::PhiRR_iii)(0.0, xp) - R(C::PhiRR_ii)(0.0, xp)) - VR / 2.0 * Lf(O::VarphiR_above)(xp));
        record("source phi_LL at x2=0", I * v * R(C::PhiLL_i)(xm, 0.0) - VL / 2.0 * Lf(O::VarphiL_below)(xm));
        record("source phi_RL^(i) at x2=0", I * v * R(C::PhiRL_i)(xm, 0.0) - VL * Lf(O::VarphiR_below)(xm));
        record("source phi_RL^(iv) at x2=0", I * v * R(C::PhiRL_iv)(xp, 0.0) - VL * Lf(O::VarphiR_above)(xp));
        record("jump phi_RL (iv)-(i) at x1=0",
               I * v * (R(C::PhiRL_iv)(0.0, xm) - R(C::PhiRL_i)(0.0, xm)) - VR * Lf(O::VarphiL_below)(xm));
        record("source psi_RR^(ii) at y=0", I * v * R(C::PsiRR_ii)(xm, 0.0) - WR * Lf(O::VarphiR_below)(xm));
        record("source psi_RR^(iii) at y=0", I * v * R(C::PsiRR_iii)(xp, 0.0) - WR * Lf(O::VarphiR_above)(xp));
        record("continuity psi_RR at x=0", R(C::PsiRR_iii)(0.0, xp) - R(C::PsiRR_ii)(0.0, xp));
        record("source psi_RL^(i) at y=0", I * v * R(C::PsiRL_i)(xm, 0.0) - WL * Lf(O::VarphiR_below)(xm));
        record("source psi_RL^(iv) at y=0", I * v * R(C::PsiRL_iv)(xp, 0.0) - WL * Lf(O::VarphiR_above)(xp));
        record("continuity psi_RL at x=0", R(C::PsiRL_iv)(0.0, xm) - R(C::PsiRL_i)(0.0, xm));
        record("source psi_LL at y=0", I * v * R(C::PsiLL_i)(xm, 0.0) - WL * Lf(O::VarphiL_below)(xm));
        record("source psi_LR at y=0", I * v * R(C::PsiLR_ii)(xm, 0.0) - WR * Lf(O::VarphiL_below)(xm));
        record("boundary psi_LR at x=0", R(C::PsiLR_ii)(0.0, xp));
        record("boundary psi_LL at x=0", R(C::PsiLL_i)(0.0, xm));
        record("symmetry phi_RR^(iii)", R(C::PhiRR_iii)(1.1 * scale, xp) - R(C::PhiRR_iii)(xp, 1.1 * scale));
        record("symmetry phi_LL^(i)", R(C::PhiLL_i)(-1.1 * scale, xm) - R(C::PhiLL_i)(xm, -1.1 * scale));

        const LineFunction& above = Lf(O::VarphiR_above);
        const LineFunction& below = Lf(O::VarphiR_below);
        const LineFunction& left = Lf(O::VarphiL_below);
        // The psi pieces are read just inside their own quadrant.
        const double tiny = 1e-12 * scale;
        record("emitter equation varphi_R^>",
               (detune + lw) * above(xp) + I * v * deriv(above, xp) -
                   (VR * (R(C::PhiRR_iii)(0.0, xp) + R(C::PhiRR_ii)(0.0, xp)) + VL * R(C::PhiRL_iv)(xp, 0.0) / 2.0 +
                    WR * R(C::PsiRR_iii)(xp, tiny) / 2.0 + WL * R(C::PsiRL_iv)(xp, -tiny) / 2.0));
        record("emitter equation varphi_R^<",
               (detune + lw) * below(xm) + I * v * deriv(below, xm) -
                   (VR * (R(C::PhiRR_ii)(xm, 0.0) + R(C::PhiRR_i)(xm, 0.0)) + VL * R(C::PhiRL_i)(xm, 0.0) / 2.0 +
                    WR * R(C::PsiRR_ii)(xm, 0.0) / 2.0 + WL * R(C::PsiRL_i)(xm, 0.0) / 2.0));
        record("emitter equation varphi_L^<",
               (detune + lw) * left(xm) - I * v * deriv(left, xm) -
                   (VL * R(C::PhiLL_i)(xm, 0.0) + VR * (R(C::PhiRL_iv)(0.0, xm) + R(C::PhiRL_i)(0.0, xm)) / 2.0 +
                    WR * R(C::PsiLR_ii)(xm, 0.0) / 2.0 + WL * R(C::PsiLL_i)(xm, 0.0) / 2.0));
    }
    for (const auto& a : acc) out.push_back({a.name, a.worst});
    return out;
}

}  // namespace chiral

#endif  // CHIRAL_ORACLE_HPP_

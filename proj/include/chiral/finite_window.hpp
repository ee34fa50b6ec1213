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

#ifndef CHIRAL_FINITE_WINDOW_HPP_
#define CHIRAL_FINITE_WINDOW_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "chiral/errors.hpp"
#include "chiral/parallel.hpp"
#include "chiral/params.hpp"
#include "chiral/twophoton.hpp"

namespace chiral {

/// Grid spacing used when WindowOptions::spacing is left at 0, in units of
/// v_g / (gamma + Gamma*).
inline constexpr double kDefaultSpacingFactor = 0.05;

struct WindowOptions {
    double spacing = 0.0;  // 0 selects kDefaultSpacingFactor * v_g / linewidth
    unsigned threads = 1;
};

namespace detail {

inline double resolve_spacing(const DeviceParams& p, const WindowOptions& opts) {
    if (opts.spacing > 0.0) {
        return opts.spacing;
    }
    return kDefaultSpacingFactor * p.v_g / p.linewidth();
}

/// Number of intervals covering [0, half_width] with spacing at most h.
inline std::size_t interval_count(double half_width, double h) {
    const double n = std::ceil(half_width / h - 1e-9);
    return static_cast<std::size_t>(std::max(1.0, n));
}

// Adds start * ratio^m to slot (first + dir * m), m in [0, count). Four
// interleaved chains keep the recurrence short and the loop pipelined.
inline void add_geometric(double* re, double* im, long first, long count, long dir, cplx start, cplx ratio) {
    if (count <= 0) {
        return;
    }
    const cplx ratio2 = ratio * ratio;
    const cplx ratio4 = ratio2 * ratio2;
    cplx lane[4] = {start, start * ratio, start * ratio2, start * ratio2 * ratio};
    long m = 0;
    for (; m + 4 <= count; m += 4) {
        for (int l = 0; l < 4; ++l) {
            const long idx = first + dir * (m + l);
            re[idx] += lane[l].real();
            im[idx] += lane[l].imag();
            lane[l] *= ratio4;
        }
    }
    for (int l = 0; m < count; ++m, ++l) {
        const long idx = first + dir * m;
        re[idx] += lane[l].real();
        im[idx] += lane[l].imag();
    }
}

struct MaskRange {
    long lo;        // first fully weighted column
    long hi;        // last fully weighted column
    long boundary;  // half-weighted column, or -1
};

// Columns j in [0, n] where the mask is active for row i of quadrant (s1, s2).
// With x1 = s1 i h and x2 = s2 j h every mask reads A j + B > 0.
inline MaskRange mask_range(Mask mask, long i, long n, int s1, int s2) {
    long A = 0, B = 0;
    switch (mask) {
        case Mask::None:
            return {0, n, -1};
        case Mask::X2AboveX1:
            A = s2, B = -s1 * i;
            break;
        case Mask::X1AboveX2:
            A = -s2, B = s1 * i;
            break;
        case Mask::SumPositive:
            A = s2, B = s1 * i;
            break;
        case Mask::SumNegative:
            A = -s2, B = -s1 * i;
            break;
    }
    // A = +1: j > -B;  A = -1: j < B.
    const long edge = A > 0 ? -B : B;
    MaskRange r{};
    if (A > 0) {
        r.lo = std::max(0L, edge + 1);
        r.hi = n;
    } else {
        r.lo = 0;
        r.hi = std::min(n, edge - 1);
    }
    r.boundary = (edge >= 0 && edge <= n) ? edge : -1;
    return r;
}

inline double trapezoid_weight(long j, long n) { return (j == 0 || j == n) ? 0.5 : 1.0; }

}  // namespace detail

/// Trapezoid integral of |f|^2 over the quadrant square of side half_width
/// that carries f. Mask seams fall on grid lines and take half weight.
inline double integrate_region_norm(const RegionFunction& f, double half_width, double spacing, unsigned threads = 1) {
    const long n = static_cast<long>(detail::interval_count(half_width, spacing));
    const double h = half_width / static_cast<double>(n);
    const int s1 = f.sign1, s2 = f.sign2;
    const cplx I(0.0, 1.0);

    const std::size_t nterms = f.terms.size();
    std::vector<cplx> forward(nterms), backward(nterms);
    std::vector<bool> decaying(nterms);
    for (std::size_t k = 0; k < nterms; ++k) {
        forward[k] = std::exp(I * f.terms[k].q * (s2 * h));
        backward[k] = 1.0 / forward[k];
        decaying[k] = std::abs(forward[k]) <= 1.0;
    }

    std::vector<double> row_sums(static_cast<std::size_t>(n + 1), 0.0);
    const std::size_t blocks = std::min<std::size_t>(static_cast<std::size_t>(n + 1), 64);
    parallel_for(blocks, threads, [&](std::size_t b) {
        const long begin = static_cast<long>((n + 1) * b / blocks);
        const long end = static_cast<long>((n + 1) * (b + 1) / blocks);
        std::vector<double> re(static_cast<std::size_t>(n + 1)), im(static_cast<std::size_t>(n + 1));
        for (long i = begin; i < end; ++i) {
            std::fill(re.begin(), re.end(), 0.0);
            std::fill(im.begin(), im.end(), 0.0);
            const double x1 = s1 * i * h;
            for (std::size_t k = 0; k < nterms; ++k) {
                const PlaneTerm& term = f.terms[k];
                const detail::MaskRange range = detail::mask_range(term.mask, i, n, s1, s2);
                auto value_at = [&](long j) { return term.coefficient * std::exp(I * (term.p * x1 + term.q * (s2 * j * h))); };
                if (range.hi >= range.lo) {
                    const long count = range.hi - range.lo + 1;
                    if (decaying[k]) {
                        detail::add_geometric(re.data(), im.data(), range.lo, count, 1, value_at(range.lo), forward[k]);
                    } else {
                        detail::add_geometric(re.data(), im.data(), range.hi, count, -1, value_at(range.hi), backward[k]);
                    }
                }
                if (range.boundary >= 0) {
                    const cplx v = 0.5 * value_at(range.boundary);
                    re[range.boundary] += v.real();
                    im[range.boundary] += v.imag();
                }
            }
            double sum = 0.0;
            for (long j = 0; j <= n; ++j) {
                sum += detail::trapezoid_weight(j, n) * (re[j] * re[j] + im[j] * im[j]);
            }
            row_sums[static_cast<std::size_t>(i)] = detail::trapezoid_weight(i, n) * sum;
        }
    });
    double total = 0.0;
    for (double s : row_sums) {
        total += s;
    }
    return total * h * h;
}

/// Trapezoid integral of |f|^2 over the half line of length half_width that
/// carries f.
inline double integrate_line_norm(const LineFunction& f, double half_width, double spacing) {
    const long n = static_cast<long>(detail::interval_count(half_width, spacing));
    const double h = half_width / static_cast<double>(n);
    double total = 0.0;
    for (long j = 0; j <= n; ++j) {
        total += detail::trapezoid_weight(j, n) * std::norm(f(f.sign * j * h));
    }
    return total * h;
}

/// Squared norms of the output pieces inside the window [-L/2, L/2]^2.
struct OutputIntegrals {
    double length = 0.0;
    double spacing = 0.0;
    std::array<double, kOutputChannels.size()> channels{};  // multiplicity applied
    double varphi_R_above = 0.0;
    double varphi_L_below = 0.0;

    double two_photon_norm() const {
        double sum = 0.0;
        for (double c : channels) {
            sum += c;
        }
        return sum;
    }
    double norm() const { return two_photon_norm() + varphi_R_above + varphi_L_below; }
};

inline void check_window(const DeviceParams& p, double L, double min_width) {
    const double width = L * p.couplings.total() / p.v_g;
    // Relative slack so that L = min_width * v_g / gamma itself passes.
    if (!(width >= min_width * (1.0 - 1e-12))) {
        throw WindowTooSmallError("window L*gamma/v_g = " + std::to_string(width) + " is below " +
                                  std::to_string(min_width));
    }
}

inline OutputIntegrals integrate_output(const TwoPhotonState& state, double L, const WindowOptions& opts = {}) {
    check_window(state.device(), L, 10.0);
    const double h = detail::resolve_spacing(state.device(), opts);
    OutputIntegrals out;
    out.length = L;
    out.spacing = h;
    for (std::size_t c = 0; c < kOutputChannels.size(); ++c) {
        const OutputChannel& ch = kOutputChannels[c];
        out.channels[c] = ch.multiplicity * integrate_region_norm(state.region(ch.id), L / 2.0, h, opts.threads);
    }
    out.varphi_R_above = integrate_line_norm(state.line(OneExcitation::VarphiR_above), L / 2.0, h);
    out.varphi_L_below = integrate_line_norm(state.line(OneExcitation::VarphiL_below), L / 2.0, h);
    return out;
}

/// Shares of the normalized output carried by the emitter-excited pieces;
/// both vanish as 1/L.
struct OneExcitationShares {
    double varphi_R_above = 0.0;
    double varphi_L_below = 0.0;
};

struct FiniteWindowResult {
    PortProbabilities probabilities;
    OneExcitationShares one_excitation;
    double norm = 0.0;  // lossless-device normalization
};

/// Divides window integrals by a norm; `norm` is the output norm of the
/// lossless device over the same window.
inline FiniteWindowResult normalize_output(const OutputIntegrals& raw, double norm) {
    FiniteWindowResult result;
    result.norm = norm;
    for (std::size_t c = 0; c < kOutputChannels.size(); ++c) {
        const OutputChannel& ch = kOutputChannels[c];
        result.probabilities.set(ch.port_a, ch.port_b, raw.channels[c] / norm);
    }
    result.one_excitation.varphi_R_above = raw.varphi_R_above / norm;
    result.one_excitation.varphi_L_below = raw.varphi_L_below / norm;
    return result;
}

/// Detection probabilities estimated by integrating the eigenstate over a
/// finite window, normalized by the output norm of the lossless device.
inline FiniteWindowResult finite_window_probabilities(const DeviceParams& p, const TwoPhotonInput& in, double L,
                                                      const WindowOptions& opts = {}) {
    const TwoPhotonState state(p, in);
    WindowOptions fixed = opts;
    fixed.spacing = detail::resolve_spacing(p, opts);
    const OutputIntegrals raw = integrate_output(state, L, fixed);
    const double norm = p.lossless() ? raw.norm() : integrate_output(TwoPhotonState(p.without_loss(), in), L, fixed).norm();

    return normalize_output(raw, norm);
}

struct NormScaling {
    double norm = 0.0;  // at the requested L
    double fitted_power = 0.0;
    std::vector<double> lengths;
    std::vector<double> norms;
    std::vector<OutputIntegrals> integrals;  // per rung; empty for the bare device
};

namespace detail {

inline double log_log_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Output norm of the uncoupled device: only phi_RR^(iii) = plane wave pair.
inline double bare_norm(const TwoPhotonInput& in, double L) {
    const double dk = in.k1 - in.k2;
    if (dk == 0.0) {
        return 2.0 * L * L;
    }
    return L * L + 8.0 * (1.0 - std::cos(dk * L / 2.0)) / (dk * dk);
}

}  // namespace detail

/// Output norm over the ladder L, 2L, 4L and the fitted exponent of
/// norm ~ L^power.
inline NormScaling norm_scaling(const DeviceParams& p, const TwoPhotonInput& in, double L, const WindowOptions& opts = {}) {
    p.validate();
    in.validate();
    NormScaling result;
    const bool bare = p.couplings.total() == 0.0;
    if (!bare) {
        check_window(p, L, 10.0);
    } else if (!(L > 0.0)) {
        throw WindowTooSmallError("window length must be positive");
    }
    std::unique_ptr<TwoPhotonState> state;
    if (!bare) {
        state = std::make_unique<TwoPhotonState>(p, in);
    }
    for (double scale : {1.0, 2.0, 4.0}) {
        const double length = scale * L;
        result.lengths.push_back(length);
        if (bare) {
            result.norms.push_back(detail::bare_norm(in, length));
        } else {
            result.integrals.push_back(integrate_output(*state, length, opts));
            result.norms.push_back(result.integrals.back().norm());
        }
    }
    result.norm = result.norms.front();
    result.fitted_power = detail::log_log_slope(result.lengths, result.norms);
    return result;
}

}  // namespace chiral

#endif  // CHIRAL_FINITE_WINDOW_HPP_

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

#ifndef CHIRAL_SWEEP_HPP_
#define CHIRAL_SWEEP_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "chiral/errors.hpp"
#include "chiral/oracle.hpp"
#include "chiral/parallel.hpp"
#include "chiral/params.hpp"
#include "chiral/scattering.hpp"
#include "chiral/twophoton.hpp"
#include "json.hpp"

namespace chiral {

inline constexpr std::size_t kDefaultAxisPoints = 200;

enum class AxisScale { Linear, Log };

struct Axis {
    std::string name;
    double min = 0.0;
    double max = 1.0;
    std::size_t count = kDefaultAxisPoints;
    AxisScale scale = AxisScale::Linear;

    void validate() const {
        if (count < 2) {
            throw ConfigError("axis '" + name + "' needs at least 2 points");
        }
        if (!std::isfinite(min) || !std::isfinite(max) || !(max > min)) {
            throw ConfigError("axis '" + name + "' needs finite bounds with max > min");
        }
        if (scale == AxisScale::Log && !(min > 0.0)) {
            throw ConfigError("log axis '" + name + "' needs a positive minimum");
        }
    }

    /// Grid points; the endpoints are hit exactly.
    std::vector<double> values() const {
        validate();
        std::vector<double> out(count);
        const double last = static_cast<double>(count - 1);
        for (std::size_t i = 0; i < count; ++i) {
            const double f = static_cast<double>(i) / last;
            out[i] = scale == AxisScale::Linear ? min + (max - min) * f
                                                : std::exp(std::log(min) + (std::log(max) - std::log(min)) * f);
        }
        out.front() = min;
        out.back() = max;
        return out;
    }
};

enum class SweepTarget {
    RectifierEfficiency,
    Diode,
    TransistorHeatmap,
    TransistorVsPurcell,
    AmplitudesVsDetuning,
    OracleVerify,
    WavefunctionDump,
};

inline std::string to_string(SweepTarget t) {
    switch (t) {
        case SweepTarget::RectifierEfficiency: return "rectifier-efficiency";
        case SweepTarget::Diode: return "diode";
        case SweepTarget::TransistorHeatmap: return "transistor-heatmap";
        case SweepTarget::TransistorVsPurcell: return "transistor-vs-purcell";
        case SweepTarget::AmplitudesVsDetuning: return "amplitudes-vs-detuning";
        case SweepTarget::OracleVerify: return "oracle-verify";
        case SweepTarget::WavefunctionDump: return "wavefunction-dump";
    }
    return "";
}

inline SweepTarget sweep_target_from_string(const std::string& s) {
    for (auto t : {SweepTarget::RectifierEfficiency, SweepTarget::Diode, SweepTarget::TransistorHeatmap,
                   SweepTarget::TransistorVsPurcell, SweepTarget::AmplitudesVsDetuning, SweepTarget::OracleVerify,
                   SweepTarget::WavefunctionDump}) {
        if (to_string(t) == s) return t;
    }
    throw ConfigError("unknown sweep target '" + s + "'");
}

enum class OutputFormat { Csv, Json };

inline OutputFormat output_format_from_string(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw ConfigError("unknown output format '" + s + "' (expected csv or json)");
}

struct SweepSpec {
    SweepTarget target = SweepTarget::RectifierEfficiency;
    std::vector<Axis> axes;
    std::map<std::string, double> fixed;
    std::optional<DeviceParams> device;  // amplitudes-vs-detuning, wavefunction-dump
    std::string output;                  // empty: caller decides
    OutputFormat format = OutputFormat::Csv;
};

/// Empty cells mark values that do not exist (infeasible designs, line
/// functions without a second coordinate).
using Cell = std::variant<std::monostate, double, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (columns[i] == name) return i;
        }
        throw ConfigError("no column '" + name + "'");
    }
};

inline std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::string csv_cell(const Cell& c) {
    if (std::holds_alternative<double>(c)) return format_number(std::get<double>(c));
    if (std::holds_alternative<bool>(c)) return std::get<bool>(c) ? "true" : "false";
    if (std::holds_alternative<std::string>(c)) {
        const std::string& s = std::get<std::string>(c);
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char ch : s) {
            if (ch == '"') q += '"';
            q += ch;
        }
        return q + "\"";
    }
    return "";
}

inline void write_csv(const Table& t, std::ostream& os) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        os << (i ? "," : "") << t.columns[i];
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << csv_cell(row[i]);
        }
        os << '\n';
    }
}

inline nlohmann::ordered_json to_json(const Table& t) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Cell& c = row[i];
            if (std::holds_alternative<double>(c)) {
                obj[t.columns[i]] = std::get<double>(c);
            } else if (std::holds_alternative<bool>(c)) {
                obj[t.columns[i]] = std::get<bool>(c);
            } else if (std::holds_alternative<std::string>(c)) {
                obj[t.columns[i]] = std::get<std::string>(c);
            } else {
                obj[t.columns[i]] = nullptr;
            }
        }
        rows.push_back(std::move(obj));
    }
    nlohmann::ordered_json out;
    out["columns"] = t.columns;
    out["rows"] = std::move(rows);
    return out;
}

inline void write_json(const Table& t, std::ostream& os) { os << to_json(t).dump(2) << '\n'; }

inline void write_table(const Table& t, OutputFormat f, std::ostream& os) {
    if (f == OutputFormat::Csv) {
        write_csv(t, os);
    } else {
        write_json(t, os);
    }
}

namespace detail {

struct GridParameter {
    std::string name;
    Axis fallback_axis;  // used when neither an axis nor a fixed value is given
    bool axis_by_default;
    double fallback_value;
};

// Resolves every parameter of a closed-form target to a list of values and
// enumerates the cartesian product, first listed axis outermost.
class ParameterGrid {
   public:
    ParameterGrid(const SweepSpec& spec, const std::vector<GridParameter>& params) {
        for (const Axis& a : spec.axes) {
            bool known = false;
            for (const auto& p : params) known = known || p.name == a.name;
            if (!known) {
                throw ConfigError("axis '" + a.name + "' is not a parameter of target " + to_string(spec.target));
            }
            a.validate();
        }
        for (const auto& [key, value] : spec.fixed) {
            bool known = false;
            for (const auto& p : params) known = known || p.name == key;
            if (!known) {
                throw ConfigError("fixed parameter '" + key + "' is not used by target " + to_string(spec.target));
            }
            (void)value;
        }
        // Axis order: explicit axes as given, then default axes in parameter order.
        for (const Axis& a : spec.axes) {
            add(a.name, a.values());
        }
        for (const auto& p : params) {
            if (index_of(p.name) >= 0) continue;
            auto it = spec.fixed.find(p.name);
            if (it != spec.fixed.end()) {
                add(p.name, {it->second});
            } else if (p.axis_by_default) {
                add(p.name, p.fallback_axis.values());
            } else {
                add(p.name, {p.fallback_value});
            }
        }
        size_ = 1;
        for (const auto& v : values_) size_ *= v.size();
    }

    std::size_t size() const { return size_; }

    /// Parameter values of row `row`, keyed by name.
    std::map<std::string, double> at(std::size_t row) const {
        std::map<std::string, double> out;
        for (std::size_t k = values_.size(); k-- > 0;) {
            const std::size_t n = values_[k].size();
            out[names_[k]] = values_[k][row % n];
            row /= n;
        }
        return out;
    }

   private:
    long index_of(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i] == name) return static_cast<long>(i);
        }
        return -1;
    }
    void add(const std::string& name, std::vector<double> values) {
        if (index_of(name) >= 0) throw ConfigError("parameter '" + name + "' given twice");
        names_.push_back(name);
        values_.push_back(std::move(values));
    }

    std::vector<std::string> names_;
    std::vector<std::vector<double>> values_;
    std::size_t size_ = 0;
};

template <typename RowFn>
Table fill_rows(std::vector<std::string> columns, std::size_t n, unsigned threads, RowFn&& fn) {
    Table t;
    t.columns = std::move(columns);
    t.rows.resize(n);
    parallel_for(n, threads, [&](std::size_t i) { t.rows[i] = fn(i); });
    return t;
}

inline double fixed_or(const SweepSpec& spec, const std::string& key, double fallback) {
    auto it = spec.fixed.find(key);
    return it == spec.fixed.end() ? fallback : it->second;
}

inline void reject_unknown_fixed(const SweepSpec& spec, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : spec.fixed) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw ConfigError("fixed parameter '" + key + "' is not used by target " + to_string(spec.target));
        (void)value;
    }
}

inline const Axis* find_axis(const SweepSpec& spec, const std::string& name) {
    for (const Axis& a : spec.axes) {
        if (a.name == name) return &a;
    }
    return nullptr;
}

inline void only_axes(const SweepSpec& spec, std::initializer_list<const char*> allowed) {
    for (const Axis& a : spec.axes) {
        bool ok = false;
        for (const char* n : allowed) ok = ok || a.name == n;
        if (!ok) throw ConfigError("axis '" + a.name + "' is not a parameter of target " + to_string(spec.target));
        a.validate();
    }
}

inline const DeviceParams& require_device(const SweepSpec& spec) {
    if (!spec.device) throw ConfigError("target " + to_string(spec.target) + " needs a device");
    spec.device->validate();
    return *spec.device;
}

}  // namespace detail

/// Rectification efficiency with D_d = D_u = D under t(omega_eg) = 0.
/// Columns: P_F, D, feasible, T_tilde.
inline Table run_fig4a(const SweepSpec& spec, unsigned threads = 1) {
    const detail::ParameterGrid grid(
        spec, {{"P_F", {"P_F", 1.0, 100.0, kDefaultAxisPoints, AxisScale::Log}, true, 0.0},
               {"D", {"D", 0.5, 1.0, kDefaultAxisPoints, AxisScale::Linear}, false, 0.9}});
    return detail::fill_rows({"P_F", "D", "feasible", "T_tilde"}, grid.size(), threads, [&](std::size_t i) {
        auto v = grid.at(i);
        const double pf = v["P_F"], d = v["D"];
        if (!(std::abs(d) <= 1.0) || !(pf > 0.0)) throw ConfigError("rectifier sweep outside the design space");
        std::vector<Cell> row{pf, d};
        if (rectification_feasible(d, pf)) {
            row.push_back(true);
            row.push_back(rectifier_efficiency(d, d, pf));
        } else {
            row.push_back(false);
            row.push_back(std::monostate{});
        }
        return row;
    });
}

/// Diode figures of merit versus D_d. Columns: D_d, feasible, R, T_rl.
inline Table run_fig4b(const SweepSpec& spec, unsigned threads = 1) {
    const detail::ParameterGrid grid(spec, {{"D_d", {"D_d", 0.01, 1.0, kDefaultAxisPoints, AxisScale::Linear}, true, 0.0}});
    return detail::fill_rows({"D_d", "feasible", "R", "T_rl"}, grid.size(), threads, [&](std::size_t i) {
        const double d = grid.at(i)["D_d"];
        if (!(std::abs(d) <= 1.0)) throw ConfigError("diode sweep outside [-1, 1]");
        if (!(d > 0.0)) return std::vector<Cell>{d, false, std::monostate{}, std::monostate{}};
        const DiodeReport r = diode_report(d);
        return std::vector<Cell>{d, true, r.R, r.T_rl};
    });
}

/// Two-photon routing probability P_23 under t(omega_eg) = 0, both for the
/// (D_d, D_u) heatmap and the Purcell-factor sweep. Columns: P_F, D_d, D_u,
/// feasible, P_23.
inline Table run_fig6(const SweepSpec& spec, unsigned threads = 1) {
    std::vector<detail::GridParameter> params;
    if (spec.target == SweepTarget::TransistorVsPurcell) {
        params = {{"P_F", {"P_F", 1.0, 1000.0, kDefaultAxisPoints, AxisScale::Log}, true, 0.0},
                  {"D_d", {}, false, 0.9},
                  {"D_u", {}, false, 0.9}};
    } else {
        params = {{"P_F", {}, false, 20.0},
                  {"D_d", {"D_d", 0.0, 1.0, kDefaultAxisPoints, AxisScale::Linear}, true, 0.0},
                  {"D_u", {"D_u", 0.0, 1.0, kDefaultAxisPoints, AxisScale::Linear}, true, 0.0}};
    }
    const detail::ParameterGrid grid(spec, params);
    return detail::fill_rows({"P_F", "D_d", "D_u", "feasible", "P_23"}, grid.size(), threads, [&](std::size_t i) {
        auto v = grid.at(i);
        const double pf = v["P_F"], dd = v["D_d"], du = v["D_u"];
        if (!(std::abs(dd) <= 1.0) || !(std::abs(du) <= 1.0) || !(pf > 0.0)) {
            throw ConfigError("transistor sweep outside the design space");
        }
        std::vector<Cell> row{pf, dd, du};
        if (rectification_feasible(dd, pf)) {
            row.push_back(true);
            row.push_back(transistor_probabilities(dd, du, pf)(2, 3));
        } else {
            row.push_back(false);
            row.push_back(std::monostate{});
        }
        return row;
    });
}

/// Forward single-photon amplitudes versus detuning omega - omega_eg.
inline Table run_amplitudes_vs_detuning(const SweepSpec& spec, unsigned threads = 1) {
    const DeviceParams& p = detail::require_device(spec);
    detail::reject_unknown_fixed(spec, {});
    detail::only_axes(spec, {"delta"});
    const Axis* given = detail::find_axis(spec, "delta");
    const double w = p.linewidth() > 0.0 ? p.linewidth() : 1.0;
    const Axis axis = given ? *given : Axis{"delta", -5.0 * w, 5.0 * w, kDefaultAxisPoints, AxisScale::Linear};
    const std::vector<double> deltas = axis.values();
    return detail::fill_rows({"delta", "omega", "t_re", "t_im", "r_re", "r_im", "t_tilde_re", "t_tilde_im", "r_tilde_re",
                              "r_tilde_im", "T", "R", "T_tilde", "R_tilde", "total"},
                             deltas.size(), threads, [&](std::size_t i) {
                                 const double omega = p.emitter.omega_eg + deltas[i];
                                 const Amplitudes a = amplitudes_forward(p, omega);
                                 return std::vector<Cell>{deltas[i],       omega,          a.t.real(),
                                                          a.t.imag(),      a.r.real(),     a.r.imag(),
                                                          a.t_tilde.real(), a.t_tilde.imag(), a.r_tilde.real(),
                                                          a.r_tilde.imag(), a.T(),          a.R(),
                                                          a.T_tilde(),     a.R_tilde(),    a.total()};
                             });
}

/// Lattice oracle against the closed-form amplitudes at random points.
inline Table run_oracle_verify(const SweepSpec& spec, unsigned threads = 1) {
    detail::reject_unknown_fixed(spec, {"points", "seed", "spacing_factor"});
    detail::only_axes(spec, {});
    const double points = detail::fixed_or(spec, "points", 50.0);
    const double seed = detail::fixed_or(spec, "seed", 1.0);
    if (!(points >= 1.0) || points != std::floor(points)) throw ConfigError("points must be a positive integer");
    if (!(seed >= 0.0) || seed != std::floor(seed)) throw ConfigError("seed must be a non-negative integer");
    const auto rows = oracle_verification(static_cast<std::size_t>(points), static_cast<std::uint64_t>(seed),
                                          detail::fixed_or(spec, "spacing_factor", 1e-3), threads);
    Table t;
    t.columns = {"point", "quantity", "analytic", "oracle", "abs_error"};
    for (const auto& r : rows) t.rows.push_back({r.point, r.quantity, r.analytic, r.oracle, r.abs_error});
    return t;
}

/// Samples every region and line function of the eigenstate on a square
/// grid. Columns: region, component, x1, x2, re, im (x2 empty on lines).
inline Table run_wavefunction_dump(const SweepSpec& spec, unsigned threads = 1) {
    const DeviceParams& p = detail::require_device(spec);
    detail::reject_unknown_fixed(spec, {"k1", "k2"});
    detail::only_axes(spec, {"x"});
    const TwoPhotonInput in{detail::fixed_or(spec, "k1", p.emitter.omega_eg / p.v_g),
                            detail::fixed_or(spec, "k2", p.emitter.omega_eg / p.v_g)};
    const TwoPhotonState state(p, in);
    const Axis* given = detail::find_axis(spec, "x");
    const double scale = p.v_g / state.linewidth();
    const Axis axis = given ? *given : Axis{"x", -5.0 * scale, 5.0 * scale, 41, AxisScale::Linear};
    const std::vector<double> xs = axis.values();

    Table t;
    t.columns = {"region", "component", "x1", "x2", "re", "im"};
    std::vector<std::vector<std::vector<Cell>>> blocks(kComponentCount + kOneExcitationCount);
    parallel_for(blocks.size(), threads, [&](std::size_t b) {
        auto& rows = blocks[b];
        if (b < kComponentCount) {
            const RegionFunction& f = state.regions()[b];
            for (double x1 : xs) {
                for (double x2 : xs) {
                    if (!f.in_region(x1, x2)) continue;
                    const cplx val = f(x1, x2);
                    rows.push_back({std::string(f.region), std::string(f.component), x1, x2, val.real(), val.imag()});
                }
            }
        } else {
            const LineFunction& f = state.lines()[b - kComponentCount];
            for (double x : xs) {
                if (f.sign * x < 0.0) continue;
                const cplx val = f(x);
                rows.push_back({std::string(f.region), std::string(f.component), x, std::monostate{}, val.real(),
                                val.imag()});
            }
        }
    });
    for (auto& rows : blocks) {
        for (auto& r : rows) t.rows.push_back(std::move(r));
    }
    return t;
}

inline Table run_sweep(const SweepSpec& spec, unsigned threads = 1) {
    switch (spec.target) {
        case SweepTarget::RectifierEfficiency: return run_fig4a(spec, threads);
        case SweepTarget::Diode: return run_fig4b(spec, threads);
        case SweepTarget::TransistorHeatmap:
        case SweepTarget::TransistorVsPurcell: return run_fig6(spec, threads);
        case SweepTarget::AmplitudesVsDetuning: return run_amplitudes_vs_detuning(spec, threads);
        case SweepTarget::OracleVerify: return run_oracle_verify(spec, threads);
        case SweepTarget::WavefunctionDump: return run_wavefunction_dump(spec, threads);
    }
    throw ConfigError("unhandled sweep target");
}

}  // namespace chiral

#endif  // CHIRAL_SWEEP_HPP_

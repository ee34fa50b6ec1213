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

#ifndef CHIRAL_CONFIG_HPP_
#define CHIRAL_CONFIG_HPP_

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chiral/errors.hpp"
#include "chiral/params.hpp"
#include "chiral/scattering.hpp"
#include "chiral/sweep.hpp"
#include "chiral/twophoton.hpp"
#include "json.hpp"

namespace chiral {

/// Parsed configuration file. Every section is optional; commands check for
/// the ones they need.
struct Config {
    std::optional<DeviceParams> device;
    std::vector<double> omegas;             // photon energies for `amplitudes`
    std::optional<TwoPhotonInput> input;    // two-photon input for wavefunction dumps
    std::optional<SweepSpec> sweep;
    std::vector<std::string> warnings;      // non-fatal notes (adiabaticity, infeasible substitution)
};

struct ConfigOptions {
    /// Replace an infeasible rectification request by gamma_u = 0 instead of
    /// throwing InfeasibleDesignError.
    bool allow_infeasible = false;
};

namespace detail {

using json = nlohmann::json;

inline const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ConfigError(where + ": missing '" + key + "'");
    }
    return obj.at(key);
}

inline double number(const json& v, const std::string& what) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    }
    throw ConfigError(what + " must be a number");
}

inline double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    return number(obj.at(key), where + "." + key);
}

inline void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : keys) ok = ok || it.key() == k;
        if (!ok) throw ConfigError(where + ": unknown key '" + it.key() + "'");
    }
}

inline CouplingSet parse_couplings(const json& j, const std::string& where) {
    only_keys(j, {"gamma_dR", "gamma_dL", "gamma_uR", "gamma_uL"}, where);
    CouplingSet c;
    c.gamma_dR = number_or(j, "gamma_dR", 0.0, where);
    c.gamma_dL = number_or(j, "gamma_dL", 0.0, where);
    c.gamma_uR = number_or(j, "gamma_uR", 0.0, where);
    c.gamma_uL = number_or(j, "gamma_uL", 0.0, where);
    return c;
}

inline EmitterSpec parse_emitter(const json& j, const std::string& where) {
    only_keys(j, {"omega_eg", "omega_g", "gamma_star"}, where);
    EmitterSpec e;
    e.omega_eg = number_or(j, "omega_eg", 0.0, where);
    e.omega_g = number_or(j, "omega_g", 0.0, where);
    e.gamma_star = number_or(j, "gamma_star", 0.0, where);
    return e;
}

inline DeviceParams parse_device(const json& j, const ConfigOptions& opts, std::vector<std::string>& warnings) {
    const std::string where = "device";
    if (!j.is_object()) throw ConfigError("device must be an object");
    const int forms = int(j.contains("couplings")) + int(j.contains("design")) + int(j.contains("raman"));
    if (forms != 1) throw ConfigError("device needs exactly one of 'couplings', 'design', 'raman'");

    DeviceParams p;
    if (j.contains("couplings")) {
        only_keys(j, {"couplings", "emitter", "v_g"}, where);
        p.couplings = parse_couplings(j.at("couplings"), "device.couplings");
        if (j.contains("emitter")) p.emitter = parse_emitter(j.at("emitter"), "device.emitter");
        p.v_g = number_or(j, "v_g", 1.0, where);
    } else if (j.contains("design")) {
        only_keys(j, {"design", "gamma_u", "rectify", "omega_eg", "omega_g"}, where);
        const json& d = j.at("design");
        only_keys(d, {"D_d", "D_u", "P_F", "gamma_d"}, "device.design");
        DesignPoint point;
        point.D_d = number(require(d, "D_d", "device.design"), "device.design.D_d");
        point.D_u = number(require(d, "D_u", "device.design"), "device.design.D_u");
        point.P_F = number_or(d, "P_F", std::numeric_limits<double>::infinity(), "device.design");
        point.gamma_d = number_or(d, "gamma_d", 1.0, "device.design");
        point.validate();
        const bool rectify = j.contains("rectify") && j.at("rectify").is_boolean() && j.at("rectify").get<bool>();
        if (rectify == j.contains("gamma_u")) {
            throw ConfigError("device.design needs exactly one of 'gamma_u' or \"rectify\": true");
        }
        double gamma_u = 0.0;
        if (rectify) {
            try {
                gamma_u = rectified_gamma_u(point.D_d, point.P_F, point.gamma_d);
            } catch (const InfeasibleDesignError& e) {
                if (!opts.allow_infeasible) throw;
                warnings.push_back(std::string("infeasible rectification request (") + e.what() +
                                   "); using gamma_u = 0");
                gamma_u = 0.0;
            }
        } else {
            gamma_u = number(j.at("gamma_u"), "device.gamma_u");
        }
        p = from_design(point, gamma_u, number_or(j, "omega_eg", 0.0, where), number_or(j, "omega_g", 0.0, where));
    } else {
        only_keys(j, {"raman"}, where);
        const json& r = j.at("raman");
        only_keys(r, {"Omega_d", "Omega_u", "Delta_d", "Delta_u", "couplings", "emitter", "v_g"}, "device.raman");
        WSystemSpec w;
        w.Omega_d = number(require(r, "Omega_d", "device.raman"), "device.raman.Omega_d");
        w.Omega_u = number(require(r, "Omega_u", "device.raman"), "device.raman.Omega_u");
        w.Delta_d = number(require(r, "Delta_d", "device.raman"), "device.raman.Delta_d");
        w.Delta_u = number(require(r, "Delta_u", "device.raman"), "device.raman.Delta_u");
        w.bare = parse_couplings(require(r, "couplings", "device.raman"), "device.raman.couplings");
        if (r.contains("emitter")) w.emitter = parse_emitter(r.at("emitter"), "device.raman.emitter");
        w.v_g = number_or(r, "v_g", 1.0, "device.raman");
        if (raman_adiabaticity_warning(w)) {
            warnings.push_back("Raman drive outside the adiabatic regime (Omega > 0.1 |Delta|)");
        }
        p = raman_effective(w);
    }
    p.validate();
    return p;
}

inline Axis parse_axis(const json& a) {
    only_keys(a, {"name", "min", "max", "count", "scale"}, "sweep.axes[]");
    Axis axis;
    const json& name = require(a, "name", "sweep.axes[]");
    if (!name.is_string()) throw ConfigError("axis name must be a string");
    axis.name = name.get<std::string>();
    axis.min = number(require(a, "min", "axis " + axis.name), "axis min");
    axis.max = number(require(a, "max", "axis " + axis.name), "axis max");
    if (a.contains("count")) {
        const json& c = a.at("count");
        if (!c.is_number_integer() || c.get<long long>() < 2) {
            throw ConfigError("axis '" + axis.name + "' count must be an integer >= 2");
        }
        axis.count = c.get<std::size_t>();
    }
    if (a.contains("scale")) {
        const std::string s = a.at("scale").is_string() ? a.at("scale").get<std::string>() : "";
        if (s == "linear") {
            axis.scale = AxisScale::Linear;
        } else if (s == "log") {
            axis.scale = AxisScale::Log;
        } else {
            throw ConfigError("axis '" + axis.name + "' scale must be linear or log");
        }
    }
    axis.validate();
    return axis;
}

inline SweepSpec parse_sweep(const json& s) {
    only_keys(s, {"target", "axes", "fixed", "output", "format"}, "sweep");
    SweepSpec spec;
    const json& target = require(s, "target", "sweep");
    if (!target.is_string()) throw ConfigError("sweep.target must be a string");
    spec.target = sweep_target_from_string(target.get<std::string>());
    if (s.contains("axes")) {
        if (!s.at("axes").is_array()) throw ConfigError("sweep.axes must be an array");
        for (const json& a : s.at("axes")) spec.axes.push_back(parse_axis(a));
    }
    if (s.contains("fixed")) {
        const json& f = s.at("fixed");
        if (!f.is_object()) throw ConfigError("sweep.fixed must be an object");
        for (auto it = f.begin(); it != f.end(); ++it) {
            spec.fixed[it.key()] = number(it.value(), "sweep.fixed." + it.key());
        }
    }
    if (s.contains("output")) {
        if (!s.at("output").is_string()) throw ConfigError("sweep.output must be a string");
        spec.output = s.at("output").get<std::string>();
    }
    if (s.contains("format")) {
        if (!s.at("format").is_string()) throw ConfigError("sweep.format must be a string");
        spec.format = output_format_from_string(s.at("format").get<std::string>());
    }
    return spec;
}

}  // namespace detail

/// Parses configuration text. Physics-level problems surface as the library
/// errors (InvalidDesignError, InfeasibleDesignError, ...), malformed input as
/// ConfigError.
inline Config parse_config(const std::string& text, const ConfigOptions& opts = {}) {
    using detail::json;
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    detail::only_keys(root, {"device", "omega", "omegas", "input", "sweep"}, "config");
    Config cfg;
    if (root.contains("device")) cfg.device = detail::parse_device(root.at("device"), opts, cfg.warnings);
    if (root.contains("omega") && root.contains("omegas")) throw ConfigError("give either 'omega' or 'omegas'");
    if (root.contains("omega")) cfg.omegas.push_back(detail::number(root.at("omega"), "omega"));
    if (root.contains("omegas")) {
        if (!root.at("omegas").is_array()) throw ConfigError("omegas must be an array");
        for (const json& w : root.at("omegas")) cfg.omegas.push_back(detail::number(w, "omegas[]"));
    }
    for (double w : cfg.omegas) {
        if (!std::isfinite(w)) throw ConfigError("photon energies must be finite");
    }
    if (root.contains("input")) {
        const json& in = root.at("input");
        detail::only_keys(in, {"k1", "k2"}, "input");
        cfg.input = TwoPhotonInput{detail::number(detail::require(in, "k1", "input"), "input.k1"),
                                   detail::number(detail::require(in, "k2", "input"), "input.k2")};
        cfg.input->validate();
    }
    if (root.contains("sweep")) {
        cfg.sweep = detail::parse_sweep(root.at("sweep"));
        cfg.sweep->device = cfg.device;
    }
    return cfg;
}

inline Config load_config(const std::string& path, const ConfigOptions& opts = {}) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), opts);
}

}  // namespace chiral

#endif  // CHIRAL_CONFIG_HPP_

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

#include "chiral/sweep.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace chiral;

namespace {

double num(const Cell& c) { return std::get<double>(c); }
bool feasible(const Table& t, std::size_t row) { return std::get<bool>(t.rows[row][t.column("feasible")]); }

std::string csv(const Table& t) {
    std::ostringstream os;
    write_csv(t, os);
    return os.str();
}

}  // namespace

TEST(sweep, axis_values) {
    const Axis lin{"x", 0.0, 1.0, 5, AxisScale::Linear};
    EXPECT_EQ(lin.values(), (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
    const auto log = Axis{"x", 1.0, 100.0, 3, AxisScale::Log}.values();
    EXPECT_EQ(log.front(), 1.0);
    EXPECT_NEAR(log[1], 10.0, 1e-13);
    EXPECT_EQ(log.back(), 100.0);
    EXPECT_THROW((Axis{"x", 0.0, 1.0, 1}.values()), ConfigError);
    EXPECT_THROW((Axis{"x", 0.0, 1.0, 4, AxisScale::Log}.values()), ConfigError);
    EXPECT_THROW((Axis{"x", 1.0, 1.0, 4}.values()), ConfigError);
}

TEST(sweep, rectifier_rows) {
    SweepSpec spec;
    spec.target = SweepTarget::RectifierEfficiency;
    spec.axes = {{"P_F", 1.0, 20.0, 20, AxisScale::Linear}, {"D", 0.5, 1.0, 6, AxisScale::Linear}};
    const Table t = run_fig4a(spec);
    ASSERT_EQ(t.rows.size(), 120u);
    EXPECT_EQ(t.columns, (std::vector<std::string>{"P_F", "D", "feasible", "T_tilde"}));
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double pf = num(t.rows[i][0]), d = num(t.rows[i][1]);
        EXPECT_EQ(feasible(t, i), pf * d >= 1.0 - 1e-12);
        if (feasible(t, i)) {
            const double v = num(t.rows[i][3]);
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        } else {
            EXPECT_TRUE(std::holds_alternative<std::monostate>(t.rows[i][3]));
        }
    }
    // Row for P_F = 15, D = 0.9: first axis outermost.
    const std::size_t row = 14 * 6 + 4;
    EXPECT_DOUBLE_EQ(num(t.rows[row][0]), 15.0);
    EXPECT_NEAR(num(t.rows[row][1]), 0.9, 1e-15);
    EXPECT_NEAR(num(t.rows[row][3]), 0.78125, 1e-12);
}

TEST(sweep, rectifier_threshold_row_is_zero) {
    SweepSpec spec;
    spec.target = SweepTarget::RectifierEfficiency;
    spec.axes = {{"P_F", 1.0 / 0.8, 10.0, 4, AxisScale::Log}};
    spec.fixed["D"] = 0.8;
    const Table t = run_fig4a(spec);
    EXPECT_TRUE(feasible(t, 0));
    EXPECT_EQ(num(t.rows[0][3]), 0.0);
}

TEST(sweep, diode_rows) {
    SweepSpec spec;
    spec.target = SweepTarget::Diode;
    spec.axes = {{"D_d", -0.5, 1.0, 7, AxisScale::Linear}};
    const Table t = run_fig4b(spec);
    EXPECT_FALSE(feasible(t, 0));
    EXPECT_FALSE(feasible(t, 2));  // D_d = 0
    EXPECT_NEAR(num(t.rows[4][2]), 1.0 / 3.0, 1e-15);
    EXPECT_EQ(num(t.rows[6][2]), 0.0);
    EXPECT_EQ(num(t.rows[6][3]), 1.0);
}

TEST(sweep, transistor_rows) {
    SweepSpec spec;
    spec.target = SweepTarget::TransistorVsPurcell;
    spec.axes = {{"P_F", 10.0, 1000.0, 3, AxisScale::Log}};
    const Table t = run_fig6(spec);
    ASSERT_EQ(t.rows.size(), 3u);
    // P_23 grows with P_F and saturates.
    EXPECT_LT(num(t.rows[0][4]), num(t.rows[1][4]));
    EXPECT_LT(num(t.rows[1][4]), num(t.rows[2][4]));
    EXPECT_LT(num(t.rows[2][4]) - num(t.rows[1][4]), num(t.rows[1][4]) - num(t.rows[0][4]));
    SweepSpec heat;
    heat.target = SweepTarget::TransistorHeatmap;
    heat.axes = {{"D_d", 0.0, 1.0, 11}, {"D_u", 0.0, 1.0, 11}};
    heat.fixed["P_F"] = 20.0;
    const Table h = run_fig6(heat);
    ASSERT_EQ(h.rows.size(), 121u);
    const std::size_t row = 9 * 11 + 9;
    EXPECT_NEAR(num(h.rows[row][4]), 17.0 / 21.0, 1e-12);
    EXPECT_FALSE(feasible(h, 0));
}

TEST(sweep, unknown_parameters_rejected) {
    SweepSpec spec;
    spec.target = SweepTarget::Diode;
    spec.axes = {{"P_F", 1.0, 2.0, 3}};
    EXPECT_THROW(run_sweep(spec), ConfigError);
    spec.axes.clear();
    spec.fixed["bogus"] = 1.0;
    EXPECT_THROW(run_sweep(spec), ConfigError);
}

TEST(sweep, amplitudes_need_device) {
    SweepSpec spec;
    spec.target = SweepTarget::AmplitudesVsDetuning;
    EXPECT_THROW(run_sweep(spec), ConfigError);
    DeviceParams p;
    p.couplings = {0.5, 0.5, 0.0, 0.0};
    spec.device = p;
    spec.axes = {{"delta", -1.0, 1.0, 5}};
    const Table t = run_sweep(spec);
    ASSERT_EQ(t.rows.size(), 5u);
    EXPECT_NEAR(num(t.rows[2][t.column("R")]), 1.0, 1e-15);
    for (const auto& row : t.rows) EXPECT_NEAR(num(row[t.column("total")]), 1.0, 1e-12);
}

TEST(sweep, wavefunction_dump_rows) {
    SweepSpec spec;
    spec.target = SweepTarget::WavefunctionDump;
    DeviceParams p;
    p.couplings = {0.55, 0.1, 0.3, 0.15};
    spec.device = p;
    spec.fixed["k1"] = 0.3;
    spec.fixed["k2"] = -0.1;
    spec.axes = {{"x", -2.0, 2.0, 5}};
    const Table t = run_sweep(spec);
    EXPECT_EQ(t.columns, (std::vector<std::string>{"region", "component", "x1", "x2", "re", "im"}));
    std::size_t lines = 0;
    for (const auto& row : t.rows) {
        if (std::holds_alternative<std::monostate>(row[3])) ++lines;
    }
    EXPECT_EQ(lines, 3u + 3u + 3u);  // three line functions on their half lines, x = 0 included
    EXPECT_EQ(std::get<std::string>(t.rows[0][1]), "phi_RR");
}

TEST(sweep, oracle_target) {
    SweepSpec spec;
    spec.target = SweepTarget::OracleVerify;
    spec.fixed["points"] = 2.0;
    const Table t = run_sweep(spec);
    ASSERT_EQ(t.rows.size(), 8u);
    for (const auto& row : t.rows) EXPECT_LT(num(row[4]), 1e-6);
}

TEST(sweep, csv_dialect_and_determinism) {
    SweepSpec spec;
    spec.target = SweepTarget::Diode;
    spec.axes = {{"D_d", 0.0, 1.0, 3}};
    const std::string a = csv(run_sweep(spec, 1));
    const std::string b = csv(run_sweep(spec, 3));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a,
              "D_d,feasible,R,T_rl\n"
              "0,false,,\n"
              // T_rl is (1 - R)^2 on the rounded R, one ulp above (2/3)^2.
              "0.5,true,0.33333333333333331,0.44444444444444453\n"
              "1,true,0,1\n");
    EXPECT_EQ(a.find('\r'), std::string::npos);
}

TEST(sweep, csv_quotes_text) {
    Table t;
    t.columns = {"a"};
    t.rows = {{std::string("x,y")}, {std::string("q\"")}};
    EXPECT_EQ(csv(t), "a\n\"x,y\"\n\"q\"\"\"\n");
}

TEST(sweep, json_output) {
    SweepSpec spec;
    spec.target = SweepTarget::Diode;
    spec.axes = {{"D_d", 0.0, 1.0, 2}};
    const auto j = to_json(run_sweep(spec));
    EXPECT_EQ(j["columns"][0], "D_d");
    EXPECT_TRUE(j["rows"][0]["R"].is_null());
    EXPECT_EQ(j["rows"][1]["T_rl"], 1.0);
    EXPECT_EQ(j["rows"][1]["feasible"], true);
}

TEST(sweep, target_names_round_trip) {
    for (const char* name : {"rectifier-efficiency", "diode", "transistor-heatmap", "transistor-vs-purcell",
                             "amplitudes-vs-detuning", "oracle-verify", "wavefunction-dump"}) {
        EXPECT_EQ(to_string(sweep_target_from_string(name)), name);
    }
    EXPECT_THROW(sweep_target_from_string("fig9"), ConfigError);
}

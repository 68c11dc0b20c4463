#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "yab/waveforms.hpp"

using namespace yab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("primary winding voltage is a bipolar square of amplitude v_a/2") {
    const auto g = gate_reference(8);
    CHECK(primary_winding_voltage(g, 0.0) == Samples(8, 0.0));
    const auto v = primary_winding_voltage(g, 391.7);
    for (int n = 0; n < 4; ++n) CHECK(v[n] == 195.85);
    for (int n = 4; n < 8; ++n) CHECK(v[n] == -195.85);
    const auto w = primary_winding_voltage(g, 2 * 391.7);
    for (int n = 0; n < 8; ++n) CHECK(w[n] == 2 * v[n]);
}

TEST_CASE("bridge voltage levels") {
    const auto g = gate_reference(16);
    CHECK(bridge_voltage(g, g, 200.0) == Samples(16, 0.0));

    // d_x = T/2, phi = 0: the +v_dc window covers half the period
    const double T = 1e-5;
    ModulationPoint mp;
    mp.T_sw = T;
    mp.d = {T / 2, -T / 4, -T / 4};
    const auto dc = dc_gates(mp, 16, 0);
    const auto v = bridge_voltage(dc.leg1, dc.leg2, 200.0);
    int plus = 0, zero = 0;
    for (double x : v) {
        plus += x == 200.0;
        zero += x == 0.0;
    }
    CHECK(plus == 8);
    CHECK(zero == 0);  // and the other half at -200
    // negated pulse width negates the sequence
    ModulationPoint neg = mp;
    neg.d[0] = -mp.d[0];
    mp.d[0] = 0.3 * T;
    neg.d[0] = -0.3 * T;
    const auto a = dc_gates(mp, 64, 0), b = dc_gates(neg, 64, 0);
    const auto va = bridge_voltage(a.leg1, a.leg2, 250.0), vb = bridge_voltage(b.leg1, b.leg2, 250.0);
    for (std::size_t n = 0; n < va.size(); ++n) CHECK(va[n] == -vb[n]);
}

TEST_CASE("dm decomposition") {
    SECTION("pure common mode") {
        const Samples s{1.0, -2.0, 3.0, 0.0};
        const auto dm = dm_decompose(make_bridge_set({s, s, s}));
        for (const auto& x : dm)
            for (double v : x) CHECK(v == 0.0);
    }
    SECTION("zero common mode passes through") {
        const Samples a{200, 0, -200, 0}, b{-200, 200, 200, 0}, c{0, -200, 0, 0};
        const auto set = make_bridge_set({a, b, c});
        const auto dm = dm_decompose(set);
        CHECK(dm[0] == a);
        CHECK(dm[1] == b);
        CHECK(dm[2] == c);
    }
    SECTION("length mismatch") {
        CHECK_THROWS_AS(make_bridge_set({Samples(4), Samples(4), Samples(3)}), std::invalid_argument);
    }
}

TEST_CASE("synthesized cycles: CM cancellation, levels and topology relation") {
    ConverterParams p;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> th(0.0, 360.0), ph(0.0, 0.5), vd(200.0, 300.0);
    for (int k = 0; k < 40; ++k) {
        p.v_dc = vd(rng);
        const double theta = th(rng), phi = ph(rng) * p.T_sw();
        const auto y = synthesize_cycle(p, theta, phi, Topology::YAB);
        const auto d = synthesize_cycle(p, theta, phi, Topology::ACDC_DAB);
        for (std::size_t n = 0; n < static_cast<std::size_t>(p.N_sw); ++n) {
            const double sum = y.phase[0].v_XN[n] + y.phase[1].v_XN[n] + y.phase[2].v_XN[n];
            CHECK(std::abs(sum) <= 1e-10);
            const double vx = y.phase[0].v_Xx[n];
            CHECK((vx == p.v_dc || vx == 0.0 || vx == -p.v_dc));
            CHECK_THAT(y.phase[0].v_L[n] - d.phase[0].v_L[n], WithinAbs(y.v_cm[n], 1e-12));
        }
    }
}

TEST_CASE("theta = 30 deg: DM outputs sum to zero") {
    const auto c = synthesize_cycle(ConverterParams{}, 30.0, 0.2e-5, Topology::YAB);
    double worst = 0.0;
    for (std::size_t n = 0; n < c.v_cm.size(); ++n) {
        worst = std::max(worst, std::abs(c.phase[0].v_XN[n] + c.phase[1].v_XN[n] + c.phase[2].v_XN[n]));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("phase B at theta equals phase A at theta - 120 sample-wise") {
    ConverterParams p;
    p.N_sw = 512;
    for (double theta : {0.5, 47.5, 130.5, 299.5}) {
        const auto b = synthesize_cycle(p, theta, 0.17 * p.T_sw(), Topology::YAB);
        const auto a = synthesize_cycle(p, wrap_degrees(theta - 120.0), 0.17 * p.T_sw(), Topology::YAB);
        CHECK(b.phase[1].v_AN == a.phase[0].v_AN);
        CHECK(b.phase[1].v_Xx == a.phase[0].v_Xx);
        for (std::size_t n = 0; n < a.phase[0].v_L.size(); ++n) {
            CHECK_THAT(b.phase[1].v_L[n], WithinAbs(a.phase[0].v_L[n], 1e-12));
        }
    }
}

TEST_CASE("inductor voltage") {
    const Samples v{1.0, 2.0, -3.0};
    CHECK(inductor_voltage(v, v, Topology::YAB) == Samples(3, 0.0));
    CHECK_THROWS_AS(inductor_voltage(v, Samples(2), Topology::YAB), std::invalid_argument);
    // theta = 90: v_a = 0 so v_L = -v_XN
    ConverterParams p;
    const auto c = synthesize_cycle(p, 90.0, 0.1 * p.T_sw(), Topology::YAB);
    for (std::size_t n = 0; n < c.phase[0].v_L.size(); ++n) {
        CHECK_THAT(c.phase[0].v_L[n], WithinAbs(-c.phase[0].v_XN[n], 1e-12));
    }
}

TEST_CASE("AC switch voltage envelope") {
    CHECK(ac_switch_voltage(180.0, 277.0, 200.0) == 0.0);
    CHECK_THAT(ac_switch_voltage(30.0, 277.0, 200.0), WithinRel(std::sqrt(6.0) * 277.0 / 200.0, 1e-12));
    CHECK_THAT(ac_switch_voltage(30.0, 277.0, 200.0), WithinRel(3.392, 1e-3));
    CHECK_THAT(ac_switch_voltage(30.0, 277.0, 200.0, SwitchVoltageScale::volts), WithinRel(678.5, 1e-3));
    CHECK_THAT(ac_switch_voltage(120.0, 277.0, 200.0), WithinAbs(0.0, 1e-12));
    CHECK_THAT(ac_switch_voltage(240.0, 277.0, 200.0), WithinAbs(0.0, 1e-12));
    CHECK_THAT(ac_switch_voltage(119.999, 277.0, 200.0), WithinAbs(0.0, 1e-4));
    CHECK_THAT(ac_switch_voltage(240.001, 277.0, 200.0), WithinAbs(0.0, 1e-4));
    for (double t = 120.5; t < 240.0; t += 1.0) CHECK(ac_switch_voltage(t, 277.0, 200.0) == 0.0);
    // symmetric about theta = 0
    CHECK_THAT(ac_switch_voltage(-40.0, 277.0, 200.0), WithinRel(ac_switch_voltage(40.0, 277.0, 200.0), 1e-12));
}

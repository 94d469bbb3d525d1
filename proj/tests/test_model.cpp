#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chiral_diode/config.hpp"
#include "chiral_diode/grid.hpp"
#include "chiral_diode/model.hpp"
#include "chiral_diode/parallel.hpp"

using namespace chiral_diode;

namespace
{
std::string message_of(const std::function<void()>& f)
{
    try
    {
        f();
    }
    catch (const std::invalid_argument& e)
    {
        return e.what();
    }
    return {};
}
} // namespace

TEST(Params, ValidConstruction)
{
    const auto p = make_params(0.0, 1.0, 10.0, 1.0, 0.0);
    EXPECT_DOUBLE_EQ(p.Gamma(), 1.0);
    EXPECT_DOUBLE_EQ(p.total_width(), 2.0);
    EXPECT_DOUBLE_EQ(p.v_c(), 1.0);

    const auto q = make_params(0.0, 0.0, 0.0, 0.5, 0.5);
    EXPECT_DOUBLE_EQ(q.Gamma(), 1.0);
}

TEST(Params, RejectionNamesField)
{
    EXPECT_NE(message_of([] { make_params(0.0, -1.0, 0.0, 1.0, 0.0); }).find("kappa"), std::string::npos);
    EXPECT_NE(message_of([] { make_params(0.0, 1.0, 0.0, -0.1, 1.0); }).find("gamma1"), std::string::npos);
    EXPECT_NE(message_of([] { make_params(0.0, 1.0, 0.0, 1.0, -0.1); }).find("gamma2"), std::string::npos);
    EXPECT_NE(message_of([] { make_params(0.0, 1.0, 0.0, 0.0, 0.0); }).find("Gamma"), std::string::npos);
    EXPECT_NE(message_of([] { make_params(std::nan(""), 1.0, 0.0, 1.0, 0.0); }).find("omega_a"), std::string::npos);
    EXPECT_NE(message_of([] { make_params(0.0, 1.0, INFINITY, 1.0, 0.0); }).find("U"), std::string::npos);
    EXPECT_NE(message_of([] { make_params(0.0, 1.0, 0.0, 1.0, 0.0, 2.0); }).find("v_c"), std::string::npos);
}

TEST(Params, CouplingHelpers)
{
    const auto p = make_params(0.3, 1.0, 10.0, 0.2, 0.6);
    const auto s = swapped_couplings(p);
    EXPECT_DOUBLE_EQ(s.gamma1(), 0.6);
    EXPECT_DOUBLE_EQ(s.gamma2(), 0.2);
    EXPECT_DOUBLE_EQ(s.omega_a(), 0.3);

    const auto f = with_gamma1_fraction(p, 0.25);
    EXPECT_DOUBLE_EQ(f.Gamma(), p.Gamma());
    EXPECT_DOUBLE_EQ(f.gamma1(), 0.2);
    EXPECT_THROW(with_gamma1_fraction(p, 1.5), std::invalid_argument);
}

TEST(Inputs, TwoPhotonCanonicalOrder)
{
    const TwoPhotonIn a(Direction::LeftIncident, 2.0, -1.0);
    EXPECT_DOUBLE_EQ(a.omega_k1(), -1.0);
    EXPECT_DOUBLE_EQ(a.omega_k2(), 2.0);
    EXPECT_DOUBLE_EQ(a.omega(), 1.0);
    EXPECT_EQ(a, TwoPhotonIn(Direction::LeftIncident, -1.0, 2.0));
    EXPECT_EQ(a.with_direction(Direction::RightIncident).direction(), Direction::RightIncident);
    EXPECT_THROW(TwoPhotonIn(Direction::LeftIncident, NAN, 0.0), std::invalid_argument);
}

TEST(Inputs, ResonantInputs)
{
    const auto p = make_params(0.5, 1.0, 10.0, 1.0, 0.0);
    const auto s = resonant_input(p, Resonance::SinglePhoton);
    EXPECT_DOUBLE_EQ(s.omega_k1(), 0.5);
    EXPECT_DOUBLE_EQ(s.omega_k2(), 0.5);
    const auto t = resonant_input(p, Resonance::TwoPhoton, Direction::RightIncident);
    EXPECT_DOUBLE_EQ(t.omega_k2(), 20.5);
    EXPECT_EQ(t.direction(), Direction::RightIncident);
    EXPECT_EQ(resonance_from_string("two-photon"), Resonance::TwoPhoton);
    EXPECT_EQ(resonance_from_string("single"), Resonance::SinglePhoton);
    EXPECT_THROW(resonance_from_string("three"), std::invalid_argument);
    EXPECT_EQ(direction_from_string("right"), Direction::RightIncident);
    EXPECT_THROW(direction_from_string("up"), std::invalid_argument);
}

TEST(Grid, ParseRange)
{
    const auto g = parse_grid("-4:4:401");
    EXPECT_EQ(g.size(), 401u);
    EXPECT_DOUBLE_EQ(g[0], -4.0);
    EXPECT_DOUBLE_EQ(g[200], 0.0);
    EXPECT_DOUBLE_EQ(g[400], 4.0);

    const auto one = parse_grid("0.75");
    EXPECT_EQ(one.size(), 1u);
    EXPECT_DOUBLE_EQ(one[0], 0.75);
}

TEST(Grid, ParseErrors)
{
    EXPECT_THROW(parse_grid("1:2"), std::invalid_argument);
    EXPECT_THROW(parse_grid("1:2:0"), std::invalid_argument);
    EXPECT_THROW(parse_grid("1:2:3:4"), std::invalid_argument);
    EXPECT_THROW(parse_grid("a:2:3"), std::invalid_argument);
    EXPECT_THROW(parse_grid("1:2:3.5"), std::invalid_argument);
    EXPECT_THROW(parse_grid(""), std::invalid_argument);
    EXPECT_THROW(make_grid(0.0, INFINITY, 3), std::invalid_argument);
}

TEST(Config, PrecedenceFlagsConfigDefaults)
{
    ParamInput flags, config, defaults;
    defaults.omega_a = 0.0;
    defaults.kappa = 1.0;
    defaults.U = 10.0;
    defaults.gamma1 = 0.5;
    defaults.gamma2 = 0.5;
    config = params_from_json(nlohmann::json{{"kappa", 0.2}, {"gamma1", 0.9}, {"gamma2", 0.1}});
    flags.kappa = 0.7;

    const auto p = resolve_params(flags, config, defaults);
    EXPECT_DOUBLE_EQ(p.kappa(), 0.7);
    EXPECT_DOUBLE_EQ(p.gamma1(), 0.9);
    EXPECT_DOUBLE_EQ(p.U(), 10.0);
}

TEST(Config, GammaScaleDividesRates)
{
    const auto in = params_from_json(
        nlohmann::json{{"omega_a", 4.0}, {"kappa", 2.0}, {"U", 20.0}, {"gamma1", 1.0}, {"gamma2", 1.0}, {"gamma_scale", 2.0}});
    const auto p = resolve_params({}, in, {});
    EXPECT_DOUBLE_EQ(p.Gamma(), 1.0);
    EXPECT_DOUBLE_EQ(p.kappa(), 1.0);
    EXPECT_DOUBLE_EQ(p.U(), 10.0);
    EXPECT_DOUBLE_EQ(p.omega_a(), 2.0);
}

TEST(Config, Diagnostics)
{
    EXPECT_THROW(params_from_json(nlohmann::json::array()), std::invalid_argument);
    EXPECT_NE(message_of([] { params_from_json(nlohmann::json{{"kappa", "big"}}); }).find("kappa"), std::string::npos);
    ParamInput bad;
    bad.gamma_scale = 0.0;
    EXPECT_THROW(resolve_params(bad, {}, {}), std::invalid_argument);
    EXPECT_NE(message_of([] { resolve_params({}, {}, {}); }).find("omega_a"), std::string::npos);

    ParamInput neg;
    neg.omega_a = 0.0;
    neg.kappa = -1.0;
    neg.U = 0.0;
    neg.gamma1 = 1.0;
    neg.gamma2 = 0.0;
    EXPECT_NE(message_of([&] { resolve_params(neg, {}, {}); }).find("kappa"), std::string::npos);
}

TEST(Config, RoundTrip)
{
    const auto p = make_params(0.1, 0.2, 3.0, 0.4, 0.6);
    const auto q = resolve_params({}, params_from_json(params_to_json(p)), {});
    EXPECT_EQ(p, q);
}

TEST(Parallel, EveryIndexOnceAndExceptionsPropagate)
{
    std::vector<std::atomic<int>> hits(10007);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 16);
    for (const auto& h : hits) ASSERT_EQ(h.load(), 1);

    EXPECT_THROW(parallel_for(5000, [](std::size_t i) {
        if (i == 4321) throw std::runtime_error("boom");
    }, 16),
                 std::runtime_error);
}

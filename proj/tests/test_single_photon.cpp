#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "chiral_diode/grid.hpp"
#include "chiral_diode/single_photon.hpp"

using namespace chiral_diode;

namespace
{
const Direction both[] = {Direction::LeftIncident, Direction::RightIncident};
}

TEST(EvenMode, Values)
{
    EXPECT_NEAR(std::abs(even_mode_t(make_params(0.0, 0.0, 0.0, 0.5, 0.5), 0.0) - cplx(-1.0, 0.0)), 0.0, 1e-15);
    EXPECT_EQ(even_mode_t(make_params(0.0, 1.0, 0.0, 0.5, 0.5), 0.0), cplx(0.0, 0.0));
    const auto p = make_params(0.0, 1.0, 0.0, 0.5, 0.5);
    EXPECT_LT(std::abs(even_mode_t(p, 1e6) - 1.0), 1e-5);
    EXPECT_LT(std::abs(even_mode_t(p, -1e6) - 1.0), 1e-5);
}

TEST(Chiral, IdealDiodePoint)
{
    const auto p = make_params(0.0, 1.0, 0.0, 1.0, 0.0);
    const auto l = chiral_coeffs(p, {Direction::LeftIncident, 0.0});
    EXPECT_EQ(l.t, cplx(0.0, 0.0));
    EXPECT_EQ(l.r, cplx(0.0, 0.0));
    EXPECT_DOUBLE_EQ(l.loss, 1.0);
    const auto r = chiral_coeffs(p, {Direction::RightIncident, 0.0});
    EXPECT_NEAR(r.T, 1.0, 1e-15);
    EXPECT_EQ(r.R, 0.0);
}

TEST(Chiral, OffResonanceValue)
{
    const auto p = make_params(0.0, 1.0, 0.0, 0.75, 0.25);
    const auto c = chiral_coeffs(p, {Direction::LeftIncident, 1.0});
    EXPECT_NEAR(std::abs(c.t - cplx(1.0, 0.25) / cplx(1.0, 1.0)), 0.0, 1e-15);
    EXPECT_NEAR(c.T, 0.53125, 1e-15);
}

TEST(Chiral, SymmetricLosslessTotalReflection)
{
    const auto p = make_params(0.0, 0.0, 0.0, 0.5, 0.5);
    for (Direction d : both)
    {
        const auto c = chiral_coeffs(p, {d, 0.0});
        EXPECT_NEAR(std::abs(c.t), 0.0, 1e-15);
        EXPECT_NEAR(c.R, 1.0, 1e-15);
    }
}

TEST(Chiral, PhysicalBoundsAndReflectionSymmetry)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i)
    {
        const double G = 0.1 + 3.0 * u(rng), g1 = G * u(rng);
        const auto p = make_params(u(rng) - 0.5, 4.0 * u(rng), 0.0, g1, G - g1);
        const double wk = 20.0 * u(rng) - 10.0;
        const auto l = chiral_coeffs(p, {Direction::LeftIncident, wk});
        const auto r = chiral_coeffs(p, {Direction::RightIncident, wk});
        ASSERT_GE(l.T, 0.0);
        ASSERT_LE(l.T + l.R, 1.0 + 1e-12);
        ASSERT_LE(r.T + r.R, 1.0 + 1e-12);
        ASSERT_EQ(l.r, r.r);
        ASSERT_NEAR(l.loss, 1.0 - l.T - l.R, 0.0);
    }
}

TEST(Chiral, UnitarityWithoutLoss)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i)
    {
        const double G = 0.01 + 5.0 * u(rng), g1 = G * u(rng);
        const auto p = make_params(0.0, 0.0, 0.0, g1, G - g1);
        const auto c = chiral_coeffs(p, {u(rng) < 0.5 ? Direction::LeftIncident : Direction::RightIncident,
                                         G * (20.0 * u(rng) - 10.0)});
        worst = std::max(worst, std::abs(c.T + c.R - 1.0));
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(Chiral, SwapSymmetry)
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i)
    {
        const double g1 = u(rng), g2 = u(rng) + 1e-3;
        const auto p = make_params(0.0, 2.0 * u(rng), 0.0, g1, g2);
        const double wk = 6.0 * u(rng) - 3.0;
        const auto a = chiral_coeffs(p, {Direction::LeftIncident, wk});
        const auto b = chiral_coeffs(swapped_couplings(p), {Direction::RightIncident, wk});
        ASSERT_LT(std::abs(a.t - b.t), 1e-15);
        ASSERT_LT(std::abs(a.r - b.r), 1e-15);
        ASSERT_LT(std::abs(a.T - b.T), 1e-15);
    }
}

TEST(Chiral, ReciprocityCollapse)
{
    // |t_left|^2 == |t_right|^2 whenever kappa * (gamma1 - gamma2) == 0
    for (double wk : {-2.0, -0.3, 0.0, 0.7, 5.0})
    {
        const auto lossless = make_params(0.0, 0.0, 0.0, 0.9, 0.1);
        EXPECT_NEAR(chiral_coeffs(lossless, {Direction::LeftIncident, wk}).T,
                    chiral_coeffs(lossless, {Direction::RightIncident, wk}).T, 1e-15);
        const auto balanced = make_params(0.0, 0.8, 0.0, 0.4, 0.4);
        EXPECT_EQ(chiral_coeffs(balanced, {Direction::LeftIncident, wk}).t,
                  chiral_coeffs(balanced, {Direction::RightIncident, wk}).t);
    }
}

TEST(Chiral, FarDetuning)
{
    const auto p = make_params(0.0, 1.0, 0.0, 0.8, 0.2);
    for (Direction d : both)
        for (double s : {-1.0, 1.0}) EXPECT_LT(std::abs(transmission_amplitude(p, s * 1e6, d) - 1.0), 1e-5);
}

TEST(Diode, Classification)
{
    EXPECT_EQ(diode_condition(make_params(0.0, 1.0, 0.0, 1.0, 0.0)), DiodeClass::BlocksLeftIncident);
    EXPECT_EQ(diode_condition(make_params(0.0, 0.0, 0.0, 0.5, 0.5)), DiodeClass::NoBlock);
    EXPECT_EQ(diode_condition(make_params(0.0, 0.5, 0.0, 0.25, 0.75)), DiodeClass::BlocksRightIncident);
    EXPECT_EQ(diode_condition(make_params(0.0, 0.3, 0.0, 0.25, 0.75)), DiodeClass::NoBlock);
    EXPECT_EQ(to_string(DiodeClass::BlocksLeftIncident), "blocks-left-incident");
}

TEST(Diode, GeneralizedNull)
{
    for (double g1 = 0.5; g1 <= 1.0; g1 += 0.0625)
    {
        const auto p = make_params(0.0, 2.0 * g1 - 1.0, 0.0, g1, 1.0 - g1);
        EXPECT_LT(chiral_coeffs(p, {Direction::LeftIncident, 0.0}).T, 1e-30);
        if (g1 > 0.5) { EXPECT_EQ(diode_condition(p), DiodeClass::BlocksLeftIncident); }
    }
}

TEST(Sweep, OrderingAndDegenerateGrid)
{
    const auto p = make_params(0.0, 1.0, 0.0, 0.5, 0.5);
    const auto rows = sweep_single(p, make_grid(-1.0, 1.0, 3), make_grid(0.0, 1.0, 2), Direction::LeftIncident);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_DOUBLE_EQ(rows[0].detuning_over_Gamma, -1.0);
    EXPECT_DOUBLE_EQ(rows[1].detuning_over_Gamma, -1.0);
    EXPECT_DOUBLE_EQ(rows[1].gamma1_over_Gamma, 1.0);
    EXPECT_DOUBLE_EQ(rows[2].detuning_over_Gamma, 0.0);

    const auto one = sweep_single(p, single_point(0.3), single_point(0.25), Direction::RightIncident);
    ASSERT_EQ(one.size(), 1u);
    const auto c = chiral_coeffs(with_gamma1_fraction(p, 0.25), {Direction::RightIncident, 0.3});
    EXPECT_EQ(one[0].T, c.T);
    EXPECT_EQ(one[0].R, c.R);
    EXPECT_EQ(one[0].loss, c.loss);
}

TEST(Sweep, DipAtResonance)
{
    const auto p = make_params(0.0, 1.0, 0.0, 0.5, 0.5);
    const auto g = make_grid(-4.0, 4.0, 401);
    for (double f : {0.0, 0.25, 0.5, 0.75, 1.0})
    {
        const auto rows = sweep_single(p, g, single_point(f), Direction::LeftIncident);
        std::size_t arg = 0;
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (rows[i].T < rows[arg].T - 1e-15) arg = i;
        if (f > 0.0) { EXPECT_EQ(arg, 200u) << "gamma1/Gamma = " << f; }
    }
}

TEST(Sweep, LargeLossWeakScattering)
{
    // kappa = 100 Gamma: 1 - T = 1 - ((kappa - (g1 - g2)) / (kappa + Gamma))^2 peaks at 1 - (99/101)^2
    const auto p = make_params(0.0, 100.0, 0.0, 0.5, 0.5);
    const auto rows = sweep_single(p, single_point(0.0), make_grid(0.0, 1.0, 401), Direction::LeftIncident);
    double worst = 0.0;
    for (const auto& r : rows)
    {
        const double g1 = r.gamma1_over_Gamma;
        const double expect = std::pow((100.0 - (2.0 * g1 - 1.0)) / 101.0, 2);
        EXPECT_NEAR(r.T, expect, 1e-14);
        worst = std::max(worst, 1.0 - r.T);
    }
    EXPECT_NEAR(worst, 1.0 - std::pow(99.0 / 101.0, 2), 1e-14);
    EXPECT_LT(worst, 0.04);
}

TEST(Sweep, DeterministicAcrossThreadCounts)
{
    const auto p = make_params(0.0, 0.3, 0.0, 0.5, 0.5);
    const auto a = sweep_single(p, make_grid(-3.0, 3.0, 301), make_grid(0.0, 1.0, 11), Direction::LeftIncident);
    setenv("CHIRAL_DIODE_THREADS", "1", 1);
    const auto b = sweep_single(p, make_grid(-3.0, 3.0, 301), make_grid(0.0, 1.0, 11), Direction::LeftIncident);
    unsetenv("CHIRAL_DIODE_THREADS");
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(a[i].T, b[i].T);
}

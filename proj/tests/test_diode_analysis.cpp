#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "chiral_diode/diode_analysis.hpp"
#include "chiral_diode/grid.hpp"

using namespace chiral_diode;

namespace
{
double nearest_minimum(const ZeroScanResult& r, double f, double target)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& m : r.minima)
        if (std::abs(m.gamma1_over_Gamma - f) < 1e-12) best = std::min(best, std::abs(m.Gamma_abs_x - target));
    return best;
}
} // namespace

TEST(SingleResCurve, KnownPoints)
{
    const auto p = make_params(0.0, 1.0, 10.0, 0.5, 0.5);
    const auto c = working_area_single_res(p, make_grid(0.0, 1.0, 5));
    ASSERT_EQ(c.points.size(), 3u); // 0 and 0.25 lie below (kappa + Gamma)/4
    EXPECT_DOUBLE_EQ(c.points[0].gamma1_over_Gamma, 0.5);
    EXPECT_NEAR(c.points[0].Gamma_abs_x, 0.0, 1e-15);
    EXPECT_NEAR(c.points[1].Gamma_abs_x, std::log(9.0), 1e-14);
    EXPECT_TRUE(c.points[2].diverges);
    EXPECT_TRUE(std::isinf(c.points[2].Gamma_abs_x));
    EXPECT_FALSE(c.points[1].diverges);
}

TEST(SingleResCurve, MonotoneOnDomain)
{
    for (double kappa : {0.0, 0.3, 1.0})
    {
        const auto p = make_params(0.0, kappa, 10.0, 0.5, 0.5);
        const auto c = working_area_single_res(p, make_grid(0.0, 1.0, 401));
        const double K = p.total_width();
        double prev = -1.0;
        for (const auto& pt : c.points)
        {
            if (pt.diverges || pt.gamma1_over_Gamma >= 0.5 * K) break;
            EXPECT_GT(pt.Gamma_abs_x, prev) << "kappa " << kappa << ", gamma1 " << pt.gamma1_over_Gamma;
            prev = pt.Gamma_abs_x;
        }
    }
}

TEST(SingleResCurve, EmptyDomain)
{
    const auto p = make_params(0.0, 4.0, 10.0, 0.5, 0.5);
    EXPECT_TRUE(working_area_single_res(p, make_grid(0.0, 1.0, 11)).points.empty());
}

TEST(SingleResCurve, NumericMinimaCoincide)
{
    const auto p = make_params(0.0, 1.0, 10.0, 0.5, 0.5);
    const auto g1 = make_grid(0.5, 0.98, 25);
    const auto curve = working_area_single_res(p, g1);
    const auto scan = numeric_zero_scan(p, resonant_input(p, Resonance::SinglePhoton), g1, make_grid(0.0, 12.0, 2401));
    double worst = 0.0;
    for (const auto& pt : curve.points) worst = std::max(worst, nearest_minimum(scan, pt.gamma1_over_Gamma, pt.Gamma_abs_x));
    EXPECT_LT(worst, 0.05);
}

TEST(SingleResCurve, FiniteUMinimaAreShallowNotExact)
{
    const auto p = make_params(0.0, 1.0, 10.0, 0.5, 0.5);
    const auto scan = numeric_zero_scan(p, resonant_input(p, Resonance::SinglePhoton), make_grid(0.75, 0.75, 1),
                                        make_grid(0.0, 6.0, 1201));
    ASSERT_FALSE(scan.minima.empty());
    bool found = false;
    for (const auto& m : scan.minima)
        if (std::abs(m.Gamma_abs_x - std::log(9.0)) < 0.05)
        {
            found = true;
            EXPECT_LT(m.psi_sq, 1e-3 * free_density);
        }
    EXPECT_TRUE(found);
}

TEST(SingleResCurve, ScanMirrorDuality)
{
    const auto p = make_params(0.0, 1.0, 10.0, 0.5, 0.5);
    const auto xs = make_grid(0.0, 8.0, 801);
    const auto left = numeric_zero_scan(p, TwoPhotonIn(Direction::LeftIncident, 0.0, 0.0), make_grid(0.3, 0.9, 7), xs);
    const auto right = numeric_zero_scan(p, TwoPhotonIn(Direction::RightIncident, 0.0, 0.0), make_grid(0.7, 0.1, 7), xs);
    ASSERT_EQ(left.minima.size(), right.minima.size());
    for (std::size_t i = 0; i < left.minima.size(); ++i)
    {
        EXPECT_NEAR(left.minima[i].gamma1_over_Gamma, 1.0 - right.minima[i].gamma1_over_Gamma, 1e-12);
        EXPECT_NEAR(left.minima[i].Gamma_abs_x, right.minima[i].Gamma_abs_x, 1e-8);
    }
}

TEST(ZeroScan, DegenerateLinearNull)
{
    const auto p = make_params(0.0, 0.5, 0.0, 0.5, 0.5);
    const auto scan = numeric_zero_scan(p, resonant_input(p, Resonance::SinglePhoton), make_grid(0.0, 1.0, 5),
                                        make_grid(0.0, 5.0, 51));
    ASSERT_EQ(scan.degenerate_gamma1.size(), 1u);
    EXPECT_DOUBLE_EQ(scan.degenerate_gamma1[0], 0.75);
    for (const auto& m : scan.minima) EXPECT_FALSE(m.is_null);
}

TEST(ZeroScan, RejectsBadGrid)
{
    const auto p = make_params(0.0, 1.0, 10.0, 0.5, 0.5);
    const auto in = resonant_input(p, Resonance::SinglePhoton);
    EXPECT_THROW(numeric_zero_scan(p, in, make_grid(0.5, 0.5, 1), make_grid(-1.0, 1.0, 5)), std::invalid_argument);
    EXPECT_THROW(numeric_zero_scan(p, in, make_grid(0.5, 0.5, 1), make_grid(2.0, 1.0, 5)), std::invalid_argument);
}

TEST(TwoResCurve, SolutionsAreNulls)
{
    const auto p = make_params(0.0, 0.4, 10.0, 0.5, 0.5);
    const auto c = working_area_two_res(p);
    ASSERT_GT(c.points.size(), 10u);
    double worst = 0.0;
    for (const auto& pt : c.points)
    {
        EXPECT_GT(pt.gamma1_over_Gamma, 0.7);
        EXPECT_LE(pt.gamma1_over_Gamma, 1.0);
        EXPECT_LE(pt.Gamma_abs_x, 20.0);
        const auto q = with_gamma1_fraction(p, pt.gamma1_over_Gamma);
        const TwoPhotonField f(q, resonant_input(q, Resonance::TwoPhoton));
        worst = std::max(worst, psi_tt_sq_at_separation(f, pt.Gamma_abs_x));
    }
    EXPECT_LT(worst, 1e-10 * free_density);
}

TEST(TwoResCurve, OrderedByBranchThenGamma)
{
    const auto c = working_area_two_res(make_params(0.0, 0.4, 10.0, 0.5, 0.5));
    for (std::size_t i = 1; i < c.points.size(); ++i)
    {
        const auto& a = c.points[i - 1];
        const auto& b = c.points[i];
        EXPECT_TRUE(a.branch < b.branch || (a.branch == b.branch && a.gamma1_over_Gamma < b.gamma1_over_Gamma));
    }
}

TEST(TwoResCurve, StableUnderCeilingGrowth)
{
    const auto p = make_params(0.0, 0.4, 10.0, 0.5, 0.5);
    TwoResOptions small, large;
    small.ceiling = 8.0;
    large.ceiling = 20.0;
    const auto a = working_area_two_res(p, small);
    const auto b = working_area_two_res(p, large);
    ASSERT_LE(a.points.size(), b.points.size());
    for (const auto& pa : a.points)
    {
        bool found = false;
        for (const auto& pb : b.points)
            found = found || (pa.branch == pb.branch && std::abs(pa.gamma1_over_Gamma - pb.gamma1_over_Gamma) < 1e-9);
        EXPECT_TRUE(found) << "lost point at gamma1 " << pa.gamma1_over_Gamma;
    }
}

TEST(TwoResCurve, EmptyWhenDomainEmpty)
{
    EXPECT_TRUE(working_area_two_res(make_params(0.0, 1.0, 10.0, 0.5, 0.5)).points.empty());
    EXPECT_TRUE(working_area_two_res(make_params(0.0, 0.4, 0.0, 0.5, 0.5)).points.empty());
}

TEST(TwoResCurve, ModulusDivergesAtHalfWidth)
{
    const double K = 1.4;
    EXPECT_TRUE(std::isinf(two_res_modulus_separation(K, 0.7)));
    EXPECT_GT(two_res_modulus_separation(K, 0.7 + 1e-9), 25.0);
    for (double g1 : {0.71, 0.8, 0.95, 1.0})
        EXPECT_NEAR(two_res_modulus_gamma1(K, two_res_modulus_separation(K, g1)), g1, 1e-12);

    const auto c = two_res_modulus_curve(make_params(0.0, 0.4, 10.0, 0.5, 0.5), make_grid(0.0, 1.0, 11));
    ASSERT_FALSE(c.points.empty());
    EXPECT_TRUE(c.points.front().diverges);
    EXPECT_DOUBLE_EQ(c.points.front().gamma1_over_Gamma, 0.7);
}

TEST(Contrast, Reciprocal)
{
    const auto p = make_params(0.0, 0.8, 10.0, 0.5, 0.5);
    for (double x1 : {-1.0, 0.0, 0.3})
        for (double x2 : {-0.2, 0.0, 2.0}) EXPECT_NEAR(nonreciprocity_contrast(p, 0.0, 0.0, x1, x2), 0.0, 1e-14);
}

TEST(Contrast, BlockedLeftIncidence)
{
    const auto p = make_params(0.0, 1.0, 10.0, 1.0, 0.0);
    EXPECT_LT(nonreciprocity_contrast(p, 0.0, 0.0, 1.0, 11.0), -0.999999);
}

TEST(Contrast, LargeLossIsWeak)
{
    // |contrast| ~ 4 |gamma1 - gamma2| / (kappa + Gamma) for kappa >> Gamma
    double worst = 0.0;
    for (double f = 0.0; f <= 1.0; f += 0.01)
    {
        const auto p = with_gamma1_fraction(make_params(0.0, 100.0, 10.0, 0.5, 0.5), std::min(f, 1.0));
        for (double x : {0.0, 5.0}) worst = std::max(worst, std::abs(nonreciprocity_contrast(p, 0.0, 0.0, -0.5 * x, 0.5 * x)));
    }
    EXPECT_LT(worst, 4.0 / 101.0 + 1e-3);
    EXPECT_GT(worst, 0.01);
}

TEST(Contrast, ZeroOverZero)
{
    // lossless, balanced, linear: both transmitted densities vanish at resonance
    const auto p = make_params(0.0, 0.0, 0.0, 0.5, 0.5);
    EXPECT_EQ(nonreciprocity_contrast(p, 0.0, 0.0, 0.3, 0.9), 0.0);
}

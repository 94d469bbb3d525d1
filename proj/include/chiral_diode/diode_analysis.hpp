#ifndef CHIRAL_DIODE_DIODE_ANALYSIS_HPP
#define CHIRAL_DIODE_DIODE_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "grid.hpp"
#include "model.hpp"
#include "parallel.hpp"
#include "roots.hpp"
#include "two_photon.hpp"

namespace chiral_diode
{

struct WorkingAreaPoint
{
    double gamma1_over_Gamma = 0.0;
    double Gamma_abs_x = 0.0; // +inf when diverges
    int branch = 0;
    bool diverges = false;
};

struct WorkingAreaCurve
{
    ModelParams params;
    Resonance resonance = Resonance::SinglePhoton;
    std::vector<WorkingAreaPoint> points;
};

/// Free two-photon density scale 1/(2 pi^2) used to make null thresholds
/// independent of the plane-wave normalization.
inline constexpr double free_density = 1.0 / (2.0 * pi * pi);

/// Separation |x| at which psi_tt vanishes for U -> infinity at single-photon
/// resonance: (2/K) ln[4 g1^2 / (K - 2 g1)^2]. Infinite at g1 = K/2.
inline double single_res_null_separation(double K, double gamma1)
{
    const double den = K - 2.0 * gamma1;
    if (std::abs(den) <= 1e-14 * K) return std::numeric_limits<double>::infinity();
    return (2.0 / K) * std::log(4.0 * gamma1 * gamma1 / (den * den));
}

/// Two-photon-resonance modulus condition: |x| = (2/K) ln[2 g1^2 / ((2 g1 - K) K)], g1 > K/2.
inline double two_res_modulus_separation(double K, double gamma1)
{
    const double den = (2.0 * gamma1 - K) * K;
    if (den <= 0.0) return std::numeric_limits<double>::infinity();
    return (2.0 / K) * std::log(2.0 * gamma1 * gamma1 / den);
}

/// Inverse of two_res_modulus_separation on the branch g1 in (K/2, K].
inline double two_res_modulus_gamma1(double K, double abs_x)
{
    const double E = std::exp(0.5 * K * abs_x);
    // E - sqrt(E^2 - 2E) written without cancellation
    return 0.5 * K * (2.0 * E / (E + std::sqrt(E * E - 2.0 * E)));
}

/// Null locus in the U -> infinity limit. gamma1_grid is in units of Gamma;
/// points outside K/4 <= gamma1 <= Gamma are omitted, gamma1 = K/2 is flagged.
inline WorkingAreaCurve working_area_single_res(const ModelParams& p, const Grid& gamma1_grid)
{
    WorkingAreaCurve c{p, Resonance::SinglePhoton, {}};
    const double G = p.Gamma();
    const double K = p.total_width();
    const double eps = 1e-12 * G;
    for (double f : gamma1_grid.values())
    {
        const double g1 = f * G;
        if (g1 < 0.25 * K - eps || g1 > G + eps) continue;
        const double ax = single_res_null_separation(K, g1);
        WorkingAreaPoint pt;
        pt.gamma1_over_Gamma = f;
        pt.diverges = std::isinf(ax);
        pt.Gamma_abs_x = pt.diverges ? ax : std::max(0.0, G * ax);
        c.points.push_back(pt);
    }
    return c;
}

/// Modulus-condition locus alone (diverging at gamma1 = K/2), for plotting.
inline WorkingAreaCurve two_res_modulus_curve(const ModelParams& p, const Grid& gamma1_grid)
{
    WorkingAreaCurve c{p, Resonance::TwoPhoton, {}};
    const double G = p.Gamma();
    const double K = p.total_width();
    for (double f : gamma1_grid.values())
    {
        const double g1 = f * G;
        if (g1 < 0.5 * K - 1e-12 * G || g1 > G * (1.0 + 1e-12)) continue;
        const double ax = two_res_modulus_separation(K, g1);
        c.points.push_back({f, std::isinf(ax) ? ax : G * ax, 0, std::isinf(ax)});
    }
    return c;
}

struct TwoResOptions
{
    double ceiling = 20.0; // largest Gamma|x| searched
    int samples_per_branch = 64;
    double tol = 1e-10; // in gamma1 / Gamma
};

/// Exact nulls of psi_tt at two-photon resonance: gamma1 satisfying both the
/// modulus condition and tan(U|x|) = (K - 2 g1)/(4U), one tangent branch
/// U|x| in (n pi - pi/2, n pi + pi/2) at a time. Sorted by (branch, gamma1).
inline WorkingAreaCurve working_area_two_res(const ModelParams& p, const TwoResOptions& opt = {})
{
    WorkingAreaCurve c{p, Resonance::TwoPhoton, {}};
    const double G = p.Gamma();
    const double K = p.total_width();
    const double U = p.U();
    if (U == 0.0 || G <= 0.5 * K) return c;
    if (!(opt.ceiling > 0.0) || opt.samples_per_branch < 1 || !(opt.tol > 0.0))
        throw std::invalid_argument("working-area options: ceiling, samples and tol must be positive");

    const double x_min = two_res_modulus_separation(K, G);
    const double x_max = opt.ceiling / G;
    if (x_min > x_max) return c;

    const double ux_lo = std::min(U * x_min, U * x_max);
    const double ux_hi = std::max(U * x_min, U * x_max);
    const long n_lo = static_cast<long>(std::ceil((ux_lo - 0.5 * pi) / pi));
    const long n_hi = static_cast<long>(std::floor((ux_hi + 0.5 * pi) / pi));

    for (long n = n_lo; n <= n_hi; ++n)
    {
        // branch interval in |x|
        double a = (n * pi - 0.5 * pi) / U;
        double b = (n * pi + 0.5 * pi) / U;
        if (a > b) std::swap(a, b);
        const double xa = std::max(a, x_min);
        const double xb = std::min(b, x_max);
        if (xa >= xb) continue;

        // |x| decreases with gamma1
        const double g_lo = two_res_modulus_gamma1(K, xb);
        const double g_hi = xa == x_min ? G : two_res_modulus_gamma1(K, xa);
        auto mismatch = [&](double g1) {
            return U * two_res_modulus_separation(K, g1) - std::atan((K - 2.0 * g1) / (4.0 * U)) -
                   static_cast<double>(n) * pi;
        };

        const int m = opt.samples_per_branch;
        double prev_g = g_lo, prev_h = mismatch(g_lo);
        for (int i = 1; i <= m; ++i)
        {
            const double g = i == m ? g_hi : g_lo + (g_hi - g_lo) * static_cast<double>(i) / m;
            const double h = mismatch(g);
            if (prev_h == 0.0 || (prev_h > 0.0) != (h > 0.0))
            {
                if (auto root = bracketed_root(mismatch, prev_g, g, opt.tol * G))
                {
                    const double ax = two_res_modulus_separation(K, *root);
                    if (G * ax <= opt.ceiling) c.points.push_back({*root / G, G * ax, static_cast<int>(n), false});
                }
            }
            prev_g = g;
            prev_h = h;
        }
    }

    std::sort(c.points.begin(), c.points.end(), [](const auto& l, const auto& r) {
        return l.branch != r.branch ? l.branch < r.branch : l.gamma1_over_Gamma < r.gamma1_over_Gamma;
    });
    c.points.erase(std::unique(c.points.begin(), c.points.end(),
                               [&](const auto& l, const auto& r) {
                                   return l.branch == r.branch &&
                                          std::abs(l.gamma1_over_Gamma - r.gamma1_over_Gamma) <= 10.0 * opt.tol;
                               }),
                   c.points.end());
    return c;
}

/// |psi_tt|^2 at centre of mass 0 and separation abs_x (physical units).
inline double psi_tt_sq_at_separation(const TwoPhotonField& f, double abs_x)
{
    return std::norm(f.psi_tt(-0.5 * abs_x, 0.5 * abs_x));
}

struct ZeroScanMinimum
{
    double gamma1_over_Gamma = 0.0;
    double Gamma_abs_x = 0.0;
    double psi_sq = 0.0;
    bool is_null = false; // psi_sq below the null threshold
};

struct ZeroScanResult
{
    std::vector<ZeroScanMinimum> minima;
    // gamma1 / Gamma values where |psi_tt|^2 is below threshold on the whole grid
    std::vector<double> degenerate_gamma1;
    double threshold = 0.0;
};

struct ZeroScanOptions
{
    double threshold_rel = 1e-8; // relative to 1/(2 pi^2)
    bool nulls_only = false;
    double tol = 1e-10; // golden-section tolerance in Gamma|x|
};

/// Local minima in |x| of |psi_tt|^2 at centre of mass 0, per gamma1.
/// gamma1_grid in units of Gamma (gamma2 = Gamma - gamma1), x_grid in Gamma|x| >= 0.
/// At finite U the single-resonance minima are shallow rather than exact zeros,
/// so minima are reported with their depth and an is_null flag.
inline ZeroScanResult numeric_zero_scan(const ModelParams& p, const TwoPhotonIn& in, const Grid& gamma1_grid,
                                        const Grid& x_grid, const ZeroScanOptions& opt = {})
{
    const double G = p.Gamma();
    const auto xs = x_grid.values();
    for (double X : xs)
        if (X < 0.0) throw std::invalid_argument("x_grid: Gamma|x| values must be >= 0");
    if (!std::is_sorted(xs.begin(), xs.end())) throw std::invalid_argument("x_grid: must be increasing");

    ZeroScanResult res;
    res.threshold = opt.threshold_rel * free_density;
    const auto gs = gamma1_grid.values();

    struct PerGamma
    {
        std::vector<ZeroScanMinimum> minima;
        bool degenerate = false;
    };
    std::vector<PerGamma> per(gs.size());

    parallel_for(gs.size(), [&](std::size_t gi) {
        const double f = gs[gi];
        const ModelParams q = with_gamma1_fraction(p, f);
        const TwoPhotonField field(q, in);
        auto g = [&](double X) { return psi_tt_sq_at_separation(field, X / G); };

        std::vector<double> v(xs.size());
        double vmax = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
        {
            v[i] = g(xs[i]);
            vmax = std::max(vmax, v[i]);
        }
        if (vmax < res.threshold)
        {
            per[gi].degenerate = true;
            return;
        }
        if (xs.size() < 2) return;

        for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        {
            const bool left_ok = i == 0 ? v[0] < v[1] : (v[i] <= v[i - 1] && v[i] < v[i + 1]);
            if (!left_ok) continue;
            const double a = i == 0 ? xs[0] : xs[i - 1];
            const double b = xs[i + 1];
            auto [X, val] = golden_section_min(g, a, b, opt.tol);
            if (i == 0 && v[0] <= val)
            {
                X = xs[0];
                val = v[0];
            }
            const bool null = val < res.threshold;
            if (opt.nulls_only && !null) continue;
            per[gi].minima.push_back({f, X, val, null});
        }
    }, 1);

    for (std::size_t gi = 0; gi < gs.size(); ++gi)
    {
        if (per[gi].degenerate) res.degenerate_gamma1.push_back(gs[gi]);
        res.minima.insert(res.minima.end(), per[gi].minima.begin(), per[gi].minima.end());
    }
    return res;
}

/// (|psi_tt|^2 - |psi~_tt|^2) / (|psi_tt|^2 + |psi~_tt|^2); the right-incident
/// density is taken at the mirrored coordinates (-x1, -x2). 0/0 gives 0.
inline double nonreciprocity_contrast(const ModelParams& p, double omega_k1, double omega_k2, double x1, double x2)
{
    const TwoPhotonField left(p, TwoPhotonIn(Direction::LeftIncident, omega_k1, omega_k2));
    const TwoPhotonField right(p, TwoPhotonIn(Direction::RightIncident, omega_k1, omega_k2));
    const double l = std::norm(left.psi_tt(x1, x2));
    const double r = std::norm(right.psi_tt(-x1, -x2));
    const double sum = l + r;
    if (sum == 0.0) return 0.0;
    return (l - r) / sum;
}

} // namespace chiral_diode

#endif // CHIRAL_DIODE_DIODE_ANALYSIS_HPP

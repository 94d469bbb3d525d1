#ifndef CHIRAL_DIODE_ROOTS_HPP
#define CHIRAL_DIODE_ROOTS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

namespace chiral_diode
{

/// Root of f on [a, b] given f(a), f(b) of opposite sign. Secant steps are
/// taken when they land inside the current bracket, bisection otherwise.
template <class F>
std::optional<double> bracketed_root(F&& f, double a, double b, double tol = 1e-10, int max_iter = 200)
{
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (!(std::isfinite(fa) && std::isfinite(fb)) || (fa > 0.0) == (fb > 0.0)) return std::nullopt;

    bool last_was_secant = false;
    for (int it = 0; it < max_iter; ++it)
    {
        if (std::abs(b - a) <= tol) break;
        double m = 0.5 * (a + b);
        // alternate so a stalled secant side cannot slow convergence below bisection
        if (!last_was_secant)
        {
            const double s = b - fb * (b - a) / (fb - fa);
            const double lo = std::min(a, b), hi = std::max(a, b);
            if (std::isfinite(s) && s > lo && s < hi) m = s;
            last_was_secant = true;
        }
        else
        {
            last_was_secant = false;
        }
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm > 0.0) == (fa > 0.0))
        {
            a = m;
            fa = fm;
        }
        else
        {
            b = m;
            fb = fm;
        }
    }
    return std::abs(fa) < std::abs(fb) ? a : b;
}

/// Minimum of a unimodal f on [a, b].
template <class F>
std::pair<double, double> golden_section_min(F&& f, double a, double b, double tol = 1e-10, int max_iter = 200)
{
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < max_iter && std::abs(b - a) > tol; ++it)
    {
        if (fc < fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    const double fx = f(x);
    if (fx <= fc && fx <= fd) return {x, fx};
    return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

} // namespace chiral_diode

#endif // CHIRAL_DIODE_ROOTS_HPP

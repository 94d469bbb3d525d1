#ifndef CHIRAL_DIODE_EVEN_ODD_HPP
#define CHIRAL_DIODE_EVEN_ODD_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "bound_state.hpp"
#include "model.hpp"

namespace chiral_diode
{

// How a step function is evaluated when its argument is exactly zero.
//   Below: limit from the negative side, theta = 0
//   Exact: midpoint rule, theta = 1/2
//   Above: limit from the positive side, theta = 1
enum class Limit
{
    Below,
    Exact,
    Above
};

inline double step(double x, Limit at_zero = Limit::Exact)
{
    if (x > 0.0) return 1.0;
    if (x < 0.0) return 0.0;
    switch (at_zero)
    {
    case Limit::Below: return 0.0;
    case Limit::Above: return 1.0;
    default: return 0.5;
    }
}

/// c * exp(i (q1 x1 + q2 x2)); wavenumbers may be complex.
struct ExpTerm2
{
    cplx c;
    cplx q1;
    cplx q2;
};

/// c * exp(i q x)
struct ExpTerm1
{
    cplx c;
    cplx q;
};

template <class Term, std::size_t N>
struct TermList
{
    std::array<Term, N> terms{};
    std::size_t n = 0;

    void add(const Term& t) { terms[n++] = t; }
    const Term* begin() const { return terms.data(); }
    const Term* end() const { return terms.data() + n; }
};

using Terms2 = TermList<ExpTerm2, 6>;
using Terms1 = TermList<ExpTerm1, 5>;

inline cplx eval(const Terms2& ts, double x1, double x2)
{
    cplx s = 0.0;
    for (const auto& t : ts) s += t.c * std::exp(I * (t.q1 * x1 + t.q2 * x2));
    return s;
}

inline cplx eval(const Terms1& ts, double x)
{
    cplx s = 0.0;
    for (const auto& t : ts) s += t.c * std::exp(I * t.q * x);
    return s;
}

struct EvenOddAmplitudes
{
    cplx phi_ee;
    cplx phi_ae_x1;
    cplx phi_ae_x2;
    cplx phi_oe;
    cplx phi_eo;
    cplx phi_oo;
    cplx phi_oa_x1;
    cplx phi_oa_x2;
    cplx phi_aa;
};

/// Two-photon scattering state in the even/odd waveguide basis.
///   ee: both photons in the even mode
///   ae: one cavity excitation, one even photon (at x)
///   oe: odd photon at x1, even photon at x2 (eo is the transpose)
///   oo: both odd, free
///   oa: one cavity excitation, one odd photon
///   aa: two cavity excitations
/// Coordinate-dependent amplitudes are exposed as exponential term lists so
/// that derivatives can be taken exactly.
class EvenOddSolution
{
public:
    EvenOddSolution(const ModelParams& p, const TwoPhotonIn& in)
        : params_(p), k1_(in.omega_k1()), k2_(in.omega_k2()), w_(in.omega()), c_(bound_coeffs(p, in))
    {
    }

    const ModelParams& params() const { return params_; }
    const BoundStateCoeffs& coeffs() const { return c_; }
    double k1() const { return k1_; }
    double k2() const { return k2_; }
    double omega() const { return w_; }

    Terms2 ee_terms(double x1, double x2, Limit l1 = Limit::Exact, Limit l2 = Limit::Exact,
                    Limit l12 = Limit::Exact) const
    {
        const double h1 = step(x1, l1);
        const double h2 = step(x2, l2);
        const cplx f11 = (1.0 - h1) + c_.t_k1 * h1; // k1 photon at x1
        const cplx f12 = (1.0 - h2) + c_.t_k1 * h2; // k1 photon at x2
        const cplx f21 = (1.0 - h1) + c_.t_k2 * h1;
        const cplx f22 = (1.0 - h2) + c_.t_k2 * h2;
        const double norm = 1.0 / (2.0 * std::sqrt(2.0) * pi);

        Terms2 ts;
        ts.add({norm * f11 * f22, k1_, k2_});
        ts.add({norm * f12 * f21, k2_, k1_});
        const double both = h1 * h2;
        if (both != 0.0)
        {
            // x2 >= x1 ordering and its mirror; step(x2 - x1) with l12 at the diagonal
            const double above = step(x2 - x1, l12);
            const double below = 1.0 - above;
            if (above != 0.0) ts.add({c_.D * both * above, w_ - c_.rho, c_.rho});
            if (below != 0.0) ts.add({c_.D * both * below, c_.rho, w_ - c_.rho});
        }
        return ts;
    }

    Terms1 ae_terms(double x, Limit l = Limit::Exact) const
    {
        const double h = step(x, l);
        Terms1 ts;
        if (h != 1.0)
        {
            ts.add({(1.0 - h) * c_.m_a1, k1_});
            ts.add({(1.0 - h) * c_.m_a2, k2_});
        }
        if (h != 0.0)
        {
            ts.add({h * c_.beta_k1, k1_});
            ts.add({h * c_.beta_k2, k2_});
            ts.add({h * c_.chi, c_.rho});
        }
        return ts;
    }

    // Odd photon at x1, even photon at x2.
    Terms2 oe_terms(double /*x1*/, double x2, Limit l2 = Limit::Exact) const
    {
        const double h2 = step(x2, l2);
        const cplx f12 = (1.0 - h2) + c_.t_k1 * h2;
        const cplx f22 = (1.0 - h2) + c_.t_k2 * h2;
        const double norm = 1.0 / (2.0 * std::sqrt(2.0) * pi);
        Terms2 ts;
        ts.add({norm * f22, k1_, k2_});
        ts.add({norm * f12, k2_, k1_});
        return ts;
    }

    Terms2 oo_terms() const
    {
        const double norm = 1.0 / (2.0 * std::sqrt(2.0) * pi);
        Terms2 ts;
        ts.add({norm, k1_, k2_});
        ts.add({norm, k2_, k1_});
        return ts;
    }

    Terms1 oa_terms() const
    {
        Terms1 ts;
        ts.add({c_.sigma_k1, k1_});
        ts.add({c_.sigma_k2, k2_});
        return ts;
    }

    cplx phi_ee(double x1, double x2, Limit l1 = Limit::Exact, Limit l2 = Limit::Exact,
                Limit l12 = Limit::Exact) const
    {
        return eval(ee_terms(x1, x2, l1, l2, l12), x1, x2);
    }
    cplx phi_ae(double x, Limit l = Limit::Exact) const { return eval(ae_terms(x, l), x); }
    cplx phi_oe(double x1, double x2, Limit l2 = Limit::Exact) const { return eval(oe_terms(x1, x2, l2), x1, x2); }
    cplx phi_eo(double x1, double x2, Limit l1 = Limit::Exact) const { return phi_oe(x2, x1, l1); }
    cplx phi_oo(double x1, double x2) const { return eval(oo_terms(), x1, x2); }
    cplx phi_oa(double x) const { return eval(oa_terms(), x); }
    cplx phi_aa() const { return c_.phi_aa; }

    EvenOddAmplitudes at(double x1, double x2) const
    {
        return EvenOddAmplitudes{phi_ee(x1, x2), phi_ae(x1),     phi_ae(x2), phi_oe(x1, x2), phi_eo(x1, x2),
                                 phi_oo(x1, x2), phi_oa(x1),     phi_oa(x2), phi_aa()};
    }

private:
    ModelParams params_;
    double k1_;
    double k2_;
    double w_;
    BoundStateCoeffs c_;
};

inline EvenOddAmplitudes even_odd_amplitudes(const ModelParams& p, const TwoPhotonIn& in, double x1, double x2)
{
    return EvenOddSolution(p, in).at(x1, x2);
}

} // namespace chiral_diode

#endif // CHIRAL_DIODE_EVEN_ODD_HPP

#ifndef CHIRAL_DIODE_BOUND_STATE_HPP
#define CHIRAL_DIODE_BOUND_STATE_HPP

#include <cmath>
#include <complex>

#include "model.hpp"
#include "single_photon.hpp"

namespace chiral_diode
{

/// Constants of the two-photon scattering state. m_a1 carries exp(i k1 x)
/// and has the k2 detuning in its denominator (and vice versa).
struct BoundStateCoeffs
{
    cplx m_a1;
    cplx m_a2;
    cplx chi;
    cplx rho;
    cplx D;
    cplx beta_k1;
    cplx beta_k2;
    cplx sigma_k1;
    cplx sigma_k2;
    cplx phi_aa;
    // even-mode single-photon transmissions at k1, k2
    cplx t_k1;
    cplx t_k2;
};

inline BoundStateCoeffs bound_coeffs(const ModelParams& p, const TwoPhotonIn& in)
{
    const double G = p.Gamma();
    const double K = p.total_width();
    const double sG = std::sqrt(G);
    const double w = in.omega();
    const cplx den1(in.omega_k1() - p.omega_a(), 0.5 * K);
    const cplx den2(in.omega_k2() - p.omega_a(), 0.5 * K);
    // omega_a - omega/2 + U - i(kappa+Gamma)/2
    const cplx Q(p.omega_a() - 0.5 * w + p.U(), -0.5 * K);

    BoundStateCoeffs c;
    c.m_a1 = sG / (2.0 * pi * den2);
    c.m_a2 = sG / (2.0 * pi * den1);
    c.chi = I * G * sG * p.U() / (pi * den1 * den2 * Q);
    c.rho = cplx(w - p.omega_a(), 0.5 * K);
    c.D = -I * std::sqrt(0.5 * G) * c.chi;
    c.t_k1 = even_mode_t(p, in.omega_k1());
    c.t_k2 = even_mode_t(p, in.omega_k2());
    c.beta_k1 = c.m_a1 * c.t_k1;
    c.beta_k2 = c.m_a2 * c.t_k2;
    c.sigma_k1 = c.m_a1 / std::sqrt(2.0);
    c.sigma_k2 = c.m_a2 / std::sqrt(2.0);
    c.phi_aa = -sG * (c.m_a1 + c.m_a2) / (std::sqrt(2.0) * Q);
    return c;
}

} // namespace chiral_diode

#endif // CHIRAL_DIODE_BOUND_STATE_HPP

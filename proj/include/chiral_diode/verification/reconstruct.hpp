#ifndef CHIRAL_DIODE_VERIFICATION_RECONSTRUCT_HPP
#define CHIRAL_DIODE_VERIFICATION_RECONSTRUCT_HPP

#include <cmath>
#include <complex>

#include "../even_odd.hpp"
#include "../model.hpp"

namespace chiral_diode::verification
{

struct ChiralAmplitudes
{
    cplx tt;
    cplx rr;
    cplx rt;
};

/// Rebuilds the chiral-basis channels from the even/odd amplitudes alone.
///
/// Right mover R(y) and left mover L(-y) are expanded on e, o with
/// R = a e + b o, L = b e - a o, a = sqrt(gamma1/Gamma), b = sqrt(gamma2/Gamma).
/// A left-incident photon enters as a e + b o, a right-incident one as b e - a o.
inline ChiralAmplitudes chiral_from_even_odd(const EvenOddSolution& s, Direction dir, double x1, double x2)
{
    const auto& p = s.params();
    const double a = std::sqrt(p.gamma1() / p.Gamma());
    const double b = std::sqrt(p.gamma2() / p.Gamma());
    // [mode][e/o], mode 0 = R, 1 = L
    const double proj[2][2] = {{a, b}, {b, -a}};
    const double cin[2] = {dir == Direction::LeftIncident ? a : b, dir == Direction::LeftIncident ? b : -a};

    auto Psi = [&](int m1, int m2, double y1, double y2) {
        const cplx phi[2][2] = {{s.phi_ee(y1, y2), s.phi_oe(y2, y1)}, {s.phi_oe(y1, y2), s.phi_oo(y1, y2)}};
        cplx sum = 0.0;
        for (int al = 0; al < 2; ++al)
            for (int be = 0; be < 2; ++be) sum += proj[m1][al] * proj[m2][be] * cin[al] * cin[be] * phi[al][be];
        return sum;
    };

    const double r2 = std::sqrt(2.0);
    if (dir == Direction::LeftIncident)
        return {Psi(0, 0, x1, x2), Psi(1, 1, -x1, -x2), r2 * Psi(0, 1, x1, -x2)};
    return {Psi(1, 1, -x1, -x2), Psi(0, 0, x1, x2), r2 * Psi(1, 0, -x1, x2)};
}

} // namespace chiral_diode::verification

#endif // CHIRAL_DIODE_VERIFICATION_RECONSTRUCT_HPP

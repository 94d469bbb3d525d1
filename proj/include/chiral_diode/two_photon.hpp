#ifndef CHIRAL_DIODE_TWO_PHOTON_HPP
#define CHIRAL_DIODE_TWO_PHOTON_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bound_state.hpp"
#include "even_odd.hpp"
#include "grid.hpp"
#include "model.hpp"
#include "parallel.hpp"
#include "single_photon.hpp"

namespace chiral_diode
{

/// Plane-wave normalization of the one-reflected/one-transmitted channel.
///   Consistent: (1/2pi) [t1 r2 e^{i(k1 x1 - k2 x2)} + r1 t2 e^{i(k2 x1 - k1 x2)}],
///               agrees with the even/odd reconstruction
///   AsPrinted:  (1/4pi) [phi_k(x1,-x2) t1 r2 + phi_k(-x2,x1) r1 t2]
enum class RtConvention
{
    Consistent,
    AsPrinted
};

/// Symmetrized incident two-photon plane wave,
/// (e^{i(k1 x1 + k2 x2)} + e^{i(k1 x2 + k2 x1)}) / (2 sqrt(2) pi).
inline cplx plane_pair(double k1, double k2, double x1, double x2)
{
    constexpr double norm = 1.0 / (2.0 * 1.4142135623730950488 * pi);
    return norm * (std::exp(I * (k1 * x1 + k2 * x2)) + std::exp(I * (k1 * x2 + k2 * x1)));
}

/// Chiral-basis two-photon scattering wavefunction for one incidence direction.
///
/// Coordinates are physical positions. Each channel describes the outgoing
/// photons, so it is meaningful where they have left the cavity: for left
/// incidence psi_tt on x1, x2 > 0, psi_rr on x1, x2 < 0, psi_rt on x1 > 0 > x2;
/// right incidence mirrors all signs. psi_rt(x1, x2) always has the
/// transmitted photon first and the reflected photon second.
class TwoPhotonField
{
public:
    TwoPhotonField(const ModelParams& p, const TwoPhotonIn& in, RtConvention rt = RtConvention::Consistent)
        : params_(p), input_(in), rt_(rt), coeffs_(bound_coeffs(p, in))
    {
        const Direction d = in.direction();
        s_ = d == Direction::LeftIncident ? 1.0 : -1.0;
        t1_ = transmission_amplitude(p, in.omega_k1(), d);
        t2_ = transmission_amplitude(p, in.omega_k2(), d);
        r1_ = reflection_amplitude(p, in.omega_k1());
        r2_ = reflection_amplitude(p, in.omega_k2());

        const double G2 = p.Gamma() * p.Gamma();
        const double g_in = d == Direction::LeftIncident ? p.gamma1() : p.gamma2();
        const double g_out = d == Direction::LeftIncident ? p.gamma2() : p.gamma1();
        tt_pref_ = g_in * g_in / G2;
        rr_pref_ = p.gamma1() * p.gamma2() / G2;
        rt_pref_ = std::sqrt(2.0 * g_in * g_in * g_in * g_out) / G2;
        bound_rate_ = cplx(-p.total_width(), in.omega() - 2.0 * p.omega_a());
    }

    const ModelParams& params() const { return params_; }
    const TwoPhotonIn& input() const { return input_; }
    const BoundStateCoeffs& coeffs() const { return coeffs_; }
    RtConvention rt_convention() const { return rt_; }
    cplx t_k1() const { return t1_; }
    cplx t_k2() const { return t2_; }
    cplx r_k1() const { return r1_; }
    cplx r_k2() const { return r2_; }

    cplx psi_tt(double x1, double x2) const
    {
        const double k1 = input_.omega_k1(), k2 = input_.omega_k2();
        return plane_pair(k1, k2, s_ * x1, s_ * x2) * t1_ * t2_ +
               tt_pref_ * bound(0.5 * (x1 + x2), std::abs(x2 - x1), s_);
    }

    cplx psi_rr(double x1, double x2) const
    {
        const double k1 = input_.omega_k1(), k2 = input_.omega_k2();
        return plane_pair(k1, k2, -s_ * x1, -s_ * x2) * r1_ * r2_ +
               rr_pref_ * bound(0.5 * (x1 + x2), std::abs(x2 - x1), -s_);
    }

    /// x1: transmitted photon, x2: reflected photon.
    cplx psi_rt(double x1, double x2) const
    {
        const double k1 = input_.omega_k1(), k2 = input_.omega_k2();
        cplx plane;
        if (rt_ == RtConvention::Consistent)
        {
            plane = (t1_ * r2_ * std::exp(I * (s_ * (k1 * x1 - k2 * x2))) +
                     r1_ * t2_ * std::exp(I * (s_ * (k2 * x1 - k1 * x2)))) /
                    (2.0 * pi);
        }
        else
        {
            plane = (plane_pair(k1, k2, s_ * x1, -s_ * x2) * t1_ * r2_ +
                     plane_pair(k1, k2, -s_ * x2, s_ * x1) * r1_ * t2_) /
                    (4.0 * pi);
        }
        if (rt_pref_ == 0.0) return plane;
        // roles of centre-of-mass and relative coordinate swap in this channel
        const double xc = std::abs(0.5 * (x1 + x2));
        const double x = x2 - x1;
        const double w = input_.omega();
        const cplx phase = std::exp(I * (-s_ * 0.5 * w * x));
        return plane + rt_pref_ * coeffs_.D * phase * std::exp(bound_rate_ * xc);
    }

    /// Bound-state part of psi_tt alone.
    cplx psi_tt_bound(double x1, double x2) const
    {
        return tt_pref_ * bound(0.5 * (x1 + x2), std::abs(x2 - x1), s_);
    }

private:
    // D e^{i sign w xc} e^{[i(w - 2 w_a) - K] ax / 2}
    cplx bound(double xc, double ax, double sign) const
    {
        if (coeffs_.D == cplx(0.0)) return 0.0;
        return coeffs_.D * std::exp(I * (sign * input_.omega() * xc)) * std::exp(0.5 * ax * bound_rate_);
    }

    ModelParams params_;
    TwoPhotonIn input_;
    RtConvention rt_;
    BoundStateCoeffs coeffs_;
    double s_ = 1.0;
    cplx t1_, t2_, r1_, r2_;
    double tt_pref_ = 0.0;
    double rr_pref_ = 0.0;
    double rt_pref_ = 0.0;
    cplx bound_rate_;
};

struct BoundAsymptote
{
    double amplitude_sq = 0.0;
    double decay_rate = 0.0;
};

/// Long-distance form |psi_tt|^2 -> amplitude_sq * exp(-decay_rate |x|) for
/// left incidence with gamma1 = Gamma.
inline BoundAsymptote bound_asymptote(const ModelParams& p, Resonance c)
{
    if (p.gamma2() > 1e-12 * p.Gamma())
        throw std::invalid_argument("gamma1: bound asymptote requires gamma1 = Gamma (gamma2 = 0)");
    const double G = p.Gamma();
    const double K = p.total_width();
    const double U2 = p.U() * p.U();
    const double shift = c == Resonance::SinglePhoton ? 4.0 * U2 : 16.0 * U2;
    const double K4 = K * K * K * K;
    return BoundAsymptote{32.0 * G * G * G * G * U2 / (pi * pi * K4 * (shift + K * K)), K};
}

struct TwoPhotonMap
{
    std::size_t rows = 0;
    std::size_t cols = 0;
    double x_min = 0.0;
    double x_max = 0.0;
    std::vector<double> x;
    std::vector<double> tt;
    std::vector<double> rr; // empty unless requested
    std::vector<double> rt;

    double at(const std::vector<double>& m, std::size_t i, std::size_t j) const { return m[i * cols + j]; }
};

/// |psi|^2 on the square grid x_grid x x_grid; entry (i, j) is x1 = x[i], x2 = x[j].
inline TwoPhotonMap map_two_photon(const TwoPhotonField& f, const Grid& x_grid, bool all_channels = false)
{
    TwoPhotonMap m;
    m.rows = m.cols = x_grid.size();
    m.x = x_grid.values();
    m.x_min = x_grid.lo;
    m.x_max = x_grid.hi;
    const std::size_t n = m.rows * m.cols;
    m.tt.resize(n);
    if (all_channels)
    {
        m.rr.resize(n);
        m.rt.resize(n);
    }
    parallel_for(m.rows, [&](std::size_t i) {
        const double x1 = m.x[i];
        for (std::size_t j = 0; j < m.cols; ++j)
        {
            const double x2 = m.x[j];
            m.tt[i * m.cols + j] = std::norm(f.psi_tt(x1, x2));
            if (all_channels)
            {
                m.rr[i * m.cols + j] = std::norm(f.psi_rr(x1, x2));
                m.rt[i * m.cols + j] = std::norm(f.psi_rt(x1, x2));
            }
        }
    }, 8);
    return m;
}

} // namespace chiral_diode

#endif // CHIRAL_DIODE_TWO_PHOTON_HPP

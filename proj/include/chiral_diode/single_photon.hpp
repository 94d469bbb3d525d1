#ifndef CHIRAL_DIODE_SINGLE_PHOTON_HPP
#define CHIRAL_DIODE_SINGLE_PHOTON_HPP

#include <cmath>
#include <complex>
#include <string_view>
#include <vector>

#include "grid.hpp"
#include "model.hpp"
#include "parallel.hpp"

namespace chiral_diode
{

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};
inline constexpr double pi = 3.141592653589793238462643383279502884;

/// Transmission of the even (cavity-coupled) mode:
/// (D + i(kappa - Gamma)/2) / (D + i(kappa + Gamma)/2), D = omega_k - omega_a.
inline cplx even_mode_t(const ModelParams& p, double omega_k)
{
    const double d = omega_k - p.omega_a();
    return cplx(d, 0.5 * (p.kappa() - p.Gamma())) / cplx(d, 0.5 * p.total_width());
}

/// Cavity amplitude of the even-mode scattering state, without the 1/sqrt(2 pi)
/// plane-wave normalization: sqrt(Gamma) / (D + i(kappa+Gamma)/2).
inline cplx even_mode_cavity_amplitude(const ModelParams& p, double omega_k)
{
    const double d = omega_k - p.omega_a();
    return std::sqrt(p.Gamma()) / cplx(d, 0.5 * p.total_width());
}

struct ScatterCoeffs
{
    cplx t;
    cplx r;
    double T = 0.0;
    double R = 0.0;
    double loss = 0.0;
};

inline cplx transmission_amplitude(const ModelParams& p, double omega_k, Direction dir)
{
    const double d = omega_k - p.omega_a();
    const double asym = dir == Direction::LeftIncident ? p.gamma1() - p.gamma2() : p.gamma2() - p.gamma1();
    return cplx(d, 0.5 * (p.kappa() - asym)) / cplx(d, 0.5 * p.total_width());
}

// Same for both incidence directions.
inline cplx reflection_amplitude(const ModelParams& p, double omega_k)
{
    const double d = omega_k - p.omega_a();
    return -I * std::sqrt(p.gamma1() * p.gamma2()) / cplx(d, 0.5 * p.total_width());
}

inline ScatterCoeffs chiral_coeffs(const ModelParams& p, const PhotonIn& in)
{
    ScatterCoeffs c;
    c.t = transmission_amplitude(p, in.omega_k, in.direction);
    c.r = reflection_amplitude(p, in.omega_k);
    c.T = std::norm(c.t);
    c.R = std::norm(c.r);
    c.loss = 1.0 - c.T - c.R;
    return c;
}

enum class DiodeClass
{
    BlocksLeftIncident,
    BlocksRightIncident,
    NoBlock
};

inline std::string_view to_string(DiodeClass c)
{
    switch (c)
    {
    case DiodeClass::BlocksLeftIncident: return "blocks-left-incident";
    case DiodeClass::BlocksRightIncident: return "blocks-right-incident";
    default: return "no-block";
    }
}

/// Classifies the on-resonance transmission zero. kappa = gamma1 - gamma2 != 0
/// kills left-incident transmission, kappa = gamma2 - gamma1 != 0 kills right-incident.
inline DiodeClass diode_condition(const ModelParams& p)
{
    const double tol = 1e-12 * p.Gamma();
    const double asym = p.gamma1() - p.gamma2();
    if (std::abs(asym) <= tol) return DiodeClass::NoBlock;
    if (std::abs(p.kappa() - asym) <= tol) return DiodeClass::BlocksLeftIncident;
    if (std::abs(p.kappa() + asym) <= tol) return DiodeClass::BlocksRightIncident;
    return DiodeClass::NoBlock;
}

struct SweepRow
{
    double detuning_over_Gamma = 0.0;
    double gamma1_over_Gamma = 0.0;
    double T = 0.0;
    double R = 0.0;
    double loss = 0.0;
};

/// T, R, loss over a (detuning, gamma1) grid, both in units of Gamma.
/// gamma2 = Gamma - gamma1 at every point. Rows: outer detuning, inner gamma1.
inline std::vector<SweepRow> sweep_single(const ModelParams& p, const Grid& detuning, const Grid& gamma1_fraction,
                                          Direction dir)
{
    const std::size_t nd = detuning.size();
    const std::size_t ng = gamma1_fraction.size();
    const double G = p.Gamma();

    std::vector<ModelParams> per_gamma;
    per_gamma.reserve(ng);
    for (std::size_t j = 0; j < ng; ++j) per_gamma.push_back(with_gamma1_fraction(p, gamma1_fraction[j]));

    std::vector<SweepRow> rows(nd * ng);
    parallel_for(rows.size(), [&](std::size_t idx) {
        const std::size_t i = idx / ng;
        const std::size_t j = idx % ng;
        const auto& q = per_gamma[j];
        const auto c = chiral_coeffs(q, PhotonIn{dir, q.omega_a() + detuning[i] * G});
        rows[idx] = SweepRow{detuning[i], gamma1_fraction[j], c.T, c.R, c.loss};
    });
    return rows;
}

} // namespace chiral_diode

#endif // CHIRAL_DIODE_SINGLE_PHOTON_HPP

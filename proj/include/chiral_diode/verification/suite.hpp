#ifndef CHIRAL_DIODE_VERIFICATION_SUITE_HPP
#define CHIRAL_DIODE_VERIFICATION_SUITE_HPP

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "../model.hpp"
#include "../single_photon.hpp"
#include "../two_photon.hpp"
#include "lattice.hpp"
#include "reconstruct.hpp"
#include "residual.hpp"

namespace chiral_diode::verification
{

struct Check
{
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool below = true; // pass when value < threshold (else value > threshold)
    bool gating = true;
    bool pass = false;
};

struct SuiteReport
{
    std::vector<Check> checks;

    bool all_pass() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return !c.gating || c.pass; });
    }

    void add(std::string name, double value, double threshold, bool below = true, bool gating = true)
    {
        Check c{std::move(name), value, threshold, below, gating, false};
        c.pass = std::isfinite(value) && (below ? value < threshold : value > threshold);
        checks.push_back(std::move(c));
    }
};

inline nlohmann::json to_json(const SuiteReport& r)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name},
                          {"value", c.value},
                          {"threshold", c.threshold},
                          {"comparison", c.below ? "<" : ">"},
                          {"gating", c.gating},
                          {"pass", c.pass}});
    return {{"checks", checks}, {"all_pass", r.all_pass()}};
}

struct SuiteOptions
{
    bool residual = true;
    bool lattice = true;
    bool pair_lattice = true;
    int draws = 1000;
    unsigned long long seed = 20240607ULL;
};

namespace detail
{
struct Draw
{
    ModelParams p;
    TwoPhotonIn in;
    std::vector<std::pair<double, double>> points;
};

inline Draw random_draw(std::mt19937_64& rng, bool linear = false)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double G = 0.2 + 2.8 * u(rng);
    const double g1 = G * u(rng);
    const double wa = 2.0 * u(rng) - 1.0;
    const double kappa = 3.0 * G * u(rng);
    const double U = linear ? 0.0 : G * (40.0 * u(rng) - 20.0);
    const auto p = make_params(wa, kappa, U, g1, G - g1);
    const Direction d = u(rng) < 0.5 ? Direction::LeftIncident : Direction::RightIncident;
    const TwoPhotonIn in(d, wa + G * (10.0 * u(rng) - 5.0), wa + G * (10.0 * u(rng) - 5.0));
    Draw dr{p, in, {}};
    while (dr.points.size() < 4)
    {
        const double x1 = (10.0 * u(rng) - 5.0) / G, x2 = (10.0 * u(rng) - 5.0) / G;
        if (std::abs(x1) < 1e-3 || std::abs(x2) < 1e-3 || std::abs(x2 - x1) < 1e-3) continue;
        dr.points.emplace_back(x1, x2);
    }
    return dr;
}

// largest deviation between closed forms and the even/odd reconstruction, each
// channel in its outgoing quadrant
inline std::pair<double, double> reconstruction_deviation(const Draw& dr)
{
    const EvenOddSolution s(dr.p, dr.in);
    const TwoPhotonField consistent(dr.p, dr.in, RtConvention::Consistent);
    const TwoPhotonField printed(dr.p, dr.in, RtConvention::AsPrinted);
    const double sg = dr.in.direction() == Direction::LeftIncident ? 1.0 : -1.0;
    double dev = 0.0, dev_printed = 0.0;
    for (auto [a, b] : dr.points)
    {
        const double x1 = sg * std::abs(a), x2 = sg * std::abs(b);
        const auto out = chiral_from_even_odd(s, dr.in.direction(), x1, x2);
        const auto back = chiral_from_even_odd(s, dr.in.direction(), -x1, -x2);
        const auto mixed = chiral_from_even_odd(s, dr.in.direction(), x1, -x2);
        dev = std::max({dev, std::abs(out.tt - consistent.psi_tt(x1, x2)),
                        std::abs(back.rr - consistent.psi_rr(-x1, -x2)),
                        std::abs(mixed.rt - consistent.psi_rt(x1, -x2))});
        dev_printed = std::max(dev_printed, std::abs(mixed.rt - printed.psi_rt(x1, -x2)));
    }
    return {dev, dev_printed};
}
} // namespace detail

/// Analytic transmittance averaged over a Gaussian spectrum of standard deviation sigma_omega.
inline std::pair<double, double> packet_averaged_TR(const ModelParams& p, double omega_k, Direction d,
                                                    double sigma_omega)
{
    const int n = 1601;
    const double span = 8.0 * sigma_omega;
    double T = 0.0, R = 0.0, wsum = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double u = -span + 2.0 * span * i / (n - 1);
        const double w = std::exp(-0.5 * u * u / (sigma_omega * sigma_omega));
        const auto c = chiral_coeffs(p, PhotonIn{d, omega_k + u});
        T += w * c.T;
        R += w * c.R;
        wsum += w;
    }
    return {T / wsum, R / wsum};
}

inline void residual_checks(SuiteReport& rep, const SuiteOptions& opt)
{
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    double single_max = 0.0;
    for (int i = 0; i < opt.draws; ++i)
    {
        const double G = 0.2 + 2.8 * u(rng);
        const double g1 = G * u(rng);
        const auto p = make_params(2.0 * u(rng) - 1.0, 3.0 * G * u(rng), 0.0, g1, G - g1);
        single_max = std::max(single_max, single_residual(p, p.omega_a() + G * (10.0 * u(rng) - 5.0)).max_gating());
    }
    rep.add("single_photon_residual", single_max, 1e-12);
    {
        const auto p = make_params(0.0, 1.0, 10.0, 0.75, 0.25);
        const double wk = 0.3;
        const auto r = single_residual_for(p, wk, 1.01 * even_mode_t(p, wk), even_mode_cavity_amplitude(p, wk));
        rep.add("single_photon_residual_sensitivity", r.entry("jump").max_abs, 1e-3, false);
    }

    double two_max = 0.0, printed_max = 0.0, recon = 0.0, recon_printed = 0.0;
    for (int i = 0; i < opt.draws; ++i)
    {
        const auto dr = detail::random_draw(rng);
        const auto r = two_photon_residual(dr.p, dr.in, dr.points);
        two_max = std::max(two_max, r.max_gating());
        printed_max = std::max(printed_max, r.entry("ae_jump_printed_coefficient").max_abs);
        const auto [dv, dp] = detail::reconstruction_deviation(dr);
        recon = std::max(recon, dv);
        recon_printed = std::max(recon_printed, dp);
    }
    rep.add("two_photon_residual", two_max, 1e-9);
    rep.add("two_photon_residual_printed_ae_jump", printed_max, 1e-9, true, false);

    double linear_max = 0.0;
    for (int i = 0; i < std::max(1, opt.draws / 10); ++i)
    {
        const auto dr = detail::random_draw(rng, true);
        linear_max = std::max(linear_max, two_photon_residual(dr.p, dr.in, dr.points).max_gating());
    }
    rep.add("two_photon_residual_linear", linear_max, 1e-12);

    rep.add("chiral_reconstruction", recon, 1e-10);
    rep.add("psi_rt_as_printed_deviation", recon_printed, 1e-10, true, false);
}

inline std::string format_tag(double v)
{
    std::array<char, 32> buf{};
    auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return ec == std::errc() ? std::string(buf.data(), p) : std::string("?");
}

struct LatticeCase
{
    double kappa;
    double gamma1;
};

inline std::vector<LatticeCase> lattice_cases()
{
    std::vector<LatticeCase> out;
    for (double k : {0.01, 1.0, 100.0})
        for (double g : {0.0, 0.5, 1.0}) out.push_back({k, g});
    return out;
}

inline void lattice_checks(SuiteReport& rep, const SuiteOptions&)
{
    for (const auto& lc : lattice_cases())
    {
        const auto p = make_params(0.0, lc.kappa, 10.0, lc.gamma1, 1.0 - lc.gamma1);
        double dT = 0.0, dR = 0.0, dT_avg = 0.0;
        for (Direction d : {Direction::LeftIncident, Direction::RightIncident})
        {
            const auto lat = lattice_transmission(default_single_spec(p), p, p.omega_a(), d);
            const auto ana = chiral_coeffs(p, PhotonIn{d, p.omega_a()});
            const auto [Ta, Ra] = packet_averaged_TR(p, p.omega_a(), d, lat.sigma_omega);
            dT = std::max(dT, std::abs(lat.T - ana.T));
            dR = std::max(dR, std::abs(lat.R - ana.R));
            dT_avg = std::max({dT_avg, std::abs(lat.T - Ta), std::abs(lat.R - Ra)});
        }
        const std::string tag = "kappa=" + format_tag(lc.kappa) + ",gamma1=" + format_tag(lc.gamma1);
        rep.add("lattice_T[" + tag + "]", dT, 0.02);
        rep.add("lattice_R[" + tag + "]", dR, 0.02);
        rep.add("lattice_packet_averaged[" + tag + "]", dT_avg, 0.02, true, false);
    }

    {
        const auto p = make_params(0.0, 0.0, 10.0, 0.5, 0.5);
        const auto lat = lattice_transmission(default_single_spec(p), p, 0.3, Direction::LeftIncident);
        rep.add("lattice_norm_conservation_kappa0", std::abs(lat.T + lat.R + lat.absorbed - 1.0), 1e-8);
        rep.add("lattice_norm_growth", lat.max_norm_increase, 1e-12);
    }
}

inline void pair_lattice_checks(SuiteReport& rep, const SuiteOptions&)
{
    const auto p = make_params(0.0, 1.0, 10.0, 1.0, 0.0);
    const auto prof = lattice_two_photon(default_pair_spec(), p, 0.0, 0.0);
    const double K = p.total_width();
    rep.add("pair_lattice_decay_rate_rel_error", std::abs(prof.fitted_rate - K) / K, 0.10, true, false);
    rep.add("pair_lattice_bunching_ratio", prof.bunching_ratio, 5.0, false, false);
    rep.add("pair_lattice_norm_growth", prof.max_norm_increase, 1e-12);
}

/// Runs the selected oracle groups. Deterministic for a given seed.
inline SuiteReport run_suite(const SuiteOptions& opt)
{
    SuiteReport rep;
    if (opt.residual) residual_checks(rep, opt);
    if (opt.lattice) lattice_checks(rep, opt);
    if (opt.pair_lattice) pair_lattice_checks(rep, opt);
    return rep;
}

} // namespace chiral_diode::verification

#endif // CHIRAL_DIODE_VERIFICATION_SUITE_HPP

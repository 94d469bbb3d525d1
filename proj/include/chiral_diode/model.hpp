#ifndef CHIRAL_DIODE_MODEL_HPP
#define CHIRAL_DIODE_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chiral_diode
{

// Which end of the waveguide the photons enter from.
//   LeftIncident:  right-going photons, amplitudes t̄, r̄
//   RightIncident: left-going photons,  amplitudes t̃, r̃
enum class Direction
{
    LeftIncident,
    RightIncident
};

inline Direction opposite(Direction d)
{
    return d == Direction::LeftIncident ? Direction::RightIncident : Direction::LeftIncident;
}

inline std::string_view to_string(Direction d)
{
    return d == Direction::LeftIncident ? "left" : "right";
}

inline Direction direction_from_string(std::string_view s)
{
    if (s == "left" || s == "left-incident") return Direction::LeftIncident;
    if (s == "right" || s == "right-incident") return Direction::RightIncident;
    throw std::invalid_argument("direction: expected 'left' or 'right', got '" + std::string(s) + "'");
}

/// Physical parameters of the waveguide / Kerr cavity system.
///
/// Rates and frequencies share one unit; the convention throughout the
/// project is Gamma = gamma1 + gamma2 = 1, group velocity v_c = 1.
/// Instances are only produced by make_params() and are never mutated.
class ModelParams
{
public:
    double omega_a() const { return omega_a_; }
    double kappa() const { return kappa_; }
    double U() const { return U_; }
    double gamma1() const { return gamma1_; }
    double gamma2() const { return gamma2_; }
    double v_c() const { return 1.0; }
    double Gamma() const { return gamma1_ + gamma2_; }
    /// kappa + Gamma, the total cavity linewidth.
    double total_width() const { return kappa_ + gamma1_ + gamma2_; }

    friend ModelParams make_params(double omega_a, double kappa, double U, double gamma1, double gamma2,
                                   double v_c);

    bool operator==(const ModelParams&) const = default;

private:
    ModelParams() = default;

    double omega_a_ = 0.0;
    double kappa_ = 0.0;
    double U_ = 0.0;
    double gamma1_ = 0.0;
    double gamma2_ = 0.0;
};

namespace detail
{
inline void require(bool ok, std::string_view field, std::string_view what, double value)
{
    if (ok) return;
    std::ostringstream os;
    os << field << ": " << what << " (got " << value << ")";
    throw std::invalid_argument(os.str());
}
} // namespace detail

/// Validated construction. Throws std::invalid_argument naming the offending field.
inline ModelParams make_params(double omega_a, double kappa, double U, double gamma1, double gamma2,
                               double v_c = 1.0)
{
    using detail::require;
    require(std::isfinite(omega_a), "omega_a", "must be finite", omega_a);
    require(std::isfinite(kappa), "kappa", "must be finite", kappa);
    require(kappa >= 0.0, "kappa", "must be >= 0", kappa);
    require(std::isfinite(U), "U", "must be finite", U);
    require(std::isfinite(gamma1), "gamma1", "must be finite", gamma1);
    require(gamma1 >= 0.0, "gamma1", "must be >= 0", gamma1);
    require(std::isfinite(gamma2), "gamma2", "must be finite", gamma2);
    require(gamma2 >= 0.0, "gamma2", "must be >= 0", gamma2);
    require(gamma1 + gamma2 > 0.0, "gamma1+gamma2", "Gamma must be > 0", gamma1 + gamma2);
    require(v_c == 1.0, "v_c", "only v_c = 1 is supported", v_c);

    ModelParams p;
    p.omega_a_ = omega_a;
    p.kappa_ = kappa;
    p.U_ = U;
    p.gamma1_ = gamma1;
    p.gamma2_ = gamma2;
    return p;
}

/// Same cavity, new chiral couplings.
inline ModelParams with_couplings(const ModelParams& p, double gamma1, double gamma2)
{
    return make_params(p.omega_a(), p.kappa(), p.U(), gamma1, gamma2);
}

/// Same cavity and Gamma, with gamma1 = fraction * Gamma and gamma2 = Gamma - gamma1.
inline ModelParams with_gamma1_fraction(const ModelParams& p, double fraction)
{
    detail::require(fraction >= 0.0 && fraction <= 1.0, "gamma1/Gamma", "must lie in [0, 1]", fraction);
    const double G = p.Gamma();
    const double g1 = fraction * G;
    return make_params(p.omega_a(), p.kappa(), p.U(), g1, std::max(0.0, G - g1));
}

inline ModelParams swapped_couplings(const ModelParams& p)
{
    return with_couplings(p, p.gamma2(), p.gamma1());
}

struct PhotonIn
{
    Direction direction = Direction::LeftIncident;
    double omega_k = 0.0;
};

inline PhotonIn make_photon_in(Direction d, double omega_k)
{
    detail::require(std::isfinite(omega_k), "omega_k", "must be finite", omega_k);
    return PhotonIn{d, omega_k};
}

/// Two incident plane-wave photons. Stored with omega_k1 <= omega_k2.
class TwoPhotonIn
{
public:
    TwoPhotonIn(Direction d, double omega_k1, double omega_k2) : direction_(d)
    {
        detail::require(std::isfinite(omega_k1), "omega_k1", "must be finite", omega_k1);
        detail::require(std::isfinite(omega_k2), "omega_k2", "must be finite", omega_k2);
        omega_k1_ = std::min(omega_k1, omega_k2);
        omega_k2_ = std::max(omega_k1, omega_k2);
    }

    Direction direction() const { return direction_; }
    double omega_k1() const { return omega_k1_; }
    double omega_k2() const { return omega_k2_; }
    double omega() const { return omega_k1_ + omega_k2_; }

    TwoPhotonIn with_direction(Direction d) const { return TwoPhotonIn(d, omega_k1_, omega_k2_); }

    bool operator==(const TwoPhotonIn&) const = default;

private:
    Direction direction_;
    double omega_k1_;
    double omega_k2_;
};

enum class Resonance
{
    SinglePhoton, // omega_k1 = omega_k2 = omega_a
    TwoPhoton     // omega_k1 = omega_a, omega_k2 = omega_a + 2U
};

inline std::string_view to_string(Resonance r)
{
    return r == Resonance::SinglePhoton ? "single-photon" : "two-photon";
}

inline Resonance resonance_from_string(std::string_view s)
{
    if (s == "single" || s == "single-photon") return Resonance::SinglePhoton;
    if (s == "two" || s == "two-photon") return Resonance::TwoPhoton;
    throw std::invalid_argument("resonance: expected 'single' or 'two-photon', got '" + std::string(s) + "'");
}

inline TwoPhotonIn resonant_input(const ModelParams& p, Resonance r, Direction d = Direction::LeftIncident)
{
    if (r == Resonance::SinglePhoton) return TwoPhotonIn(d, p.omega_a(), p.omega_a());
    return TwoPhotonIn(d, p.omega_a(), p.omega_a() + 2.0 * p.U());
}

} // namespace chiral_diode

#endif // CHIRAL_DIODE_MODEL_HPP

#ifndef CHIRAL_DIODE_VERIFICATION_LATTICE_HPP
#define CHIRAL_DIODE_VERIFICATION_LATTICE_HPP

// Discretized waveguide + cavity, independent of the closed-form amplitudes.
//
// Each chiral channel is a chain of bins of width dx. With dt = dx a bin moves
// exactly one site per step, so transport is a shift with no numerical
// dispersion. Between shifts the bins sitting on the coupling site exchange
// amplitude with the cavity through the exact propagator exp(-i H_loc dt),
// where H_loc couples a bin to the cavity with g_i = sqrt(gamma_i / dt) and the
// cavity carries omega_a - i kappa / 2 (and 2U per double occupation).
// The scheme is a collision model: unitary for kappa = 0, contractive otherwise.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "../model.hpp"

namespace chiral_diode::verification
{

using lcplx = std::complex<double>;

class LatticeError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct LatticeSpec
{
    int n_sites = 0;          // bins per chiral channel
    double dx = 0.05;         // bin width, units of v_c / Gamma
    double dt = 0.05;         // must equal dx
    double packet_width = 16; // spatial standard deviation of |f(x)|^2
    int absorber_width = 32;  // damping ramp at each end, in bins
    long horizon = 0;         // maximum number of steps
};

inline void validate(const LatticeSpec& s)
{
    if (s.n_sites < 16) throw std::invalid_argument("n_sites: must be >= 16");
    if (!(s.dx > 0.0) || !std::isfinite(s.dx)) throw std::invalid_argument("dx: must be positive");
    if (std::abs(s.dt - s.dx) > 1e-12 * s.dx)
        throw std::invalid_argument("dt: the shift transport requires dt == dx");
    if (!(s.packet_width >= 4.0 * s.dx)) throw std::invalid_argument("packet_width: must be >= 4 dx");
    if (s.absorber_width < 0 || 2 * s.absorber_width >= s.n_sites)
        throw std::invalid_argument("absorber_width: must be >= 0 and leave an interior");
    if (s.horizon < 1) throw std::invalid_argument("horizon: must be >= 1 step");
}

namespace detail
{
inline double absorber_factor(int j, int n, int w)
{
    if (w == 0) return 1.0;
    const int d = std::min(j, n - 1 - j); // distance from nearest end
    if (d >= w) return 1.0;
    const double s = static_cast<double>(w - d) / w;
    return std::exp(-0.5 * s * s);
}

// Gaussian packet with |f|^2 of standard deviation sigma, carrier k, unit norm on the grid.
inline std::vector<lcplx> gaussian_packet(int n, double dx, int origin, double x0, double sigma, double k)
{
    std::vector<lcplx> f(n);
    double norm = 0.0;
    for (int j = 0; j < n; ++j)
    {
        const double x = (j - origin) * dx;
        const double env = std::exp(-(x - x0) * (x - x0) / (4.0 * sigma * sigma));
        f[j] = env * std::exp(lcplx(0.0, k * x));
        norm += std::norm(f[j]);
    }
    for (auto& v : f) v /= std::sqrt(norm);
    return f;
}
} // namespace detail

/// Local propagators for one step.
struct LocalPropagators
{
    Eigen::Matrix3cd single; // basis: bin R_c, bin L_c, cavity
    Eigen::Matrix<lcplx, 6, 6> pair; // |rr>, |rl>, |ll>, |ra>, |la>, |aa>

    LocalPropagators(const ModelParams& p, double dt)
    {
        const double g1 = std::sqrt(p.gamma1() / dt);
        const double g2 = std::sqrt(p.gamma2() / dt);
        const lcplx eps(p.omega_a(), -0.5 * p.kappa());
        const lcplx mi(0.0, -1.0);

        Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
        h(0, 2) = h(2, 0) = g1;
        h(1, 2) = h(2, 1) = g2;
        h(2, 2) = eps;
        single = (mi * dt * h).exp();

        Eigen::Matrix<lcplx, 6, 6> h2 = Eigen::Matrix<lcplx, 6, 6>::Zero();
        const double r2 = std::sqrt(2.0);
        auto sym = [&](int i, int j, lcplx v) { h2(i, j) = h2(j, i) = v; };
        sym(3, 0, r2 * g1);
        sym(4, 1, g1);
        sym(3, 1, g2);
        sym(4, 2, r2 * g2);
        sym(5, 3, r2 * g1);
        sym(5, 4, r2 * g2);
        h2(3, 3) = eps;
        h2(4, 4) = eps;
        h2(5, 5) = 2.0 * eps + 2.0 * p.U();
        pair = (mi * dt * h2).exp();
    }
};

/// Single excitation: right-moving bins R, left-moving bins L, cavity a.
/// Bin j sits at x = (j - coupling_site) dx; the cavity couples at j = coupling_site.
class SingleLattice
{
public:
    SingleLattice(const LatticeSpec& spec, const ModelParams& p, int coupling_site)
        : spec_(spec), c_(coupling_site), prop_(p, spec.dt), R_(spec.n_sites), L_(spec.n_sites)
    {
        validate(spec);
        if (c_ <= spec.absorber_width || c_ >= spec.n_sites - 1 - spec.absorber_width)
            throw std::invalid_argument("coupling site must lie inside the absorbers");
        damp_.resize(spec.n_sites);
        for (int j = 0; j < spec.n_sites; ++j) damp_[j] = detail::absorber_factor(j, spec.n_sites, spec.absorber_width);
    }

    std::vector<lcplx>& R() { return R_; }
    std::vector<lcplx>& L() { return L_; }
    const std::vector<lcplx>& R() const { return R_; }
    const std::vector<lcplx>& L() const { return L_; }
    lcplx& cavity() { return a_; }
    lcplx cavity() const { return a_; }
    int coupling_site() const { return c_; }
    double absorbed() const { return absorbed_; }

    double norm() const
    {
        double s = std::norm(a_);
        for (const auto& v : R_) s += std::norm(v);
        for (const auto& v : L_) s += std::norm(v);
        return s;
    }

    void step()
    {
        const int n = spec_.n_sites;
        std::move_backward(R_.begin(), R_.end() - 1, R_.end());
        R_[0] = 0.0;
        std::move(L_.begin() + 1, L_.end(), L_.begin());
        L_[n - 1] = 0.0;

        const Eigen::Vector3cd v(R_[c_], L_[c_], a_);
        const Eigen::Vector3cd w = prop_.single * v;
        R_[c_] = w(0);
        L_[c_] = w(1);
        a_ = w(2);

        for (int j = 0; j < n; ++j)
        {
            if (damp_[j] == 1.0) continue;
            absorbed_ += (1.0 - damp_[j] * damp_[j]) * (std::norm(R_[j]) + std::norm(L_[j]));
            R_[j] *= damp_[j];
            L_[j] *= damp_[j];
        }
    }

private:
    LatticeSpec spec_;
    int c_;
    LocalPropagators prop_;
    std::vector<lcplx> R_, L_;
    lcplx a_ = 0.0;
    std::vector<double> damp_;
    double absorbed_ = 0.0;
};

struct LatticeResult
{
    double T = 0.0;
    double R = 0.0;
    double loss = 0.0;
    double absorbed = 0.0;      // norm removed by the boundary ramps
    double sigma_omega = 0.0;   // spectral standard deviation of the packet's |f(k)|^2
    long steps = 0;
    double max_norm_increase = 0.0; // largest per-step norm growth seen (should be <= 0 up to rounding)
};

/// Default geometry for a single-photon run: the packet starts entirely to the
/// incident side and the grid holds both outgoing packets plus the cavity tail.
inline LatticeSpec default_single_spec(const ModelParams& p, double dx = 0.05, double packet_width = 16.0)
{
    const double K = p.total_width();
    const double tail = 36.0 / K; // cavity ring-down to ~1e-15 in norm
    LatticeSpec s;
    s.dx = dx;
    s.dt = dx;
    s.packet_width = packet_width;
    s.absorber_width = 32;
    // the packet's back tail (to ~8 widths) must pass the cavity before the front reaches an edge
    const int half = static_cast<int>(std::ceil((24.0 * packet_width + tail) / dx)) + s.absorber_width;
    s.n_sites = 2 * half + 1;
    s.horizon = static_cast<long>(std::ceil((16.0 * packet_width + tail) / dx)) + 16;
    return s;
}

/// Wavepacket transmission and reflection of one photon with carrier omega_k.
/// The run stops once the incident side, the cavity and the coupling bins hold
/// less than 1e-13 of the norm.
inline LatticeResult lattice_transmission(const LatticeSpec& spec, const ModelParams& p, double omega_k,
                                          Direction dir)
{
    validate(spec);
    const int n = spec.n_sites;
    const int c = n / 2;
    // rotating frame at omega_a: photon carrier Delta, cavity at 0
    const ModelParams q = make_params(0.0, p.kappa(), p.U(), p.gamma1(), p.gamma2());
    const double k = omega_k - p.omega_a();
    SingleLattice lat(spec, q, c);

    const double sigma = spec.packet_width;
    const double start = 6.5 * sigma + 2.0 * spec.dx;
    if (dir == Direction::LeftIncident)
        lat.R() = detail::gaussian_packet(n, spec.dx, c, -start, sigma, k);
    else
    {
        // left mover e^{-ikx}: bins mirrored
        auto f = detail::gaussian_packet(n, spec.dx, c, -start, sigma, k);
        std::reverse(f.begin(), f.end());
        lat.L() = f;
    }
    {
        const double edge = (std::min(c, n - 1 - c) - spec.absorber_width) * spec.dx;
        if (start + 6.0 * sigma > edge) throw LatticeError("lattice: packet does not fit between the absorbers");
    }

    LatticeResult res;
    res.sigma_omega = 1.0 / (2.0 * sigma);
    double prev = lat.norm();
    auto incident_side = [&]() {
        double s = std::norm(lat.cavity());
        const auto& in = dir == Direction::LeftIncident ? lat.R() : lat.L();
        const auto& out = dir == Direction::LeftIncident ? lat.L() : lat.R();
        if (dir == Direction::LeftIncident)
        {
            for (int j = 0; j <= c; ++j) s += std::norm(in[j]);
            for (int j = c; j < n; ++j) s += std::norm(out[j]);
        }
        else
        {
            for (int j = c; j < n; ++j) s += std::norm(in[j]);
            for (int j = 0; j <= c; ++j) s += std::norm(out[j]);
        }
        return s;
    };

    bool cleared = false;
    for (long it = 0; it < spec.horizon; ++it)
    {
        lat.step();
        ++res.steps;
        const double now = lat.norm() + lat.absorbed();
        res.max_norm_increase = std::max(res.max_norm_increase, now - prev);
        prev = now;
        if (it > static_cast<long>(start / spec.dx) && it % 32 == 0 && incident_side() < 1e-13)
        {
            cleared = true;
            break;
        }
    }
    if (!cleared) throw LatticeError("lattice: packet has not cleared the cavity within the horizon");
    if (lat.absorbed() > 1e-8) throw LatticeError("lattice: outgoing packet reached the absorbing boundary");

    double fwd = 0.0, back = 0.0;
    for (int j = c + 1; j < n; ++j) (dir == Direction::LeftIncident ? fwd : back) += std::norm(lat.R()[j]);
    for (int j = 0; j < c; ++j) (dir == Direction::LeftIncident ? back : fwd) += std::norm(lat.L()[j]);
    res.T = fwd;
    res.R = back;
    res.absorbed = lat.absorbed();
    res.loss = 1.0 - res.T - res.R;
    return res;
}

/// Two excitations. Modes 0..n-1 are right-moving bins, n..2n-1 left-moving bins.
/// State: sum_{m,n} psi(m,n)/sqrt2 b_m^+ b_n^+ + sum_m phi(m) b_m^+ a^+ + c/sqrt2 a^+ a^+,
/// psi symmetric, norm = sum |psi|^2 + sum |phi|^2 + |c|^2.
class PairLattice
{
public:
    PairLattice(const LatticeSpec& spec, const ModelParams& p, int coupling_site)
        : spec_(spec), c_(coupling_site), prop_(p, spec.dt)
    {
        validate(spec);
        if (spec.n_sites > 256) throw std::invalid_argument("n_sites: two-excitation lattice is limited to 256");
        if (c_ <= spec.absorber_width || c_ >= spec.n_sites - 1 - spec.absorber_width)
            throw std::invalid_argument("coupling site must lie inside the absorbers");
        const int m = 2 * spec.n_sites;
        psi_ = Eigen::MatrixXcd::Zero(m, m);
        phi_ = Eigen::VectorXcd::Zero(m);
        damp_.resize(m);
        for (int j = 0; j < spec.n_sites; ++j)
            damp_[j] = damp_[j + spec.n_sites] = detail::absorber_factor(j, spec.n_sites, spec.absorber_width);
        src_.resize(m);
        for (int j = 0; j < spec.n_sites; ++j)
        {
            src_[j] = j - 1; // right movers come from the left
            src_[spec.n_sites + j] = j + 1 < spec.n_sites ? spec.n_sites + j + 1 : -1;
        }
    }

    Eigen::MatrixXcd& psi() { return psi_; }
    const Eigen::MatrixXcd& psi() const { return psi_; }
    Eigen::VectorXcd& phi() { return phi_; }
    lcplx& cc() { return cc_; }
    int n_sites() const { return spec_.n_sites; }
    int coupling_site() const { return c_; }
    double absorbed() const { return absorbed_; }

    double norm() const { return psi_.squaredNorm() + phi_.squaredNorm() + std::norm(cc_); }

    void step()
    {
        const int m = 2 * spec_.n_sites;
        Eigen::MatrixXcd next(m, m);
        Eigen::VectorXcd nphi(m);
        for (int j = 0; j < m; ++j)
        {
            const int sj = src_[j];
            nphi(j) = sj < 0 ? lcplx(0.0) : phi_(sj);
            for (int i = 0; i < m; ++i)
            {
                const int si = src_[i];
                next(i, j) = (si < 0 || sj < 0) ? lcplx(0.0) : psi_(si, sj);
            }
        }
        psi_.swap(next);
        phi_.swap(nphi);

        const int r0 = c_;
        const int l0 = spec_.n_sites + c_;
        const double r2 = std::sqrt(2.0);
        for (int i = 0; i < m; ++i)
        {
            if (i == r0 || i == l0) continue;
            const Eigen::Vector3cd v(r2 * psi_(i, r0), r2 * psi_(i, l0), phi_(i));
            const Eigen::Vector3cd w = prop_.single * v;
            psi_(i, r0) = psi_(r0, i) = w(0) / r2;
            psi_(i, l0) = psi_(l0, i) = w(1) / r2;
            phi_(i) = w(2);
        }
        Eigen::Matrix<lcplx, 6, 1> v;
        v << psi_(r0, r0), r2 * psi_(r0, l0), psi_(l0, l0), phi_(r0), phi_(l0), cc_;
        const Eigen::Matrix<lcplx, 6, 1> w = prop_.pair * v;
        psi_(r0, r0) = w(0);
        psi_(r0, l0) = psi_(l0, r0) = w(1) / r2;
        psi_(l0, l0) = w(2);
        phi_(r0) = w(3);
        phi_(l0) = w(4);
        cc_ = w(5);

        const double before = psi_.squaredNorm() + phi_.squaredNorm();
        for (int j = 0; j < m; ++j)
        {
            if (damp_[j] == 1.0) continue;
            psi_.col(j) *= damp_[j];
            psi_.row(j) *= damp_[j];
            phi_(j) *= damp_[j];
        }
        absorbed_ += before - (psi_.squaredNorm() + phi_.squaredNorm());
    }

private:
    LatticeSpec spec_;
    int c_;
    LocalPropagators prop_;
    Eigen::MatrixXcd psi_;
    Eigen::VectorXcd phi_;
    lcplx cc_ = 0.0;
    std::vector<double> damp_;
    std::vector<int> src_;
    double absorbed_ = 0.0;
};

struct PairProfile
{
    double x_c = 0.0;              // centre of mass of the sampled line, relative to the cavity
    std::vector<double> abs_x;     // |x2 - x1| samples
    std::vector<double> density;   // transmitted pair density |psi_tt|^2 along the line
    double fitted_rate = 0.0;      // -slope of ln density over 2 dx <= |x| <= 3/K
    double bunching_ratio = 0.0;   // density(0) / density(K|x| = 3)
    long steps = 0;
    double max_norm_increase = 0.0;
    Eigen::MatrixXd transmitted;   // |psi|^2 / dx^2 on the transmitted-transmitted block, both bins past the cavity
};

/// Default geometry for the pair lattice: 256 bins per channel, the incident
/// pair packet to the left of the cavity, a short transmitted region.
inline LatticeSpec default_pair_spec()
{
    LatticeSpec s;
    s.n_sites = 256;
    s.dx = 0.15;
    s.dt = 0.15;
    s.packet_width = 2.4;
    s.absorber_width = 8;
    s.horizon = 1000;
    return s;
}

/// Two photons incident from the left (both in one Gaussian packet per carrier).
/// Evolves until the packet centre is halfway into the transmitted region and
/// samples the transmitted pair density along the anti-diagonal through the
/// brightest diagonal bin.
inline PairProfile lattice_two_photon(const LatticeSpec& spec, const ModelParams& p, double omega_k1,
                                      double omega_k2)
{
    validate(spec);
    const int n = spec.n_sites;
    const double sigma = spec.packet_width;
    const int lead = static_cast<int>(std::ceil(6.5 * sigma / spec.dx));
    const int c = spec.absorber_width + 2 * lead + 2;
    if (c + 8 >= n - spec.absorber_width)
        throw LatticeError("lattice: grid too small for the incident pair packet");

    const ModelParams q = make_params(0.0, p.kappa(), p.U(), p.gamma1(), p.gamma2());
    PairLattice lat(spec, q, c);
    const double x0 = -(lead + 1) * spec.dx;
    const auto f = detail::gaussian_packet(n, spec.dx, c, x0, sigma, omega_k1 - p.omega_a());
    const auto g = detail::gaussian_packet(n, spec.dx, c, x0, sigma, omega_k2 - p.omega_a());
    {
        auto& psi = lat.psi();
        double norm = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
            {
                psi(i, j) = f[i] * g[j] + g[i] * f[j];
                norm += std::norm(psi(i, j));
            }
        psi /= std::sqrt(norm);
    }

    const int right_room = n - spec.absorber_width - c - 1;
    const double target = (1 + right_room / 2) * spec.dx; // packet centre at end of run
    const long steps = std::lround((target - x0) / spec.dx);
    if (steps > spec.horizon) throw LatticeError("lattice: horizon shorter than the transit time");

    PairProfile out;
    double prev = lat.norm();
    for (long it = 0; it < steps; ++it)
    {
        lat.step();
        const double now = lat.norm() + lat.absorbed();
        out.max_norm_increase = std::max(out.max_norm_increase, now - prev);
        prev = now;
    }
    out.steps = steps;

    // transmitted-transmitted block, inside the right absorber
    const int lo = c + 1;
    const int hi = n - spec.absorber_width; // exclusive
    const int w = hi - lo;
    out.transmitted.resize(w, w);
    const double inv_dx2 = 1.0 / (spec.dx * spec.dx);
    for (int i = 0; i < w; ++i)
        for (int j = 0; j < w; ++j) out.transmitted(i, j) = std::norm(lat.psi()(lo + i, lo + j)) * inv_dx2;

    const double K = p.total_width();
    const int kmax = static_cast<int>(std::lround(1.5 / (K * spec.dx))); // 2 k dx = 3/K
    int best = -1;
    double best_val = -1.0;
    for (int m = kmax; m + kmax < w; ++m)
        if (out.transmitted(m, m) > best_val)
        {
            best_val = out.transmitted(m, m);
            best = m;
        }
    if (best < 0) throw LatticeError("lattice: transmitted region too small to sample the pair line");

    out.x_c = (lo + best - c) * spec.dx;
    for (int k = 0; k <= kmax; ++k)
    {
        out.abs_x.push_back(2.0 * k * spec.dx);
        out.density.push_back(out.transmitted(best - k, best + k));
    }

    // least-squares slope of ln density on 2dx <= |x| <= 3/K
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t k = 1; k < out.abs_x.size(); ++k)
    {
        if (!(out.density[k] > 0.0)) continue;
        const double xv = out.abs_x[k], yv = std::log(out.density[k]);
        sx += xv;
        sy += yv;
        sxx += xv * xv;
        sxy += xv * yv;
        ++cnt;
    }
    if (cnt >= 2) out.fitted_rate = -(cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    if (out.density.back() > 0.0) out.bunching_ratio = out.density.front() / out.density.back();
    return out;
}

} // namespace chiral_diode::verification

#endif // CHIRAL_DIODE_VERIFICATION_LATTICE_HPP

#ifndef CHIRAL_DIODE_FIGURES_HPP
#define CHIRAL_DIODE_FIGURES_HPP

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "diode_analysis.hpp"
#include "grid.hpp"
#include "io.hpp"
#include "model.hpp"
#include "parallel.hpp"
#include "single_photon.hpp"
#include "two_photon.hpp"

namespace chiral_diode
{

inline const std::vector<std::string>& figure_ids()
{
    static const std::vector<std::string> ids{"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"};
    return ids;
}

struct FigureOptions
{
    std::optional<std::size_t> grid; // points per axis; default 401
    double map_half_width = 5.0;    // maps cover Gamma*x in [-w, w]
};

struct PanelRecord
{
    std::string panel;
    std::string file;
    std::string quantity;
    nlohmann::json parameters;
};

namespace figures_detail
{

struct ResonanceRow
{
    double gamma1_over_Gamma;
    double kappa;
    double T_left;
    double T_right;
    double R;
    double loss_left;
    double loss_right;
};

inline void write_resonance_csv(std::ostream& os, const std::vector<ResonanceRow>& rows)
{
    os << "gamma1_over_Gamma,kappa,T_left_incident,T_right_incident,R,loss_left_incident,loss_right_incident\n";
    for (const auto& r : rows)
        os << format_double(r.gamma1_over_Gamma) << ',' << format_double(r.kappa) << ',' << format_double(r.T_left)
           << ',' << format_double(r.T_right) << ',' << format_double(r.R) << ',' << format_double(r.loss_left) << ','
           << format_double(r.loss_right) << '\n';
}

// kappa_of maps gamma1 (Gamma = 1) to the cavity loss rate
inline std::vector<ResonanceRow> resonance_rows(const Grid& g1, const std::function<double(double)>& kappa_of)
{
    std::vector<ResonanceRow> rows(g1.size());
    parallel_for(rows.size(), [&](std::size_t i) {
        const double f = g1[i];
        const auto p = make_params(0.0, kappa_of(f), 0.0, f, 1.0 - f);
        const auto l = chiral_coeffs(p, PhotonIn{Direction::LeftIncident, 0.0});
        const auto r = chiral_coeffs(p, PhotonIn{Direction::RightIncident, 0.0});
        rows[i] = {f, p.kappa(), l.T, r.T, l.R, l.loss, r.loss};
    });
    return rows;
}

struct GammaRow
{
    double gamma1_over_Gamma;
    double psi_tt_sq;
    double psi_tilde_tt_sq;
};

/// |psi_tt|^2 and |psi~_tt|^2 at relative coordinate Gamma*x versus gamma1.
inline std::vector<GammaRow> gamma_rows(const ModelParams& p, Resonance res, double Gamma_x, const Grid& g1)
{
    std::vector<GammaRow> rows(g1.size());
    const double x = Gamma_x / p.Gamma();
    parallel_for(rows.size(), [&](std::size_t i) {
        const auto q = with_gamma1_fraction(p, g1[i]);
        const TwoPhotonField left(q, resonant_input(q, res, Direction::LeftIncident));
        const TwoPhotonField right(q, resonant_input(q, res, Direction::RightIncident));
        rows[i] = {g1[i], std::norm(left.psi_tt(-0.5 * x, 0.5 * x)), std::norm(right.psi_tt(0.5 * x, -0.5 * x))};
    });
    return rows;
}

inline void write_gamma_csv(std::ostream& os, const std::vector<GammaRow>& rows)
{
    os << "gamma1_over_Gamma,psi_tt_sq,psi_tilde_tt_sq\n";
    for (const auto& r : rows)
        os << format_double(r.gamma1_over_Gamma) << ',' << format_double(r.psi_tt_sq) << ','
           << format_double(r.psi_tilde_tt_sq) << '\n';
}

inline void write_map_stack_csv(std::ostream& os, const std::vector<std::pair<double, TwoPhotonMap>>& maps)
{
    os << "gamma1_over_Gamma,x1,x2,psi_sq\n";
    for (const auto& [f, m] : maps)
        for (std::size_t i = 0; i < m.rows; ++i)
            for (std::size_t j = 0; j < m.cols; ++j)
                os << format_double(f) << ',' << format_double(m.x[i]) << ',' << format_double(m.x[j]) << ','
                   << format_double(m.tt[i * m.cols + j]) << '\n';
}

class Writer
{
public:
    Writer(std::string fig, std::filesystem::path dir) : fig_(std::move(fig)), dir_(std::move(dir)) {}

    template <class F>
    void panel(const std::string& id, const std::string& quantity, nlohmann::json params, F&& write)
    {
        const std::string file = fig_ + id + ".csv";
        auto out = open_output(dir_ / file);
        write(out);
        check_stream(out, file);
        records_.push_back({id, file, quantity, std::move(params)});
    }

    const std::vector<PanelRecord>& records() const { return records_; }

private:
    std::string fig_;
    std::filesystem::path dir_;
    std::vector<PanelRecord> records_;
};

inline nlohmann::json rates(double kappa, double U)
{
    return {{"Gamma", 1.0}, {"kappa", kappa}, {"U", U}, {"omega_a", 0.0}};
}

inline void sweep_figure(Writer& w, std::size_t n)
{
    const auto p = make_params(0.0, 1.0, 0.0, 0.5, 0.5);
    const Grid det = make_grid(-4.0, 4.0, n, "detuning");
    const Grid g1{0.0, 1.0, 5};
    const auto rows = sweep_single(p, det, g1, Direction::LeftIncident);
    auto params = rates(1.0, 0.0);
    params["gamma1_over_Gamma"] = g1.values();
    params["direction"] = "left";
    params["detuning_over_Gamma"] = {det.lo, det.hi, det.count};
    w.panel("a", "T versus detuning", params, [&](std::ostream& os) { write_sweep_csv(os, rows); });
    w.panel("b", "R versus detuning", params, [&](std::ostream& os) { write_sweep_csv(os, rows); });
}

inline void resonance_figure(Writer& w, std::size_t n)
{
    const Grid g1 = make_grid(0.0, 1.0, n, "gamma1");
    const char* ids[] = {"a", "b", "c"};
    const double kappas[] = {1.0, 0.01, 100.0};
    for (int k = 0; k < 3; ++k)
    {
        const double kap = kappas[k];
        auto params = rates(kap, 0.0);
        params["detuning_over_Gamma"] = 0.0;
        w.panel(ids[k], "T and R versus gamma1 at resonance", params, [&](std::ostream& os) {
            write_resonance_csv(os, resonance_rows(g1, [kap](double) { return kap; }));
        });
    }
    const Grid g1d = make_grid(0.5, 1.0, n, "gamma1");
    auto params = rates(0.0, 0.0);
    params["kappa"] = "gamma1 - gamma2";
    params["detuning_over_Gamma"] = 0.0;
    w.panel("d", "T and R versus gamma1 at resonance", params, [&](std::ostream& os) {
        write_resonance_csv(os, resonance_rows(g1d, [](double f) { return 2.0 * f - 1.0; }));
    });
}

inline void map_figure(Writer& w, double kappa, std::size_t n, double half)
{
    const double U = 10.0;
    const auto base = make_params(0.0, kappa, U, 0.5, 0.5);
    const Grid xs = make_grid(-half, half, n, "x");
    const std::vector<double> g1s{0.0, 0.5, 1.0};
    struct Spec
    {
        const char* id;
        Resonance res;
        Direction dir;
        const char* quantity;
    };
    const Spec specs[] = {{"a", Resonance::SinglePhoton, Direction::LeftIncident, "|psi_tt|^2"},
                          {"b", Resonance::SinglePhoton, Direction::RightIncident, "|psi~_tt|^2"},
                          {"c", Resonance::TwoPhoton, Direction::LeftIncident, "|psi_tt|^2"},
                          {"d", Resonance::TwoPhoton, Direction::RightIncident, "|psi~_tt|^2"}};
    for (const auto& s : specs)
    {
        std::vector<std::pair<double, TwoPhotonMap>> maps;
        for (double f : g1s)
        {
            const auto q = with_gamma1_fraction(base, f);
            maps.emplace_back(f, map_two_photon(TwoPhotonField(q, resonant_input(q, s.res, s.dir)), xs));
        }
        auto params = rates(kappa, U);
        params["resonance"] = std::string(to_string(s.res));
        params["direction"] = std::string(to_string(s.dir));
        params["gamma1_over_Gamma"] = g1s;
        params["Gamma_x"] = {xs.lo, xs.hi, xs.count};
        w.panel(s.id, std::string(s.quantity) + " over (x1, x2)", params,
                [&](std::ostream& os) { write_map_stack_csv(os, maps); });
    }
}

struct CutSpec
{
    const char* id;
    Resonance res;
    double Gamma_x;
};

inline void cut_figure(Writer& w, double kappa, const std::vector<CutSpec>& cuts, std::size_t n)
{
    const double U = 10.0;
    const auto base = make_params(0.0, kappa, U, 0.5, 0.5);
    const Grid g1 = make_grid(0.0, 1.0, n, "gamma1");
    for (const auto& c : cuts)
    {
        auto params = rates(kappa, U);
        params["resonance"] = std::string(to_string(c.res));
        params["Gamma_x"] = c.Gamma_x;
        w.panel(c.id, "|psi_tt|^2 and |psi~_tt|^2 versus gamma1", params,
                [&](std::ostream& os) { write_gamma_csv(os, gamma_rows(base, c.res, c.Gamma_x, g1)); });
    }
}

inline void working_area_figure(Writer& w, std::size_t n)
{
    {
        const auto p = make_params(0.0, 1.0, 10.0, 0.5, 0.5);
        const auto curve = working_area_single_res(p, make_grid(0.0, 1.0, n, "gamma1"));
        auto params = rates(1.0, 10.0);
        params["resonance"] = "single-photon";
        params["limit"] = "U -> infinity";
        w.panel("a", "Gamma|x| where psi_tt vanishes", params, [&](std::ostream& os) { write_curve_csv(os, curve); });
    }
    {
        const auto p = make_params(0.0, 0.4, 10.0, 0.5, 0.5);
        const TwoResOptions opt;
        const auto curve = working_area_two_res(p, opt);
        auto params = rates(0.4, 10.0);
        params["resonance"] = "two-photon";
        params["Gamma_x_ceiling"] = opt.ceiling;
        w.panel("b", "Gamma|x| where psi_tt vanishes", params, [&](std::ostream& os) { write_curve_csv(os, curve); });
    }
}

} // namespace figures_detail

/// Writes one CSV per panel of the named figure into out_dir, plus
/// <fig>_manifest.json listing each file with its panel and parameters.
/// All rates are in units of Gamma.
inline std::vector<PanelRecord> reproduce_figure(const std::string& fig, const std::filesystem::path& out_dir,
                                                 const FigureOptions& opt = {})
{
    using namespace figures_detail;
    bool known = false;
    for (const auto& id : figure_ids()) known = known || id == fig;
    if (!known) throw std::invalid_argument("figure: unknown id '" + fig + "' (expected fig2 ... fig9)");
    const std::size_t n = opt.grid.value_or(401);
    if (n < 2) throw std::invalid_argument("grid: need at least 2 points (got " + std::to_string(n) + ")");
    if (!(opt.map_half_width > 0.0)) throw std::invalid_argument("map_half_width: must be positive");

    Writer w(fig, out_dir);
    if (fig == "fig2") sweep_figure(w, n);
    else if (fig == "fig3") resonance_figure(w, n);
    else if (fig == "fig4") map_figure(w, 1.0, n, opt.map_half_width);
    else if (fig == "fig7") map_figure(w, 0.01, n, opt.map_half_width);
    else if (fig == "fig5")
        cut_figure(w, 1.0,
                   {{"a", Resonance::SinglePhoton, 0.0},
                    {"b", Resonance::SinglePhoton, 2.0},
                    {"c", Resonance::TwoPhoton, 0.0},
                    {"d", Resonance::TwoPhoton, 1.9}},
                   n);
    else if (fig == "fig8")
        cut_figure(w, 0.01,
                   {{"a", Resonance::SinglePhoton, 0.0},
                    {"b", Resonance::SinglePhoton, 5.0},
                    {"c", Resonance::TwoPhoton, 0.15},
                    {"d", Resonance::TwoPhoton, 10.0}},
                   n);
    else if (fig == "fig9")
        cut_figure(w, 100.0, {{"a", Resonance::SinglePhoton, 0.0}, {"b", Resonance::SinglePhoton, 5.0}}, n);
    else working_area_figure(w, n);

    nlohmann::json panels = nlohmann::json::array();
    for (const auto& r : w.records())
        panels.push_back({{"panel", r.panel}, {"file", r.file}, {"quantity", r.quantity}, {"parameters", r.parameters}});
    const nlohmann::json manifest{{"figure", fig}, {"grid", n}, {"panels", panels}};
    const std::string name = fig + "_manifest.json";
    auto out = open_output(out_dir / name);
    out << manifest.dump(2) << '\n';
    check_stream(out, name);
    return w.records();
}

} // namespace chiral_diode

#endif // CHIRAL_DIODE_FIGURES_HPP

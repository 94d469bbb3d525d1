// chiral_diode: sweeps, two-photon maps, working areas, verification and
// figure data for a waveguide chirally coupled to a lossy Kerr cavity.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chiral_diode/config.hpp"
#include "chiral_diode/diode_analysis.hpp"
#include "chiral_diode/figures.hpp"
#include "chiral_diode/grid.hpp"
#include "chiral_diode/io.hpp"
#include "chiral_diode/single_photon.hpp"
#include "chiral_diode/two_photon.hpp"
#include "chiral_diode/verification/lattice.hpp"
#include "chiral_diode/verification/suite.hpp"

namespace cd = chiral_diode;

namespace
{

enum Exit
{
    ok = 0,
    validation = 1,
    verification_failed = 2,
    io_failure = 3
};

struct ParamFlags
{
    cd::ParamInput in;
    std::string config;
};

void add_param_flags(CLI::App* sub, ParamFlags& f)
{
    sub->add_option("--config", f.config, "JSON file with omega_a, kappa, U, gamma1, gamma2, gamma_scale");
    sub->add_option("--omega-a", f.in.omega_a, "cavity frequency");
    sub->add_option("--kappa", f.in.kappa, "intrinsic cavity loss rate");
    sub->add_option("--U", f.in.U, "Kerr strength");
    sub->add_option("--gamma1", f.in.gamma1, "coupling to right-going photons");
    sub->add_option("--gamma2", f.in.gamma2, "coupling to left-going photons (default: gamma_scale - gamma1)");
    sub->add_option("--gamma-scale", f.in.gamma_scale, "unit of all rates (default 1)");
}

cd::ModelParams resolve(const ParamFlags& f)
{
    cd::ParamInput config;
    if (!f.config.empty())
    {
        nlohmann::json j;
        try
        {
            j = cd::load_json_file(f.config);
        }
        catch (const std::invalid_argument&)
        {
            throw;
        }
        catch (const std::exception& e)
        {
            throw cd::IoError(e.what());
        }
        config = cd::params_from_json(j);
    }
    cd::ParamInput defaults;
    defaults.omega_a = 0.0;
    defaults.kappa = 1.0;
    defaults.U = 10.0;
    defaults.gamma1 = 0.5;
    defaults.gamma_scale = 1.0;
    if (!f.in.gamma2 && !config.gamma2)
    {
        const double scale = f.in.gamma_scale.value_or(config.gamma_scale.value_or(1.0));
        const double g1 = f.in.gamma1.value_or(config.gamma1.value_or(*defaults.gamma1));
        defaults.gamma2 = scale - g1;
    }
    return cd::resolve_params(f.in, config, defaults);
}

// Writes to --out when given, else stdout.
template <class F>
void emit(const std::string& path, bool binary, F&& write)
{
    if (path.empty() || path == "-")
    {
        if (binary) throw std::invalid_argument("out: binary output needs a file path");
        write(std::cout);
        cd::check_stream(std::cout, "stdout");
        return;
    }
    auto os = cd::open_output(path, binary);
    write(os);
    cd::check_stream(os, path);
}

cd::Direction direction_of(const std::string& s) { return cd::direction_from_string(s); }

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Chiral cavity photon diode: scattering sweeps, two-photon maps, working areas, verification"};
    app.require_subcommand(1);

    // single
    ParamFlags single_p;
    std::string single_det = "-4:4:401", single_g1_sweep, single_dir = "left", single_out, single_fmt = "csv";
    auto* single = app.add_subcommand("single", "single-photon T, R and loss versus detuning");
    add_param_flags(single, single_p);
    single->add_option("--detuning", single_det, "detuning grid in units of Gamma, lo:hi:count");
    single->add_option("--gamma1-sweep", single_g1_sweep, "gamma1/Gamma grid (default: the --gamma1 value)");
    single->add_option("--direction", single_dir, "left or right")->check(CLI::IsMember({"left", "right"}));
    single->add_option("--out", single_out, "output file (default stdout)");
    single->add_option("--format", single_fmt, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    // twomap
    ParamFlags map_p;
    std::string map_res = "single", map_dir = "left", map_x = "-5:5:401", map_out, map_fmt = "csv";
    bool map_all = false;
    auto* twomap = app.add_subcommand("twomap", "two-photon densities on an (x1, x2) grid");
    add_param_flags(twomap, map_p);
    twomap->add_option("--resonance", map_res, "single or two-photon");
    twomap->add_option("--direction", map_dir, "left or right")->check(CLI::IsMember({"left", "right"}));
    twomap->add_option("--x", map_x, "coordinate grid in units of 1/Gamma, lo:hi:count");
    twomap->add_flag("--all-channels", map_all, "also write |psi_rr|^2 and |psi_rt|^2 (csv only)");
    twomap->add_option("--out", map_out, "output file (default stdout)");
    twomap->add_option("--format", map_fmt, "csv or bin")->check(CLI::IsMember({"csv", "bin"}));

    // working-area
    ParamFlags wa_p;
    std::string wa_res = "single", wa_g1 = "0:1:401", wa_x = "0:10:2001", wa_out, wa_fmt = "csv";
    double wa_ceiling = 20.0;
    bool wa_scan = false;
    auto* wa = app.add_subcommand("working-area", "(gamma1, |x|) pairs where psi_tt vanishes");
    add_param_flags(wa, wa_p);
    wa->add_option("--resonance", wa_res, "single or two-photon");
    wa->add_option("--gamma1-grid", wa_g1, "gamma1/Gamma grid for the single-resonance curve and the scan");
    wa->add_option("--ceiling", wa_ceiling, "largest Gamma|x| searched (two-photon resonance)");
    wa->add_flag("--scan", wa_scan, "numeric minimum scan of |psi_tt|^2 instead of the closed-form locus");
    wa->add_option("--x", wa_x, "Gamma|x| grid for --scan");
    wa->add_option("--out", wa_out, "output file (default stdout)");
    wa->add_option("--format", wa_fmt, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    // verify
    std::string v_suite = "all", v_out;
    int v_draws = 1000;
    unsigned long long v_seed = cd::verification::SuiteOptions{}.seed;
    auto* verify = app.add_subcommand("verify", "residual, lattice and reconstruction checks; JSON report");
    verify->add_option("--suite", v_suite, "residual, lattice or all")
        ->check(CLI::IsMember({"residual", "lattice", "all"}));
    verify->add_option("--draws", v_draws, "random draws per residual group")->check(CLI::PositiveNumber);
    verify->add_option("--seed", v_seed, "random seed");
    verify->add_option("--out", v_out, "report file (default stdout)");

    // reproduce
    std::string r_fig, r_dir = "figures";
    std::optional<std::size_t> r_grid;
    auto* reproduce = app.add_subcommand("reproduce", "write figure data (one CSV per panel plus a manifest)");
    reproduce->add_option("figure", r_fig, "fig2 ... fig9")->required();
    reproduce->add_option("--out-dir", r_dir, "output directory");
    reproduce->add_option("--grid", r_grid, "points per axis (default 401)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return validation;
    }

    try
    {
        if (*single)
        {
            const auto p = resolve(single_p);
            const auto det = cd::parse_grid(single_det, "detuning");
            const auto g1 = single_g1_sweep.empty() ? cd::single_point(p.gamma1() / p.Gamma())
                                                    : cd::parse_grid(single_g1_sweep, "gamma1-sweep");
            const auto rows = cd::sweep_single(p, det, g1, direction_of(single_dir));
            emit(single_out, false, [&](std::ostream& os) {
                if (single_fmt == "csv")
                {
                    cd::write_sweep_csv(os, rows);
                    return;
                }
                nlohmann::json j{{"params", cd::params_to_json(p)}, {"direction", single_dir}};
                auto& arr = j["rows"] = nlohmann::json::array();
                for (const auto& r : rows)
                    arr.push_back({{"detuning_over_Gamma", r.detuning_over_Gamma},
                                   {"gamma1_over_Gamma", r.gamma1_over_Gamma},
                                   {"T", r.T},
                                   {"R", r.R},
                                   {"loss", r.loss}});
                os << j.dump(2) << '\n';
            });
        }
        else if (*twomap)
        {
            const auto p = resolve(map_p);
            const auto res = cd::resonance_from_string(map_res);
            auto xg = cd::parse_grid(map_x, "x");
            xg.lo /= p.Gamma();
            xg.hi /= p.Gamma();
            const cd::TwoPhotonField field(p, cd::resonant_input(p, res, direction_of(map_dir)));
            const bool bin = map_fmt == "bin";
            if (bin && map_all) throw std::invalid_argument("all-channels: only available with --format csv");
            const auto m = cd::map_two_photon(field, xg, map_all);
            emit(map_out, bin, [&](std::ostream& os) {
                if (bin) cd::write_map_binary(os, m);
                else cd::write_map_csv(os, m);
            });
        }
        else if (*wa)
        {
            const auto p = resolve(wa_p);
            const auto res = cd::resonance_from_string(wa_res);
            const auto g1 = cd::parse_grid(wa_g1, "gamma1-grid");
            if (wa_scan)
            {
                const auto scan = cd::numeric_zero_scan(p, cd::resonant_input(p, res), g1, cd::parse_grid(wa_x, "x"));
                emit(wa_out, false, [&](std::ostream& os) {
                    if (wa_fmt == "csv")
                    {
                        cd::write_zero_scan_csv(os, scan);
                        return;
                    }
                    nlohmann::json j{{"params", cd::params_to_json(p)},
                                     {"resonance", std::string(cd::to_string(res))},
                                     {"threshold", scan.threshold},
                                     {"degenerate_gamma1", scan.degenerate_gamma1}};
                    auto& arr = j["minima"] = nlohmann::json::array();
                    for (const auto& m : scan.minima)
                        arr.push_back({{"gamma1_over_Gamma", m.gamma1_over_Gamma},
                                       {"Gamma_abs_x", m.Gamma_abs_x},
                                       {"psi_tt_sq", m.psi_sq},
                                       {"is_null", m.is_null}});
                    os << j.dump(2) << '\n';
                });
            }
            else
            {
                cd::TwoResOptions opt;
                opt.ceiling = wa_ceiling;
                const auto curve = res == cd::Resonance::SinglePhoton ? cd::working_area_single_res(p, g1)
                                                                      : cd::working_area_two_res(p, opt);
                emit(wa_out, false, [&](std::ostream& os) {
                    if (wa_fmt == "csv")
                    {
                        cd::write_curve_csv(os, curve);
                        return;
                    }
                    nlohmann::json j{{"params", cd::params_to_json(p)},
                                     {"resonance", std::string(cd::to_string(res))}};
                    auto& arr = j["points"] = nlohmann::json::array();
                    for (const auto& pt : curve.points)
                        arr.push_back({{"gamma1_over_Gamma", pt.gamma1_over_Gamma},
                                       {"Gamma_abs_x", pt.diverges ? nlohmann::json(nullptr)
                                                                   : nlohmann::json(pt.Gamma_abs_x)},
                                       {"branch", pt.branch},
                                       {"diverges", pt.diverges}});
                    os << j.dump(2) << '\n';
                });
            }
        }
        else if (*verify)
        {
            cd::verification::SuiteOptions opt;
            opt.residual = v_suite != "lattice";
            opt.lattice = v_suite != "residual";
            opt.pair_lattice = v_suite != "residual";
            opt.draws = v_draws;
            opt.seed = v_seed;
            const auto rep = cd::verification::run_suite(opt);
            emit(v_out, false, [&](std::ostream& os) { os << cd::verification::to_json(rep).dump(2) << '\n'; });
            for (const auto& c : rep.checks)
                if (c.gating && !c.pass)
                    std::cerr << "FAIL " << c.name << ": " << c.value << (c.below ? " >= " : " <= ") << c.threshold
                              << '\n';
            return rep.all_pass() ? ok : verification_failed;
        }
        else if (*reproduce)
        {
            cd::FigureOptions opt;
            opt.grid = r_grid;
            const auto recs = cd::reproduce_figure(r_fig, r_dir, opt);
            for (const auto& r : recs) std::cout << (std::filesystem::path(r_dir) / r.file).string() << '\n';
        }
    }
    catch (const cd::IoError& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return io_failure;
    }
    catch (const cd::verification::LatticeError& e)
    {
        std::cerr << "verification error: " << e.what() << '\n';
        return verification_failed;
    }
    catch (const std::invalid_argument& e)
    {
        std::cerr << "invalid input: " << e.what() << '\n';
        return validation;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return validation;
    }
    return ok;
}

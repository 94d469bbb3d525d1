#ifndef CHIRAL_DIODE_CONFIG_HPP
#define CHIRAL_DIODE_CONFIG_HPP

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "model.hpp"

namespace chiral_diode
{

/// Parameter values as supplied by a config file or flags; unset fields fall
/// back to the next source.
struct ParamInput
{
    std::optional<double> omega_a;
    std::optional<double> kappa;
    std::optional<double> U;
    std::optional<double> gamma1;
    std::optional<double> gamma2;
    std::optional<double> gamma_scale;
};

inline const char* const param_keys[] = {"omega_a", "kappa", "U", "gamma1", "gamma2", "gamma_scale"};

inline std::optional<double> json_number(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key)) return std::nullopt;
    const auto& v = j.at(key);
    if (!v.is_number()) throw std::invalid_argument(std::string(key) + ": expected a number");
    return v.get<double>();
}

inline ParamInput params_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw std::invalid_argument("config: top level must be a JSON object");
    ParamInput in;
    in.omega_a = json_number(j, "omega_a");
    in.kappa = json_number(j, "kappa");
    in.U = json_number(j, "U");
    in.gamma1 = json_number(j, "gamma1");
    in.gamma2 = json_number(j, "gamma2");
    in.gamma_scale = json_number(j, "gamma_scale");
    return in;
}

inline nlohmann::json load_json_file(const std::filesystem::path& path)
{
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config '" + path.string() + "'");
    try
    {
        return nlohmann::json::parse(f);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw std::invalid_argument("config '" + path.string() + "': " + e.what());
    }
}

/// First set value wins: flags, then config, then defaults. All rates are
/// divided by gamma_scale (default 1), i.e. inputs may be given in any unit
/// with gamma_scale naming the reference rate.
inline ModelParams resolve_params(const ParamInput& flags, const ParamInput& config, const ParamInput& defaults)
{
    auto pick = [&](auto member, const char* name) -> double {
        if ((flags.*member)) return *(flags.*member);
        if ((config.*member)) return *(config.*member);
        if ((defaults.*member)) return *(defaults.*member);
        throw std::invalid_argument(std::string(name) + ": no value given");
    };
    double scale = 1.0;
    if (flags.gamma_scale) scale = *flags.gamma_scale;
    else if (config.gamma_scale) scale = *config.gamma_scale;
    else if (defaults.gamma_scale) scale = *defaults.gamma_scale;
    if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("gamma_scale: must be positive");

    const double omega_a = pick(&ParamInput::omega_a, "omega_a");
    const double kappa = pick(&ParamInput::kappa, "kappa");
    const double U = pick(&ParamInput::U, "U");
    const double gamma1 = pick(&ParamInput::gamma1, "gamma1");
    const double gamma2 = pick(&ParamInput::gamma2, "gamma2");
    return make_params(omega_a / scale, kappa / scale, U / scale, gamma1 / scale, gamma2 / scale);
}

inline nlohmann::json params_to_json(const ModelParams& p)
{
    return nlohmann::json{{"omega_a", p.omega_a()}, {"kappa", p.kappa()}, {"U", p.U()},
                          {"gamma1", p.gamma1()},   {"gamma2", p.gamma2()}, {"v_c", p.v_c()}};
}

} // namespace chiral_diode

#endif // CHIRAL_DIODE_CONFIG_HPP

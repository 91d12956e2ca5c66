#include "optomech/config.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "optomech/errors.hpp"

namespace optomech {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::string trim(const std::string& s)
{
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& value, const std::string& key)
{
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse number for '" + key + "': " + value);
    }
    if (used != value.size())
        throw ConfigError("trailing characters in value for '" + key + "': " + value);
    return v;
}

int parse_int(const std::string& value, const std::string& key)
{
    const double v = parse_double(value, key);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw ConfigError("'" + key + "' must be an integer, got " + value);
    return i;
}

} // namespace

PhysicalParams SimConfig::params() const
{
    PhysicalParams p;
    p.omega_m = two_pi * omega_m_hz;
    p.omega_c = two_pi * omega_c_hz;
    p.omega_o = two_pi * omega_o_hz.value_or(omega_c_hz);
    p.drive_E = two_pi * drive_e_hz;
    p.g0 = two_pi * g0_hz;
    p.temperature = temperature_k;
    p.finesse = finesse;
    p.cavity_length = length_m;
    p.quality_factor = quality_factor;
    p.detuning = detuning_over_omega_m * p.omega_m;
    p.chi = chi;
    if (kappa_hz)
        p.kappa = two_pi * *kappa_hz;
    return p;
}

ConditioningChoice SimConfig::conditioning_choice() const
{
    ConditioningChoice choice = parse_conditioning(conditioning);
    if (vacuum_offset == "half")
        choice.offset = VacuumOffset::half;
    else if (vacuum_offset == "one")
        choice.offset = VacuumOffset::one;
    else
        throw ConfigError("vacuum_offset must be 'half' or 'one', got '" + vacuum_offset + "'");
    return choice;
}

SimConfig parse_config(std::istream& in)
{
    SimConfig cfg;

    using Setter = std::function<void(const std::string&, const std::string&)>;
    auto number = [](double& slot) {
        return [&slot](const std::string& key, const std::string& v) { slot = parse_double(v, key); };
    };
    auto optional_number = [](std::optional<double>& slot) {
        return [&slot](const std::string& key, const std::string& v) {
            if (v == "auto")
                slot.reset();
            else
                slot = parse_double(v, key);
        };
    };
    auto integer = [](int& slot) {
        return [&slot](const std::string& key, const std::string& v) { slot = parse_int(v, key); };
    };
    auto text = [](std::string& slot) {
        return [&slot](const std::string&, const std::string& v) { slot = v; };
    };

    const std::map<std::string, Setter> setters = {
        {"omega_m_hz", number(cfg.omega_m_hz)},
        {"omega_c_hz", number(cfg.omega_c_hz)},
        {"omega_o_hz", optional_number(cfg.omega_o_hz)},
        {"drive_e_hz", number(cfg.drive_e_hz)},
        {"g0_hz", number(cfg.g0_hz)},
        {"temperature_k", number(cfg.temperature_k)},
        {"finesse", number(cfg.finesse)},
        {"length_m", number(cfg.length_m)},
        {"quality_factor", number(cfg.quality_factor)},
        {"detuning_over_omega_m", number(cfg.detuning_over_omega_m)},
        {"chi", number(cfg.chi)},
        {"kappa_hz", optional_number(cfg.kappa_hz)},
        {"conditioning", text(cfg.conditioning)},
        {"vacuum_offset", text(cfg.vacuum_offset)},
        {"wigner_points", integer(cfg.wigner_points)},
        {"wigner_stride", integer(cfg.wigner_stride)},
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");

        const auto it = setters.find(key);
        if (it == setters.end())
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        it->second(key, value);
    }

    if (cfg.wigner_points < 2)
        throw ConfigError("wigner_points must be at least 2");
    if (cfg.wigner_stride < 1)
        throw ConfigError("wigner_stride must be at least 1");
    // fail fast on strategy typos even when no conditioning is used downstream
    (void)cfg.conditioning_choice();
    return cfg;
}

SimConfig load_config(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in)
        throw IoError("cannot open config file: " + file.string());
    return parse_config(in);
}

} // namespace optomech

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "optomech/config.hpp"
#include "optomech/errors.hpp"
#include "optomech/scan.hpp"

namespace {

optomech::ScanKind to_kind(const std::string& name)
{
    if (name == "chi")
        return optomech::ScanKind::chi;
    if (name == "theta")
        return optomech::ScanKind::theta;
    return optomech::ScanKind::detuning;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Steady-state sweeps of a driven optomechanical cavity"};

    std::string config_path;
    std::string scan = "detuning";
    std::string conditioning;
    std::string oracle;
    std::string wigner;
    std::string out_dir;

    app.add_option("--config", config_path, "key = value parameter file")->required();
    app.add_option("--scan", scan, "sweep variable (default: detuning)")
        ->check(CLI::IsMember({"detuning", "chi", "theta"}));
    app.add_option("--conditioning", conditioning,
                   "override the configured strategy: none|homodyne|vacuum|ancilla:<theta_over_pi>");
    app.add_option("--oracle", oracle, "emit the closed-form comparison report")
        ->check(CLI::IsMember({"appendix-b"}));
    app.add_option("--wigner", wigner, "export phase-space grids for one subsystem")
        ->check(CLI::IsMember({"mirror", "field"}));
    app.add_option("--out", out_dir, "output directory (created if missing)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        optomech::SimConfig cfg = optomech::load_config(config_path);
        if (!conditioning.empty())
            cfg.conditioning = conditioning;
        cfg.params().validate();
        (void)cfg.conditioning_choice();

        optomech::RunOptions options;
        options.kind = to_kind(scan);
        options.oracle = oracle == "appendix-b";
        if (!wigner.empty())
            options.wigner = wigner;
        options.out_dir = out_dir;

        optomech::run_scan(cfg, options);
    } catch (const optomech::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const optomech::DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const optomech::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

// Command-line front end: wavefd <solve|order|energy|roundoff|fundamental|bound|report> [flags]

#include <wavefd/commands.hpp>

#include <CLI11.hpp>

#include <iostream>

namespace {

using Command = wavefd::CommandResult (*)(const wavefd::ExperimentConfig&);

void add_options(CLI::App& app, wavefd::ExperimentConfig& cfg) {
    app.add_option("--problem", cfg.problem, "default | zero | standing")->capture_default_str();
    app.add_option("--imax", cfg.i_max, "number of space steps")->capture_default_str();
    app.add_option("--kmax", cfg.k_max, "number of time steps")->capture_default_str();
    app.add_option("--c", cfg.c, "wave velocity, decimal or p/q")->capture_default_str();
    app.add_option("--tmax", cfg.t_max, "final time, decimal or p/q")->capture_default_str();
    app.add_option("--xi", cfg.xi, "CFL margin in (0, 1); default 2^-50 (bound: 1 - cn)");
    app.add_option("--cn", cfg.cn, "Courant number of refinement chains")->capture_default_str();
    app.add_option("--mode", cfg.mode, "convergence | truncation")->capture_default_str();
    app.add_option("--m", cfg.m, "standing-wave mode number")->capture_default_str();
    app.add_option("--scalar", cfg.scalar, "binary64 | exact")->capture_default_str();
    app.add_option("--out", cfg.out_dir, "directory for summary.json and CSV tables");
    app.add_option("--depth", cfg.depth, "fundamental-table depth K")->capture_default_str();
    app.add_option("--range", cfg.range, "k_max for identity checks")->capture_default_str();
    app.add_option("--chain", cfg.chain, "refinement chain of i_max values")->delimiter(',')->capture_default_str();
    app.add_option("--a", cfg.a, "fundamental-table coefficient in (0, 1)");
    app.add_option("--fault", cfg.fault, "fault injection: none | wrong-a")->capture_default_str();
    app.add_option("--scale", cfg.scale, "report sizes: full | quick")->capture_default_str();
    app.add_option("--reconstruct", cfg.reconstruct, "auto | always | never")->capture_default_str();
    app.add_flag("--warn-cfl", cfg.warn_cfl, "run despite a CFL violation");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-difference 1D wave equation solver and claim checker"};
    app.require_subcommand(1);
    app.set_config("--config", "", "plain-text key=value configuration file");
    app.fallthrough();

    // Options live on the top level so both flags and config-file keys reach every subcommand.
    wavefd::ExperimentConfig cfg;
    add_options(app, cfg);
    Command selected = nullptr;
    struct Entry {
        const char* name;
        const char* help;
        Command run;
    };
    const Entry commands[] = {
        {"solve", "run the scheme; field CSV and summary", wavefd::cmd_solve},
        {"order", "refinement study and fitted order", wavefd::cmd_order},
        {"energy", "discrete energy series and stability estimate", wavefd::cmd_energy},
        {"roundoff", "shadow run: local and global round-off errors", wavefd::cmd_roundoff},
        {"fundamental", "fundamental-solution and binomial identity checks", wavefd::cmd_fundamental},
        {"bound", "a-priori error constants and total-error bound", wavefd::cmd_bound},
        {"report", "run the claims catalog", wavefd::cmd_report},
    };
    for (const auto& e : commands) {
        auto* sub = app.add_subcommand(e.name, e.help);
        sub->fallthrough();
        sub->callback([&selected, f = e.run] { selected = f; });
    }
    CLI11_PARSE(app, argc, argv);

    try {
        auto result = selected(cfg);
        std::cout << result.text;
        if (!cfg.out_dir.empty()) wavefd::emit(result, cfg.out_dir);
        else std::cout << wavefd::json_text(result.summary);
        return result.exit_code;
    } catch (const wavefd::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return wavefd::kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return wavefd::kExitPrecondition;
    }
}

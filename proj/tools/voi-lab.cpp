// voi-lab: exact value-of-information interaction calculator.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "voilab/cli.hpp"

int main(int argc, char** argv) {
    using namespace voilab;

    CLI::App app{"voi-lab: exact interaction between information channels"};
    app.require_subcommand(1);

    bool json = false;

    auto* demo = app.add_subcommand("demo", "Reproduce the reference table for the built-in example");
    demo->add_flag("--json", json, "Machine-readable output");

    std::string path, belief, i_name = "i", j_name = "j";
    auto* eval = app.add_subcommand("eval", "Interaction report at one belief");
    eval->add_option("file", path, "Instance JSON file")->required();
    eval->add_option("--belief", belief, "Comma-separated rationals, e.g. 1/4,1/6,7/12")->required();
    eval->add_option("--i", i_name, "First channel")->required();
    eval->add_option("--j", j_name, "Second channel")->required();
    eval->add_flag("--json", json, "Machine-readable output");

    cli::ScanOptions scan_opt;
    auto* scan = app.add_subcommand("scan", "Emit CSV scans of the interaction");
    scan->require_subcommand(1);
    const auto common = [&](CLI::App* sub) {
        sub->add_option("file", scan_opt.instance_path, "Instance JSON file (default: built-in example)");
        sub->add_option("--i", scan_opt.i_name, "First channel")->capture_default_str();
        sub->add_option("--j", scan_opt.j_name, "Second channel")->capture_default_str();
        sub->add_option("-o,--out", scan_opt.out_path, "Output CSV path (default: stdout)");
    };
    auto* grid = scan->add_subcommand("grid", "Barycentric lattice with denominator N");
    common(grid);
    grid->add_option("--n", scan_opt.n, "Lattice denominator")->capture_default_str();
    auto* ray = scan->add_subcommand("ray", "Exact piecewise-affine scan along a ray");
    common(ray);
    ray->add_option("--origin", scan_opt.origin, "Origin belief")->capture_default_str();
    ray->add_option("--dir", scan_opt.direction, "Direction (entries sum to 0)")->capture_default_str();
    ray->add_option("--t-max", scan_opt.t_max, "Largest t")->capture_default_str();

    FuzzConfig cfg;
    auto* verify = app.add_subcommand("verify", "Randomized check of decomposition and localization");
    verify->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    verify->add_option("--cases", cfg.cases, "Number of cases")->capture_default_str();
    verify->add_option("--max-states", cfg.max_states, "Max states (2..5)")->capture_default_str();
    verify->add_option("--max-actions", cfg.max_actions, "Max actions (2..5)")->capture_default_str();
    verify->add_option("--max-outcomes", cfg.max_outcomes, "Max outcomes per channel (1..4)")->capture_default_str();
    verify->add_option("--denom-bound", cfg.denom_bound, "Largest denominator drawn")->capture_default_str();
    verify->add_flag("--json", json, "Machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::usage;
    }

    try {
        if (*demo) return cli::cmd_demo(json, std::cout, std::cerr);
        if (*eval) return cli::cmd_eval(path, belief, i_name, j_name, json, std::cout);
        if (*grid) return cli::cmd_scan_grid(scan_opt, std::cout, std::cerr);
        if (*ray) return cli::cmd_scan_ray(scan_opt, std::cout, std::cerr);
        if (*verify) return cli::cmd_verify(cfg, json, std::cout, std::cerr);
    } catch (const TheoremViolation& e) {
        std::cerr << "voi-lab: " << e.what() << "\nreproducer:\n" << e.reproducer() << '\n';
        return cli::violation;
    } catch (const Error& e) {
        std::cerr << "voi-lab: " << e.what() << '\n';
        return cli::usage;
    }
    return cli::usage;
}

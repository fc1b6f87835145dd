#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bergman_ops/errors.hpp"
#include "bergman_ops/runner.hpp"

namespace {

struct common_flags {
    std::string config_path = "-";
    std::string theorem;
    int trunc_order = 0;
    double tolerance = 0.0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string format;
    std::string out_path;
    std::string converge_check;
    std::string orders_csv;
};

void add_common(CLI::App* app, common_flags& flags) {
    app->add_option("--config", flags.config_path, "JSON config file, or - for stdin");
    app->add_option("--theorem", flags.theorem, "T2_1|T2_2|T2_3|T2_4|T2_5|LemmaAdjoint");
    app->add_option("--trunc", flags.trunc_order, "truncation order override");
    app->add_option("--tol", flags.tolerance, "tolerance override");
    app->add_option("--seed", flags.seed, "seed override")->each([&](const std::string&) {
        flags.seed_set = true;
    });
    app->add_option("--format", flags.format, "json|csv");
    app->add_option("--out", flags.out_path, "report output path (default stdout)");
}

std::vector<int> parse_orders(const std::string& csv) {
    std::vector<int> orders;
    std::stringstream stream(csv);
    std::string item;
    while (std::getline(stream, item, ',')) {
        orders.push_back(std::stoi(item));
    }
    return orders;
}

bergman_ops::run_config load(const common_flags& flags, bergman_ops::command_kind command) {
    bergman_ops::cli_overrides overrides;
    if (!flags.theorem.empty()) overrides.theorem = flags.theorem;
    if (flags.trunc_order != 0) overrides.trunc_order = flags.trunc_order;
    if (flags.tolerance != 0.0) overrides.tolerance = flags.tolerance;
    if (flags.seed_set) overrides.seed = flags.seed;
    if (!flags.format.empty()) overrides.format = flags.format;
    if (!flags.out_path.empty()) overrides.output_path = flags.out_path;
    if (!flags.converge_check.empty()) overrides.converge_check = flags.converge_check;
    if (!flags.orders_csv.empty()) overrides.orders = parse_orders(flags.orders_csv);

    if (flags.config_path == "-") {
        return bergman_ops::load_config(std::cin, overrides, command);
    }
    std::ifstream in(flags.config_path);
    if (!in) {
        throw bergman_ops::config_error("cannot open config file: " + flags.config_path);
    }
    return bergman_ops::load_config(in, overrides, command);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted composition-differentiation operator verification"};
    app.require_subcommand(1);

    common_flags check_flags;
    common_flags sweep_flags;
    common_flags converge_flags;

    CLI::App* check = app.add_subcommand("check", "run a single theorem check");
    add_common(check, check_flags);

    CLI::App* sweep = app.add_subcommand("sweep", "run a deterministic parameter-grid sweep");
    add_common(sweep, sweep_flags);

    CLI::App* converge = app.add_subcommand("converge", "residual vs truncation order (CSV)");
    add_common(converge, converge_flags);
    converge->add_option("--check", converge_flags.converge_check,
                         "kernel_adjoint|kernel_symmetry");
    converge->add_option("--orders", converge_flags.orders_csv,
                         "comma-separated truncation orders, e.g. 32,48,64,96");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) {
            return bergman_ops::run_command(load(check_flags, bergman_ops::command_kind::check));
        }
        if (sweep->parsed()) {
            return bergman_ops::run_command(load(sweep_flags, bergman_ops::command_kind::sweep));
        }
        return bergman_ops::run_command(load(converge_flags, bergman_ops::command_kind::converge));
    } catch (const bergman_ops::path_disagreement& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 3;
    } catch (const bergman_ops::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

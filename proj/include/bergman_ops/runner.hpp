#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bergman_ops/checkers.hpp"

namespace bergman_ops {

enum class command_kind { check, sweep, converge };
enum class theorem_id { t2_1, t2_2, t2_3, t2_4, t2_5, lemma_adjoint };

theorem_id theorem_from_string(const std::string& name);
std::string theorem_to_string(theorem_id id);

/// Deterministic sweep grid shape; lattice points come first, then
/// seed-derived random interior points.
struct sweep_spec {
    int lattice_cap = 0;  // 0 = whole lattice
    int random_points = 8;
    std::vector<double> b_magnitudes = {0.15, 0.3, 0.45};
    std::vector<double> alpha_values = {-0.5, 0.0, 1.0, 2.5};
    std::vector<int> n_values = {1, 2, 3};
    int eta_count = 2;
    std::string mode = "forward";  // forward | falsify
};

struct run_config {
    command_kind command = command_kind::check;
    theorem_id theorem = theorem_id::t2_1;
    int trunc_order = 48;
    double tolerance = 0.0;  // 0 = theorem default
    std::uint64_t seed = 1;

    cplx a{1.0, 0.0};
    cplx b{0.3, 0.0};
    cplx c{0.4, 0.0};
    cplx a0{0.5, 0.0};
    int order_n = 1;
    double alpha = 0.0;
    double mu_angle = 0.0;
    double eta_angle = 0.0;
    cplx w{0.5, 0.0};
    double perturb_eps = 0.0;
    double rotate_a = 0.0;
    double rotate_c = 0.0;
    std::string expect = "auto";  // auto | pass | fail

    sweep_spec sweep;
    std::vector<int> orders = {32, 48, 64, 96};
    std::string converge_check = "kernel_adjoint";  // or kernel_symmetry

    std::string output_path;  // empty = stdout
    std::string output_format = "json";
};

struct cli_overrides {
    std::optional<std::string> theorem;
    std::optional<int> trunc_order;
    std::optional<double> tolerance;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
    std::optional<std::string> output_path;
    std::optional<std::string> converge_check;
    std::optional<std::vector<int>> orders;
};

/// Parses the JSON config document and applies flag overrides (flags win).
/// Throws config_error on validation failure.
run_config load_config(std::istream& in, const cli_overrides& overrides, command_kind command);

/// One grid point: the family parameters a run needs plus the outcome the
/// theorem predicts for them.
struct grid_point {
    int index = 0;
    cplx a{1.0, 0.0};
    cplx b{};
    cplx c{};
    cplx a0{};
    int order_n = 1;
    double alpha = 0.0;
    double mu_angle = 0.0;
    double eta_angle = 0.0;
    cplx w{};
    double perturb_eps = 0.0;
    double rotate_a = 0.0;
    double rotate_c = 0.0;
    bool expected_pass = true;
};

struct point_outcome {
    int grid_index = 0;
    check_report report;
    bool expected_pass = true;
    bool matched = false;  // verdict equals expectation and side conditions hold
};

std::vector<grid_point> build_sweep_grid(const run_config& cfg);
point_outcome evaluate_point(const run_config& cfg, const grid_point& point);

/// Exit codes: 0 every record matched its expected outcome, 1 mismatch,
/// 2 config validation failure, 3 internal path disagreement.
int run_check(const run_config& cfg, std::string& out_report);
int run_sweep(const run_config& cfg, std::string& out_report);
int run_converge(const run_config& cfg, std::string& out_report);

/// Dispatches on cfg.command and writes the report to cfg.output_path
/// (stdout when empty).
int run_command(const run_config& cfg);

}  // namespace bergman_ops

// Acceptance suite: runs every verification criterion end to end and prints
// one PASS/FAIL line each. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bergman_ops/checkers.hpp"
#include "bergman_ops/errors.hpp"
#include "bergman_ops/report.hpp"
#include "bergman_ops/runner.hpp"
#include "test_support.hpp"

using namespace bergman_ops;
using clock_type = std::chrono::steady_clock;

namespace {

int g_failures = 0;
int g_path_disagreements = 0;

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

void emit(int id, bool pass, const std::string& label, const std::string& detail) {
    if (!pass) {
        ++g_failures;
    }
    std::printf("%s  criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, label.c_str(),
                detail.c_str());
    std::fflush(stdout);
}

double echo_double(const check_report& report, const std::string& key, double fallback) {
    for (const echo_entry& entry : report.params) {
        if (entry.key == key) {
            if (const auto* d = std::get_if<double>(&entry.value)) {
                return *d;
            }
        }
    }
    return fallback;
}

std::string echo_string(const check_report& report, const std::string& key) {
    for (const echo_entry& entry : report.params) {
        if (entry.key == key) {
            if (const auto* s = std::get_if<std::string>(&entry.value)) {
                return *s;
            }
        }
    }
    return {};
}

cplx derivative_value_oracle(const truncated_series& f, int n, cplx w) {
    cplx acc{};
    for (int m = f.trunc_order(); m >= n; --m) {
        double fall = 1.0;
        for (int i = 0; i < n; ++i) {
            fall *= static_cast<double>(m - i);
        }
        acc = acc * w + fall * f.coeff(m);
    }
    return acc;
}

std::vector<space_spec> all_spaces() {
    return {space_spec::bergman(-0.5), space_spec::bergman(0.0), space_spec::bergman(1.0),
            space_spec::bergman(2.5), space_spec::derivative_hardy()};
}

run_config sweep_config(theorem_id theorem, int trunc_order, const std::string& mode) {
    run_config cfg;
    cfg.command = command_kind::sweep;
    cfg.theorem = theorem;
    cfg.trunc_order = trunc_order;
    cfg.tolerance = theorem == theorem_id::t2_4       ? 1e-10
                    : theorem == theorem_id::lemma_adjoint ? 1e-6
                                                            : 1e-9;
    cfg.seed = 42;
    cfg.sweep.mode = mode;
    return cfg;
}

std::vector<point_outcome> evaluate_sweep(const run_config& cfg) {
    std::vector<point_outcome> outcomes;
    for (const grid_point& point : build_sweep_grid(cfg)) {
        outcomes.push_back(evaluate_point(cfg, point));
    }
    return outcomes;
}

// 1. Gram matrices of the first 33 unit monomials.
void criterion_orthonormality() {
    const auto start = clock_type::now();
    double worst = 0.0;
    for (const space_spec& space : all_spaces()) {
        const weight_profile profile(space);
        for (int m = 0; m < 33; ++m) {
            for (int j = 0; j < 33; ++j) {
                const cplx entry =
                    inner_product(truncated_series::monomial(m, profile.normalizer(m)),
                                  truncated_series::monomial(j, profile.normalizer(j)), space);
                worst = std::max(worst, std::abs(entry - (m == j ? 1.0 : 0.0)));
            }
        }
    }
    const double elapsed = seconds_since(start);
    emit(1, worst <= 1e-13 && elapsed < 1.0, "orthonormal basis Gram identity",
         "worst entry deviation " + format_double17(worst) + ", " +
             format_double17(elapsed) + " s");
}

// 2. Reproducing and derivative kernels against seeded random polynomials.
void criterion_kernels() {
    const auto start = clock_type::now();
    auto rng = test_support::make_rng(2024);
    double worst_value = 0.0;
    double worst_derivative = 0.0;
    for (const space_spec& space : all_spaces()) {
        for (int poly = 0; poly < 20; ++poly) {
            const truncated_series f = test_support::random_series(rng, 32, 1.0);
            for (int pt = 0; pt < 10; ++pt) {
                const cplx w = test_support::random_cplx(rng, 0.8);
                const cplx want = evaluate(f, w);
                const cplx got = inner_product(f, kernel_coeffs(w, space, 32), space);
                worst_value = std::max(worst_value,
                                       std::abs(got - want) / (1.0 + std::abs(want)));
                const int n = 1 + (poly + pt) % 3;
                const cplx want_d = derivative_value_oracle(f, n, w);
                const cplx got_d =
                    inner_product(f, derivative_kernel_coeffs(n, w, space, 32), space);
                worst_derivative = std::max(
                    worst_derivative, std::abs(got_d - want_d) / (1.0 + std::abs(want_d)));
            }
        }
    }
    const double elapsed = seconds_since(start);
    emit(2, worst_value <= 1e-12 && worst_derivative <= 1e-10 && elapsed < 5.0,
         "reproducing kernel contracts",
         "value residual " + format_double17(worst_value) + ", derivative residual " +
             format_double17(worst_derivative) + ", " + format_double17(elapsed) + " s");
}

// 3. T2_1 forward sweep: matrix CS and closed-form kernel identity.
void criterion_t21_forward() {
    const auto start = clock_type::now();
    const run_config cfg = sweep_config(theorem_id::t2_1, 48, "forward");
    const std::vector<point_outcome> outcomes = evaluate_sweep(cfg);
    bool all_ok = outcomes.size() >= 50;
    double worst_cs = 0.0;
    double worst_kernel = 0.0;
    for (const point_outcome& o : outcomes) {
        worst_cs = std::max(worst_cs, o.report.max_residual);
        const double kr = echo_double(o.report, "kernel_symmetry_residual", 1.0);
        worst_kernel = std::max(worst_kernel, kr);
        all_ok = all_ok && o.matched && o.report.max_residual <= 1e-9 && kr <= 1e-12;
    }
    const double elapsed = seconds_since(start);
    emit(3, all_ok && elapsed < 60.0, "T2_1 forward sweep",
         std::to_string(outcomes.size()) + " points, worst CS " + format_double17(worst_cs) +
             ", worst kernel " + format_double17(worst_kernel) + ", " +
             format_double17(elapsed) + " s");
}

// 4. T2_1 necessity evidence: perturbation floor and linear scaling.
void criterion_t21_falsifier() {
    run_config cfg = sweep_config(theorem_id::t2_1, 48, "falsify");
    cfg.perturb_eps = 1e-3;
    const std::vector<point_outcome> outcomes = evaluate_sweep(cfg);
    bool all_ok = !outcomes.empty();
    double floor_min = 1.0;
    for (const point_outcome& o : outcomes) {
        floor_min = std::min(floor_min, o.report.max_residual);
        all_ok = all_ok && o.matched && o.report.max_residual >= 5e-5;
    }
    emit(4, all_ok, "T2_1 perturbation falsifier",
         std::to_string(outcomes.size()) + " points, smallest residual " +
             format_double17(floor_min) + " vs floor 5e-05, linear scaling checked per point");
}

// 5. T2_2 disc automorphisms.
void criterion_t22() {
    const run_config cfg = sweep_config(theorem_id::t2_2, 48, "forward");
    const std::vector<point_outcome> outcomes = evaluate_sweep(cfg);
    bool all_ok = outcomes.size() >= 160;
    double worst_coeff = 0.0;
    double worst_cs = 0.0;
    for (const point_outcome& o : outcomes) {
        worst_coeff = std::max(worst_coeff, echo_double(o.report, "phi_coeff_diff", 1.0));
        worst_cs = std::max(worst_cs, o.report.max_residual);
        all_ok = all_ok && o.matched;
    }
    emit(5, all_ok && worst_coeff <= 1e-12 && worst_cs <= 1e-9, "T2_2 automorphism forms",
         std::to_string(outcomes.size()) + " (a0, eta) points, worst coeff diff " +
             format_double17(worst_coeff) + ", worst CS " + format_double17(worst_cs));
}

// 6. T2_3 diagonal families: exact diagonality, zero commutator, norms.
void criterion_t23() {
    const run_config cfg = sweep_config(theorem_id::t2_3, 48, "forward");
    const std::vector<point_outcome> outcomes = evaluate_sweep(cfg);
    bool all_ok = outcomes.size() >= 10;
    bool squared_recorded = true;
    double worst_offdiag = 0.0;
    double worst_norm_eq = 0.0;
    for (const point_outcome& o : outcomes) {
        all_ok = all_ok && o.matched && o.report.max_residual == 0.0;
        worst_offdiag = std::max(worst_offdiag, echo_double(o.report, "offdiag_max", 1.0));
        worst_norm_eq =
            std::max(worst_norm_eq, echo_double(o.report, "norm_equality_max_diff", 1.0));
        const std::string label = echo_string(o.report, "norm_sq_closed_form_match");
        squared_recorded = squared_recorded &&
                           (label == "factorial_ratio_squared" || label == "both");
    }
    emit(6, all_ok && worst_offdiag <= 1e-14 && worst_norm_eq <= 1e-12 && squared_recorded,
         "T2_3 diagonal normality",
         std::to_string(outcomes.size()) + " points, max offdiag " +
             format_double17(worst_offdiag) + ", norm equality " +
             format_double17(worst_norm_eq) + ", norm^2 matches the squared factorial form");
}

// 7. T2_4 Hermitian families, forward and rotated falsifiers.
void criterion_t24() {
    const std::vector<point_outcome> forward =
        evaluate_sweep(sweep_config(theorem_id::t2_4, 48, "forward"));
    bool all_ok = forward.size() >= 30;
    double worst = 0.0;
    for (const point_outcome& o : forward) {
        worst = std::max(worst, o.report.max_residual);
        all_ok = all_ok && o.matched && o.report.pass;
    }
    const std::vector<point_outcome> falsified =
        evaluate_sweep(sweep_config(theorem_id::t2_4, 48, "falsify"));
    int flipped = 0;
    for (const point_outcome& o : falsified) {
        all_ok = all_ok && o.matched && !o.report.pass;
        flipped += o.report.pass ? 0 : 1;
    }
    emit(7, all_ok, "T2_4 Hermitian characterization",
         std::to_string(forward.size()) + " forward points (worst " + format_double17(worst) +
             "), " + std::to_string(flipped) + "/" + std::to_string(falsified.size()) +
             " rotated points flipped to fail");
}

// 8. T2_5 obstruction on the derivative Hardy space.
void criterion_t25() {
    const run_config cfg = sweep_config(theorem_id::t2_5, 48, "forward");
    const std::vector<point_outcome> outcomes = evaluate_sweep(cfg);
    int symmetric_cases = 0;
    int obstructed_cases = 0;
    bool all_ok = true;
    double worst_eq = 1.0;
    for (const point_outcome& o : outcomes) {
        all_ok = all_ok && o.matched;
        if (o.expected_pass) {
            ++symmetric_cases;
        } else {
            ++obstructed_cases;
            worst_eq = std::min(worst_eq, echo_double(o.report, "obstruction_relation_abs_diff", 0.0));
        }
    }
    emit(8, all_ok && symmetric_cases >= 7 && obstructed_cases >= 10,
         "T2_5 S21 obstruction",
         std::to_string(symmetric_cases) + " symmetric cases pass, " +
             std::to_string(obstructed_cases) + " obstructed cases fail, smallest "
             "obstruction relation gap " + format_double17(worst_eq));
}

// 9. Kernel-adjoint identity: magnitude at N = 64 and decay across orders.
void criterion_lemma() {
    const run_config cfg = sweep_config(theorem_id::lemma_adjoint, 64, "forward");
    const std::vector<point_outcome> outcomes = evaluate_sweep(cfg);
    bool all_ok = !outcomes.empty();
    double worst = 0.0;
    for (const point_outcome& o : outcomes) {
        worst = std::max(worst, o.report.max_residual);
        all_ok = all_ok && o.matched && o.report.max_residual <= 1e-6;
    }
    // convergence on the reference family
    const conjugation_spec conj(1.0, 1.0);
    const space_spec space = space_spec::bergman(0.0);
    std::vector<double> residuals;
    for (int order : {32, 48, 64, 96}) {
        const symbol_pair sym =
            bergman_cs_family({1.0, cplx{0.3, 0.0}, cplx{0.4, 0.0}, 1, 0.0, conj}, order);
        residuals.push_back(
            check_kernel_adjoint_identity(sym, space, 0.5, order, 1e-6).max_residual);
    }
    bool non_increasing = true;
    for (std::size_t i = 1; i < residuals.size(); ++i) {
        non_increasing = non_increasing && residuals[i] <= 2.0 * residuals[i - 1];
    }
    emit(9, all_ok && non_increasing, "kernel-adjoint identity",
         std::to_string(outcomes.size()) + " points at N=64 (worst " + format_double17(worst) +
             "), residuals across N=32..96: " + format_double17(residuals[0]) + ", " +
             format_double17(residuals[1]) + ", " + format_double17(residuals[2]) + ", " +
             format_double17(residuals[3]));
}

// 10. Infrastructure: byte determinism, exit codes, dual-path agreement.
void criterion_infrastructure() {
    bool deterministic = false;
    {
        run_config cfg = sweep_config(theorem_id::t2_1, 24, "forward");
        cfg.sweep.lattice_cap = 6;
        cfg.sweep.random_points = 4;
        std::string first;
        std::string second;
        setenv("BERGMAN_OPS_WORKERS", "1", 1);
        run_sweep(cfg, first);
        setenv("BERGMAN_OPS_WORKERS", "3", 1);
        run_sweep(cfg, second);
        unsetenv("BERGMAN_OPS_WORKERS");
        deterministic = !first.empty() && first == second;
    }

    bool exit_codes_ok = true;
#ifdef BERGMAN_OPS_CLI_PATH
    const std::string cli = BERGMAN_OPS_CLI_PATH;
    const auto run_with = [&](const std::string& body) {
        std::ofstream cfg("acceptance_cfg.json");
        cfg << body;
        cfg.close();
        const int status = std::system(
            (cli + " check --config acceptance_cfg.json --out acceptance_out.json 2>/dev/null")
                .c_str());
        return WEXITSTATUS(status);
    };
    exit_codes_ok = run_with(R"({"theorem": "T2_1", "trunc_order": 24})") == 0 &&
                    run_with(R"({"theorem": "T2_1", "trunc_order": 24, "expect": "fail"})") == 1 &&
                    run_with(R"({"tolerance": -1})") == 2;
    std::remove("acceptance_cfg.json");
    std::remove("acceptance_out.json");
#endif

    emit(10, deterministic && exit_codes_ok && g_path_disagreements == 0,
         "infrastructure contracts",
         std::string("byte-deterministic sweep: ") + (deterministic ? "yes" : "no") +
             ", exit codes 0/1/2: " + (exit_codes_ok ? "yes" : "no") +
             ", path disagreements: " + std::to_string(g_path_disagreements));
}

template <typename F>
void guarded(int id, const std::string& label, F&& body) {
    try {
        body();
    } catch (const path_disagreement& e) {
        ++g_path_disagreements;
        emit(id, false, label, std::string("path disagreement: ") + e.what());
    } catch (const std::exception& e) {
        emit(id, false, label, std::string("exception: ") + e.what());
    }
}

}  // namespace

int main() {
    guarded(1, "orthonormal basis Gram identity", criterion_orthonormality);
    guarded(2, "reproducing kernel contracts", criterion_kernels);
    guarded(3, "T2_1 forward sweep", criterion_t21_forward);
    guarded(4, "T2_1 perturbation falsifier", criterion_t21_falsifier);
    guarded(5, "T2_2 automorphism forms", criterion_t22);
    guarded(6, "T2_3 diagonal normality", criterion_t23);
    guarded(7, "T2_4 Hermitian characterization", criterion_t24);
    guarded(8, "T2_5 S21 obstruction", criterion_t25);
    guarded(9, "kernel-adjoint identity", criterion_lemma);
    guarded(10, "infrastructure contracts", criterion_infrastructure);
    std::printf("%d/10 criteria passed\n", 10 - g_failures);
    return g_failures;
}

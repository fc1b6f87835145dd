#include "bergman_ops/checkers.hpp"

#include <cmath>

#include "bergman_ops/errors.hpp"

namespace bergman_ops {

namespace {

struct max_entry {
    double value = 0.0;
    int j = 0;
    int k = 0;
};

max_entry max_abs_entry(const Eigen::MatrixXcd& m) {
    max_entry out;
    for (int j = 0; j < m.rows(); ++j) {
        for (int k = 0; k < m.cols(); ++k) {
            const double v = std::abs(m(j, k));
            if (v > out.value) {
                out = {v, j, k};
            }
        }
    }
    return out;
}

double delta_weight(int k) { return 2.0 / ((k + 1.0) * (k + 2.0)); }

double factorial(int k) {
    double v = 1.0;
    for (int i = 2; i <= k; ++i) {
        v *= i;
    }
    return v;
}

double falling_factorial(int k, int n) {
    double v = 1.0;
    for (int i = 0; i < n; ++i) {
        v *= static_cast<double>(k - i);
    }
    return v;
}

void echo_complex(params_echo& echo, const std::string& key, cplx v) {
    echo.push_back({key, v});
}

}  // namespace

check_report check_complex_symmetric(const operator_matrix& matrix, const conjugation_spec& conj,
                                     double tolerance) {
    const operator_matrix reduced = conjugated_adjoint(matrix, conj);
    const operator_matrix basis = conjugated_adjoint_via_basis(matrix, conj);
    const double scale = 1.0 + max_abs(matrix.entries());

    const max_entry diff_reduced = max_abs_entry(matrix.entries() - reduced.entries());
    const max_entry diff_basis = max_abs_entry(matrix.entries() - basis.entries());
    const double residual_reduced = diff_reduced.value / scale;
    const double residual_basis = diff_basis.value / scale;
    if (std::abs(residual_reduced - residual_basis) > 1e-12) {
        throw path_disagreement("check_complex_symmetric: entrywise and basis-vector paths "
                                "disagree beyond 1e-12");
    }

    check_report report;
    report.check_id = "complex_symmetric";
    report.max_residual = residual_reduced;
    report.tolerance = tolerance;
    report.pass = residual_reduced <= tolerance;
    report.trunc_order = matrix.trunc_order();
    if (!report.pass) {
        report.witness = witness_index{diff_reduced.j, diff_reduced.k};
    }
    echo_complex(report.params, "mu", conj.mu);
    echo_complex(report.params, "eta", conj.eta);
    report.params.push_back({"basis_path_residual", residual_basis});
    return report;
}

check_report check_hermitian(const operator_matrix& matrix, double tolerance) {
    const Eigen::MatrixXcd diff =
        matrix.entries() - matrix.entries().adjoint().eval();
    const max_entry worst = max_abs_entry(diff);
    const double scale = 1.0 + max_abs(matrix.entries());

    check_report report;
    report.check_id = "hermitian";
    report.max_residual = worst.value / scale;
    report.tolerance = tolerance;
    report.pass = report.max_residual <= tolerance;
    report.trunc_order = matrix.trunc_order();
    if (!report.pass) {
        report.witness = witness_index{worst.j, worst.k};
    }
    return report;
}

check_report check_normal(const operator_matrix& matrix, double tolerance) {
    const Eigen::MatrixXcd& a = matrix.entries();
    const Eigen::MatrixXcd commutator = a.adjoint() * a - a * a.adjoint();
    const max_entry worst = max_abs_entry(commutator);
    const double amax = max_abs(a);
    const double scale = 1.0 + amax * amax;

    double offdiag = 0.0;
    for (int j = 0; j < a.rows(); ++j) {
        for (int k = 0; k < a.cols(); ++k) {
            if (j != k) {
                offdiag = std::max(offdiag, std::abs(a(j, k)));
            }
        }
    }

    check_report report;
    report.check_id = "normal";
    report.max_residual = worst.value / scale;
    report.tolerance = tolerance;
    report.pass = report.max_residual <= tolerance;
    report.trunc_order = matrix.trunc_order();
    if (!report.pass) {
        report.witness = witness_index{worst.j, worst.k};
    }
    report.params.push_back({"offdiag_max", offdiag});
    report.notes = offdiag <= 1e-14
                       ? "diagonal compression: commutator residual is exact"
                       : "compression approximation: commutator of the finite block, exact "
                         "only for tail-small columns";
    return report;
}

check_report check_kernel_adjoint_identity(const symbol_pair& sym, const space_spec& space,
                                           cplx w, int trunc_order, double tolerance) {
    if (std::abs(w) > 0.7) {
        throw point_outside_disk("check_kernel_adjoint_identity: |w| > 0.7");
    }
    const cplx phi_w = evaluate(sym.phi, w);
    if (std::abs(phi_w) > 0.7) {
        throw point_outside_disk("check_kernel_adjoint_identity: |phi(w)| > 0.7");
    }
    const operator_matrix matrix = build_matrix(sym, space, trunc_order);

    const Eigen::VectorXcd kernel_vec =
        to_basis_coords(kernel_coeffs(w, space, trunc_order), space, trunc_order);
    const Eigen::VectorXcd lhs_vec = matrix.entries().adjoint() * kernel_vec;
    const truncated_series lhs = from_basis_coords(lhs_vec, space);

    const cplx psi_w = evaluate(sym.psi, w);
    const truncated_series rhs =
        scale(derivative_kernel_coeffs(sym.order_n, phi_w, space, trunc_order), std::conj(psi_w));

    const truncated_series diff = add(lhs, scale(rhs, -1.0), trunc_order);
    const double rhs_norm = space_norm(rhs, space);
    const double residual = space_norm(diff, space) / (1.0 + rhs_norm);

    check_report report;
    report.check_id = "kernel_adjoint";
    report.max_residual = residual;
    report.tolerance = tolerance;
    report.pass = residual <= tolerance;
    report.trunc_order = trunc_order;
    if (!report.pass) {
        report.witness = witness_point{w, phi_w};
    }
    echo_complex(report.params, "w", w);
    echo_complex(report.params, "phi_w", phi_w);
    echo_complex(report.params, "psi_w", psi_w);
    return report;
}

check_report kernel_symmetry_residual(const symbol_pair& sym, const space_spec& space,
                                      const conjugation_spec& conj,
                                      std::span<const std::pair<cplx, cplx>> samples,
                                      int trunc_order, double tolerance) {
    const int n = sym.order_n;
    double worst = 0.0;
    witness_point worst_at{};
    double worst_tail = 0.0;

    double p = 1.0;
    if (space.kind() == space_kind::bergman) {
        for (int i = 2; i <= n + 1; ++i) {
            p *= space.alpha() + i;
        }
    }

    for (const auto& [z, w] : samples) {
        if (std::abs(z) > 0.7 || std::abs(w) > 0.7) {
            throw sample_outside_domain("kernel_symmetry_residual: sample beyond radius 0.7");
        }
        const cplx phi_z = evaluate(sym.phi, z);
        const cplx phi_w = evaluate(sym.phi, w);
        const cplx psi_z = evaluate(sym.psi, z);
        const cplx psi_w = evaluate(sym.psi, w);

        cplx lhs;
        cplx rhs;
        if (space.kind() == space_kind::bergman) {
            const double s = n + space.alpha() + 2.0;
            const cplx dl = 1.0 - conj.eta * w * phi_z;
            const cplx dr = 1.0 - conj.eta * phi_w * z;
            if (std::abs(conj.eta * w * phi_z) >= 1.0 || std::abs(conj.eta * phi_w * z) >= 1.0) {
                throw sample_outside_domain(
                    "kernel_symmetry_residual: kernel argument outside the disk");
            }
            lhs = conj.mu * p * psi_z * std::pow(conj.eta * w, n) / std::pow(dl, s);
            rhs = conj.mu * p * psi_w * std::pow(conj.eta * z, n) / std::pow(dr, s);
        } else {
            // Truncated sums sum_{k=n..N} (k!/(k-n)!) delta_k (eta w)^k phi(z)^{k-n}.
            cplx sum_l{};
            cplx sum_r{};
            double fall = factorial(n);
            cplx wl = std::pow(conj.eta * w, n);
            cplx wr = std::pow(conj.eta * z, n);
            cplx pl = 1.0;
            cplx pr = 1.0;
            for (int k = n; k <= trunc_order; ++k) {
                if (k > n) {
                    fall *= static_cast<double>(k) / (k - n);
                    wl *= conj.eta * w;
                    wr *= conj.eta * z;
                    pl *= phi_z;
                    pr *= phi_w;
                }
                sum_l += fall * delta_weight(k) * wl * pl;
                sum_r += fall * delta_weight(k) * wr * pr;
            }
            lhs = conj.mu * psi_z * sum_l;
            rhs = conj.mu * psi_w * sum_r;
            // Geometric tail bound from the first dropped term.
            const int k1 = trunc_order + 1;
            const double grow = static_cast<double>(k1 + 1) / std::max(k1 + 1 - n, 1);
            const double rho =
                grow * std::max(std::abs(w) * std::abs(phi_z), std::abs(z) * std::abs(phi_w));
            const double lead = falling_factorial(k1, n) * delta_weight(k1) *
                                std::pow(std::max(std::abs(w), std::abs(z)), k1) *
                                std::pow(std::max(std::abs(phi_z), std::abs(phi_w)), k1 - n);
            const double tail = rho < 1.0 ? lead / (1.0 - rho) : lead;
            worst_tail = std::max(worst_tail,
                                  tail * std::max(std::abs(psi_z), std::abs(psi_w)));
        }
        const double residual = std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
        if (residual > worst) {
            worst = residual;
            worst_at = witness_point{z, w};
        }
    }

    check_report report;
    report.check_id = "kernel_symmetry";
    report.max_residual = worst;
    report.tolerance = tolerance;
    report.pass = worst <= tolerance;
    report.trunc_order = trunc_order;
    if (!report.pass) {
        report.witness = worst_at;
    }
    report.params.push_back({"samples", static_cast<std::int64_t>(samples.size())});
    if (space.kind() == space_kind::derivative_hardy) {
        report.params.push_back({"truncation_tail_bound", worst_tail});
    }
    return report;
}

s21_obstruction_sides s21_obstruction_relation_sides(int order_n, cplx b, cplx c, cplx eta, double d2) {
    const int n = order_n;
    const double dn = delta_weight(n);
    const double dn1 = delta_weight(n + 1);
    const double dn2 = delta_weight(n + 2);
    const double d1 = 1.0;
    const cplx b3 = b * b * b;

    const cplx lhs = factorial(n + 1) * std::pow(eta, n + 1) * dn1 *
                     (0.5 * factorial(n + 2) * eta * eta * b3 * dn1 +
                      (factorial(n) * dn * dn / ((n + 1.0) * dn1)) * d2 * eta * b * c +
                      factorial(n) * d1 * eta * b * c * dn);
    const cplx rhs = 0.5 * factorial(n + 2) * std::pow(eta, n + 2) * dn2 *
                     (2.0 * factorial(n) * d1 * b * c * dn * dn / dn1 +
                      factorial(n + 1) * eta * b3 * dn1);
    return {lhs, rhs};
}

check_report check_s21_obstruction(const s21_family_params& params, int trunc_order,
                                   double tolerance) {
    const s21_family_result family = s21_family(params, trunc_order);
    const space_spec space = space_spec::derivative_hardy();
    const operator_matrix matrix = build_matrix(family.sym, space, trunc_order);
    check_report report = check_complex_symmetric(matrix, params.conj, tolerance);
    report.check_id = "s21_obstruction";

    const double d2 = family.d.size() > 1 ? family.d[1] : 0.0;
    const s21_obstruction_sides sides =
        s21_obstruction_relation_sides(params.order_n, params.b, params.c, params.conj.eta, d2);
    echo_complex(report.params, "b", params.b);
    echo_complex(report.params, "c", params.c);
    report.params.push_back({"n", static_cast<std::int64_t>(params.order_n)});
    report.params.push_back({"d2", d2});
    echo_complex(report.params, "obstruction_relation_lhs", sides.lhs);
    echo_complex(report.params, "obstruction_relation_rhs", sides.rhs);
    report.params.push_back({"obstruction_relation_abs_diff", std::abs(sides.lhs - sides.rhs)});
    const bool expect_symmetric = params.b == cplx{} || params.c == cplx{};
    report.params.push_back({"symmetric_expected", std::string(expect_symmetric ? "yes" : "no")});
    return report;
}

check_report falsify_perturbation(const symbol_pair& sym, const space_spec& space,
                                  const conjugation_spec& conj, double eps, int trunc_order,
                                  double tolerance) {
    if (eps < 0.0) {
        throw std::invalid_argument("falsify_perturbation: eps must be >= 0");
    }
    const truncated_series bump = truncated_series::monomial(sym.order_n + 1, eps);
    const truncated_series psi = add(sym.psi, bump, sym.psi.trunc_order());
    const symbol_pair perturbed = make_symbol_pair(psi, sym.phi, sym.order_n);
    const operator_matrix matrix = build_matrix(perturbed, space, trunc_order);
    check_report report = check_complex_symmetric(matrix, conj, tolerance);
    report.check_id = "falsify_perturbation";
    report.params.push_back({"eps", eps});
    report.params.push_back({"detectability_floor", eps / 20.0});
    report.params.push_back(
        {"floor_met", std::string(report.max_residual >= eps / 20.0 ? "yes" : "no")});
    return report;
}

}  // namespace bergman_ops

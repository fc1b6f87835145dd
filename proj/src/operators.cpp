#include "bergman_ops/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "bergman_ops/errors.hpp"

namespace bergman_ops {

symbol_pair make_symbol_pair(truncated_series psi, truncated_series phi, int order_n) {
    if (order_n < 1) {
        throw invalid_order("symbol_pair: derivative order must be >= 1");
    }
    double margin = std::abs(phi.coeff(0));
    for (int m = 1; m <= phi.trunc_order(); ++m) {
        margin += std::abs(phi.coeff(m));
    }
    return symbol_pair{std::move(psi), std::move(phi), order_n, margin};
}

conjugation_spec::conjugation_spec(cplx mu_value, cplx eta_value) : mu(mu_value), eta(eta_value) {
    if (std::abs(std::abs(mu) - 1.0) > 1e-14 || std::abs(std::abs(eta) - 1.0) > 1e-14) {
        throw std::invalid_argument("conjugation_spec: mu and eta must be unimodular");
    }
}

conjugation_spec conjugation_spec::from_angles(double mu_angle, double eta_angle) {
    return conjugation_spec(std::polar(1.0, mu_angle), std::polar(1.0, eta_angle));
}

operator_matrix::operator_matrix(Eigen::MatrixXcd entries, space_spec space, int order_n)
    : entries_(std::move(entries)), space_(space), order_n_(order_n) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
        throw std::invalid_argument("operator_matrix: entries must be square and non-empty");
    }
    if (!entries_.allFinite()) {
        throw std::invalid_argument("operator_matrix: non-finite entry");
    }
}

truncated_series apply_operator(const symbol_pair& sym, const truncated_series& f,
                                int trunc_order) {
    const truncated_series inner = compose(derivative(f, sym.order_n), sym.phi, trunc_order);
    return multiply(sym.psi, inner, trunc_order);
}

operator_matrix build_matrix(const symbol_pair& sym, const space_spec& space, int trunc_order) {
    if (sym.psi.trunc_order() < trunc_order || sym.phi.trunc_order() < trunc_order) {
        throw window_too_short("build_matrix: psi/phi windows must reach the truncation order");
    }
    if (std::abs(sym.phi.coeff(0)) >= 1.0) {
        throw constant_term_outside_disk("build_matrix: |phi(0)| >= 1");
    }
    const int n = sym.order_n;
    const weight_profile profile(space);
    const std::vector<double> beta = profile.normalizer_table(trunc_order);

    Eigen::MatrixXcd entries =
        Eigen::MatrixXcd::Zero(trunc_order + 1, trunc_order + 1);

    // Column k holds psi * ((z^k)^(n) o phi) = (k!/(k-n)!) psi * phi^{k-n},
    // re-expressed in unit monomials. Powers of phi advance incrementally;
    // the falling factorial is an exact small-integer product.
    truncated_series phi_pow = truncated_series::constant(1.0);
    for (int k = n; k <= trunc_order; ++k) {
        if (k > n) {
            phi_pow = multiply(phi_pow, sym.phi, trunc_order);
        }
        double fall = 1.0;  // k!/(k-n)!
        for (int i = 0; i < n; ++i) {
            fall *= static_cast<double>(k - i);
        }
        const truncated_series col = multiply(sym.psi, phi_pow, trunc_order);
        for (int j = 0; j <= trunc_order; ++j) {
            // Normalizer ratio first: it is exactly 1 on the diagonal.
            const double ratio =
                beta[static_cast<std::size_t>(k)] / beta[static_cast<std::size_t>(j)];
            entries(j, k) = fall * (ratio * col.coeff(j));
        }
    }
    return operator_matrix(std::move(entries), space, n);
}

operator_matrix adjoint_matrix(const operator_matrix& matrix) {
    return operator_matrix(matrix.entries().adjoint(), matrix.space(), matrix.order_n());
}

truncated_series conjugation_apply(const conjugation_spec& conj, const truncated_series& f) {
    std::vector<cplx> c(static_cast<std::size_t>(f.trunc_order()) + 1);
    cplx eta_pow = 1.0;
    for (int m = 0; m <= f.trunc_order(); ++m) {
        c[static_cast<std::size_t>(m)] = conj.mu * eta_pow * std::conj(f.coeff(m));
        eta_pow *= conj.eta;
    }
    return truncated_series(std::move(c));
}

operator_matrix conjugated_adjoint(const operator_matrix& matrix, const conjugation_spec& conj) {
    const int order = matrix.trunc_order();
    Eigen::MatrixXcd out(order + 1, order + 1);
    std::vector<cplx> eta_pow(static_cast<std::size_t>(order) + 1);
    eta_pow[0] = 1.0;
    for (int m = 1; m <= order; ++m) {
        eta_pow[static_cast<std::size_t>(m)] = eta_pow[static_cast<std::size_t>(m - 1)] * conj.eta;
    }
    for (int j = 0; j <= order; ++j) {
        for (int k = 0; k <= order; ++k) {
            out(j, k) = eta_pow[static_cast<std::size_t>(j)] *
                        std::conj(eta_pow[static_cast<std::size_t>(k)]) * matrix.entries()(k, j);
        }
    }
    return operator_matrix(std::move(out), matrix.space(), matrix.order_n());
}

operator_matrix conjugated_adjoint_via_basis(const operator_matrix& matrix,
                                             const conjugation_spec& conj) {
    const int order = matrix.trunc_order();
    const space_spec space = matrix.space();
    const weight_profile profile(space);
    const std::vector<double> beta = profile.normalizer_table(order);
    const Eigen::MatrixXcd adj = matrix.entries().adjoint();

    Eigen::MatrixXcd out(order + 1, order + 1);
    for (int k = 0; k <= order; ++k) {
        // gamma_k as a series, pushed through C, T*, C.
        std::vector<cplx> unit(static_cast<std::size_t>(order) + 1);
        unit[static_cast<std::size_t>(k)] = beta[static_cast<std::size_t>(k)];
        const truncated_series cg = conjugation_apply(conj, truncated_series(std::move(unit)));
        Eigen::VectorXcd v = to_basis_coords(cg, space, order);
        v = adj * v;
        const truncated_series mid = from_basis_coords(v, space);
        const truncated_series back = conjugation_apply(conj, mid);
        const Eigen::VectorXcd col = to_basis_coords(back, space, order);
        out.col(k) = col;
    }
    return operator_matrix(std::move(out), space, matrix.order_n());
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::VectorXcd to_basis_coords(const truncated_series& f, const space_spec& space,
                                 int trunc_order) {
    const weight_profile profile(space);
    const std::vector<double> beta = profile.normalizer_table(trunc_order);
    Eigen::VectorXcd v(trunc_order + 1);
    for (int m = 0; m <= trunc_order; ++m) {
        v(m) = f.coeff(m) / beta[static_cast<std::size_t>(m)];
    }
    return v;
}

truncated_series from_basis_coords(const Eigen::VectorXcd& v, const space_spec& space) {
    const int order = static_cast<int>(v.size()) - 1;
    const weight_profile profile(space);
    const std::vector<double> beta = profile.normalizer_table(order);
    std::vector<cplx> c(static_cast<std::size_t>(order) + 1);
    for (int m = 0; m <= order; ++m) {
        c[static_cast<std::size_t>(m)] = v(m) * beta[static_cast<std::size_t>(m)];
    }
    return truncated_series(std::move(c));
}

}  // namespace bergman_ops

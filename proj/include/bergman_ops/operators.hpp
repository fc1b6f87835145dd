#pragma once

#include <Eigen/Core>

#include "bergman_ops/spaces.hpp"

namespace bergman_ops {

/// Symbol data of the operator f |-> psi * (f^(n) o phi), together with the
/// sufficient self-map bound |phi(0)| + sum_{m>=1} |phi_m| over the window.
/// The bound < 1 guarantees phi maps the disk into itself; theorem-family
/// constructors reject parameters that fail it.
struct symbol_pair {
    truncated_series psi;
    truncated_series phi;
    int order_n;
    double selfmap_margin;
};

symbol_pair make_symbol_pair(truncated_series psi, truncated_series phi, int order_n);

/// The antilinear involution f(z) |-> mu * conj(f(conj(eta z))) with
/// |mu| = |eta| = 1; coefficientwise f_m |-> mu eta^m conj(f_m).
struct conjugation_spec {
    conjugation_spec(cplx mu_value, cplx eta_value);
    static conjugation_spec from_angles(double mu_angle, double eta_angle);

    cplx mu;
    cplx eta;
};

/// (N+1)x(N+1) compression of the operator in the unit-monomial basis
/// gamma_m = normalizer(m) z^m: entry (j,k) = <D gamma_k, gamma_j>. Entries
/// with j,k <= N coincide with the infinite matrix (products and compositions
/// are coefficient-local).
class operator_matrix {
public:
    operator_matrix(Eigen::MatrixXcd entries, space_spec space, int order_n);

    const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
    const space_spec& space() const noexcept { return space_; }
    int order_n() const noexcept { return order_n_; }
    int trunc_order() const noexcept { return static_cast<int>(entries_.rows()) - 1; }

private:
    Eigen::MatrixXcd entries_;
    space_spec space_;
    int order_n_;
};

/// psi * (f^(n) o phi), truncated. Propagates constant_term_outside_disk.
truncated_series apply_operator(const symbol_pair& sym, const truncated_series& f,
                                int trunc_order);

/// Matrix compression; requires the psi/phi windows to reach trunc_order.
operator_matrix build_matrix(const symbol_pair& sym, const space_spec& space, int trunc_order);

/// Conjugate transpose (adjoint in an orthonormal basis).
operator_matrix adjoint_matrix(const operator_matrix& matrix);

/// Coefficientwise conjugation: result_m = mu * eta^m * conj(f_m).
truncated_series conjugation_apply(const conjugation_spec& conj, const truncated_series& f);

/// Matrix of C T* C in the unit-monomial basis, by the entrywise reduction
/// (j,k) |-> eta^j conj(eta)^k T_{kj} (valid because both spaces have real
/// normalizers, so C gamma_m = mu eta^m gamma_m).
operator_matrix conjugated_adjoint(const operator_matrix& matrix, const conjugation_spec& conj);

/// Same operator computed the long way: conjugation_apply, adjoint action,
/// conjugation_apply on each basis vector. Must agree with the entrywise
/// reduction to rounding; checkers compare the two paths.
operator_matrix conjugated_adjoint_via_basis(const operator_matrix& matrix,
                                             const conjugation_spec& conj);

double max_abs(const Eigen::MatrixXcd& m);

/// Coefficient vector of f in the unit-monomial basis (divide by normalizers).
Eigen::VectorXcd to_basis_coords(const truncated_series& f, const space_spec& space,
                                 int trunc_order);

/// Inverse of to_basis_coords.
truncated_series from_basis_coords(const Eigen::VectorXcd& v, const space_spec& space);

}  // namespace bergman_ops

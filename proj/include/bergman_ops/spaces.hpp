#pragma once

#include <vector>

#include "bergman_ops/series.hpp"

namespace bergman_ops {

enum class space_kind { bergman, derivative_hardy };

/// Which Hilbert space of analytic functions governs inner products and
/// kernels: the weighted Bergman space A^2_alpha (alpha > -1) or the
/// derivative Hardy space S^2_1.
class space_spec {
public:
    static space_spec bergman(double alpha);
    static space_spec derivative_hardy();

    space_kind kind() const noexcept { return kind_; }
    double alpha() const noexcept { return alpha_; }  // Bergman only

private:
    space_spec(space_kind k, double a) : kind_(k), alpha_(a) {}

    space_kind kind_;
    double alpha_;
};

/// Diagonal weight data of a space: monomial_norm_sq(m) = <z^m, z^m> and
/// normalizer(m) = 1/sqrt(monomial_norm_sq(m)), so normalizer(m) * z^m has
/// unit norm. Pure value type, safe for concurrent use.
///
/// Bergman: <z^m, z^m> = m! Gamma(2+alpha) / Gamma(m+2+alpha), computed by
/// the recurrence w_0 = 1, w_m = w_{m-1} * m/(m+1+alpha).
/// Derivative Hardy: <z^m, z^m> = (m+1)(m+2)/2, the reciprocal of
/// delta_m = 2/((m+1)(m+2)); this makes sum_m delta_m (conj(w) z)^m
/// reproduce point evaluation.
class weight_profile {
public:
    explicit weight_profile(space_spec space) : space_(space) {}

    double monomial_norm_sq(int m) const;
    double normalizer(int m) const;

    std::vector<double> norm_sq_table(int max_order) const;
    std::vector<double> normalizer_table(int max_order) const;

    const space_spec& space() const noexcept { return space_; }

private:
    space_spec space_;
};

/// Diagonal inner product sum_m f_m conj(g_m) <z^m, z^m>; conjugate-linear in
/// the second argument. Shorter windows are zero-padded.
cplx inner_product(const truncated_series& f, const truncated_series& g, const space_spec& space);

double space_norm(const truncated_series& f, const space_spec& space);

/// Window of the reproducing kernel K_w: coefficient m is
/// conj(w)^m / monomial_norm_sq(m), so that <f, K_w> = f(w) exactly for
/// window polynomials. Requires |w| < 1.
truncated_series kernel_coeffs(cplx w, const space_spec& space, int trunc_order);

/// Window of the order-n derivative kernel: <f, K^[n]_w> = f^(n)(w).
/// Bergman: p z^n (1 - conj(w) z)^{-(n+alpha+2)} with
/// p = (alpha+2)...(alpha+n+1). Derivative Hardy: coefficient m is
/// (m!/(m-n)!) delta_m conj(w)^{m-n} for m >= n. Requires n >= 1, |w| < 1.
truncated_series derivative_kernel_coeffs(int order, cplx w, const space_spec& space,
                                          int trunc_order);

}  // namespace bergman_ops

#pragma once

#include <complex>
#include <vector>

namespace bergman_ops {

using cplx = std::complex<double>;

/// Degree-N Taylor window of an analytic function on the unit disk.
/// coeff(m) is the coefficient of z^m; indices beyond the window read as zero.
/// All coefficients are finite; values are immutable after construction.
class truncated_series {
public:
    explicit truncated_series(std::vector<cplx> coeffs);

    static truncated_series zero(int trunc_order);
    static truncated_series constant(cplx value) { return monomial(0, value); }
    static truncated_series monomial(int degree, cplx scale = cplx{1.0, 0.0});

    int trunc_order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    cplx coeff(int m) const noexcept {
        return (m >= 0 && m < static_cast<int>(coeffs_.size())) ? coeffs_[m] : cplx{};
    }

    const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }

private:
    std::vector<cplx> coeffs_;
};

truncated_series add(const truncated_series& f, const truncated_series& g, int trunc_order);
truncated_series scale(const truncated_series& f, cplx factor);

/// Cauchy product truncated at trunc_order. Coefficient m of the result is
/// exact whenever both factor windows reach m.
truncated_series multiply(const truncated_series& f, const truncated_series& g, int trunc_order);

/// n-th derivative. The window shrinks to max(N - n, 0); coefficient m of the
/// result is ((m+n)!/m!) * f_{m+n}.
truncated_series derivative(const truncated_series& f, int order);

/// f(inner(z)) truncated at trunc_order, by Horner accumulation of truncated
/// powers of inner over the full window of f. Requires |inner(0)| < 1; when
/// inner(0) = 0 the first trunc_order+1 coefficients are exact.
truncated_series compose(const truncated_series& f, const truncated_series& inner, int trunc_order);

/// Window of (1 - q z)^(-s): c_0 = 1, c_m = c_{m-1} * q * (s+m-1)/m. The
/// multiplicative recurrence avoids the Gamma-quotient overflow near m ~ 170.
truncated_series rational_expand(cplx q, double s, int trunc_order);

/// Horner evaluation of the window polynomial.
cplx evaluate(const truncated_series& f, cplx z);

}  // namespace bergman_ops

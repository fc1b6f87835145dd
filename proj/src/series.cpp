#include "bergman_ops/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bergman_ops/errors.hpp"

namespace bergman_ops {

namespace {

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

}  // namespace

truncated_series::truncated_series(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        throw std::invalid_argument("truncated_series: empty coefficient list");
    }
    for (const cplx& c : coeffs_) {
        if (!finite(c)) {
            throw std::invalid_argument("truncated_series: non-finite coefficient");
        }
    }
}

truncated_series truncated_series::zero(int trunc_order) {
    if (trunc_order < 0) {
        throw std::invalid_argument("truncated_series: negative truncation order");
    }
    return truncated_series(std::vector<cplx>(static_cast<std::size_t>(trunc_order) + 1));
}

truncated_series truncated_series::monomial(int degree, cplx scale) {
    if (degree < 0) {
        throw std::invalid_argument("truncated_series: negative monomial degree");
    }
    std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
    c.back() = scale;
    return truncated_series(std::move(c));
}

truncated_series add(const truncated_series& f, const truncated_series& g, int trunc_order) {
    std::vector<cplx> c(static_cast<std::size_t>(trunc_order) + 1);
    for (int m = 0; m <= trunc_order; ++m) {
        c[static_cast<std::size_t>(m)] = f.coeff(m) + g.coeff(m);
    }
    return truncated_series(std::move(c));
}

truncated_series scale(const truncated_series& f, cplx factor) {
    std::vector<cplx> c = f.coeffs();
    for (cplx& v : c) {
        v *= factor;
    }
    return truncated_series(std::move(c));
}

truncated_series multiply(const truncated_series& f, const truncated_series& g, int trunc_order) {
    std::vector<cplx> c(static_cast<std::size_t>(trunc_order) + 1);
    const int nf = f.trunc_order();
    const int ng = g.trunc_order();
    for (int j = 0; j <= std::min(nf, trunc_order); ++j) {
        const cplx fj = f.coeff(j);
        if (fj == cplx{}) {
            continue;
        }
        const int kmax = std::min(ng, trunc_order - j);
        for (int k = 0; k <= kmax; ++k) {
            c[static_cast<std::size_t>(j + k)] += fj * g.coeff(k);
        }
    }
    return truncated_series(std::move(c));
}

truncated_series derivative(const truncated_series& f, int order) {
    if (order < 0) {
        throw std::invalid_argument("derivative: negative order");
    }
    if (order == 0) {
        return f;
    }
    const int out_order = std::max(f.trunc_order() - order, 0);
    std::vector<cplx> c(static_cast<std::size_t>(out_order) + 1);
    for (int m = 0; m + order <= f.trunc_order(); ++m) {
        double factor = 1.0;  // (m+order)!/m!
        for (int i = 1; i <= order; ++i) {
            factor *= static_cast<double>(m + i);
        }
        c[static_cast<std::size_t>(m)] = factor * f.coeff(m + order);
    }
    return truncated_series(std::move(c));
}

truncated_series compose(const truncated_series& f, const truncated_series& inner, int trunc_order) {
    if (std::abs(inner.coeff(0)) >= 1.0) {
        throw constant_term_outside_disk("compose: |inner(0)| >= 1");
    }
    // Horner: acc = f_K, acc = acc*inner + f_k. Truncation at trunc_order is
    // harmless since multiplication only raises degrees.
    truncated_series acc = truncated_series::zero(trunc_order);
    for (int k = f.trunc_order(); k >= 0; --k) {
        acc = multiply(acc, inner, trunc_order);
        acc = add(acc, truncated_series::constant(f.coeff(k)), trunc_order);
    }
    return acc;
}

truncated_series rational_expand(cplx q, double s, int trunc_order) {
    std::vector<cplx> c(static_cast<std::size_t>(trunc_order) + 1);
    c[0] = 1.0;
    for (int m = 1; m <= trunc_order; ++m) {
        c[static_cast<std::size_t>(m)] =
            c[static_cast<std::size_t>(m - 1)] * q * ((s + m - 1) / m);
    }
    return truncated_series(std::move(c));
}

cplx evaluate(const truncated_series& f, cplx z) {
    cplx acc{};
    for (int m = f.trunc_order(); m >= 0; --m) {
        acc = acc * z + f.coeff(m);
    }
    return acc;
}

}  // namespace bergman_ops

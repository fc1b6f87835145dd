#include "bergman_ops/spaces.hpp"

#include <cmath>

#include "bergman_ops/errors.hpp"

namespace bergman_ops {

space_spec space_spec::bergman(double alpha) {
    if (!(alpha > -1.0)) {
        throw invalid_alpha("space_spec: Bergman weight requires alpha > -1");
    }
    return space_spec(space_kind::bergman, alpha);
}

space_spec space_spec::derivative_hardy() {
    return space_spec(space_kind::derivative_hardy, 0.0);
}

double weight_profile::monomial_norm_sq(int m) const {
    if (space_.kind() == space_kind::derivative_hardy) {
        return 0.5 * (m + 1.0) * (m + 2.0);
    }
    const double alpha = space_.alpha();
    double w = 1.0;
    for (int i = 1; i <= m; ++i) {
        w *= i / (i + 1.0 + alpha);
    }
    return w;
}

double weight_profile::normalizer(int m) const { return 1.0 / std::sqrt(monomial_norm_sq(m)); }

std::vector<double> weight_profile::norm_sq_table(int max_order) const {
    std::vector<double> w(static_cast<std::size_t>(max_order) + 1);
    if (space_.kind() == space_kind::derivative_hardy) {
        for (int m = 0; m <= max_order; ++m) {
            w[static_cast<std::size_t>(m)] = 0.5 * (m + 1.0) * (m + 2.0);
        }
    } else {
        const double alpha = space_.alpha();
        w[0] = 1.0;
        for (int m = 1; m <= max_order; ++m) {
            w[static_cast<std::size_t>(m)] =
                w[static_cast<std::size_t>(m - 1)] * m / (m + 1.0 + alpha);
        }
    }
    return w;
}

std::vector<double> weight_profile::normalizer_table(int max_order) const {
    std::vector<double> b = norm_sq_table(max_order);
    for (double& v : b) {
        v = 1.0 / std::sqrt(v);
    }
    return b;
}

cplx inner_product(const truncated_series& f, const truncated_series& g, const space_spec& space) {
    const weight_profile profile(space);
    const int order = std::min(f.trunc_order(), g.trunc_order());
    const std::vector<double> w = profile.norm_sq_table(order);
    cplx acc{};
    for (int m = 0; m <= order; ++m) {
        acc += f.coeff(m) * std::conj(g.coeff(m)) * w[static_cast<std::size_t>(m)];
    }
    return acc;
}

double space_norm(const truncated_series& f, const space_spec& space) {
    const weight_profile profile(space);
    const std::vector<double> w = profile.norm_sq_table(f.trunc_order());
    double acc = 0.0;
    for (int m = 0; m <= f.trunc_order(); ++m) {
        acc += std::norm(f.coeff(m)) * w[static_cast<std::size_t>(m)];
    }
    return std::sqrt(acc);
}

truncated_series kernel_coeffs(cplx w, const space_spec& space, int trunc_order) {
    if (std::abs(w) >= 1.0) {
        throw point_outside_disk("kernel_coeffs: |w| >= 1");
    }
    const weight_profile profile(space);
    const std::vector<double> norms = profile.norm_sq_table(trunc_order);
    std::vector<cplx> c(static_cast<std::size_t>(trunc_order) + 1);
    cplx pw = 1.0;  // conj(w)^m
    for (int m = 0; m <= trunc_order; ++m) {
        c[static_cast<std::size_t>(m)] = pw / norms[static_cast<std::size_t>(m)];
        pw *= std::conj(w);
    }
    return truncated_series(std::move(c));
}

truncated_series derivative_kernel_coeffs(int order, cplx w, const space_spec& space,
                                          int trunc_order) {
    if (order < 1) {
        throw invalid_order("derivative_kernel_coeffs: order must be >= 1");
    }
    if (std::abs(w) >= 1.0) {
        throw point_outside_disk("derivative_kernel_coeffs: |w| >= 1");
    }
    if (space.kind() == space_kind::bergman) {
        const double alpha = space.alpha();
        double p = 1.0;  // (alpha+2)(alpha+3)...(alpha+order+1)
        for (int i = 2; i <= order + 1; ++i) {
            p *= alpha + i;
        }
        if (order > trunc_order) {
            return truncated_series::zero(trunc_order);
        }
        const truncated_series base =
            rational_expand(std::conj(w), order + alpha + 2.0, trunc_order - order);
        std::vector<cplx> c(static_cast<std::size_t>(trunc_order) + 1);
        for (int m = order; m <= trunc_order; ++m) {
            c[static_cast<std::size_t>(m)] = p * base.coeff(m - order);
        }
        return truncated_series(std::move(c));
    }
    // Derivative Hardy: (m!/(m-n)!) delta_m conj(w)^{m-n}, m >= n.
    std::vector<cplx> c(static_cast<std::size_t>(trunc_order) + 1);
    cplx pw = 1.0;
    for (int m = order; m <= trunc_order; ++m) {
        double ff = 1.0;  // m!/(m-order)!
        for (int i = 0; i < order; ++i) {
            ff *= static_cast<double>(m - i);
        }
        const double delta_m = 2.0 / ((m + 1.0) * (m + 2.0));
        c[static_cast<std::size_t>(m)] = ff * delta_m * pw;
        pw *= std::conj(w);
    }
    return truncated_series(std::move(c));
}

}  // namespace bergman_ops

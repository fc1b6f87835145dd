#include "bergman_ops/families.hpp"

#include <cmath>
#include <stdexcept>

#include "bergman_ops/errors.hpp"

namespace bergman_ops {

namespace {

double delta_weight(int k) { return 2.0 / ((k + 1.0) * (k + 2.0)); }

// psi = a z^n (1 - q z)^{-(n+alpha+2)}, phi = b + c z (1 - q z)^{-1},
// both on the full window.
symbol_pair thm21_symbols(cplx a, cplx b, cplx c, cplx q, int order_n, double alpha,
                          int trunc_order) {
    const truncated_series psi_base =
        rational_expand(q, order_n + alpha + 2.0, trunc_order - order_n);
    std::vector<cplx> psi_coeffs(static_cast<std::size_t>(trunc_order) + 1);
    for (int m = order_n; m <= trunc_order; ++m) {
        psi_coeffs[static_cast<std::size_t>(m)] = a * psi_base.coeff(m - order_n);
    }

    const truncated_series geo = rational_expand(q, 1.0, trunc_order - 1);
    std::vector<cplx> phi_coeffs(static_cast<std::size_t>(trunc_order) + 1);
    phi_coeffs[0] = b;
    for (int m = 1; m <= trunc_order; ++m) {
        phi_coeffs[static_cast<std::size_t>(m)] = c * geo.coeff(m - 1);
    }

    return make_symbol_pair(truncated_series(std::move(psi_coeffs)),
                            truncated_series(std::move(phi_coeffs)), order_n);
}

void require_window(int order_n, int trunc_order) {
    if (trunc_order <= order_n) {
        throw invalid_order("family: truncation order must exceed the derivative order");
    }
}

void require_admissible(cplx b, cplx c) {
    const double babs = std::abs(b);
    if (babs >= 1.0) {
        throw inadmissible("family: |b| must be < 1");
    }
    if (babs + std::abs(c) / (1.0 - babs) >= 1.0) {
        throw inadmissible("family: self-map bound |b| + |c|/(1-|b|) >= 1");
    }
}

}  // namespace

symbol_pair bergman_cs_family(const bergman_family_params& params, int trunc_order) {
    require_window(params.order_n, trunc_order);
    require_admissible(params.b, params.c);
    return thm21_symbols(params.a, params.b, params.c, params.conj.eta * params.b, params.order_n,
                         params.alpha, trunc_order);
}

symbol_pair hermitian_family(double a, cplx b, double c, int order_n, double alpha,
                             int trunc_order) {
    require_window(order_n, trunc_order);
    require_admissible(b, c);
    return thm21_symbols(a, b, c, std::conj(b), order_n, alpha, trunc_order);
}

truncated_series automorphism_series(const automorphism_form& form, int trunc_order) {
    if (const auto* rot = std::get_if<rotation_form>(&form)) {
        if (std::abs(std::abs(rot->xi) - 1.0) > 1e-14) {
            throw std::invalid_argument("automorphism_series: |xi| must be 1");
        }
        std::vector<cplx> c(static_cast<std::size_t>(trunc_order) + 1);
        if (trunc_order >= 1) {
            c[1] = -rot->xi;
        }
        return truncated_series(std::move(c));
    }
    const auto& disc = std::get<disc_form>(form);
    const double a0_abs = std::abs(disc.a0);
    if (a0_abs <= 0.0 || a0_abs >= 1.0) {
        throw std::invalid_argument("automorphism_series: a0 must lie in the punctured disk");
    }
    if (std::abs(std::abs(disc.eta) - 1.0) > 1e-14) {
        throw std::invalid_argument("automorphism_series: |eta| must be 1");
    }
    const cplx prefactor = std::conj(disc.a0) / (disc.eta * disc.a0);
    // (a0 - z) * sum_m conj(a0)^m z^m
    const truncated_series geo = rational_expand(std::conj(disc.a0), 1.0, trunc_order);
    std::vector<cplx> numer(static_cast<std::size_t>(trunc_order) + 1);
    numer[0] = disc.a0;
    if (trunc_order >= 1) {
        numer[1] = -1.0;
    }
    return scale(multiply(truncated_series(std::move(numer)), geo, trunc_order), prefactor);
}

disc_consistency bergman_disc_consistency(cplx a0, cplx eta) {
    const double a0_abs = std::abs(a0);
    if (a0_abs <= 0.0 || a0_abs >= 1.0) {
        throw std::invalid_argument("bergman_disc_consistency: a0 must lie in the punctured disk");
    }
    if (std::abs(std::abs(eta) - 1.0) > 1e-14) {
        throw std::invalid_argument("bergman_disc_consistency: |eta| must be 1");
    }
    const cplx xi = std::conj(a0) / (eta * a0);
    const cplx b = xi * a0;
    const cplx c = xi * xi * eta * a0 * (std::norm(a0) - 1.0) / std::conj(a0);
    return disc_consistency{b, c, xi};
}

symbol_pair disc_automorphism_family(cplx a0, cplx eta, cplx amplitude, int order_n, double alpha,
                                     int trunc_order) {
    require_window(order_n, trunc_order);
    const disc_consistency dc = bergman_disc_consistency(a0, eta);
    return thm21_symbols(amplitude, dc.b, dc.c, eta * dc.b, order_n, alpha, trunc_order);
}

std::pair<truncated_series, truncated_series> s21_F_series(int order_n, cplx b, cplx eta,
                                                           int trunc_order) {
    if (order_n < 1) {
        throw invalid_order("s21_F_series: order must be >= 1");
    }
    if (std::abs(b) >= 1.0) {
        throw inadmissible("s21_F_series: |b| must be < 1");
    }
    std::vector<cplx> f1(static_cast<std::size_t>(trunc_order) + 1);
    std::vector<cplx> f2(static_cast<std::size_t>(trunc_order) + 1);
    const cplx q = eta * b;

    double fall1 = 1.0;  // k!/(k-n)! at k = n
    for (int i = 1; i <= order_n; ++i) {
        fall1 *= i;
    }
    cplx pw1 = 1.0;  // (eta b)^{k-n}
    for (int k = order_n; k <= trunc_order; ++k) {
        if (k > order_n) {
            fall1 *= static_cast<double>(k) / (k - order_n);
            pw1 *= q;
        }
        f1[static_cast<std::size_t>(k)] = fall1 * delta_weight(k) * pw1;
    }

    double fall2 = 1.0;  // k!/(k-n-1)! at k = n+1
    for (int i = 1; i <= order_n + 1; ++i) {
        fall2 *= i;
    }
    cplx pw2 = 1.0;  // (eta b)^{k-n-1}
    for (int k = order_n + 1; k <= trunc_order; ++k) {
        if (k > order_n + 1) {
            fall2 *= static_cast<double>(k) / (k - order_n - 1);
            pw2 *= q;
        }
        f2[static_cast<std::size_t>(k)] = fall2 * delta_weight(k) * pw2;
    }

    return {truncated_series(std::move(f1)), truncated_series(std::move(f2))};
}

s21_family_result s21_family(const s21_family_params& params, int trunc_order) {
    const int n = params.order_n;
    require_window(n, trunc_order);
    if (std::abs(params.b) >= 1.0) {
        throw inadmissible("s21_family: |b| must be < 1");
    }

    // Reduced quotient: with G_i = (n+i)!/i! delta_{n+i} and
    // H_i = (n+1+i)!/i! delta_{n+1+i}, F2/F1 = z (H/G)((eta b) z) after the
    // common z^n and the (eta b) powers are factored out. Dividing the real
    // sequences H, G keeps the d_j real and defined even at b = 0.
    const int qlen = trunc_order;  // d_1..d_{trunc_order}
    std::vector<double> g(static_cast<std::size_t>(qlen));
    std::vector<double> h(static_cast<std::size_t>(qlen));
    for (int i = 0; i < qlen; ++i) {
        double gi = delta_weight(n + i);
        double hi = delta_weight(n + 1 + i);
        for (int j = 1; j <= n; ++j) {
            gi *= i + j;
            hi *= i + 1 + j;
        }
        hi *= i + 1;
        g[static_cast<std::size_t>(i)] = gi;  // (n+i)!/i! delta_{n+i}
        h[static_cast<std::size_t>(i)] = hi;  // (n+1+i)!/i! delta_{n+1+i}
    }
    std::vector<double> quot(static_cast<std::size_t>(qlen));
    quot[0] = h[0] / g[0];
    for (int m = 1; m < qlen; ++m) {
        double acc = h[static_cast<std::size_t>(m)];
        for (int i = 1; i <= m; ++i) {
            acc -= g[static_cast<std::size_t>(i)] * quot[static_cast<std::size_t>(m - i)];
        }
        quot[static_cast<std::size_t>(m)] = acc / g[0];
    }
    // (n+3)/(n+1)^2 equals G_0/H_0, so d_j = quot_j / quot_0 and d_1 = 1 exactly.
    std::vector<double> d(static_cast<std::size_t>(qlen));
    for (int j = 0; j < qlen; ++j) {
        d[static_cast<std::size_t>(j)] = quot[static_cast<std::size_t>(j)] / quot[0];
    }

    const auto [f1, f2] = s21_F_series(n, params.b, params.conj.eta, trunc_order);
    double n_fact_delta = delta_weight(n);
    for (int i = 1; i <= n; ++i) {
        n_fact_delta *= i;
    }
    const truncated_series psi = scale(f1, params.a / n_fact_delta);

    const cplx q = params.conj.eta * params.b;
    std::vector<cplx> phi_coeffs(static_cast<std::size_t>(trunc_order) + 1);
    phi_coeffs[0] = params.b;
    cplx qpow = 1.0;  // (eta b)^{j-1}
    for (int j = 1; j <= trunc_order; ++j) {
        phi_coeffs[static_cast<std::size_t>(j)] =
            params.c * d[static_cast<std::size_t>(j - 1)] * qpow;
        qpow *= q;
    }

    return s21_family_result{
        make_symbol_pair(psi, truncated_series(std::move(phi_coeffs)), n), std::move(d)};
}

}  // namespace bergman_ops

#include <doctest.h>

#include <cmath>

#include "bergman_ops/errors.hpp"
#include "bergman_ops/spaces.hpp"
#include "test_support.hpp"

using namespace bergman_ops;
using test_support::make_rng;
using test_support::random_cplx;
using test_support::random_series;

namespace {

// Derivative-evaluation oracle: differentiate the coefficient list directly
// and evaluate by Horner.
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

}  // namespace

TEST_CASE("weight profile values") {
    const weight_profile bergman0(space_spec::bergman(0.0));
    // 3! Gamma(2)/Gamma(5) = 6/24
    CHECK(bergman0.monomial_norm_sq(3) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(bergman0.normalizer(3) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(bergman0.normalizer(0) == 1.0);

    const weight_profile hardy(space_spec::derivative_hardy());
    // <z, z> = (1+1)(1+2)/2 = 3 = 1/delta_1
    CHECK(hardy.monomial_norm_sq(1) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(hardy.normalizer(1) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));

    CHECK_THROWS_AS(space_spec::bergman(-1.0), invalid_alpha);
    CHECK_THROWS_AS(space_spec::bergman(-1.5), invalid_alpha);
}

TEST_CASE("inner product basics") {
    const space_spec b0 = space_spec::bergman(0.0);
    CHECK(std::abs(inner_product(truncated_series({1.0}), truncated_series({1.0}), b0) - 1.0) ==
          0.0);
    CHECK(std::abs(inner_product(truncated_series({0.0, 1.0}), truncated_series({0.0, 1.0}), b0) -
                   0.5) <= 1e-16);
    const truncated_series z({0.0, 1.0});
    const truncated_series z2({0.0, 0.0, 1.0});
    CHECK(std::abs(inner_product(z, z2, b0)) == 0.0);
    CHECK(std::abs(inner_product(z, z2, space_spec::derivative_hardy())) == 0.0);

    // conjugate-linear in the second slot
    const truncated_series f({cplx{0.0, 1.0}});
    const truncated_series g({cplx{0.0, 1.0}});
    CHECK(std::abs(inner_product(f, g, b0) - 1.0) == 0.0);
}

TEST_CASE("Gram matrix of unit monomials is the identity") {
    const int count = 33;
    std::vector<space_spec> spaces = {space_spec::bergman(-0.5), space_spec::bergman(0.0),
                                      space_spec::bergman(1.0), space_spec::bergman(2.5),
                                      space_spec::derivative_hardy()};
    for (const space_spec& space : spaces) {
        const weight_profile profile(space);
        for (int m = 0; m < count; ++m) {
            for (int j = 0; j < count; ++j) {
                const truncated_series gm = truncated_series::monomial(m, profile.normalizer(m));
                const truncated_series gj = truncated_series::monomial(j, profile.normalizer(j));
                const cplx entry = inner_product(gm, gj, space);
                const double expected = m == j ? 1.0 : 0.0;
                CHECK(std::abs(entry - expected) <= 1e-13);
            }
        }
    }
}

TEST_CASE("kernel reproduces point evaluation") {
    auto rng = make_rng(21);
    std::vector<space_spec> spaces = {space_spec::bergman(0.0), space_spec::bergman(2.5),
                                      space_spec::derivative_hardy()};
    for (const space_spec& space : spaces) {
        for (int trial = 0; trial < 12; ++trial) {
            const truncated_series f = random_series(rng, 32, 1.0);
            const cplx w = random_cplx(rng, 0.9);
            const truncated_series kernel = kernel_coeffs(w, space, 32);
            const cplx got = inner_product(f, kernel, space);
            const cplx want = evaluate(f, w);
            CHECK(std::abs(got - want) <= 1e-12 * (1.0 + std::abs(want)));
        }
    }
    CHECK_THROWS_AS(kernel_coeffs(cplx{1.0, 0.0}, space_spec::bergman(0.0), 8),
                    point_outside_disk);
}

TEST_CASE("Bergman kernel agrees with the binomial expansion route") {
    // (m+1) 0.5^m for alpha = 0, w = 0.5
    const truncated_series k = kernel_coeffs(0.5, space_spec::bergman(0.0), 2);
    CHECK(std::abs(k.coeff(0) - 1.0) == 0.0);
    CHECK(std::abs(k.coeff(1) - 1.0) <= 1e-15);
    CHECK(std::abs(k.coeff(2) - 0.75) <= 1e-15);

    const truncated_series k0 = kernel_coeffs(cplx{}, space_spec::bergman(0.0), 5);
    CHECK(std::abs(k0.coeff(0) - 1.0) == 0.0);
    for (int m = 1; m <= 5; ++m) {
        CHECK(std::abs(k0.coeff(m)) == 0.0);
    }

    auto rng = make_rng(22);
    for (double alpha : {-0.5, 0.0, 1.0, 2.5}) {
        const space_spec space = space_spec::bergman(alpha);
        for (int trial = 0; trial < 6; ++trial) {
            const cplx w = random_cplx(rng, 0.9);
            const truncated_series direct = kernel_coeffs(w, space, 40);
            const truncated_series expanded = rational_expand(std::conj(w), alpha + 2.0, 40);
            for (int m = 0; m <= 40; ++m) {
                CHECK(std::abs(direct.coeff(m) - expanded.coeff(m)) <=
                      1e-13 * (1.0 + std::abs(expanded.coeff(m))));
            }
        }
    }
}

TEST_CASE("derivative kernel reproduces derivative evaluation") {
    auto rng = make_rng(23);
    std::vector<space_spec> spaces = {space_spec::bergman(0.0), space_spec::bergman(-0.5),
                                      space_spec::bergman(2.5), space_spec::derivative_hardy()};
    for (const space_spec& space : spaces) {
        for (int n = 1; n <= 3; ++n) {
            for (int trial = 0; trial < 6; ++trial) {
                const truncated_series f = random_series(rng, 24, 1.0);
                const cplx w = random_cplx(rng, 0.8);
                const truncated_series kernel = derivative_kernel_coeffs(n, w, space, 24);
                const cplx got = inner_product(f, kernel, space);
                const cplx want = derivative_value_oracle(f, n, w);
                CHECK(std::abs(got - want) <= 1e-10 * (1.0 + std::abs(want)));
            }
        }
    }
}

TEST_CASE("derivative kernel closed forms") {
    // Bergman alpha = 0, n = 1, w = 0: p = 2, series 2z
    const truncated_series k = derivative_kernel_coeffs(1, cplx{}, space_spec::bergman(0.0), 3);
    CHECK(std::abs(k.coeff(0)) == 0.0);
    CHECK(std::abs(k.coeff(1) - 2.0) == 0.0);
    CHECK(std::abs(k.coeff(2)) == 0.0);
    CHECK(std::abs(k.coeff(3)) == 0.0);

    // f = z^3 in Bergman(0): <f, K^[2]_0.5> = f''(0.5) = 3
    const truncated_series f({0.0, 0.0, 0.0, 1.0});
    const cplx got = inner_product(
        f, derivative_kernel_coeffs(2, 0.5, space_spec::bergman(0.0), 3), space_spec::bergman(0.0));
    CHECK(std::abs(got - 3.0) <= 1e-13);

    // Derivative Hardy, n = 1, w = 0: only position 1 alive, value delta_1.
    const truncated_series kh =
        derivative_kernel_coeffs(1, cplx{}, space_spec::derivative_hardy(), 4);
    CHECK(std::abs(kh.coeff(1) - 1.0 / 3.0) <= 1e-16);
    for (int m = 2; m <= 4; ++m) {
        CHECK(std::abs(kh.coeff(m)) == 0.0);
    }
    // The reproducing contract pins that coefficient: <f, K> = f'(0).
    const truncated_series lin({0.0, cplx{2.0, -1.0}});
    CHECK(std::abs(inner_product(lin, kh, space_spec::derivative_hardy()) - cplx{2.0, -1.0}) <=
          1e-15);

    CHECK_THROWS_AS(derivative_kernel_coeffs(0, 0.5, space_spec::bergman(0.0), 8), invalid_order);
    CHECK_THROWS_AS(derivative_kernel_coeffs(1, cplx{0.0, 1.0}, space_spec::bergman(0.0), 8),
                    point_outside_disk);
}

TEST_CASE("S21 inner product agrees with the three-term decomposition") {
    // |f|^2 = |f|_H2^2 + 3/2 |f'|_A2^2 + 1/2 |f'|_H2^2, checked once as a
    // cross-validation of the weight sequence.
    auto rng = make_rng(24);
    for (int trial = 0; trial < 8; ++trial) {
        const truncated_series f = random_series(rng, 16, 1.0);
        double direct = 0.0;
        const weight_profile hardy(space_spec::derivative_hardy());
        for (int m = 0; m <= 16; ++m) {
            direct += std::norm(f.coeff(m)) * hardy.monomial_norm_sq(m);
        }
        double h2 = 0.0;
        for (int m = 0; m <= 16; ++m) {
            h2 += std::norm(f.coeff(m));
        }
        const truncated_series fp = derivative(f, 1);
        double fp_h2 = 0.0;
        double fp_a2 = 0.0;
        const weight_profile bergman0(space_spec::bergman(0.0));
        for (int m = 0; m <= fp.trunc_order(); ++m) {
            fp_h2 += std::norm(fp.coeff(m));
            fp_a2 += std::norm(fp.coeff(m)) * bergman0.monomial_norm_sq(m);
        }
        const double decomposed = h2 + 1.5 * fp_a2 + 0.5 * fp_h2;
        CHECK(std::abs(direct - decomposed) <= 1e-12 * (1.0 + direct));
    }
}

#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "bergman_ops/operators.hpp"

namespace bergman_ops {

/// Parameters of the Bergman complex-symmetric family
///   psi(z) = a z^n / (1 - eta b z)^{n+alpha+2},
///   phi(z) = b + c z / (1 - eta b z),
/// admissible when |b| + |c|/(1-|b|) < 1.
struct bergman_family_params {
    cplx a;
    cplx b;
    cplx c;
    int order_n;
    double alpha;
    conjugation_spec conj;
};

symbol_pair bergman_cs_family(const bergman_family_params& params, int trunc_order);

/// The Hermitian family of the same shape with conj(b) in the denominators and
/// real a, c. Structurally identical to bergman_cs_family with eta b replaced
/// by conj(b).
symbol_pair hermitian_family(double a, cplx b, double c, int order_n, double alpha,
                             int trunc_order);

/// Disk automorphism shapes admitted by the symmetric automorphism case:
/// a rotation phi(z) = -xi z, or the Moebius form
/// phi(z) = conj(a0)/(eta a0) * (a0 - z)/(1 - conj(a0) z) with 0 < |a0| < 1.
struct rotation_form {
    cplx xi;
};
struct disc_form {
    cplx a0;
    cplx eta;
};
using automorphism_form = std::variant<rotation_form, disc_form>;

truncated_series automorphism_series(const automorphism_form& form, int trunc_order);

/// The (b, c, xi) values that express the disc automorphism in the
/// b + c z/(1 - eta b z) shape: xi = conj(a0)/(eta a0), b = xi a0,
/// c = xi^2 eta a0 (|a0|^2 - 1)/conj(a0).
struct disc_consistency {
    cplx b;
    cplx c;
    cplx xi;
};

disc_consistency bergman_disc_consistency(cplx a0, cplx eta);

/// Family symbols for the automorphism case: the rational psi/phi shape of
/// bergman_cs_family with (b, c) from bergman_disc_consistency. phi is an
/// exact self-map (an automorphism), so no sufficient-bound gate applies; the
/// compression stays window-exact.
symbol_pair disc_automorphism_family(cplx a0, cplx eta, cplx amplitude, int order_n, double alpha,
                                     int trunc_order);

/// The S^2_1 family kernel sums
///   F1(z) = sum_{k>=n}   (k!/(k-n)!)   delta_k (eta b)^{k-n}   z^k,
///   F2(z) = sum_{k>=n+1} (k!/(k-n-1)!) delta_k (eta b)^{k-n-1} z^k,
/// with delta_k = 2/((k+1)(k+2)). Factorial ratios advance multiplicatively.
std::pair<truncated_series, truncated_series> s21_F_series(int order_n, cplx b, cplx eta,
                                                           int trunc_order);

struct s21_family_params {
    cplx a;
    cplx b;
    cplx c;
    int order_n;
    conjugation_spec conj;
};

/// psi = (a/(n! delta_n)) F1 and phi = b + c (n+3)/(n+1)^2 * F2/F1, together
/// with the quotient expansion phi = b + c sum_j d_j (eta b)^{j-1} z^j. The
/// d_j come from dividing the (eta b)-reduced F series, so they are real,
/// independent of b and eta, and d_1 = 1 exactly.
struct s21_family_result {
    symbol_pair sym;
    std::vector<double> d;  // d[j-1] = d_j
};

s21_family_result s21_family(const s21_family_params& params, int trunc_order);

}  // namespace bergman_ops

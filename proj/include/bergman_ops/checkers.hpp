#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bergman_ops/families.hpp"

namespace bergman_ops {

struct witness_index {
    int j;
    int k;
};

struct witness_point {
    cplx z;
    cplx w;
};

using check_witness = std::variant<witness_index, witness_point>;

using echo_value = std::variant<std::int64_t, double, cplx, std::string>;

struct echo_entry {
    std::string key;
    echo_value value;
};

using params_echo = std::vector<echo_entry>;

/// Verdict of one identity check. pass holds iff max_residual <= tolerance;
/// the witness locates the maximal residual and is set on failure.
struct check_report {
    std::string check_id;
    bool pass = false;
    double max_residual = 0.0;
    double tolerance = 0.0;
    std::optional<check_witness> witness;
    int trunc_order = 0;
    params_echo params;
    std::string notes;
};

/// Residual of T = C T* C, entrywise and normalized by (1 + max|T|). The
/// entrywise-reduced and basis-vector computations of C T* C must agree on the
/// residual to 1e-12; otherwise path_disagreement is thrown.
check_report check_complex_symmetric(const operator_matrix& matrix, const conjugation_spec& conj,
                                     double tolerance);

/// Residual of T = T*, normalized by (1 + max|T|).
check_report check_hermitian(const operator_matrix& matrix, double tolerance);

/// Residual of T*T = TT*, normalized by (1 + max|T|^2). The compression
/// commutator equals the operator commutator only for diagonal matrices; the
/// report notes when the compression-approximation caveat applies.
check_report check_normal(const operator_matrix& matrix, double tolerance);

/// Residual of D* K_w = conj(psi(w)) K^[n]_{phi(w)} through the matrix
/// compression, measured in the space norm relative to (1 + |rhs|). Tail
/// dominated; requires |w| <= 0.7 and |phi(w)| <= 0.7.
check_report check_kernel_adjoint_identity(const symbol_pair& sym, const space_spec& space,
                                           cplx w, int trunc_order, double tolerance);

/// Matrix-free path: the two-variable kernel identity evaluated at sample
/// pairs. Bergman sides in closed form; derivative-Hardy sides as truncated
/// sums at the given order with the tail bound recorded. Samples must satisfy
/// |z|, |w| <= 0.7.
check_report kernel_symmetry_residual(const symbol_pair& sym, const space_spec& space,
                                      const conjugation_spec& conj,
                                      std::span<const std::pair<cplx, cplx>> samples,
                                      int trunc_order, double tolerance);

/// The two sides of the z^{n+2} w^{n+1} coefficient relation that obstructs
/// symmetry of the S^2_1 family, in factorial/delta form with d_1 = 1.
struct s21_obstruction_sides {
    cplx lhs;
    cplx rhs;
};

s21_obstruction_sides s21_obstruction_relation_sides(int order_n, cplx b, cplx c, cplx eta, double d2);

/// Builds the S^2_1 family operator and runs the complex-symmetry check;
/// symmetric outcomes are expected exactly when b = 0 or c = 0. The report
/// also carries the obstruction-relation sides and their difference.
check_report check_s21_obstruction(const s21_family_params& params, int trunc_order,
                                   double tolerance);

/// Complex-symmetry residual after perturbing psi by eps * z^{n+1}. For
/// admissible Bergman families with |b| <= 0.5 the residual stays above the
/// calibrated floor eps/20.
check_report falsify_perturbation(const symbol_pair& sym, const space_spec& space,
                                  const conjugation_spec& conj, double eps, int trunc_order,
                                  double tolerance);

}  // namespace bergman_ops

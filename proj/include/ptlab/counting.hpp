#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptlab/parallel.hpp"
#include "ptlab/symmetry.hpp"

namespace ptlab {

enum class CountKind {
    RealSymmetric,
    Hermitian,
    PtSymmetric,
    PseudoHermitian,
    SelfAdjointOrGenPt,
};

std::string_view to_string(CountKind k);
CountKind count_kind_from_string(std::string_view name);

/// Real dimension of the matrices of the given kind at a fixed operator of signature (m, n).
/// RealSymmetric and Hermitian use N = m + n. SelfAdjointOrGenPt is not a linear family.
Index count_matrix_family(CountKind kind, Index m, Index n, const ToleranceConfig& tol = {});

/// Dimension of the orbit of the fixed operator: the full group minus its stabilizer.
/// Zero for RealSymmetric and Hermitian.
Index count_operator_orbit(CountKind kind, Index m, Index n, const ToleranceConfig& tol = {});

/// Coefficients c_0..c_{N-1} of det(z - H) = z^N + c_{N-1} z^{N-1} + ... + c_0.
ComplexVector characteristic_coefficients(const ComplexMatrix& h);

struct VarietyCount {
    Index dimension = 0;
    /// Rank of the derivative of H -> Im(coefficients).
    Index rank = 0;
    int attempts = 0;
    /// False when every attempted base point gave a rank-deficient derivative.
    bool determinate = false;
};

/// 2N^2 minus the derivative rank at `base_point`. Falls back to seeded random
/// self-adjoint base points (up to 8 attempts in total) when the rank is deficient.
VarietyCount count_real_charpoly_variety(Index n, const ComplexMatrix& base_point,
                                         const ToleranceConfig& tol = {}, std::uint64_t seed = 42);

/// Same with a seeded random self-adjoint base point.
VarietyCount count_real_charpoly_variety(Index n, const ToleranceConfig& tol = {},
                                         std::uint64_t seed = 42);

/// Random H = self-adjoint for a random diagonal metric (real spectrum, generically simple).
ComplexMatrix random_self_adjoint(Index n, std::uint64_t seed);

Index expected_count(CountKind kind, Index m, Index n);

struct CountReport {
    CountKind kind = CountKind::RealSymmetric;
    Index m = 0;
    Index n = 0;
    Index matrix_dim = 0;
    Index orbit_dim = 0;
    Index total = 0;
    Index expected = 0;
    bool match = false;
};

/// Every kind for every N <= max_dim, and every partition m >= n >= 0 of N for the
/// PT and pseudo rows. Dimension-only kinds report (m, n) = (N, 0).
std::vector<CountReport> table1_report(Index max_dim, const ToleranceConfig& tol = {},
                                       std::uint64_t seed = 42,
                                       Execution exec = Execution::Parallel);

/// One column of the table: the largest total per kind at dimension N.
struct Table1Column {
    Index n = 0;
    Index real_symmetric = 0;
    Index hermitian = 0;
    Index pt_or_pseudo = 0;
    Index self_adjoint = 0;
    /// PT and pseudo maxima agree.
    bool pt_pseudo_agree = false;
};

std::vector<Table1Column> table1_columns(const std::vector<CountReport>& reports);

/// Columns: kind, m, n, matrix_dim, orbit_dim, total, expected, match.
std::string to_csv(const std::vector<CountReport>& reports);

}  // namespace ptlab

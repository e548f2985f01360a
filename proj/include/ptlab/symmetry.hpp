#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ptlab/involutions.hpp"

namespace ptlab {

enum class SymmetryKind {
    PT,      ///< P H = H* P with P a real involution
    Pseudo,  ///< P~ H = H^dagger P~ with P~ a Hermitian involution
    GenPT,   ///< Pbar H* = H Pbar with Pbar Pbar* = 1
};

std::string_view to_string(SymmetryKind kind);
SymmetryKind symmetry_kind_from_string(std::string_view name);
OperatorKind required_operator_kind(SymmetryKind kind);

struct SymmetryReport {
    SymmetryKind kind = SymmetryKind::PT;
    bool holds = false;
    /// Frobenius norm of lhs - rhs of the intertwining identity.
    double residual = 0.0;
    /// residual / ||H|| (residual itself when H = 0).
    double relative_residual = 0.0;
    double threshold = 0.0;
};

/// Throws ContractError when `op` does not verify as the operator kind `kind` needs.
SymmetryReport check_symmetry(SymmetryKind kind, const ComplexMatrix& op, const ComplexMatrix& h,
                              const ToleranceConfig& tol = {});
SymmetryReport check_symmetry(SymmetryKind kind, const InvolutionOperator& op,
                              const ComplexMatrix& h, const ToleranceConfig& tol = {});

struct PtBlockParams {
    Index m = 0;
    Index n = 0;
    RealMatrix a;  ///< m x m
    RealMatrix b;  ///< m x n
    RealMatrix c;  ///< n x m
    RealMatrix d;  ///< n x n
};

struct PseudoBlockParams {
    Index m = 0;
    Index n = 0;
    ComplexMatrix a;  ///< m x m Hermitian
    ComplexMatrix b;  ///< m x n arbitrary
    ComplexMatrix d;  ///< n x n Hermitian
};

/// Entries a(i, j) with i + j <= n - 1 (0-based) and b(i, j) with i + j < n - 1 are used;
/// the lower-right triangle is fixed by S_n-pseudo-Hermiticity.
struct RotatedHermitianParams {
    Index n = 0;
    RealMatrix a;
    RealMatrix b;
};

struct DiagPhaseGenPtParams {
    RealVector phases;  ///< alpha_k, radians
    RealMatrix r;       ///< real moduli r_ij
};

/// Upper triangle of `a` (including the diagonal) and strict upper triangle of `b` are used.
struct DiagMetricSelfAdjointParams {
    RealVector omegas;
    RealMatrix a;
    RealMatrix b;
};

/// [[A, iB], [iC, D]]; PT-symmetric for P0(m, n).
ComplexMatrix construct_pt_block(const PtBlockParams& p);
/// [[A, iB], [iB^dagger, D]]; pseudo-Hermitian for P~0(m, n).
ComplexMatrix construct_pseudo_block(const PseudoBlockParams& p, const ToleranceConfig& tol = {});
/// S_n-pseudo-Hermitian "rotated Hermitian" matrix.
ComplexMatrix construct_rotated_hermitian(const RotatedHermitianParams& p);
/// Entry (i, j) = r_ij exp(i (alpha_i - alpha_j) / 2); symmetric under Diag{exp(i alpha_k)} T.
ComplexMatrix construct_gen_pt_diag(const DiagPhaseGenPtParams& p);
ComplexMatrix gen_pt_diag_operator(const RealVector& phases);
/// Self-adjoint with respect to W_D = Diag{omega_k}.
ComplexMatrix construct_self_adjoint_from_diag_metric(const DiagMetricSelfAdjointParams& p);

enum class GenPtStatus {
    Found,
    NotClosed,      ///< spectrum not closed under complex conjugation
    Indeterminate,  ///< defective or tolerance-ambiguous; no verdict
};

std::string_view to_string(GenPtStatus status);

struct GenPtSearch {
    GenPtStatus status = GenPtStatus::Indeterminate;
    std::optional<InvolutionOperator> op;
    /// Lambda with H = Lambda H0 Lambda^-1 and H0 real (when found).
    ComplexMatrix realifier;
    double residual = 0.0;
    std::string reason;
};

/// Looks for Pbar = Lambda (Lambda^-1)* where Lambda realifies H.
GenPtSearch find_gen_pt_operator(const ComplexMatrix& h, const ToleranceConfig& tol = {});

/// Pbar for a matrix whose realifier is known exactly, H = Lambda H0 Lambda^-1 with H0 real.
InvolutionOperator gen_pt_operator_from_realifier(const ComplexMatrix& lambda,
                                                  const ToleranceConfig& tol = {});

}  // namespace ptlab

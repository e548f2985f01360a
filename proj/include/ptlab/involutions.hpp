#pragma once

#include <optional>
#include <string_view>

#include "ptlab/numerics.hpp"

namespace ptlab {

enum class OperatorKind {
    RealInvolution,       ///< P = P*, P^2 = 1 (parity of PT symmetry)
    HermitianInvolution,  ///< P = P^dagger, P^2 = 1 (indefinite metric of pseudo-Hermiticity)
    AntilinearCore,       ///< P P* = 1 (linear part of a generalized PT operator)
};

std::string_view to_string(OperatorKind kind);
OperatorKind operator_kind_from_string(std::string_view name);

/// Counts of +1 and -1 eigenvalues of an involutory operator.
struct Signature {
    Index plus = 0;
    Index minus = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};

struct InvolutionCheck {
    bool ok = false;
    /// ||O^2 - 1|| for involutions, ||O O* - 1|| for antilinear cores.
    double product_residual = 0.0;
    /// ||O - O*|| (real) or ||O - O^dagger|| (Hermitian); 0 for antilinear cores.
    double structure_residual = 0.0;
    /// |trace - (plus - minus)|; 0 for antilinear cores.
    double trace_residual = 0.0;
    std::optional<Signature> signature;
};

/// A symmetry operator together with the identities it has been checked against.
/// Instances only come out of the factories below, which verify the kind.
class InvolutionOperator {
public:
    OperatorKind kind() const { return kind_; }
    const ComplexMatrix& matrix() const { return matrix_; }
    Index dimension() const { return matrix_.rows(); }
    /// Set for RealInvolution and HermitianInvolution.
    const std::optional<Signature>& signature() const { return signature_; }

    /// Verifies `matrix` as `kind`; throws ContractError if it fails.
    static InvolutionOperator make(OperatorKind kind, ComplexMatrix matrix,
                                   const ToleranceConfig& tol = {});

    /// Same matrix checked against a different kind (e.g. a diagonal parity used as P~0).
    InvolutionOperator as(OperatorKind kind, const ToleranceConfig& tol = {}) const;

private:
    InvolutionOperator(OperatorKind kind, ComplexMatrix matrix, std::optional<Signature> sig)
        : kind_(kind), matrix_(std::move(matrix)), signature_(sig) {}

    OperatorKind kind_;
    ComplexMatrix matrix_;
    std::optional<Signature> signature_;
};

/// Diag{1 (m times), -1 (n times)}, tagged as a real involution.
InvolutionOperator make_diagonal_parity(Index m, Index n);
ComplexMatrix diagonal_parity_matrix(Index m, Index n);

/// Standard involutory permutation: units on the skew diagonal.
InvolutionOperator make_sip(Index n);
ComplexMatrix sip_matrix(Index n);

InvolutionCheck verify_involution(const ComplexMatrix& o, OperatorKind kind,
                                  const ToleranceConfig& tol = {});

/// T O T^-1 for the involutory kinds (T real, respectively unitary) and
/// T O (T^-1)* for antilinear cores (T any invertible matrix).
InvolutionOperator transport(const InvolutionOperator& o, const ComplexMatrix& t,
                             const ToleranceConfig& tol = {});

struct GrassmannCosetSpec {
    Index m = 0;
    Index n = 0;
    ComplexMatrix b;  ///< m x n
    double x = 0.0;
};

/// Anti-Hermitian generator a = [[0, b], [-b^dagger, 0]].
ComplexMatrix grassmann_generator(const GrassmannCosetSpec& spec);

/// U = exp(a x) evaluated through the closed block form with cos/sin of sqrt(b b^dagger),
/// sqrt(b^dagger b). Zero singular directions use sin(0 x)/0 = x.
ComplexMatrix grassmann_coset_element(const GrassmannCosetSpec& spec);

struct SipSimilarity {
    ComplexMatrix q;
    ComplexMatrix q_inverse;
    /// The diagonal parity that q maps onto S_n: P~0(k, k) or P~0(k + 1, k).
    ComplexMatrix parity;
};

/// q with q P~0 q^-1 = S_n, using the even or odd block form by parity of n.
SipSimilarity sip_similarity(Index n_total);

}  // namespace ptlab

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ptlab/symmetry.hpp"

namespace ptlab {

enum class TransposeMethod { JordanRecipe, NullspaceSearch };

std::string_view to_string(TransposeMethod m);

/// A with A B A^-1 = B^T.
struct TransposeWitness {
    ComplexMatrix a;
    TransposeMethod method = TransposeMethod::NullspaceSearch;
    /// ||A B A^-1 - B^T|| (Frobenius).
    double residual = 0.0;
    double inverse_condition = 0.0;
};

/// Invertible element of {A : A B = B^T A}, picked among seeded random combinations of a
/// nullspace basis. Throws NumericalError if the budget runs out (not expected).
TransposeWitness transpose_matrix(const ComplexMatrix& b, const ToleranceConfig& tol = {},
                                  std::uint64_t seed = 42);

/// A = F^T (S_{k1} + S_{k2} + ...) F for B = F^-1 (J_{k1} + J_{k2} + ...) F.
TransposeWitness transpose_from_jordan_recipe(const ComplexMatrix& b, const ComplexMatrix& f,
                                              const std::vector<Index>& block_sizes);

enum class ConversionDirection { PtToPseudo, PseudoToPt, GenPtToPseudo };

std::string_view to_string(ConversionDirection d);
ConversionDirection conversion_direction_from_string(std::string_view name);

struct ConversionResiduals {
    /// ||Q - Q^dagger|| for pseudo targets, ||Q - Q*|| for the PT target.
    double structure = 0.0;
    /// ||Q^2 - 1||.
    double involution = 0.0;
    /// ||Q H - H^dagger Q||, ||Q H - H* Q||, or ||Q H^dagger - H Q||.
    double intertwining = 0.0;
};

struct ConversionResult {
    ConversionDirection direction = ConversionDirection::PtToPseudo;
    ComplexMatrix q;
    /// Transposing matrix that produced Q.
    ComplexMatrix a;
    bool hermitian = false;
    bool real = false;
    bool involutory = false;
    /// Q verifies as the target operator kind and the target symmetry holds.
    bool target_kind_satisfied = false;
    /// H is defective, or the searched family is nonzero but holds no involution.
    /// In both cases the closed-form normalization of Q is singular.
    bool degenerate = false;
    Index family_dimension = 0;
    ConversionResiduals residuals;
    /// ||A H - H^T A||, plus ||A A* - 1|| for the generalized-PT direction.
    double witness_residual = 0.0;
    std::string message;
};

/// Q = A* P Hermitian (and involutory when possible) over all A with A H = H^T A.
/// Requires P H = H* P.
ConversionResult pt_to_pseudo(const ComplexMatrix& p, const ComplexMatrix& h,
                              const ToleranceConfig& tol = {}, std::uint64_t seed = 42);

/// Real involution Q = (A*)^-1 P~ over all A with A H = H^T A. Requires P~ H = H^dagger P~.
ConversionResult pseudo_to_pt(const ComplexMatrix& ptilde, const ComplexMatrix& h,
                              const ToleranceConfig& tol = {}, std::uint64_t seed = 42);

/// Q = Pbar A Hermitian with A A* = 1 and A H = H^T A. Requires Pbar H* = H Pbar.
ConversionResult gen_pt_to_pseudo(const ComplexMatrix& pbar, const ComplexMatrix& h,
                                  const ToleranceConfig& tol = {}, std::uint64_t seed = 42);

ConversionResult convert(ConversionDirection d, const ComplexMatrix& op, const ComplexMatrix& h,
                         const ToleranceConfig& tol = {}, std::uint64_t seed = 42);

}  // namespace ptlab

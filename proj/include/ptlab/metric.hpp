#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "ptlab/numerics.hpp"

namespace ptlab {

enum class PositivityStatus {
    Positive,       ///< positive representative found and certified
    None,           ///< spectrum not all real: no positive metric exists
    Indeterminate,  ///< smallest metric eigenvalue within the rank cutoff (near-defective)
};

std::string_view to_string(PositivityStatus status);

struct MetricSolution {
    /// Hermitian, unit Frobenius norm, orthonormal in the real inner product Re tr(A^dagger B).
    std::vector<ComplexMatrix> hermitian_basis;
    std::optional<ComplexMatrix> positive_representative;
    Index dimension = 0;
    PositivityStatus status = PositivityStatus::None;
    /// Smallest eigenvalue of the candidate dyadic metric (normalized to largest eigenvalue 1).
    double min_eigenvalue = 0.0;
};

/// Real basis of all Hermitian W with W H = H^dagger W, plus the biorthogonal positive
/// representative sum_k phi_k phi_k^dagger over eigenvectors phi_k of H^dagger when the
/// spectrum is real.
MetricSolution solve_metric_space(const ComplexMatrix& h, const ToleranceConfig& tol = {});

/// psi^dagger W phi.
Complex weighted_inner_product(const ComplexMatrix& w, const ComplexVector& psi,
                               const ComplexVector& phi, const ToleranceConfig& tol = {});

/// (T^-1)^dagger W0 T^-1: the metric of T H T^-1 given the metric W0 of H.
ComplexMatrix transform_metric(const ComplexMatrix& w0, const ComplexMatrix& t);

/// ||W H - H^dagger W|| / max(1, ||W|| ||H||).
double self_adjointness_residual(const ComplexMatrix& w, const ComplexMatrix& h);

/// Smallest eigenvalue of the Hermitian part, and whether it clears the rank cutoff
/// relative to the largest.
struct PositivityCheck {
    bool positive = false;
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
};
PositivityCheck check_positive_definite(const ComplexMatrix& w, const ToleranceConfig& tol = {});

}  // namespace ptlab

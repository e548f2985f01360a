#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ptlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes disagree, a matrix is not square, or a size parameter is out of range.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An input violates the documented precondition of an operation
/// (wrong operator kind, non-Hermitian block, nonpositive weight, ...).
class ContractError : public Error {
public:
    using Error::Error;
};

/// A numerical kernel failed: no convergence, singular transform, etc.
class NumericalError : public Error {
public:
    using Error::Error;
};

struct ToleranceConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    /// Multiplies sigma_max * machine epsilon to give the rank cutoff.
    double rank_tol_factor = 64.0;

    void validate() const;
};

struct EigenDecomposition {
    /// Sorted lexicographically by (real, imag).
    std::vector<Complex> values;
    /// Column k is a unit-norm right eigenvector for values[k].
    ComplexMatrix vectors;
};

struct RankNullspace {
    Index rank = 0;
    /// Orthonormal columns spanning the numerical nullspace.
    RealMatrix nullspace;
    RealVector singular_values;
    double threshold = 0.0;
};

void require_square(const ComplexMatrix& m, const char* what);
void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what);
void require_finite(const ComplexMatrix& m, const char* what);

double frobenius_norm(const ComplexMatrix& m);

/// Rank cutoff used everywhere a numerical rank is decided.
double rank_threshold(double sigma_max, const ToleranceConfig& tol);

EigenDecomposition eigen_decompose(const ComplexMatrix& m, const ToleranceConfig& tol = {});

/// Hermitian eigenproblem; eigenvalues ascending.
std::pair<RealVector, ComplexMatrix> hermitian_eigen(const ComplexMatrix& m);

/// Cutoff is max(rank_threshold(sigma_max), min_threshold).
RankNullspace rank_and_nullspace(const RealMatrix& l, const ToleranceConfig& tol = {},
                                 double min_threshold = 0.0);

/// exp(A) by scaling and squaring of a truncated Taylor series.
ComplexMatrix matrix_exponential(const ComplexMatrix& a);

/// Interleaved (Re, Im) per entry, row-major. Length 2 * rows * cols.
RealVector vectorize(const ComplexMatrix& m);
ComplexMatrix devectorize(const RealVector& v, Index rows, Index cols);

/// Matrix of a real-linear map X -> f(X) on rows x cols complex matrices,
/// expressed in the interleaved real vectorization on both sides.
RealMatrix linearize(const std::function<ComplexMatrix(const ComplexMatrix&)>& f, Index rows,
                     Index cols);

ComplexMatrix jordan_block(Index n, Complex lambda);

/// Inverse with an explicit singularity check (relative reciprocal condition).
ComplexMatrix checked_inverse(const ComplexMatrix& m, const char* what);

/// Smallest singular value over largest; 0 for a singular matrix.
double inverse_condition(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol);
bool is_real(const ComplexMatrix& m, double tol);

/// Overall sign fixed so the (0, 0) entry has nonnegative real part; when that is zero,
/// the first entry (row-major) with a nonzero real or imaginary part decides.
ComplexMatrix fix_sign(const ComplexMatrix& m, double zero_tol = 1e-14);

/// Shortest round-trip text for CSV output (17 significant digits).
std::string format_real(double x);

}  // namespace ptlab

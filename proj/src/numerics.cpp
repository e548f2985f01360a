#include "ptlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace ptlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string shape_of(const ComplexMatrix& m) {
    std::ostringstream os;
    os << m.rows() << "x" << m.cols();
    return os.str();
}

}  // namespace

void ToleranceConfig::validate() const {
    if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || !(rank_tol_factor >= 0.0)) {
        throw ContractError("tolerances must be nonnegative");
    }
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DimensionError(std::string(what) + ": expected a nonempty square matrix, got " +
                             shape_of(m));
    }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(what) + ": shape mismatch " + shape_of(a) + " vs " +
                             shape_of(b));
    }
}

void require_finite(const ComplexMatrix& m, const char* what) {
    for (Index i = 0; i < m.size(); ++i) {
        const Complex z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw ContractError(std::string(what) + ": non-finite entry");
        }
    }
}

double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

double rank_threshold(double sigma_max, const ToleranceConfig& tol) {
    return tol.rank_tol_factor * sigma_max * kEps;
}

EigenDecomposition eigen_decompose(const ComplexMatrix& m, const ToleranceConfig& tol) {
    require_square(m, "eigen_decompose");
    require_finite(m, "eigen_decompose");

    Eigen::ComplexEigenSolver<ComplexMatrix> solver;
    solver.compute(m, true);
    if (solver.info() != Eigen::Success) {
        std::ostringstream os;
        os << "eigen_decompose: QR iteration did not converge for a " << shape_of(m)
           << " matrix (limit " << solver.getMaxIterations() << " iterations per eigenvalue)";
        throw NumericalError(os.str());
    }

    const Index n = m.rows();
    std::vector<Index> order(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    const auto& vals = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        if (vals[a].real() != vals[b].real()) return vals[a].real() < vals[b].real();
        return vals[a].imag() < vals[b].imag();
    });

    EigenDecomposition out;
    out.values.reserve(static_cast<std::size_t>(n));
    out.vectors.resize(n, n);
    for (Index k = 0; k < n; ++k) {
        const Index src = order[static_cast<std::size_t>(k)];
        out.values.push_back(vals[src]);
        ComplexVector v = solver.eigenvectors().col(src);
        const double nv = v.norm();
        if (nv > 0.0) v /= nv;
        out.vectors.col(k) = v;
    }

    const double scale = std::max(frobenius_norm(m), 1.0);
    for (Index k = 0; k < n; ++k) {
        const double r = (m * out.vectors.col(k) - out.values[static_cast<std::size_t>(k)] *
                                                       out.vectors.col(k))
                             .norm();
        if (r > std::max(tol.rel_tol, 1e-12) * scale) {
            std::ostringstream os;
            os << "eigen_decompose: eigenpair " << k << " residual " << r << " exceeds tolerance";
            throw NumericalError(os.str());
        }
    }
    return out;
}

std::pair<RealVector, ComplexMatrix> hermitian_eigen(const ComplexMatrix& m) {
    require_square(m, "hermitian_eigen");
    const ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("hermitian_eigen: did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

RankNullspace rank_and_nullspace(const RealMatrix& l, const ToleranceConfig& tol,
                                 double min_threshold) {
    for (Index i = 0; i < l.size(); ++i) {
        if (!std::isfinite(l.data()[i])) throw ContractError("rank_and_nullspace: non-finite entry");
    }
    RankNullspace out;
    const Index c = l.cols();
    if (l.rows() == 0 || c == 0) {
        out.rank = 0;
        out.nullspace = RealMatrix::Identity(c, c);
        return out;
    }
    Eigen::JacobiSVD<RealMatrix> svd(l, Eigen::ComputeFullV);
    out.singular_values = svd.singularValues();
    const double smax = out.singular_values.size() > 0 ? out.singular_values(0) : 0.0;
    out.threshold = std::max(rank_threshold(smax, tol), min_threshold);
    Index rank = 0;
    for (Index i = 0; i < out.singular_values.size(); ++i) {
        if (out.singular_values(i) > out.threshold) ++rank;
    }
    out.rank = rank;
    out.nullspace = svd.matrixV().rightCols(c - rank);
    return out;
}

ComplexMatrix matrix_exponential(const ComplexMatrix& a) {
    require_square(a, "matrix_exponential");
    require_finite(a, "matrix_exponential");
    const Index n = a.rows();

    // Scale so that ||A / 2^s||_1 <= 1/2, where 24 Taylor terms reach full precision.
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
    const ComplexMatrix scaled = a / std::ldexp(1.0, squarings);

    ComplexMatrix result = ComplexMatrix::Identity(n, n);
    ComplexMatrix term = ComplexMatrix::Identity(n, n);
    for (int k = 1; k <= 30; ++k) {
        term = (term * scaled) / static_cast<double>(k);
        result += term;
        if (term.norm() <= kEps * result.norm()) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

RealVector vectorize(const ComplexMatrix& m) {
    RealVector v(2 * m.size());
    Index k = 0;
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            v(k++) = m(i, j).real();
            v(k++) = m(i, j).imag();
        }
    }
    return v;
}

ComplexMatrix devectorize(const RealVector& v, Index rows, Index cols) {
    if (v.size() != 2 * rows * cols) {
        throw DimensionError("devectorize: vector length does not match 2*rows*cols");
    }
    ComplexMatrix m(rows, cols);
    Index k = 0;
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            m(i, j) = Complex(v(k), v(k + 1));
            k += 2;
        }
    }
    return m;
}

RealMatrix linearize(const std::function<ComplexMatrix(const ComplexMatrix&)>& f, Index rows,
                     Index cols) {
    const Index unknowns = 2 * rows * cols;
    RealMatrix out;
    for (Index k = 0; k < unknowns; ++k) {
        RealVector e = RealVector::Zero(unknowns);
        e(k) = 1.0;
        const RealVector image = vectorize(f(devectorize(e, rows, cols)));
        if (k == 0) out.resize(image.size(), unknowns);
        out.col(k) = image;
    }
    return out;
}

ComplexMatrix jordan_block(Index n, Complex lambda) {
    if (n < 1) throw DimensionError("jordan_block: order must be >= 1");
    ComplexMatrix j = lambda * ComplexMatrix::Identity(n, n);
    for (Index i = 0; i + 1 < n; ++i) j(i, i + 1) = 1.0;
    return j;
}

double inverse_condition(const ComplexMatrix& m) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0.0;
    return s(s.size() - 1) / s(0);
}

ComplexMatrix checked_inverse(const ComplexMatrix& m, const char* what) {
    require_square(m, what);
    if (inverse_condition(m) <= 64.0 * kEps) {
        throw NumericalError(std::string(what) + ": matrix is numerically singular");
    }
    return m.fullPivLu().inverse();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    return m.rows() == m.cols() && (m - m.adjoint()).norm() <= tol;
}

bool is_real(const ComplexMatrix& m, double tol) { return m.imag().norm() <= tol; }

ComplexMatrix fix_sign(const ComplexMatrix& m, double zero_tol) {
    if (m.size() == 0) return m;
    const double scale = std::max(m.norm(), 1.0) * zero_tol;
    if (std::abs(m(0, 0).real()) > scale) return m(0, 0).real() < 0.0 ? ComplexMatrix(-m) : m;
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            const Complex z = m(i, j);
            if (std::abs(z.real()) > scale) return z.real() < 0.0 ? ComplexMatrix(-m) : m;
            if (std::abs(z.imag()) > scale) return z.imag() < 0.0 ? ComplexMatrix(-m) : m;
        }
    }
    return m;
}

std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace ptlab

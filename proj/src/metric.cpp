#include "ptlab/metric.hpp"

#include <cmath>
#include <numbers>

namespace ptlab {

namespace {

// Orthonormal basis of N x N Hermitian matrices under Re tr(A^dagger B).
std::vector<ComplexMatrix> hermitian_unit_basis(Index n) {
    std::vector<ComplexMatrix> basis;
    basis.reserve(static_cast<std::size_t>(n * n));
    const double r = 1.0 / std::numbers::sqrt2;
    for (Index i = 0; i < n; ++i) {
        ComplexMatrix e = ComplexMatrix::Zero(n, n);
        e(i, i) = 1.0;
        basis.push_back(e);
    }
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            ComplexMatrix s = ComplexMatrix::Zero(n, n);
            s(i, j) = r;
            s(j, i) = r;
            basis.push_back(s);
            ComplexMatrix a = ComplexMatrix::Zero(n, n);
            a(i, j) = Complex(0.0, r);
            a(j, i) = Complex(0.0, -r);
            basis.push_back(a);
        }
    }
    return basis;
}

}  // namespace

std::string_view to_string(PositivityStatus status) {
    switch (status) {
        case PositivityStatus::Positive: return "positive";
        case PositivityStatus::None: return "none";
        case PositivityStatus::Indeterminate: return "indeterminate";
    }
    return "unknown";
}

PositivityCheck check_positive_definite(const ComplexMatrix& w, const ToleranceConfig& tol) {
    const auto [vals, vecs] = hermitian_eigen(w);
    PositivityCheck c;
    c.min_eigenvalue = vals(0);
    c.max_eigenvalue = vals(vals.size() - 1);
    c.positive = c.max_eigenvalue > 0.0 &&
                 c.min_eigenvalue > rank_threshold(std::abs(c.max_eigenvalue), tol);
    return c;
}

MetricSolution solve_metric_space(const ComplexMatrix& h, const ToleranceConfig& tol) {
    require_square(h, "solve_metric_space");
    require_finite(h, "solve_metric_space");
    const Index n = h.rows();
    const ComplexMatrix hd = h.adjoint();

    const std::vector<ComplexMatrix> basis = hermitian_unit_basis(n);
    RealMatrix l(2 * n * n, static_cast<Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) {
        l.col(static_cast<Index>(k)) = vectorize(basis[k] * h - hd * basis[k]);
    }

    // Cutoff from the basis invariant ||B H - H^dagger B|| <= abs_tol ||H||, floored by the
    // epsilon-based rank cutoff.
    const RankNullspace ns =
        rank_and_nullspace(l, tol, tol.abs_tol * std::max(h.norm(), 1.0));
    const RealMatrix& null = ns.nullspace;

    MetricSolution out;
    out.dimension = null.cols();
    for (Index c = 0; c < null.cols(); ++c) {
        ComplexMatrix w = ComplexMatrix::Zero(n, n);
        for (std::size_t k = 0; k < basis.size(); ++k) w += null(static_cast<Index>(k), c) * basis[k];
        out.hermitian_basis.push_back(0.5 * (w + w.adjoint()));
    }

    const EigenDecomposition left = eigen_decompose(hd, tol);
    const double real_tol = 10.0 * tol.rel_tol * std::max(h.norm(), 1.0);
    for (const Complex& z : left.values) {
        if (std::abs(z.imag()) > real_tol) {
            out.status = PositivityStatus::None;
            return out;
        }
    }
    ComplexMatrix w = left.vectors * left.vectors.adjoint();
    w = 0.5 * (w + w.adjoint());
    const PositivityCheck pos = check_positive_definite(w, tol);
    w /= pos.max_eigenvalue;
    out.min_eigenvalue = pos.min_eigenvalue / pos.max_eigenvalue;
    if (!pos.positive ||
        self_adjointness_residual(w, h) > std::max(tol.abs_tol, tol.rel_tol * h.norm())) {
        out.status = PositivityStatus::Indeterminate;
        return out;
    }
    out.status = PositivityStatus::Positive;
    out.positive_representative = w;
    return out;
}

Complex weighted_inner_product(const ComplexMatrix& w, const ComplexVector& psi,
                               const ComplexVector& phi, const ToleranceConfig& tol) {
    require_square(w, "weighted_inner_product");
    if (psi.size() != w.rows() || phi.size() != w.rows()) {
        throw DimensionError("weighted_inner_product: vector length does not match metric");
    }
    if ((w - w.adjoint()).norm() > std::max(tol.abs_tol, tol.rel_tol * w.norm())) {
        throw ContractError("weighted_inner_product: metric must be Hermitian");
    }
    return psi.dot(w * phi);  // dot() conjugates its left operand
}

ComplexMatrix transform_metric(const ComplexMatrix& w0, const ComplexMatrix& t) {
    require_square(w0, "transform_metric");
    require_square(t, "transform_metric");
    if (w0.rows() != t.rows()) throw DimensionError("transform_metric: size mismatch");
    const ComplexMatrix ti = checked_inverse(t, "transform_metric");
    ComplexMatrix w = ti.adjoint() * w0 * ti;
    if ((w0 - w0.adjoint()).norm() == 0.0) w = 0.5 * (w + w.adjoint());
    return w;
}

double self_adjointness_residual(const ComplexMatrix& w, const ComplexMatrix& h) {
    require_same_shape(w, h, "self_adjointness_residual");
    return (w * h - h.adjoint() * w).norm() / std::max(1.0, w.norm() * h.norm());
}

}  // namespace ptlab

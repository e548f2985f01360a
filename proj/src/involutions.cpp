#include "ptlab/involutions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ptlab {

namespace {

double product_tolerance(const ComplexMatrix& o, const ToleranceConfig& tol) {
    const double s = o.norm();
    return std::max(tol.abs_tol, tol.rel_tol * s * s);
}

double linear_tolerance(const ComplexMatrix& o, const ToleranceConfig& tol) {
    return std::max(tol.abs_tol, tol.rel_tol * o.norm());
}

Signature count_signs(const ComplexMatrix& o, OperatorKind kind) {
    Signature sig;
    if (kind == OperatorKind::HermitianInvolution) {
        const auto [vals, vecs] = hermitian_eigen(o);
        for (Index i = 0; i < vals.size(); ++i) (vals(i) > 0.0 ? sig.plus : sig.minus)++;
    } else {
        for (const Complex& z : eigen_decompose(o).values) (z.real() > 0.0 ? sig.plus : sig.minus)++;
    }
    return sig;
}

}  // namespace

std::string_view to_string(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::RealInvolution: return "real_involution";
        case OperatorKind::HermitianInvolution: return "hermitian_involution";
        case OperatorKind::AntilinearCore: return "antilinear_core";
    }
    return "unknown";
}

OperatorKind operator_kind_from_string(std::string_view name) {
    if (name == "real_involution") return OperatorKind::RealInvolution;
    if (name == "hermitian_involution") return OperatorKind::HermitianInvolution;
    if (name == "antilinear_core") return OperatorKind::AntilinearCore;
    throw ContractError("unknown operator kind '" + std::string(name) + "'");
}

InvolutionCheck verify_involution(const ComplexMatrix& o, OperatorKind kind,
                                  const ToleranceConfig& tol) {
    require_square(o, "verify_involution");
    require_finite(o, "verify_involution");
    const Index n = o.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);

    InvolutionCheck check;
    if (kind == OperatorKind::AntilinearCore) {
        check.product_residual = (o * o.conjugate() - id).norm();
        check.ok = check.product_residual <= product_tolerance(o, tol);
        return check;
    }

    check.product_residual = (o * o - id).norm();
    check.structure_residual = kind == OperatorKind::RealInvolution ? o.imag().norm()
                                                                    : (o - o.adjoint()).norm();
    check.ok = check.product_residual <= product_tolerance(o, tol) &&
               check.structure_residual <= linear_tolerance(o, tol);
    if (check.ok) {
        const Signature sig = count_signs(o, kind);
        check.signature = sig;
        check.trace_residual =
            std::abs(o.trace() - Complex(static_cast<double>(sig.plus - sig.minus), 0.0));
        check.ok = check.trace_residual <= linear_tolerance(o, tol);
    }
    return check;
}

InvolutionOperator InvolutionOperator::make(OperatorKind kind, ComplexMatrix matrix,
                                            const ToleranceConfig& tol) {
    const InvolutionCheck check = verify_involution(matrix, kind, tol);
    if (!check.ok) {
        std::ostringstream os;
        os << "matrix is not a valid " << to_string(kind) << " (product residual "
           << check.product_residual << ", structure residual " << check.structure_residual
           << ")";
        throw ContractError(os.str());
    }
    return InvolutionOperator(kind, std::move(matrix), check.signature);
}

InvolutionOperator InvolutionOperator::as(OperatorKind kind, const ToleranceConfig& tol) const {
    return make(kind, matrix_, tol);
}

ComplexMatrix diagonal_parity_matrix(Index m, Index n) {
    if (m < 0 || n < 0 || m + n < 1) {
        throw DimensionError("diagonal parity needs m, n >= 0 and m + n >= 1");
    }
    ComplexMatrix p = ComplexMatrix::Zero(m + n, m + n);
    for (Index i = 0; i < m; ++i) p(i, i) = 1.0;
    for (Index i = m; i < m + n; ++i) p(i, i) = -1.0;
    return p;
}

InvolutionOperator make_diagonal_parity(Index m, Index n) {
    return InvolutionOperator::make(OperatorKind::RealInvolution, diagonal_parity_matrix(m, n));
}

ComplexMatrix sip_matrix(Index n) {
    if (n < 1) throw DimensionError("SIP order must be >= 1");
    ComplexMatrix s = ComplexMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) s(i, n - 1 - i) = 1.0;
    return s;
}

InvolutionOperator make_sip(Index n) {
    return InvolutionOperator::make(OperatorKind::HermitianInvolution, sip_matrix(n));
}

InvolutionOperator transport(const InvolutionOperator& o, const ComplexMatrix& t,
                             const ToleranceConfig& tol) {
    require_square(t, "transport");
    if (t.rows() != o.dimension()) throw DimensionError("transport: dimension mismatch");
    const Index n = t.rows();

    const InvolutionCheck input = verify_involution(o.matrix(), o.kind(), tol);
    if (!input.ok) throw ContractError("transport: input operator fails its kind invariants");

    ComplexMatrix image;
    switch (o.kind()) {
        case OperatorKind::RealInvolution: {
            if (t.imag().norm() > linear_tolerance(t, tol)) {
                throw ContractError("transport: a real involution requires a real transform");
            }
            const ComplexMatrix t_real = t.real().cast<Complex>();
            image = t_real * o.matrix() * checked_inverse(t_real, "transport");
            image = image.real().cast<Complex>();
            break;
        }
        case OperatorKind::HermitianInvolution: {
            const double unitarity = (t.adjoint() * t - ComplexMatrix::Identity(n, n)).norm();
            if (unitarity > product_tolerance(t, tol)) {
                throw ContractError("transport: a Hermitian involution requires a unitary transform");
            }
            image = t * o.matrix() * t.adjoint();
            image = 0.5 * (image + image.adjoint());
            break;
        }
        case OperatorKind::AntilinearCore:
            image = t * o.matrix() * checked_inverse(t, "transport").conjugate();
            break;
    }
    const InvolutionCheck output = verify_involution(image, o.kind(), tol);
    if (!output.ok) {
        throw NumericalError("transport: transformed operator lost its kind invariants "
                             "(ill-conditioned transform?)");
    }
    return InvolutionOperator::make(o.kind(), std::move(image), tol);
}

ComplexMatrix grassmann_generator(const GrassmannCosetSpec& spec) {
    if (spec.b.rows() != spec.m || spec.b.cols() != spec.n) {
        throw DimensionError("grassmann coset: b must be m x n");
    }
    const Index d = spec.m + spec.n;
    ComplexMatrix a = ComplexMatrix::Zero(d, d);
    a.topRightCorner(spec.m, spec.n) = spec.b;
    a.bottomLeftCorner(spec.n, spec.m) = -spec.b.adjoint();
    return a;
}

namespace {

// f(sqrt(G)) for a Hermitian positive semidefinite G via its eigendecomposition.
template <typename F>
ComplexMatrix hermitian_function(const ComplexMatrix& g, F f) {
    if (g.rows() == 0) return g;
    const auto [vals, vecs] = hermitian_eigen(g);
    RealVector mapped(vals.size());
    for (Index i = 0; i < vals.size(); ++i) mapped(i) = f(std::sqrt(std::max(vals(i), 0.0)));
    return vecs * mapped.cast<Complex>().asDiagonal() * vecs.adjoint();
}

}  // namespace

ComplexMatrix grassmann_coset_element(const GrassmannCosetSpec& spec) {
    if (spec.m < 0 || spec.n < 0 || spec.m + spec.n < 1) {
        throw DimensionError("grassmann coset: m, n >= 0 and m + n >= 1 required");
    }
    if (spec.b.rows() != spec.m || spec.b.cols() != spec.n) {
        throw DimensionError("grassmann coset: b must be m x n");
    }
    require_finite(spec.b, "grassmann_coset_element");
    const double x = spec.x;
    const ComplexMatrix bbd = spec.b * spec.b.adjoint();
    const ComplexMatrix bdb = spec.b.adjoint() * spec.b;

    auto cosine = [x](double s) { return std::cos(s * x); };
    auto sinc = [x](double s) {
        const double sx = s * x;
        return std::abs(sx) < 1e-8 ? x * (1.0 - sx * sx / 6.0) : std::sin(sx) / s;
    };

    const ComplexMatrix sin_n = hermitian_function(bdb, sinc);
    const Index d = spec.m + spec.n;
    ComplexMatrix u(d, d);
    u.topLeftCorner(spec.m, spec.m) = hermitian_function(bbd, cosine);
    u.topRightCorner(spec.m, spec.n) = spec.b * sin_n;
    u.bottomLeftCorner(spec.n, spec.m) = -sin_n * spec.b.adjoint();
    u.bottomRightCorner(spec.n, spec.n) = hermitian_function(bdb, cosine);
    return u;
}

SipSimilarity sip_similarity(Index n_total) {
    if (n_total < 1) throw DimensionError("sip_similarity: n_total must be >= 1");
    const Index k = n_total / 2;
    const bool odd = (n_total % 2) == 1;
    const double r = 1.0 / std::numbers::sqrt2;

    SipSimilarity out;
    out.q = ComplexMatrix::Zero(n_total, n_total);
    out.q_inverse = ComplexMatrix::Zero(n_total, n_total);
    const Index tail = odd ? k + 1 : k;  // first row of the lower block
    if (k > 0) {
        const ComplexMatrix s = sip_matrix(k);
        const ComplexMatrix id = ComplexMatrix::Identity(k, k);
        out.q.block(0, 0, k, k) = r * id;
        out.q.block(0, tail, k, k) = -r * s;
        out.q.block(tail, 0, k, k) = r * s;
        out.q.block(tail, tail, k, k) = r * id;
        out.q_inverse.block(0, 0, k, k) = r * id;
        out.q_inverse.block(0, tail, k, k) = r * s;
        out.q_inverse.block(tail, 0, k, k) = -r * s;
        out.q_inverse.block(tail, tail, k, k) = r * id;
    }
    if (odd) {
        out.q(k, k) = 1.0;
        out.q_inverse(k, k) = 1.0;
    }
    out.parity = diagonal_parity_matrix(odd ? k + 1 : k, k);
    return out;
}

}  // namespace ptlab

#include "ptlab/symmetry.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace ptlab {

std::string_view to_string(SymmetryKind kind) {
    switch (kind) {
        case SymmetryKind::PT: return "pt";
        case SymmetryKind::Pseudo: return "pseudo";
        case SymmetryKind::GenPT: return "genpt";
    }
    return "unknown";
}

SymmetryKind symmetry_kind_from_string(std::string_view name) {
    if (name == "pt") return SymmetryKind::PT;
    if (name == "pseudo") return SymmetryKind::Pseudo;
    if (name == "genpt") return SymmetryKind::GenPT;
    throw ContractError("unknown symmetry kind '" + std::string(name) + "'");
}

OperatorKind required_operator_kind(SymmetryKind kind) {
    switch (kind) {
        case SymmetryKind::PT: return OperatorKind::RealInvolution;
        case SymmetryKind::Pseudo: return OperatorKind::HermitianInvolution;
        case SymmetryKind::GenPT: return OperatorKind::AntilinearCore;
    }
    return OperatorKind::RealInvolution;
}

SymmetryReport check_symmetry(SymmetryKind kind, const ComplexMatrix& op, const ComplexMatrix& h,
                              const ToleranceConfig& tol) {
    require_square(h, "check_symmetry");
    require_square(op, "check_symmetry");
    if (op.rows() != h.rows()) throw DimensionError("check_symmetry: operator/matrix size mismatch");
    const OperatorKind needed = required_operator_kind(kind);
    if (!verify_involution(op, needed, tol).ok) {
        throw ContractError("check_symmetry: operator is not a valid " +
                            std::string(to_string(needed)) + " for " +
                            std::string(to_string(kind)) + " symmetry");
    }

    ComplexMatrix diff;
    switch (kind) {
        case SymmetryKind::PT: diff = op * h - h.conjugate() * op; break;
        case SymmetryKind::Pseudo: diff = op * h - h.adjoint() * op; break;
        case SymmetryKind::GenPT: diff = op * h.conjugate() - h * op; break;
    }
    SymmetryReport report;
    report.kind = kind;
    report.residual = diff.norm();
    const double hn = h.norm();
    report.relative_residual = hn > 0.0 ? report.residual / hn : report.residual;
    report.threshold = std::max(tol.abs_tol, tol.rel_tol * hn * op.norm());
    report.holds = report.residual <= report.threshold;
    return report;
}

SymmetryReport check_symmetry(SymmetryKind kind, const InvolutionOperator& op,
                              const ComplexMatrix& h, const ToleranceConfig& tol) {
    return check_symmetry(kind, op.matrix(), h, tol);
}

ComplexMatrix construct_pt_block(const PtBlockParams& p) {
    if (p.m < 0 || p.n < 0 || p.m + p.n < 1) throw DimensionError("pt block: m + n >= 1 required");
    if (p.a.rows() != p.m || p.a.cols() != p.m || p.b.rows() != p.m || p.b.cols() != p.n ||
        p.c.rows() != p.n || p.c.cols() != p.m || p.d.rows() != p.n || p.d.cols() != p.n) {
        throw DimensionError("pt block: block shapes inconsistent with (m, n)");
    }
    const Complex i(0.0, 1.0);
    ComplexMatrix h(p.m + p.n, p.m + p.n);
    h.topLeftCorner(p.m, p.m) = p.a.cast<Complex>();
    h.topRightCorner(p.m, p.n) = i * p.b.cast<Complex>();
    h.bottomLeftCorner(p.n, p.m) = i * p.c.cast<Complex>();
    h.bottomRightCorner(p.n, p.n) = p.d.cast<Complex>();
    return h;
}

ComplexMatrix construct_pseudo_block(const PseudoBlockParams& p, const ToleranceConfig& tol) {
    if (p.m < 0 || p.n < 0 || p.m + p.n < 1) {
        throw DimensionError("pseudo block: m + n >= 1 required");
    }
    if (p.a.rows() != p.m || p.a.cols() != p.m || p.b.rows() != p.m || p.b.cols() != p.n ||
        p.d.rows() != p.n || p.d.cols() != p.n) {
        throw DimensionError("pseudo block: block shapes inconsistent with (m, n)");
    }
    if ((p.a - p.a.adjoint()).norm() > tol.abs_tol || (p.d - p.d.adjoint()).norm() > tol.abs_tol) {
        throw ContractError("pseudo block: A and D must be Hermitian");
    }
    const Complex i(0.0, 1.0);
    ComplexMatrix h(p.m + p.n, p.m + p.n);
    h.topLeftCorner(p.m, p.m) = p.a;
    h.topRightCorner(p.m, p.n) = i * p.b;
    h.bottomLeftCorner(p.n, p.m) = i * p.b.adjoint();
    h.bottomRightCorner(p.n, p.n) = p.d;
    return h;
}

ComplexMatrix construct_rotated_hermitian(const RotatedHermitianParams& p) {
    const Index n = p.n;
    if (n < 1) throw DimensionError("rotated Hermitian: n >= 1 required");
    if (p.a.rows() != n || p.a.cols() != n || p.b.rows() != n || p.b.cols() != n) {
        throw DimensionError("rotated Hermitian: a and b must be n x n");
    }
    ComplexMatrix h(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (i + j < n - 1) {
                h(i, j) = Complex(p.a(i, j), p.b(i, j));
            } else if (i + j == n - 1) {
                h(i, j) = p.a(i, j);
            }
        }
    }
    // Below the skew diagonal: mirror of (n-1-j, n-1-i), conjugated.
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (i + j > n - 1) h(i, j) = std::conj(h(n - 1 - j, n - 1 - i));
        }
    }
    return h;
}

ComplexMatrix gen_pt_diag_operator(const RealVector& phases) {
    ComplexMatrix p = ComplexMatrix::Zero(phases.size(), phases.size());
    for (Index k = 0; k < phases.size(); ++k) p(k, k) = std::polar(1.0, phases(k));
    return p;
}

ComplexMatrix construct_gen_pt_diag(const DiagPhaseGenPtParams& p) {
    const Index n = p.phases.size();
    if (n < 1) throw DimensionError("gen-PT diag: at least one phase required");
    if (p.r.rows() != n || p.r.cols() != n) throw DimensionError("gen-PT diag: r must be N x N");
    for (Index k = 0; k < n; ++k) {
        if (!std::isfinite(p.phases(k))) throw ContractError("gen-PT diag: non-finite phase");
    }
    ComplexMatrix h(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            h(i, j) = p.r(i, j) * std::polar(1.0, 0.5 * (p.phases(i) - p.phases(j)));
        }
    }
    return h;
}

ComplexMatrix construct_self_adjoint_from_diag_metric(const DiagMetricSelfAdjointParams& p) {
    const Index n = p.omegas.size();
    if (n < 1) throw DimensionError("diag-metric self-adjoint: at least one weight required");
    if (p.a.rows() != n || p.a.cols() != n || p.b.rows() != n || p.b.cols() != n) {
        throw DimensionError("diag-metric self-adjoint: a and b must be N x N");
    }
    for (Index k = 0; k < n; ++k) {
        if (!(p.omegas(k) > 0.0)) throw ContractError("diag-metric self-adjoint: omega must be > 0");
    }
    ComplexMatrix h = ComplexMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        h(i, i) = p.a(i, i);
        for (Index j = i + 1; j < n; ++j) {
            const double wi = p.omegas(i);
            const double wj = p.omegas(j);
            const Complex z(p.a(i, j), p.b(i, j));
            h(i, j) = (2.0 * wj / (wi + wj)) * z;
            h(j, i) = (2.0 * wi / (wi + wj)) * std::conj(z);
        }
    }
    return h;
}

std::string_view to_string(GenPtStatus status) {
    switch (status) {
        case GenPtStatus::Found: return "found";
        case GenPtStatus::NotClosed: return "not_closed";
        case GenPtStatus::Indeterminate: return "indeterminate";
    }
    return "unknown";
}

InvolutionOperator gen_pt_operator_from_realifier(const ComplexMatrix& lambda,
                                                  const ToleranceConfig& tol) {
    const ComplexMatrix inv = checked_inverse(lambda, "gen_pt_operator_from_realifier");
    return InvolutionOperator::make(OperatorKind::AntilinearCore, lambda * inv.conjugate(), tol);
}

GenPtSearch find_gen_pt_operator(const ComplexMatrix& h, const ToleranceConfig& tol) {
    require_square(h, "find_gen_pt_operator");
    const Index n = h.rows();
    GenPtSearch out;

    const EigenDecomposition eig = eigen_decompose(h, tol);
    const double scale = std::max(h.norm(), 1.0);
    const double pair_tol = tol.rel_tol * scale;

    // Greedy conjugate pairing; ties go to the smallest index.
    std::vector<int> partner(static_cast<std::size_t>(n), -2);  // -2 unassigned, -1 real
    for (Index i = 0; i < n; ++i) {
        const Complex li = eig.values[static_cast<std::size_t>(i)];
        if (std::abs(li.imag()) <= pair_tol) partner[static_cast<std::size_t>(i)] = -1;
    }
    for (Index i = 0; i < n; ++i) {
        if (partner[static_cast<std::size_t>(i)] != -2) continue;
        const Complex target = std::conj(eig.values[static_cast<std::size_t>(i)]);
        Index best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (Index j = 0; j < n; ++j) {
            if (j == i || partner[static_cast<std::size_t>(j)] != -2) continue;
            const double d = std::abs(eig.values[static_cast<std::size_t>(j)] - target);
            if (d < best_dist) {
                best_dist = d;
                best = j;
            }
        }
        if (best < 0 || best_dist > pair_tol) {
            const double im = std::abs(eig.values[static_cast<std::size_t>(i)].imag());
            if (im <= 100.0 * pair_tol) {
                out.status = GenPtStatus::Indeterminate;
                out.reason = "eigenvalue imaginary part within 100x tolerance of the real axis";
            } else {
                out.status = GenPtStatus::NotClosed;
                out.reason = "spectrum is not closed under complex conjugation";
            }
            return out;
        }
        partner[static_cast<std::size_t>(i)] = static_cast<int>(best);
        partner[static_cast<std::size_t>(best)] = static_cast<int>(i);
    }

    if (inverse_condition(eig.vectors) < 1e-8) {
        out.status = GenPtStatus::Indeterminate;
        out.reason = "eigenvector matrix numerically singular (defective or near-defective input)";
        return out;
    }

    // Real eigenvalue: eigenvector as is. Pair (a + ib, a - ib) with eigenvectors v1, v2:
    // c1 = (v1 + v2) / 2, c2 = i (v1 - v2) / 2 span an invariant plane with the real block
    // [[a, -b], [b, a]].
    ComplexMatrix lambda(n, n);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    Index col = 0;
    const Complex iu(0.0, 1.0);
    for (Index i = 0; i < n; ++i) {
        if (used[static_cast<std::size_t>(i)]) continue;
        const int p = partner[static_cast<std::size_t>(i)];
        if (p == -1) {
            lambda.col(col++) = eig.vectors.col(i);
            used[static_cast<std::size_t>(i)] = true;
            continue;
        }
        Index first = i;
        Index second = p;
        if (eig.values[static_cast<std::size_t>(first)].imag() < 0.0) std::swap(first, second);
        const ComplexVector v1 = eig.vectors.col(first);
        const ComplexVector v2 = eig.vectors.col(second);
        lambda.col(col++) = 0.5 * (v1 + v2);
        lambda.col(col++) = 0.5 * iu * (v1 - v2);
        used[static_cast<std::size_t>(i)] = true;
        used[static_cast<std::size_t>(p)] = true;
    }

    if (inverse_condition(lambda) < 1e-8) {
        out.status = GenPtStatus::Indeterminate;
        out.reason = "realifying transform numerically singular";
        return out;
    }
    out.realifier = lambda;
    const ComplexMatrix inv = lambda.fullPivLu().inverse();
    const ComplexMatrix pbar = lambda * inv.conjugate();
    const InvolutionCheck core = verify_involution(pbar, OperatorKind::AntilinearCore, tol);
    const SymmetryReport sym = core.ok ? check_symmetry(SymmetryKind::GenPT, pbar, h, tol)
                                       : SymmetryReport{};
    out.residual = sym.residual;
    if (!core.ok || !sym.holds) {
        out.status = GenPtStatus::Indeterminate;
        std::ostringstream os;
        os << "constructed operator failed verification (core residual " << core.product_residual
           << ", intertwining residual " << sym.residual << ")";
        out.reason = os.str();
        return out;
    }
    out.status = GenPtStatus::Found;
    out.op = InvolutionOperator::make(OperatorKind::AntilinearCore, pbar, tol);
    return out;
}

}  // namespace ptlab

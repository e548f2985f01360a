#include "ptlab/convert.hpp"

#include "ptlab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>

namespace ptlab {

namespace {

using MatrixMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

/// Real basis of {A : A H = H^T A and extra(A) = 0}.
std::vector<ComplexMatrix> witness_family(const ComplexMatrix& h, const MatrixMap& extra,
                                          const ToleranceConfig& tol) {
    const Index n = h.rows();
    const double hn = frobenius_norm(h);
    const ComplexMatrix hs = hn > 0.0 ? ComplexMatrix(h / hn) : h;
    const RealMatrix l1 = linearize(
        [&](const ComplexMatrix& a) -> ComplexMatrix { return a * hs - hs.transpose() * a; }, n, n);
    RealMatrix l = l1;
    if (extra) {
        const RealMatrix l2 = linearize(extra, n, n);
        l.resize(l1.rows() + l2.rows(), l1.cols());
        l << l1, l2;
    }
    const RankNullspace rn = rank_and_nullspace(l, tol, tol.abs_tol);
    std::vector<ComplexMatrix> basis;
    for (Index k = 0; k < rn.nullspace.cols(); ++k) {
        basis.push_back(devectorize(rn.nullspace.col(k), n, n));
    }
    return basis;
}

ComplexMatrix combine(const std::vector<ComplexMatrix>& basis, const RealVector& x) {
    ComplexMatrix out = ComplexMatrix::Zero(basis.front().rows(), basis.front().cols());
    for (std::size_t k = 0; k < basis.size(); ++k) out += x(static_cast<Index>(k)) * basis[k];
    return out;
}

/// Least-squares coefficients of `target` in the real span of `basis`.
RealVector project(const std::vector<ComplexMatrix>& basis, const ComplexMatrix& target) {
    RealMatrix m(2 * target.size(), static_cast<Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) m.col(static_cast<Index>(k)) = vectorize(basis[k]);
    return m.colPivHouseholderQr().solve(vectorize(target));
}

using Residual = std::function<RealVector(const RealVector&)>;

struct LmOutcome {
    RealVector x;
    double cost = std::numeric_limits<double>::infinity();
};

/// Levenberg-Marquardt on ||r(x)||. Central differences are exact for the quadratic
/// residuals used here, up to rounding.
LmOutcome levenberg_marquardt(const Residual& r, RealVector x, double target, int max_iter = 200) {
    RealVector res = r(x);
    double cost = res.norm();
    double damping = 1e-3;
    const Index dim = x.size();
    for (int iter = 0; iter < max_iter && cost > target; ++iter) {
        RealMatrix jac(res.size(), dim);
        for (Index k = 0; k < dim; ++k) {
            const double step = 1e-3 * (1.0 + std::abs(x(k)));
            RealVector xp = x, xm = x;
            xp(k) += step;
            xm(k) -= step;
            jac.col(k) = (r(xp) - r(xm)) / (2.0 * step);
        }
        const RealMatrix jtj = jac.transpose() * jac;
        const RealVector g = jac.transpose() * res;
        bool accepted = false;
        for (int attempt = 0; attempt < 30 && !accepted; ++attempt) {
            RealMatrix lhs = jtj;
            for (Index k = 0; k < dim; ++k) lhs(k, k) += damping * std::max(jtj(k, k), 1e-12);
            const RealVector delta = lhs.ldlt().solve(-g);
            const RealVector xn = x + delta;
            const RealVector rn = r(xn);
            const double cn = rn.norm();
            if (cn < cost) {
                const bool stalled = delta.norm() <= 1e-16 * (1.0 + x.norm());
                x = xn;
                res = rn;
                cost = cn;
                damping = std::max(damping / 3.0, 1e-12);
                accepted = !stalled;
                if (stalled) return {x, cost};
            } else {
                damping *= 4.0;
            }
        }
        if (!accepted) break;
    }
    return {x, cost};
}

/// Seeded multistart LM: the projection of `reference` first, then random starts normalized
/// so that ||Q(x)||_F^2 = N.
LmOutcome multistart(const std::vector<ComplexMatrix>& basis, const ComplexMatrix& reference,
                     const Residual& r, double target, std::uint64_t seed, int starts = 64) {
    const Index n = basis.front().rows();
    const Index dim = static_cast<Index>(basis.size());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    LmOutcome best;
    auto rescale = [&](RealVector x) {
        const double q = frobenius_norm(combine(basis, x));
        if (q > 0.0) x *= std::sqrt(static_cast<double>(n)) / q;
        return x;
    };
    for (int s = 0; s < starts; ++s) {
        RealVector x0(dim);
        if (s == 0) {
            x0 = project(basis, reference);
            if (!(x0.norm() > 1e-8)) continue;
        } else {
            for (Index k = 0; k < dim; ++k) x0(k) = normal(rng);
            x0 = rescale(x0);
        }
        LmOutcome out = levenberg_marquardt(r, x0, target);
        if (out.cost < best.cost) best = out;
        if (best.cost <= target) break;
    }
    if (best.x.size() == 0) best.x = RealVector::Zero(dim);
    return best;
}

double herm_residual(const ComplexMatrix& q) { return (q - q.adjoint()).norm(); }
double real_residual(const ComplexMatrix& q) { return (q - q.conjugate()).norm(); }
double inv_residual(const ComplexMatrix& q) {
    return (q * q - ComplexMatrix::Identity(q.rows(), q.cols())).norm();
}

struct Thresholds {
    double structure, involution, intertwining;
};

Thresholds thresholds(const ComplexMatrix& q, const ComplexMatrix& h, const ToleranceConfig& tol) {
    const double qn = frobenius_norm(q), hn = frobenius_norm(h);
    return {std::max(tol.abs_tol, tol.rel_tol * qn), std::max(tol.abs_tol, tol.rel_tol * qn * qn),
            std::max(tol.abs_tol, tol.rel_tol * qn * hn)};
}

void require_source(SymmetryKind kind, const ComplexMatrix& op, const ComplexMatrix& h,
                    const ToleranceConfig& tol, const char* what) {
    require_square(h, what);
    require_same_shape(op, h, what);
    require_finite(h, what);
    const SymmetryReport rep = check_symmetry(kind, op, h, tol);
    if (!rep.holds) {
        throw ContractError(std::string(what) + ": source symmetry " + std::string(to_string(kind)) +
                            " fails (residual " + format_real(rep.residual) + ")");
    }
}

/// A Jordan block of size > 1 sends the closed-form normalization to zero.
bool is_defective(const ComplexMatrix& h, const ToleranceConfig& tol) {
    for (const auto& e : classify_spectrum(h, tol).segre) {
        if (!e.blocks.empty() && e.blocks.front() > 1) return true;
    }
    return false;
}

/// Fills flags and residuals shared by every direction.
void finish(ConversionResult& out, const ComplexMatrix& h, const ToleranceConfig& tol,
            double intertwining) {
    const Thresholds t = thresholds(out.q, h, tol);
    out.hermitian = herm_residual(out.q) <= t.structure;
    out.real = real_residual(out.q) <= t.structure;
    out.residuals.involution = inv_residual(out.q);
    out.involutory = out.residuals.involution <= t.involution;
    out.residuals.intertwining = intertwining;
    out.degenerate = (out.family_dimension > 0 && !out.involutory) || is_defective(h, tol);
}

bool target_holds(SymmetryKind kind, const ComplexMatrix& q, const ComplexMatrix& h,
                  const ToleranceConfig& tol) {
    try {
        return check_symmetry(kind, q, h, tol).holds;
    } catch (const ContractError&) {
        return false;
    }
}

}  // namespace

std::string_view to_string(TransposeMethod m) {
    return m == TransposeMethod::JordanRecipe ? "jordan_recipe" : "nullspace_search";
}

TransposeWitness transpose_matrix(const ComplexMatrix& b, const ToleranceConfig& tol,
                                  std::uint64_t seed) {
    require_square(b, "transpose_matrix");
    require_finite(b, "transpose_matrix");
    const Index n = b.rows();
    TransposeWitness w;
    w.method = TransposeMethod::NullspaceSearch;
    if (n == 0) return w;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    double best = -1.0;
    ComplexMatrix best_a;
    // Second pass widens the nullspace cutoff for ill-conditioned defective inputs.
    for (double floor : {0.0, tol.abs_tol}) {
        ToleranceConfig t = tol;
        const double bn = frobenius_norm(b);
        const ComplexMatrix bs = bn > 0.0 ? ComplexMatrix(b / bn) : b;
        const RealMatrix l = linearize(
            [&](const ComplexMatrix& a) -> ComplexMatrix { return a * bs - bs.transpose() * a; }, n,
            n);
        const RankNullspace rn = rank_and_nullspace(l, t, floor);
        if (rn.nullspace.cols() == 0) continue;
        for (int draw = 0; draw < 256; ++draw) {
            RealVector c(rn.nullspace.cols());
            for (Index k = 0; k < c.size(); ++k) c(k) = normal(rng);
            ComplexMatrix a = devectorize(rn.nullspace * c, n, n);
            a /= frobenius_norm(a);
            const double rc = inverse_condition(a);
            if (rc > best) {
                best = rc;
                best_a = a;
            }
            if (draw >= 7 && best > 1e-4) break;
        }
        if (best > 1e-10) break;
    }
    if (!(best > 1e-12)) {
        throw NumericalError("transpose_matrix: no invertible transposer found within budget");
    }
    w.a = best_a;
    w.inverse_condition = best;
    w.residual =
        (w.a * b * checked_inverse(w.a, "transpose_matrix") - ComplexMatrix(b.transpose())).norm();
    return w;
}

TransposeWitness transpose_from_jordan_recipe(const ComplexMatrix& b, const ComplexMatrix& f,
                                              const std::vector<Index>& block_sizes) {
    require_square(b, "transpose_from_jordan_recipe");
    require_same_shape(b, f, "transpose_from_jordan_recipe");
    Index total = 0;
    for (Index k : block_sizes) {
        if (k < 1) throw DimensionError("transpose_from_jordan_recipe: block sizes must be >= 1");
        total += k;
    }
    if (total != b.rows()) {
        throw DimensionError("transpose_from_jordan_recipe: block sizes do not sum to the dimension");
    }
    ComplexMatrix s = ComplexMatrix::Zero(total, total);
    Index offset = 0;
    for (Index k : block_sizes) {
        s.block(offset, offset, k, k) = sip_matrix(k);
        offset += k;
    }
    TransposeWitness w;
    w.method = TransposeMethod::JordanRecipe;
    w.a = f.transpose() * s * f;
    w.inverse_condition = inverse_condition(w.a);
    w.residual = (w.a * b * checked_inverse(w.a, "transpose_from_jordan_recipe") -
                  ComplexMatrix(b.transpose()))
                     .norm();
    return w;
}

std::string_view to_string(ConversionDirection d) {
    switch (d) {
        case ConversionDirection::PtToPseudo: return "pt-to-pseudo";
        case ConversionDirection::PseudoToPt: return "pseudo-to-pt";
        case ConversionDirection::GenPtToPseudo: return "genpt-to-pseudo";
    }
    return "unknown";
}

ConversionDirection conversion_direction_from_string(std::string_view name) {
    for (auto d : {ConversionDirection::PtToPseudo, ConversionDirection::PseudoToPt,
                   ConversionDirection::GenPtToPseudo}) {
        if (name == to_string(d)) return d;
    }
    throw ContractError("unknown conversion direction '" + std::string(name) + "'");
}

ConversionResult pt_to_pseudo(const ComplexMatrix& p, const ComplexMatrix& h,
                              const ToleranceConfig& tol, std::uint64_t seed) {
    require_source(SymmetryKind::PT, p, h, tol, "pt_to_pseudo");
    const Index n = h.rows();
    ConversionResult out;
    out.direction = ConversionDirection::PtToPseudo;
    const auto family = witness_family(
        h,
        [&](const ComplexMatrix& a) -> ComplexMatrix {
            return a.conjugate() * p - p.transpose() * a.transpose();
        },
        tol);
    out.family_dimension = static_cast<Index>(family.size());
    if (family.empty()) {
        out.q = out.a = ComplexMatrix::Zero(n, n);
        out.message = "no nonzero A makes A* P Hermitian";
        finish(out, h, tol, 0.0);
        return out;
    }
    std::vector<ComplexMatrix> qs;
    for (const auto& a : family) {
        const ComplexMatrix q = a.conjugate() * p;
        qs.push_back(0.5 * (q + q.adjoint()));
    }
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const auto best = multistart(
        qs, p,
        [&](const RealVector& x) {
            const ComplexMatrix q = combine(qs, x);
            return RealVector(vectorize(q * q - id));
        },
        1e-14 * static_cast<double>(n), seed);

    out.q = fix_sign(combine(qs, best.x));
    out.a = (out.q * p).conjugate();
    out.residuals.structure = herm_residual(out.q);
    out.witness_residual = (out.a * h - h.transpose() * out.a).norm();
    finish(out, h, tol, (out.q * h - h.adjoint() * out.q).norm());
    out.target_kind_satisfied =
        out.hermitian && out.involutory && target_holds(SymmetryKind::Pseudo, out.q, h, tol);
    out.message = out.involutory ? "hermitian involution found"
                                 : "family is nonzero but holds no involution";
    return out;
}

ConversionResult pseudo_to_pt(const ComplexMatrix& ptilde, const ComplexMatrix& h,
                              const ToleranceConfig& tol, std::uint64_t seed) {
    require_source(SymmetryKind::Pseudo, ptilde, h, tol, "pseudo_to_pt");
    const Index n = h.rows();
    ConversionResult out;
    out.direction = ConversionDirection::PseudoToPt;
    // Y = P~ A* is the inverse of Q = (A*)^-1 P~, so Y = Q once Q is involutory.
    const auto family = witness_family(
        h,
        [&](const ComplexMatrix& a) -> ComplexMatrix {
            const ComplexMatrix y = ptilde * a.conjugate();
            return y - y.conjugate();
        },
        tol);
    out.family_dimension = static_cast<Index>(family.size());
    if (family.empty()) {
        out.q = out.a = ComplexMatrix::Zero(n, n);
        out.message = "no nonzero A makes P~ A* real";
        finish(out, h, tol, 0.0);
        return out;
    }
    std::vector<ComplexMatrix> qs;
    for (const auto& a : family) qs.push_back((ptilde * a.conjugate()).real().cast<Complex>());
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const auto best = multistart(
        qs, ptilde,
        [&](const RealVector& x) {
            const ComplexMatrix q = combine(qs, x);
            return RealVector(vectorize(q * q - id));
        },
        1e-14 * static_cast<double>(n), seed);

    out.q = fix_sign(combine(qs, best.x));
    out.a = (ptilde * out.q).conjugate();
    out.residuals.structure = real_residual(out.q);
    out.witness_residual = (out.a * h - h.transpose() * out.a).norm();
    finish(out, h, tol, (out.q * h - h.conjugate() * out.q).norm());
    out.target_kind_satisfied =
        out.real && out.involutory && target_holds(SymmetryKind::PT, out.q, h, tol);
    out.message = out.involutory ? "real involution found"
                                 : "family is nonzero but holds no involution (degenerate)";
    return out;
}

ConversionResult gen_pt_to_pseudo(const ComplexMatrix& pbar, const ComplexMatrix& h,
                                  const ToleranceConfig& tol, std::uint64_t seed) {
    require_source(SymmetryKind::GenPT, pbar, h, tol, "gen_pt_to_pseudo");
    const Index n = h.rows();
    ConversionResult out;
    out.direction = ConversionDirection::GenPtToPseudo;
    const auto family = witness_family(
        h,
        [&](const ComplexMatrix& a) -> ComplexMatrix {
            const ComplexMatrix q = pbar * a;
            return q - q.adjoint();
        },
        tol);
    out.family_dimension = static_cast<Index>(family.size());
    if (family.empty()) {
        out.q = out.a = ComplexMatrix::Zero(n, n);
        out.message = "no nonzero A makes Pbar A Hermitian";
        finish(out, h, tol, 0.0);
        return out;
    }
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const Index m = 2 * n * n;
    auto unitary_part = [&](const RealVector& x) {
        const ComplexMatrix a = combine(family, x);
        return RealVector(vectorize(a * a.conjugate() - id));
    };
    auto both = [&](const RealVector& x) {
        const ComplexMatrix a = combine(family, x);
        const ComplexMatrix q = pbar * a;
        RealVector r(2 * m);
        r << vectorize(a * a.conjugate() - id), vectorize(q * q - id);
        return r;
    };
    const double target = 1e-14 * static_cast<double>(n);
    auto best = multistart(family, id, both, target, seed);
    if (best.cost > target) {
        const auto fallback = multistart(family, id, unitary_part, target, seed);
        if (fallback.cost <= target) best = fallback;
    }

    ComplexMatrix a = combine(family, best.x);
    ComplexMatrix q = pbar * a;
    q = 0.5 * (q + q.adjoint());
    const ComplexMatrix fixed = fix_sign(q);
    if (fixed != q) a = -a;
    out.q = fixed;
    out.a = a;
    out.residuals.structure = herm_residual(out.q);
    out.witness_residual = std::max((a * h - h.transpose() * a).norm(),
                                    (a * a.conjugate() - id).norm());
    finish(out, h, tol, (out.q * h.adjoint() - h * out.q).norm());
    const Thresholds t = thresholds(out.q, h, tol);
    const bool unitary_ok = (a * a.conjugate() - id).norm() <= t.involution;
    out.degenerate = out.degenerate || !unitary_ok;
    out.target_kind_satisfied = unitary_ok && out.hermitian && out.involutory &&
                                target_holds(SymmetryKind::Pseudo, out.q, h, tol);
    if (!unitary_ok) {
        out.message = "no A with A A* = 1 found in the family";
    } else {
        out.message = out.involutory ? "hermitian involution found"
                                     : "A A* = 1 holds but Q is not involutory";
    }
    return out;
}

ConversionResult convert(ConversionDirection d, const ComplexMatrix& op, const ComplexMatrix& h,
                         const ToleranceConfig& tol, std::uint64_t seed) {
    switch (d) {
        case ConversionDirection::PtToPseudo: return pt_to_pseudo(op, h, tol, seed);
        case ConversionDirection::PseudoToPt: return pseudo_to_pt(op, h, tol, seed);
        case ConversionDirection::GenPtToPseudo: return gen_pt_to_pseudo(op, h, tol, seed);
    }
    throw ContractError("convert: unknown direction");
}

}  // namespace ptlab

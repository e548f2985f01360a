#include "ptlab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include <Eigen/SVD>

namespace ptlab {

namespace {

using MatrixMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

/// Real dimension of the common kernel of several real-linear maps on N x N matrices.
Index common_nullity(const std::vector<MatrixMap>& maps, Index n, const ToleranceConfig& tol) {
    std::vector<RealMatrix> blocks;
    Index rows = 0;
    for (const auto& f : maps) {
        blocks.push_back(linearize(f, n, n));
        rows += blocks.back().rows();
    }
    RealMatrix l(rows, 2 * n * n);
    Index offset = 0;
    for (const auto& b : blocks) {
        l.middleRows(offset, b.rows()) = b;
        offset += b.rows();
    }
    return rank_and_nullspace(l, tol).nullspace.cols();
}

void require_partition(Index m, Index n, const char* what) {
    if (m < 0 || n < 0 || m + n < 1) {
        throw DimensionError(std::string(what) + ": need m, n >= 0 and m + n >= 1");
    }
}

RealVector im_coefficients(const ComplexMatrix& h) {
    return characteristic_coefficients(h).imag();
}

}  // namespace

std::string_view to_string(CountKind k) {
    switch (k) {
        case CountKind::RealSymmetric: return "real_symmetric";
        case CountKind::Hermitian: return "hermitian";
        case CountKind::PtSymmetric: return "pt_symmetric";
        case CountKind::PseudoHermitian: return "pseudo_hermitian";
        case CountKind::SelfAdjointOrGenPt: return "self_adjoint_or_genpt";
    }
    return "unknown";
}

CountKind count_kind_from_string(std::string_view name) {
    for (auto k : {CountKind::RealSymmetric, CountKind::Hermitian, CountKind::PtSymmetric,
                   CountKind::PseudoHermitian, CountKind::SelfAdjointOrGenPt}) {
        if (name == to_string(k)) return k;
    }
    throw ContractError("unknown count kind '" + std::string(name) + "'");
}

Index count_matrix_family(CountKind kind, Index m, Index n, const ToleranceConfig& tol) {
    require_partition(m, n, "count_matrix_family");
    const Index dim = m + n;
    const ComplexMatrix p0 = diagonal_parity_matrix(m, n);
    switch (kind) {
        case CountKind::RealSymmetric:
            return common_nullity({[](const ComplexMatrix& h) -> ComplexMatrix {
                                       return h - h.transpose();
                                   },
                                   [](const ComplexMatrix& h) -> ComplexMatrix {
                                       return h - h.conjugate();
                                   }},
                                  dim, tol);
        case CountKind::Hermitian:
            return common_nullity(
                {[](const ComplexMatrix& h) -> ComplexMatrix { return h - h.adjoint(); }}, dim, tol);
        case CountKind::PtSymmetric:
            return common_nullity({[&](const ComplexMatrix& h) -> ComplexMatrix {
                                      return p0 * h - h.conjugate() * p0;
                                  }},
                                  dim, tol);
        case CountKind::PseudoHermitian:
            return common_nullity({[&](const ComplexMatrix& h) -> ComplexMatrix {
                                      return p0 * h - h.adjoint() * p0;
                                  }},
                                  dim, tol);
        case CountKind::SelfAdjointOrGenPt:
            break;
    }
    throw ContractError(
        "count_matrix_family: the self-adjoint family is a variety; use "
        "count_real_charpoly_variety");
}

Index count_operator_orbit(CountKind kind, Index m, Index n, const ToleranceConfig& tol) {
    require_partition(m, n, "count_operator_orbit");
    const Index dim = m + n;
    const ComplexMatrix p0 = diagonal_parity_matrix(m, n);
    auto commutator = [&](const ComplexMatrix& x) -> ComplexMatrix { return x * p0 - p0 * x; };
    switch (kind) {
        case CountKind::PtSymmetric:
            // GL(N, R) over the real stabilizer of P0.
            return dim * dim -
                   common_nullity({commutator,
                                   [](const ComplexMatrix& x) -> ComplexMatrix {
                                       return x - x.conjugate();
                                   }},
                                  dim, tol);
        case CountKind::PseudoHermitian:
            // U(N) over the unitary stabilizer of P~0.
            return dim * dim -
                   common_nullity({commutator,
                                   [](const ComplexMatrix& x) -> ComplexMatrix {
                                       return x + x.adjoint();
                                   }},
                                  dim, tol);
        default:
            return 0;
    }
}

ComplexVector characteristic_coefficients(const ComplexMatrix& h) {
    require_square(h, "characteristic_coefficients");
    const Index n = h.rows();
    ComplexVector c(n);
    // Faddeev-LeVerrier: M_k = H M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(H M_k) / k.
    ComplexMatrix mk = ComplexMatrix::Identity(n, n);
    for (Index k = 1; k <= n; ++k) {
        const ComplexMatrix hm = h * mk;
        const Complex ck = -hm.trace() / static_cast<double>(k);
        c(n - k) = ck;
        mk = hm + ck * ComplexMatrix::Identity(n, n);
    }
    return c;
}

ComplexMatrix random_self_adjoint(Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(0.5, 2.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    DiagMetricSelfAdjointParams p;
    p.omegas.resize(n);
    p.a.resize(n, n);
    p.b.resize(n, n);
    for (Index i = 0; i < n; ++i) p.omegas(i) = pos(rng);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            p.a(i, j) = normal(rng);
            p.b(i, j) = normal(rng);
        }
    }
    return construct_self_adjoint_from_diag_metric(p);
}

VarietyCount count_real_charpoly_variety(Index n, const ComplexMatrix& base_point,
                                         const ToleranceConfig& tol, std::uint64_t seed) {
    if (n < 1) throw DimensionError("count_real_charpoly_variety: N must be at least 1");
    if (base_point.rows() != n || base_point.cols() != n) {
        throw DimensionError("count_real_charpoly_variety: base point is not N x N");
    }
    require_finite(base_point, "count_real_charpoly_variety");

    VarietyCount out;
    ComplexMatrix base = base_point;
    const Index unknowns = 2 * n * n;
    for (int attempt = 1; attempt <= 8; ++attempt) {
        out.attempts = attempt;
        const double bn = std::max(frobenius_norm(base), 1.0);
        const RealVector im0 = im_coefficients(base);
        if (im0.norm() > std::max(tol.abs_tol, tol.rel_tol * std::pow(bn, static_cast<double>(n)))) {
            throw ContractError("count_real_charpoly_variety: base point has a non-real "
                                "characteristic polynomial");
        }
        const double step = 1e-6 * bn;
        RealMatrix jac(n, unknowns);
        const RealVector x0 = vectorize(base);
        for (Index k = 0; k < unknowns; ++k) {
            RealVector xp = x0, xm = x0;
            xp(k) += step;
            xm(k) -= step;
            jac.col(k) =
                (im_coefficients(devectorize(xp, n, n)) - im_coefficients(devectorize(xm, n, n))) /
                (2.0 * step);
        }
        const RealVector s = Eigen::JacobiSVD<RealMatrix>(jac).singularValues();
        const double cutoff = 1e-7 * (s.size() ? s(0) : 0.0);
        Index rank = 0;
        for (Index i = 0; i < s.size(); ++i) {
            if (s(i) > cutoff) ++rank;
        }
        out.rank = rank;
        out.dimension = unknowns - rank;
        if (rank == n) {
            out.determinate = true;
            return out;
        }
        base = random_self_adjoint(n, seed + static_cast<std::uint64_t>(attempt));
    }
    out.determinate = false;
    return out;
}

VarietyCount count_real_charpoly_variety(Index n, const ToleranceConfig& tol, std::uint64_t seed) {
    if (n < 1) throw DimensionError("count_real_charpoly_variety: N must be at least 1");
    return count_real_charpoly_variety(n, random_self_adjoint(n, seed), tol, seed);
}

Index expected_count(CountKind kind, Index m, Index n) {
    const Index dim = m + n;
    switch (kind) {
        case CountKind::RealSymmetric: return dim * (dim + 1) / 2;
        case CountKind::Hermitian: return dim * dim;
        case CountKind::PtSymmetric:
        case CountKind::PseudoHermitian: return dim * dim + 2 * m * n;
        case CountKind::SelfAdjointOrGenPt: return 2 * dim * dim - dim;
    }
    return 0;
}

std::vector<CountReport> table1_report(Index max_dim, const ToleranceConfig& tol,
                                       std::uint64_t seed, Execution exec) {
    if (max_dim < 2) throw DimensionError("table1_report: max_dim must be at least 2");
    std::vector<CountReport> jobs;
    for (Index dim = 1; dim <= max_dim; ++dim) {
        jobs.push_back({CountKind::RealSymmetric, dim, 0});
        jobs.push_back({CountKind::Hermitian, dim, 0});
        for (auto kind : {CountKind::PtSymmetric, CountKind::PseudoHermitian}) {
            for (Index n = 0; 2 * n <= dim; ++n) jobs.push_back({kind, dim - n, n});
        }
        jobs.push_back({CountKind::SelfAdjointOrGenPt, dim, 0});
    }
    return map_indexed(
        jobs.size(),
        [&](std::size_t i) {
            CountReport r = jobs[i];
            if (r.kind == CountKind::SelfAdjointOrGenPt) {
                const VarietyCount v = count_real_charpoly_variety(
                    r.m, tol, seed + static_cast<std::uint64_t>(r.m));
                r.matrix_dim = v.determinate ? v.dimension : -1;
            } else {
                r.matrix_dim = count_matrix_family(r.kind, r.m, r.n, tol);
                r.orbit_dim = count_operator_orbit(r.kind, r.m, r.n, tol);
            }
            r.total = r.matrix_dim + r.orbit_dim;
            r.expected = expected_count(r.kind, r.m, r.n);
            r.match = r.matrix_dim >= 0 && r.total == r.expected;
            return r;
        },
        exec);
}

std::vector<Table1Column> table1_columns(const std::vector<CountReport>& reports) {
    std::map<Index, Table1Column> cols;
    std::map<Index, Index> pt, pseudo;
    for (const auto& r : reports) {
        const Index dim = r.m + r.n;
        if (dim < 2) continue;
        Table1Column& c = cols[dim];
        c.n = dim;
        switch (r.kind) {
            case CountKind::RealSymmetric: c.real_symmetric = r.total; break;
            case CountKind::Hermitian: c.hermitian = r.total; break;
            case CountKind::PtSymmetric: pt[dim] = std::max(pt[dim], r.total); break;
            case CountKind::PseudoHermitian: pseudo[dim] = std::max(pseudo[dim], r.total); break;
            case CountKind::SelfAdjointOrGenPt: c.self_adjoint = r.total; break;
        }
    }
    std::vector<Table1Column> out;
    for (auto& [dim, c] : cols) {
        c.pt_or_pseudo = pt[dim];
        c.pt_pseudo_agree = pt[dim] == pseudo[dim];
        out.push_back(c);
    }
    return out;
}

std::string to_csv(const std::vector<CountReport>& reports) {
    std::ostringstream os;
    os << "kind,m,n,matrix_dim,orbit_dim,total,expected,match\n";
    for (const auto& r : reports) {
        os << to_string(r.kind) << ',' << r.m << ',' << r.n << ',' << r.matrix_dim << ','
           << r.orbit_dim << ',' << r.total << ',' << r.expected << ','
           << (r.match ? "true" : "false") << '\n';
    }
    return os.str();
}

}  // namespace ptlab

#include "ptlab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/SVD>

#include "ptlab/catalog2x2.hpp"

namespace ptlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Cluster {
    std::vector<std::size_t> members;
    Complex mean;
    double radius = 0.0;
    std::vector<Index> blocks;
    bool consistent = true;
};

RealVector singular_values(const ComplexMatrix& m) {
    return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues();
}

Index count_below(const RealVector& s, double threshold) {
    Index k = 0;
    for (Index i = 0; i < s.size(); ++i) {
        if (s(i) <= threshold) ++k;
    }
    return k;
}

double spectral_norm(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return singular_values(m)(0);
}

/// Nullities of ((H - mu) / s)^j for j = 1..k, capped at k.
std::vector<Index> nullity_staircase(const ComplexMatrix& h, Complex mu, double s, Index k,
                                     const ToleranceConfig& tol) {
    const Index n = h.rows();
    const ComplexMatrix shifted = (h - mu * ComplexMatrix::Identity(n, n)) / s;
    std::vector<Index> d;
    ComplexMatrix power = ComplexMatrix::Identity(n, n);
    for (Index j = 1; j <= k; ++j) {
        power = power * shifted;
        const double tau = tol.rank_tol_factor * kEps * static_cast<double>(n * j);
        d.push_back(std::min(count_below(singular_values(power), tau), k));
    }
    return d;
}

Complex mean_of(const std::vector<Complex>& ev, const std::vector<std::size_t>& idx) {
    Complex sum(0.0, 0.0);
    for (auto i : idx) sum += ev[i];
    return sum / static_cast<double>(idx.size());
}

/// Splits `idx` in two by deleting the longest edge of its minimum spanning tree.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_longest_edge(
    const std::vector<Complex>& ev, const std::vector<std::size_t>& idx) {
    const std::size_t k = idx.size();
    std::vector<bool> in_tree(k, false);
    std::vector<double> best(k, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> parent(k, 0);
    best[0] = 0.0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<double> lengths;
    for (std::size_t step = 0; step < k; ++step) {
        std::size_t u = k;
        for (std::size_t i = 0; i < k; ++i) {
            if (!in_tree[i] && (u == k || best[i] < best[u])) u = i;
        }
        in_tree[u] = true;
        if (step > 0) {
            edges.emplace_back(parent[u], u);
            lengths.push_back(best[u]);
        }
        for (std::size_t i = 0; i < k; ++i) {
            const double d = std::abs(ev[idx[u]] - ev[idx[i]]);
            if (!in_tree[i] && d < best[i]) {
                best[i] = d;
                parent[i] = u;
            }
        }
    }
    const std::size_t cut =
        static_cast<std::size_t>(std::max_element(lengths.begin(), lengths.end()) - lengths.begin());
    // Union-find over the remaining edges.
    std::vector<std::size_t> root(k);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](std::size_t x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (e != cut) root[find(edges[e].first)] = find(edges[e].second);
    }
    const std::size_t side = find(edges[cut].first);
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < k; ++i) {
        (find(i) == side ? out.first : out.second).push_back(idx[i]);
    }
    return out;
}

/// Segre blocks from the nullity staircase; false if the staircase is not a valid one.
bool blocks_from_staircase(const std::vector<Index>& d, std::vector<Index>& blocks) {
    const Index k = static_cast<Index>(d.size());
    std::vector<Index> at_least(k + 2, 0);  // at_least[j]: number of blocks of size >= j
    Index prev = 0;
    for (Index j = 1; j <= k; ++j) {
        at_least[j] = d[j - 1] - prev;
        prev = d[j - 1];
    }
    bool ok = d.front() > 0 && d.back() == k;
    for (Index j = 1; j <= k; ++j) {
        if (at_least[j] < 0 || at_least[j + 1] > at_least[j]) ok = false;
    }
    blocks.clear();
    if (!ok) {
        blocks.assign(k, 1);
        return false;
    }
    for (Index j = k; j >= 1; --j) {
        for (Index c = 0; c < at_least[j] - at_least[j + 1]; ++c) blocks.push_back(j);
    }
    return true;
}

void classify_component(const ComplexMatrix& h, double h2, const std::vector<Complex>& ev,
                        const std::vector<std::size_t>& idx, const ToleranceConfig& tol,
                        std::vector<Cluster>& out) {
    const Complex mu = mean_of(ev, idx);
    const Index k = static_cast<Index>(idx.size());
    const double s = std::max({h2, std::abs(mu), std::numeric_limits<double>::min()});
    const std::vector<Index> d = nullity_staircase(h, mu, s, k, tol);
    if (d.back() >= k || k == 1) {
        Cluster c;
        c.members = idx;
        c.mean = mu;
        for (auto i : idx) c.radius = std::max(c.radius, std::abs(ev[i] - mu));
        c.consistent = blocks_from_staircase(d, c.blocks);
        out.push_back(std::move(c));
        return;
    }
    auto [left, right] = split_longest_edge(ev, idx);
    classify_component(h, h2, ev, left, tol, out);
    classify_component(h, h2, ev, right, tol, out);
}

}  // namespace

std::string_view to_string(RealityClass c) {
    switch (c) {
        case RealityClass::AllRealDiagonalizable: return "AllRealDiagonalizable";
        case RealityClass::AllRealDefective: return "AllRealDefective";
        case RealityClass::ConjugatePairs: return "ConjugatePairs";
        case RealityClass::Mixed: return "Mixed";
        case RealityClass::NotConjugateClosed: return "NotConjugateClosed";
    }
    return "unknown";
}

SpectrumReport classify_spectrum(const ComplexMatrix& h, const ToleranceConfig& tol,
                                 const std::optional<SuppliedSymmetry>& symmetry) {
    require_square(h, "classify_spectrum");
    require_finite(h, "classify_spectrum");
    tol.validate();

    SpectrumReport report;
    if (symmetry) {
        if (symmetry->op.rows() != h.rows() || symmetry->op.cols() != h.cols()) {
            throw DimensionError("classify_spectrum: operator and matrix shapes differ");
        }
        report.symmetry = check_symmetry(symmetry->kind, symmetry->op, h, tol);
    }
    if (h.rows() == 0) return report;

    const EigenDecomposition dec = eigen_decompose(h, tol);
    report.eigenvalues = dec.values;
    const double hnorm = frobenius_norm(h);
    const double base = 10.0 * tol.rel_tol * hnorm;
    report.cluster_tolerance = base;

    std::vector<std::size_t> all(dec.values.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<Cluster> clusters;
    classify_component(h, spectral_norm(h), dec.values, all, tol, clusters);
    std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
        if (a.mean.real() != b.mean.real()) return a.mean.real() < b.mean.real();
        return a.mean.imag() < b.mean.imag();
    });

    std::vector<std::string> notes;
    for (const Cluster& c : clusters) {
        if (!c.consistent) {
            report.indeterminate = true;
            notes.push_back("rank staircase inconsistent near " + format_real(c.mean.real()) +
                            (c.mean.imag() < 0 ? "" : "+") + format_real(c.mean.imag()) + "i");
        }
    }
    for (std::size_t a = 0; a < clusters.size(); ++a) {
        for (std::size_t b = a + 1; b < clusters.size(); ++b) {
            double gap = std::numeric_limits<double>::infinity();
            for (auto i : clusters[a].members) {
                for (auto j : clusters[b].members) {
                    gap = std::min(gap, std::abs(dec.values[i] - dec.values[j]));
                }
            }
            if (gap <= 10.0 * base) {
                report.indeterminate = true;
                notes.push_back("eigenvalue clusters closer than 10x the cluster tolerance");
            }
        }
    }

    bool any_real = false, any_complex = false, defective = false, closed = true;
    for (const Cluster& c : clusters) {
        SegreEntry e;
        e.real = std::abs(c.mean.imag()) <= base;
        e.eigenvalue = e.real ? Complex(c.mean.real(), 0.0) : c.mean;
        e.blocks = c.blocks;
        for (Index b : e.blocks) defective = defective || b > 1;
        any_real = any_real || e.real;
        any_complex = any_complex || !e.real;
        report.segre.push_back(std::move(e));
    }
    for (std::size_t a = 0; a < clusters.size(); ++a) {
        if (report.segre[a].real) continue;
        bool paired = false;
        for (std::size_t b = 0; b < clusters.size() && !paired; ++b) {
            if (b == a || report.segre[b].real) continue;
            const double slack =
                std::max(10.0 * base, 2.0 * (clusters[a].radius + clusters[b].radius));
            paired = std::abs(clusters[a].mean - std::conj(clusters[b].mean)) <= slack &&
                     clusters[a].blocks == clusters[b].blocks;
        }
        closed = closed && paired;
    }
    if (!closed) {
        report.reality_class = RealityClass::NotConjugateClosed;
    } else if (!any_complex) {
        report.reality_class =
            defective ? RealityClass::AllRealDefective : RealityClass::AllRealDiagonalizable;
    } else {
        report.reality_class = any_real ? RealityClass::Mixed : RealityClass::ConjugatePairs;
    }
    if (report.symmetry && report.symmetry->holds) report.unbroken = !any_complex;

    for (std::size_t i = 0; i < notes.size(); ++i) {
        report.diagnostic += (i ? "; " : "") + notes[i];
    }
    return report;
}

AlignedEigenvectors align_pt_phases(const ComplexMatrix& p, const ComplexMatrix& h,
                                    const ToleranceConfig& tol) {
    require_square(h, "align_pt_phases");
    require_same_shape(p, h, "align_pt_phases");
    const SymmetryReport sym = check_symmetry(SymmetryKind::PT, p, h, tol);
    if (!sym.holds) {
        throw ContractError("align_pt_phases: P H = H* P fails (residual " +
                            format_real(sym.residual) + ")");
    }
    const EigenDecomposition dec = eigen_decompose(h, tol);
    const double scale = 10.0 * tol.rel_tol * std::max(frobenius_norm(h), 1.0);
    for (std::size_t k = 0; k < dec.values.size(); ++k) {
        const Complex e = dec.values[k];
        if (std::abs(e.imag()) > scale) {
            throw ContractError("align_pt_phases: PT symmetry is broken, eigenvalue " +
                                format_real(e.real()) + (e.imag() < 0 ? "" : "+") +
                                format_real(e.imag()) + "i is complex");
        }
        if (k > 0 && std::abs(e - dec.values[k - 1]) <= scale) {
            throw ContractError("align_pt_phases: eigenvalue " + format_real(e.real()) +
                                " is not simple");
        }
    }

    AlignedEigenvectors out;
    out.vectors = dec.vectors;
    const double threshold = std::max(tol.abs_tol, tol.rel_tol * frobenius_norm(p));
    for (Index k = 0; k < out.vectors.cols(); ++k) {
        ComplexVector v = out.vectors.col(k);
        const Complex lam = v.dot(p * v.conjugate()) / v.squaredNorm();
        out.pt_eigenvalues.push_back(lam);
        v *= std::polar(1.0, 0.5 * std::arg(lam));
        out.vectors.col(k) = v;
        out.eigenvalues.push_back(dec.values[static_cast<std::size_t>(k)].real());
        out.max_residual = std::max(out.max_residual, (p * v.conjugate() - v).norm());
    }
    if (out.max_residual > threshold) {
        throw NumericalError("align_pt_phases: aligned vectors miss P conj(v) = v by " +
                             format_real(out.max_residual));
    }
    return out;
}

JordanChain jordan_chain(const ComplexMatrix& h, Complex lambda, const ToleranceConfig& tol,
                         Complex alpha) {
    require_square(h, "jordan_chain");
    require_finite(h, "jordan_chain");
    const Index n = h.rows();
    const double hnorm = std::max(frobenius_norm(h), 1.0);
    const ComplexMatrix m = h - lambda * ComplexMatrix::Identity(n, n);

    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector& sv = svd.singularValues();
    const double cutoff = std::max(tol.abs_tol * hnorm, rank_threshold(sv.size() ? sv(0) : 0.0, tol));
    const Index d1 = count_below(sv, cutoff);
    if (d1 == 0) {
        throw ContractError("jordan_chain: lambda is not an eigenvalue (smallest singular value " +
                            format_real(sv(n - 1)) + ")");
    }
    if (d1 > 1) {
        throw ContractError("jordan_chain: geometric multiplicity " + std::to_string(d1) +
                            " is not supported");
    }

    // Chain length from the nullity staircase of powers of M.
    Index length = 1;
    {
        ComplexMatrix power = m;
        Index prev = 1;
        for (Index j = 2; j <= n; ++j) {
            power = power * m;
            const RealVector s = singular_values(power);
            const double cut_j =
                std::max(tol.abs_tol * std::pow(hnorm, static_cast<double>(j)),
                         rank_threshold(s(0), tol));
            const Index dj = count_below(s, cut_j);
            if (dj <= prev) break;
            prev = dj;
            length = j;
        }
    }
    if (length < 2) throw ContractError("jordan_chain: lambda is not defective");

    // Truncated pseudoinverse dropping the null direction.
    ComplexMatrix pinv = ComplexMatrix::Zero(n, n);
    for (Index i = 0; i < n - d1; ++i) {
        pinv += svd.matrixV().col(i) * (1.0 / sv(i)) * svd.matrixU().col(i).adjoint();
    }

    JordanChain chain;
    chain.eigenvalue = lambda;
    chain.alpha = alpha;
    ComplexVector phi0 = svd.matrixV().col(n - 1);
    Index big = 0;
    phi0.cwiseAbs().maxCoeff(&big);
    phi0 *= std::polar(1.0, -std::arg(phi0(big)));
    std::vector<ComplexVector> base{phi0};
    for (Index k = 1; k < length; ++k) base.push_back(pinv * base.back());

    chain.vectors.push_back(base[0]);
    for (Index k = 1; k < length; ++k) chain.vectors.push_back(base[k] + alpha * base[k - 1]);

    chain.residual = (m * chain.vectors[0]).norm();
    for (Index k = 1; k < length; ++k) {
        chain.residual = std::max(chain.residual, (m * chain.vectors[k] - chain.vectors[k - 1]).norm());
    }
    const double threshold = std::max(tol.abs_tol, tol.rel_tol) * hnorm;
    if (chain.residual > threshold) {
        throw NumericalError("jordan_chain: chain relations fail with residual " +
                             format_real(chain.residual));
    }
    return chain;
}

PtJordan build_pt_jordan(Index m, Index n, double lambda) {
    if (m < 1 || n < 1) throw DimensionError("build_pt_jordan: m and n must be at least 1");
    PtBlockParams p;
    p.m = m;
    p.n = n;
    p.a = jordan_block(m, lambda).real();
    p.b = RealMatrix::Zero(m, n);
    p.b(m - 1, 0) = 1.0;
    p.c = RealMatrix::Zero(n, m);
    p.d = jordan_block(n, lambda).real();

    PtJordan out;
    out.h0 = construct_pt_block(p);
    out.lambda_matrix = ComplexMatrix::Identity(m + n, m + n);
    for (Index i = m; i < m + n; ++i) out.lambda_matrix(i, i) = Complex(0.0, 1.0);
    return out;
}

std::string_view to_string(DegenerationFamily f) {
    return f == DegenerationFamily::PT2 ? "pt2" : "pseudo2";
}

DegenerationFamily degeneration_family_from_string(std::string_view name) {
    if (name == "pt2") return DegenerationFamily::PT2;
    if (name == "pseudo2") return DegenerationFamily::Pseudo2;
    throw ContractError("unknown degeneration family '" + std::string(name) + "'");
}

PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw DimensionError("fit_power_law: need at least two matching samples");
    }
    const double count = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw ContractError("fit_power_law: samples must be positive");
        }
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = count * sxx - sx * sx;
    if (denom == 0.0) throw ContractError("fit_power_law: abscissae coincide");
    PowerFit fit;
    fit.slope = (count * sxy - sx * sy) / denom;
    fit.prefactor = std::exp((sy - fit.slope * sx) / count);
    return fit;
}

DegenerationScan degeneration_scan(double u, double gamma, const std::vector<double>& epsilons,
                                   DegenerationFamily family, Execution exec) {
    if (!(u * gamma > 0.0)) throw ContractError("degeneration_scan: u*gamma > 0 violated");
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0 && epsilons[i] < 1.0)) {
            throw ContractError("degeneration_scan: epsilon must lie in (0, 1)");
        }
        if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
            throw ContractError("degeneration_scan: epsilons must be strictly decreasing");
        }
    }

    struct Row {
        double omega_small, omega_large, norm_plus, norm_minus;
    };
    const auto rows = map_indexed(
        epsilons.size(),
        [&](std::size_t i) {
            catalog::Pt2Params p;
            p.gamma = gamma;
            p.rho = gamma * std::sqrt(1.0 - epsilons[i]);
            p.u = u;
            p.v = 0.0;
            ComplexMatrix w;
            ComplexVector ep, em;
            if (family == DegenerationFamily::PT2) {
                const auto f = catalog::pt2_family(p);
                w = f.metric->w0;
                ep = f.eigvec_plus;
                em = f.eigvec_minus;
            } else {
                const auto f = catalog::pseudo2_family(p);
                w = f.metric->w0;
                ep = f.eigvec_plus;
                em = f.eigvec_minus;
            }
            const RealVector omega = hermitian_eigen(w).first;
            return Row{omega(0), omega(omega.size() - 1), ep.dot(w * ep).real(),
                       em.dot(w * em).real()};
        },
        exec);

    DegenerationScan scan;
    scan.family = family;
    scan.u = u;
    scan.gamma = gamma;
    scan.epsilons = epsilons;
    for (const Row& r : rows) {
        scan.omega_small.push_back(r.omega_small);
        scan.omega_large.push_back(r.omega_large);
        scan.norm_plus.push_back(r.norm_plus);
        scan.norm_minus.push_back(r.norm_minus);
    }
    if (epsilons.size() >= 2) {
        auto magnitude = [](std::vector<double> v) {
            for (double& x : v) x = std::abs(x);
            return v;
        };
        scan.fit_omega_small = fit_power_law(epsilons, magnitude(scan.omega_small));
        scan.fit_norm_plus = fit_power_law(epsilons, magnitude(scan.norm_plus));
        scan.fit_norm_minus = fit_power_law(epsilons, magnitude(scan.norm_minus));
    }
    return scan;
}

std::string to_csv(const DegenerationScan& scan) {
    std::ostringstream os;
    os << "epsilon,omega_small,omega_large,norm_plus,norm_minus\n";
    for (std::size_t i = 0; i < scan.epsilons.size(); ++i) {
        os << format_real(scan.epsilons[i]) << ',' << format_real(scan.omega_small[i]) << ','
           << format_real(scan.omega_large[i]) << ',' << format_real(scan.norm_plus[i]) << ','
           << format_real(scan.norm_minus[i]) << '\n';
    }
    return os.str();
}

std::vector<double> logspace(double lo_exp, double hi_exp, std::size_t count) {
    std::vector<double> out;
    if (count == 1) {
        out.push_back(std::pow(10.0, lo_exp));
        return out;
    }
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        out.push_back(std::pow(10.0, lo_exp + t * (hi_exp - lo_exp)));
    }
    return out;
}

}  // namespace ptlab

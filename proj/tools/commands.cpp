#include "commands.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "ptlab/catalog2x2.hpp"
#include "ptlab/counting.hpp"
#include "ptlab/metric.hpp"
#include "ptlab/spectra.hpp"

namespace ptlab::cli {

namespace {

/// Reads typed parameters and rejects keys nobody asked for.
class Params {
public:
    explicit Params(const Json& j) : j_(j) {
        if (!j_.is_object()) throw ParseError("parameters must be a JSON object");
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    double real(const std::string& key, double fallback) {
        used_.insert(key);
        if (!j_.contains(key)) return fallback;
        const Json& v = j_.at(key);
        if (!v.is_number()) throw ParseError("parameter '" + key + "' must be a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) throw ParseError("parameter '" + key + "' must be finite");
        return x;
    }

    Index integer(const std::string& key, Index fallback) {
        used_.insert(key);
        if (!j_.contains(key)) return fallback;
        const Json& v = j_.at(key);
        if (!v.is_number_integer()) throw ParseError("parameter '" + key + "' must be an integer");
        return static_cast<Index>(v.get<long long>());
    }

    std::string text(const std::string& key, const std::string& fallback) {
        used_.insert(key);
        if (!j_.contains(key)) return fallback;
        const Json& v = j_.at(key);
        if (!v.is_string()) throw ParseError("parameter '" + key + "' must be a string");
        return v.get<std::string>();
    }

    const Json* raw(const std::string& key) {
        used_.insert(key);
        return j_.contains(key) ? &j_.at(key) : nullptr;
    }

    void finish() const {
        for (const auto& [key, value] : j_.items()) {
            if (!used_.count(key)) throw ParseError("unknown parameter '" + key + "'");
        }
    }

private:
    const Json& j_;
    std::set<std::string> used_;
};

class ConstraintError : public Error {
public:
    using Error::Error;
};

/// Maps library exceptions onto the exit-code contract.
CommandResult guarded(const std::function<CommandResult()>& body, int contract_code) {
    CommandResult r;
    try {
        return body();
    } catch (const ParseError& e) {
        r.exit_code = exit_code::parse;
        r.diagnostic = e.what();
    } catch (const Json::exception& e) {
        r.exit_code = exit_code::parse;
        r.diagnostic = std::string("bad JSON value: ") + e.what();
    } catch (const ConstraintError& e) {
        r.exit_code = exit_code::constraint;
        r.diagnostic = e.what();
    } catch (const DimensionError& e) {
        r.exit_code = exit_code::dimension;
        r.diagnostic = e.what();
    } catch (const ContractError& e) {
        r.exit_code = contract_code;
        r.diagnostic = e.what();
    } catch (const Error& e) {
        r.exit_code = exit_code::internal;
        r.diagnostic = e.what();
    }
    return r;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json complex_list(const std::vector<Complex>& zs) {
    Json out = Json::array();
    for (Complex z : zs) out.push_back(complex_to_json(z));
    return out;
}

Json vector_json(const ComplexVector& v) {
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

Json symmetry_json(const SymmetryReport& s) {
    Json j;
    j["kind"] = std::string(to_string(s.kind));
    j["holds"] = s.holds;
    j["residual"] = s.residual;
    j["threshold"] = s.threshold;
    return j;
}

Json spectrum_json(const SpectrumReport& r) {
    Json j;
    j["eigenvalues"] = complex_list(r.eigenvalues);
    j["reality_class"] = std::string(to_string(r.reality_class));
    Json segre = Json::array();
    for (const auto& e : r.segre) {
        Json s;
        s["eigenvalue"] = complex_to_json(e.eigenvalue);
        s["real"] = e.real;
        s["blocks"] = e.blocks;
        segre.push_back(std::move(s));
    }
    j["segre"] = std::move(segre);
    j["unbroken"] = r.unbroken ? Json(*r.unbroken) : Json(nullptr);
    j["indeterminate"] = r.indeterminate;
    j["diagnostic"] = r.diagnostic;
    return j;
}

double pt_residual(const ComplexMatrix& p, const ComplexMatrix& h, const ToleranceConfig& tol) {
    return check_symmetry(SymmetryKind::PT, p, h, tol).residual;
}

double pseudo_residual(const ComplexMatrix& p, const ComplexMatrix& h, const ToleranceConfig& tol) {
    return check_symmetry(SymmetryKind::Pseudo, p, h, tol).residual;
}

catalog::Pt2Params read_pt2(Params& p) {
    catalog::Pt2Params out;
    out.e = p.real("e", 0.0);
    out.gamma = p.real("gamma", 1.0);
    out.rho = p.real("rho", 0.0);
    out.delta = p.real("delta", 0.0);
    out.u = p.real("u", 1.0);
    out.v = p.real("v", 0.0);
    out.theta = p.real("theta", 0.0);
    out.phi = p.real("phi", 0.0);
    return out;
}

Json pt2_json(const catalog::Pt2Params& p) {
    Json j;
    j["e"] = p.e;
    j["gamma"] = p.gamma;
    j["rho"] = p.rho;
    j["delta"] = p.delta;
    j["u"] = p.u;
    j["v"] = p.v;
    j["theta"] = p.theta;
    j["phi"] = p.phi;
    return j;
}

/// A metric was asked for explicitly: its constraints become hard errors.
void require_metric_if_requested(Params& params, const catalog::Pt2Params& p) {
    if (!params.has("u") && !params.has("v")) return;
    if (auto why = catalog::metric_constraint_violation(p)) throw ConstraintError(*why);
}

RealMatrix random_real(Index r, Index c, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    RealMatrix m(r, c);
    for (Index i = 0; i < r; ++i) {
        for (Index k = 0; k < c; ++k) m(i, k) = normal(rng);
    }
    return m;
}

ComplexMatrix random_complex(Index r, Index c, std::mt19937_64& rng) {
    const RealMatrix re = random_real(r, c, rng);
    const RealMatrix im = random_real(r, c, rng);
    ComplexMatrix m(r, c);
    m.real() = re;
    m.imag() = im;
    return m;
}

struct Built {
    Json params;
    std::map<std::string, ComplexMatrix> matrices;
    Json checks = Json::object();
    std::optional<std::string> symmetry_kind;
    Json notes = Json::array();
};

Built build_family(const std::string& family, Params& params, const RunConfig& cfg) {
    using namespace catalog;
    Built b;
    const ToleranceConfig& tol = cfg.tol;
    if (family == "pt2" || family == "pt2-r1" || family == "pt2-r2") {
        const Pt2Params p = read_pt2(params);
        require_metric_if_requested(params, p);
        b.params = pt2_json(p);
        b.symmetry_kind = "pt";
        const Pt2Family f = pt2_family(p);
        ComplexMatrix h = f.h0, op = pauli().sigma3;
        std::optional<ComplexMatrix> w;
        if (f.metric) w = f.metric->w0;
        if (family != "pt2") {
            const Pt2Transformed t = pt2_transformed(family == "pt2-r1" ? Chart::R1 : Chart::R2, p);
            b.checks["similarity_residual"] =
                (t.r * f.h0 * checked_inverse(t.r, "construct") - t.h).norm();
            b.matrices["r"] = t.r;
            h = t.h;
            op = t.p;
            w = t.w;
        }
        b.matrices["h"] = h;
        b.matrices["operator"] = op;
        b.checks["pt_residual"] = pt_residual(op, h, tol);
        if (w) {
            b.matrices["w"] = *w;
            b.checks["metric_residual"] = self_adjointness_residual(*w, h);
        } else {
            b.notes.push_back("no metric: " + f.metric_reason);
        }
        b.checks["eigenvalues"] = complex_list({f.e_plus, f.e_minus});
    } else if (family == "pseudo2") {
        const Pt2Params p = read_pt2(params);
        require_metric_if_requested(params, p);
        b.params = pt2_json(p);
        b.symmetry_kind = "pseudo";
        const Pseudo2Family f = pseudo2_family(p);
        b.matrices["h"] = f.h;
        b.matrices["operator"] = f.ptilde;
        b.matrices["u"] = f.u;
        b.checks["pseudo_residual"] = pseudo_residual(f.ptilde, f.h, tol);
        if (f.w) {
            b.matrices["w"] = *f.w;
            b.checks["metric_residual"] = self_adjointness_residual(*f.w, f.h);
        } else {
            b.notes.push_back("no metric: " + f.metric_reason);
        }
        b.checks["eigenvalues"] = complex_list({f.e_plus, f.e_minus});
    } else if (family == "pt2-jordan") {
        const double e = params.real("e", 0.0);
        const double gamma = params.real("gamma", 1.0);
        const double delta = params.real("delta", 0.0);
        const double alpha = params.real("alpha", 0.0);
        b.params = {{"e", e}, {"gamma", gamma}, {"delta", delta}, {"alpha", alpha}};
        b.symmetry_kind = "pt";
        const ComplexMatrix h = pt2_jordan_hamiltonian(e, gamma, delta);
        const JordanChain2 c = pt2_jordan_chain(e, gamma, delta, 1.0, alpha);
        b.matrices["h"] = h;
        b.matrices["operator"] = pauli().sigma3;
        b.matrices["phi0"] = c.phi0;
        b.matrices["phi1"] = c.phi1;
        const ComplexMatrix m = h - e * ComplexMatrix::Identity(2, 2);
        b.checks["pt_residual"] = pt_residual(pauli().sigma3, h, tol);
        b.checks["chain_residual"] =
            std::max((m * c.phi0).norm(), (m * c.phi1 - c.phi0).norm());
    } else if (family == "pt-jordan") {
        const Index m = params.integer("m", 1);
        const Index n = params.integer("n", 1);
        const double lambda = params.real("lambda", 0.0);
        if (m < 1 || n < 1) throw ConstraintError("m >= 1 and n >= 1 violated");
        b.params = {{"m", m}, {"n", n}, {"lambda", lambda}};
        b.symmetry_kind = "pt";
        const PtJordan pj = build_pt_jordan(m, n, lambda);
        b.matrices["h"] = pj.h0;
        b.matrices["lambda"] = pj.lambda_matrix;
        b.matrices["operator"] = diagonal_parity_matrix(m, n);
        b.checks["jordan_residual"] = (pj.lambda_matrix * pj.h0 * pj.lambda_matrix.inverse() -
                                       jordan_block(m + n, lambda))
                                          .norm();
        b.checks["pt_residual"] = pt_residual(diagonal_parity_matrix(m, n), pj.h0, tol);
    } else if (family == "genpt2") {
        GenPt2Params p;
        p.theta = params.real("theta", 0.0);
        p.delta = params.real("delta", 0.0);
        p.phi = params.real("phi", 0.0);
        p.alpha = params.real("alpha", 0.0);
        b.params = {{"theta", p.theta}, {"delta", p.delta}, {"phi", p.phi}, {"alpha", p.alpha}};
        const ComplexMatrix pbar = genpt2_operator(p);
        b.matrices["operator"] = pbar;
        b.checks["antilinear_residual"] =
            (pbar * pbar.conjugate() - ComplexMatrix::Identity(2, 2)).norm();
    } else if (family == "cross") {
        const CrossCase c = cross_case_from_string(params.text("case", "ptilde_for_h0"));
        const Pt2Params p = read_pt2(params);
        b.params = pt2_json(p);
        b.params["case"] = std::string(to_string(c));
        ComplexMatrix op;
        try {
            op = cross_operators(c, p, tol.abs_tol);
        } catch (const ContractError& e) {
            throw ConstraintError(e.what());
        }
        ComplexMatrix h;
        SymmetryKind kind = SymmetryKind::Pseudo;
        switch (c) {
            case CrossCase::PtildeForH0: h = pt2_hamiltonian(p); break;
            case CrossCase::PForHtilde0:
                h = pseudo2_hamiltonian(p);
                kind = SymmetryKind::PT;
                break;
            case CrossCase::Delta1:
                h = pseudo2_family(p).h;
                kind = SymmetryKind::PT;
                break;
            case CrossCase::Delta2: h = pt2_transformed(Chart::R1, p).h; break;
            case CrossCase::Delta3: h = pt2_transformed(Chart::R2, p).h; break;
        }
        b.symmetry_kind = std::string(to_string(kind));
        b.matrices["h"] = h;
        b.matrices["operator"] = op;
        b.checks["normalizer"] = cross_normalizer(c, p);
        b.checks["structure_residual"] = kind == SymmetryKind::PT
                                             ? (op - op.conjugate()).norm()
                                             : (op - op.adjoint()).norm();
        b.checks["involution_residual"] = (op * op - ComplexMatrix::Identity(2, 2)).norm();
        b.checks["intertwining_residual"] = check_symmetry(kind, op, h, tol).residual;
    } else if (family == "pt-block" || family == "pseudo-block") {
        const Index m = params.integer("m", 1);
        const Index n = params.integer("n", 1);
        if (m < 0 || n < 0 || m + n < 1) throw ConstraintError("m, n >= 0 and m + n >= 1 violated");
        b.params = {{"m", m}, {"n", n}, {"seed", cfg.seed}};
        std::mt19937_64 rng(cfg.seed);
        const ComplexMatrix p0 = diagonal_parity_matrix(m, n);
        if (family == "pt-block") {
            PtBlockParams p{m, n, random_real(m, m, rng), random_real(m, n, rng),
                            random_real(n, m, rng), random_real(n, n, rng)};
            b.matrices["h"] = construct_pt_block(p);
            b.symmetry_kind = "pt";
            b.checks["pt_residual"] = pt_residual(p0, b.matrices["h"], tol);
        } else {
            const ComplexMatrix a = random_complex(m, m, rng), d = random_complex(n, n, rng);
            PseudoBlockParams p{m, n, a + a.adjoint(), random_complex(m, n, rng), d + d.adjoint()};
            b.matrices["h"] = construct_pseudo_block(p, tol);
            b.symmetry_kind = "pseudo";
            b.checks["pseudo_residual"] = pseudo_residual(p0, b.matrices["h"], tol);
        }
        b.matrices["operator"] = p0;
    } else if (family == "rotated-hermitian") {
        const Index n = params.integer("n", 2);
        if (n < 1) throw ConstraintError("n >= 1 violated");
        b.params = {{"n", n}, {"seed", cfg.seed}};
        std::mt19937_64 rng(cfg.seed);
        RotatedHermitianParams p{n, random_real(n, n, rng), random_real(n, n, rng)};
        b.matrices["h"] = construct_rotated_hermitian(p);
        b.matrices["operator"] = sip_matrix(n);
        b.symmetry_kind = "pseudo";
        b.checks["pseudo_residual"] = pseudo_residual(sip_matrix(n), b.matrices["h"], tol);
    } else if (family == "genpt-diag") {
        const Index n = params.integer("n", 2);
        if (n < 1) throw ConstraintError("n >= 1 violated");
        b.params = {{"n", n}, {"seed", cfg.seed}};
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> angle(-M_PI, M_PI);
        DiagPhaseGenPtParams p;
        p.phases.resize(n);
        for (Index i = 0; i < n; ++i) p.phases(i) = angle(rng);
        p.r = random_real(n, n, rng);
        b.matrices["h"] = construct_gen_pt_diag(p);
        b.matrices["operator"] = gen_pt_diag_operator(p.phases);
        b.symmetry_kind = "genpt";
        b.checks["genpt_residual"] =
            check_symmetry(SymmetryKind::GenPT, b.matrices["operator"], b.matrices["h"], tol)
                .residual;
    } else if (family == "self-adjoint-diag") {
        const Index n = params.integer("n", 2);
        if (n < 1) throw ConstraintError("n >= 1 violated");
        b.params = {{"n", n}, {"seed", cfg.seed}};
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> pos(0.5, 2.0);
        DiagMetricSelfAdjointParams p;
        p.omegas.resize(n);
        for (Index i = 0; i < n; ++i) p.omegas(i) = pos(rng);
        p.a = random_real(n, n, rng);
        p.b = random_real(n, n, rng);
        const ComplexMatrix h = construct_self_adjoint_from_diag_metric(p);
        const ComplexMatrix w = p.omegas.cast<Complex>().asDiagonal();
        b.matrices["h"] = h;
        b.matrices["w"] = w;
        b.checks["metric_residual"] = self_adjointness_residual(w, h);
    } else {
        throw ParseError("unknown family '" + family + "'");
    }
    params.finish();
    return b;
}

/// A grid axis: a number, a list of numbers, or {"min", "max", "count"}.
std::vector<double> axis_values(const Json* j, double fallback) {
    if (!j) return {fallback};
    if (j->is_number()) return {j->get<double>()};
    std::vector<double> out;
    if (j->is_array()) {
        for (const Json& x : *j) {
            if (!x.is_number()) throw ParseError("grid lists must hold numbers");
            out.push_back(x.get<double>());
        }
        return out;
    }
    if (j->is_object()) {
        Params p(*j);
        const double lo = p.real("min", 0.0);
        const double hi = p.real("max", 0.0);
        const Index count = p.integer("count", 0);
        p.finish();
        if (count < 0) throw ConstraintError("grid count must be nonnegative");
        for (Index i = 0; i < count; ++i) {
            const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
            out.push_back(lo + t * (hi - lo));
        }
        return out;
    }
    throw ParseError("grid axis must be a number, a list, or {min, max, count}");
}

}  // namespace

CommandResult cmd_classify(const ComplexMatrix& h, const std::optional<ComplexMatrix>& op,
                           std::optional<SymmetryKind> kind, const RunConfig& cfg) {
    return guarded(
        [&] {
            if (op.has_value() != kind.has_value()) {
                throw ParseError("--operator and --kind must be given together");
            }
            require_square(h, "classify");
            std::optional<SuppliedSymmetry> sym;
            if (op) {
                require_same_shape(*op, h, "classify");
                const InvolutionCheck ic =
                    verify_involution(*op, required_operator_kind(*kind), cfg.tol);
                if (!ic.ok) {
                    throw DimensionError("operator does not verify as " +
                                         std::string(to_string(required_operator_kind(*kind))));
                }
                sym = SuppliedSymmetry{*kind, *op};
            }
            const SpectrumReport spec = classify_spectrum(h, cfg.tol, sym);
            const MetricSolution metric = solve_metric_space(h, cfg.tol);
            const GenPtSearch gen = find_gen_pt_operator(h, cfg.tol);

            CommandResult r;
            if (cfg.format == Format::Csv) {
                std::ostringstream os;
                os << "index,re,im\n";
                for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
                    os << i << ',' << format_real(spec.eigenvalues[i].real()) << ','
                       << format_real(spec.eigenvalues[i].imag()) << '\n';
                }
                r.output = os.str();
                return r;
            }
            Json j;
            j["dimension"] = h.rows();
            j["symmetry"] = spec.symmetry ? symmetry_json(*spec.symmetry) : Json(nullptr);
            j["spectrum"] = spectrum_json(spec);
            Json m;
            m["dimension"] = metric.dimension;
            m["status"] = std::string(to_string(metric.status));
            m["exists"] = metric.status == PositivityStatus::Positive;
            m["min_eigenvalue"] = metric.min_eigenvalue;
            m["positive_representative"] = metric.positive_representative
                                               ? matrix_to_json(*metric.positive_representative)
                                               : Json(nullptr);
            j["metric"] = std::move(m);
            Json g;
            g["status"] = std::string(to_string(gen.status));
            g["residual"] = gen.residual;
            g["reason"] = gen.reason;
            g["operator"] = gen.op ? matrix_to_json(gen.op->matrix()) : Json(nullptr);
            j["gen_pt"] = std::move(g);
            r.output = dump(j);
            return r;
        },
        exit_code::dimension);
}

CommandResult cmd_construct(const std::string& family, const Json& params, const RunConfig& cfg) {
    return guarded(
        [&] {
            Params p(params);
            Built b = build_family(family, p, cfg);
            CommandResult r;
            r.matrices = b.matrices;
            if (cfg.format == Format::Csv) {
                std::ostringstream os;
                os << "name,row,col,re,im\n";
                for (const auto& [name, m] : b.matrices) {
                    for (Index i = 0; i < m.rows(); ++i) {
                        for (Index k = 0; k < m.cols(); ++k) {
                            os << name << ',' << i << ',' << k << ','
                               << format_real(m(i, k).real()) << ','
                               << format_real(m(i, k).imag()) << '\n';
                        }
                    }
                }
                r.output = os.str();
                return r;
            }
            Json j;
            j["family"] = family;
            j["params"] = b.params;
            j["symmetry_kind"] = b.symmetry_kind ? Json(*b.symmetry_kind) : Json(nullptr);
            Json mats = Json::object();
            for (const auto& [name, m] : b.matrices) mats[name] = matrix_to_json(m);
            j["matrices"] = std::move(mats);
            j["checks"] = b.checks;
            j["notes"] = b.notes;
            r.output = dump(j);
            return r;
        },
        exit_code::constraint);
}

CommandResult cmd_sweep(const std::string& family, const Json& grid, const RunConfig& cfg,
                        Execution exec) {
    return guarded(
        [&]() -> CommandResult {
            Params p(grid);
            CommandResult r;
            if (family == "degeneration") {
                const DegenerationFamily fam =
                    degeneration_family_from_string(p.text("family", "pt2"));
                const double u = p.real("u", 1.0);
                const double gamma = p.real("gamma", 1.0);
                const double lo = p.real("eps_min_exp", -6.0);
                const double hi = p.real("eps_max_exp", -2.0);
                const Index count = p.integer("count", 9);
                p.finish();
                if (count < 1) throw ConstraintError("empty grid: count must be at least 1");
                if (!(lo <= hi) || !(hi < 0.0)) {
                    throw ConstraintError("eps_min_exp <= eps_max_exp < 0 violated");
                }
                std::vector<double> eps = logspace(lo, hi, static_cast<std::size_t>(count));
                std::reverse(eps.begin(), eps.end());
                if (count > 1 && !(lo < hi)) throw ConstraintError("degenerate epsilon range");
                DegenerationScan scan;
                try {
                    scan = degeneration_scan(u, gamma, eps, fam, exec);
                } catch (const ContractError& e) {
                    throw ConstraintError(e.what());
                }
                if (cfg.format == Format::Csv) {
                    r.output = to_csv(scan);
                    return r;
                }
                Json j;
                j["family"] = std::string(to_string(fam));
                j["u"] = u;
                j["gamma"] = gamma;
                j["epsilons"] = scan.epsilons;
                j["omega_small"] = scan.omega_small;
                j["omega_large"] = scan.omega_large;
                j["norm_plus"] = scan.norm_plus;
                j["norm_minus"] = scan.norm_minus;
                auto fit = [](const std::optional<PowerFit>& f) {
                    return f ? Json{{"slope", f->slope}, {"prefactor", f->prefactor}}
                             : Json(nullptr);
                };
                j["fit_omega_small"] = fit(scan.fit_omega_small);
                j["fit_norm_plus"] = fit(scan.fit_norm_plus);
                j["fit_norm_minus"] = fit(scan.fit_norm_minus);
                r.output = dump(j);
                return r;
            }
            if (family != "pt2" && family != "pseudo2") {
                throw ParseError("unknown sweep family '" + family + "'");
            }
            const auto es = axis_values(p.raw("e"), 0.0);
            const auto gs = axis_values(p.raw("gamma"), 1.0);
            const auto rs = axis_values(p.raw("rho"), 0.0);
            const auto ds = axis_values(p.raw("delta"), 0.0);
            p.finish();
            struct Point {
                double e, gamma, rho, delta;
            };
            std::vector<Point> points;
            for (double e : es)
                for (double g : gs)
                    for (double rr : rs)
                        for (double d : ds) points.push_back({e, g, rr, d});
            if (points.empty()) throw ConstraintError("empty grid");
            const bool pt = family == "pt2";
            const auto reports = map_indexed(
                points.size(),
                [&](std::size_t i) {
                    catalog::Pt2Params q;
                    q.e = points[i].e;
                    q.gamma = points[i].gamma;
                    q.rho = points[i].rho;
                    q.delta = points[i].delta;
                    const ComplexMatrix h =
                        pt ? catalog::pt2_hamiltonian(q) : catalog::pseudo2_hamiltonian(q);
                    return classify_spectrum(
                        h, cfg.tol,
                        SuppliedSymmetry{pt ? SymmetryKind::PT : SymmetryKind::Pseudo,
                                         catalog::pauli().sigma3});
                },
                exec);
            if (cfg.format == Format::Csv) {
                std::ostringstream os;
                os << "e,gamma,rho,delta,eig0_re,eig0_im,eig1_re,eig1_im,reality_class,unbroken\n";
                for (std::size_t i = 0; i < points.size(); ++i) {
                    const auto& ev = reports[i].eigenvalues;
                    os << format_real(points[i].e) << ',' << format_real(points[i].gamma) << ','
                       << format_real(points[i].rho) << ',' << format_real(points[i].delta) << ','
                       << format_real(ev[0].real()) << ',' << format_real(ev[0].imag()) << ','
                       << format_real(ev[1].real()) << ',' << format_real(ev[1].imag()) << ','
                       << to_string(reports[i].reality_class) << ','
                       << (reports[i].unbroken.value_or(false) ? "true" : "false") << '\n';
                }
                r.output = os.str();
                return r;
            }
            Json rows = Json::array();
            for (std::size_t i = 0; i < points.size(); ++i) {
                Json row;
                row["e"] = points[i].e;
                row["gamma"] = points[i].gamma;
                row["rho"] = points[i].rho;
                row["delta"] = points[i].delta;
                row["eigenvalues"] = complex_list(reports[i].eigenvalues);
                row["reality_class"] = std::string(to_string(reports[i].reality_class));
                row["unbroken"] = reports[i].unbroken.value_or(false);
                rows.push_back(std::move(row));
            }
            r.output = dump(Json{{"family", family}, {"rows", rows}});
            return r;
        },
        exit_code::constraint);
}

CommandResult cmd_count(Index max_dim, const RunConfig& cfg) {
    return guarded(
        [&] {
            if (max_dim < 2 || max_dim > 8) throw ConstraintError("2 <= max_dim <= 8 violated");
            const auto reports = table1_report(max_dim, cfg.tol, cfg.seed);
            const auto cols = table1_columns(reports);
            CommandResult r;
            std::ostringstream failing;
            for (const auto& rep : reports) {
                if (!rep.match) {
                    failing << "mismatch: " << to_string(rep.kind) << " (" << rep.m << ", " << rep.n
                            << ") total " << rep.total << " expected " << rep.expected << '\n';
                }
            }
            for (const auto& c : cols) {
                if (!c.pt_pseudo_agree) {
                    failing << "mismatch: PT and pseudo maxima differ at N = " << c.n << '\n';
                }
            }
            if (cfg.format == Format::Csv) {
                r.output = to_csv(reports);
            } else {
                Json rows = Json::array();
                for (const auto& rep : reports) {
                    rows.push_back({{"kind", std::string(to_string(rep.kind))},
                                    {"m", rep.m},
                                    {"n", rep.n},
                                    {"matrix_dim", rep.matrix_dim},
                                    {"orbit_dim", rep.orbit_dim},
                                    {"total", rep.total},
                                    {"expected", rep.expected},
                                    {"match", rep.match}});
                }
                Json table = Json::array();
                for (const auto& c : cols) {
                    table.push_back({{"n", c.n},
                                     {"real_symmetric", c.real_symmetric},
                                     {"hermitian", c.hermitian},
                                     {"pt_or_pseudo", c.pt_or_pseudo},
                                     {"self_adjoint_or_genpt", c.self_adjoint}});
                }
                r.output = dump(Json{{"max_dim", max_dim}, {"rows", rows}, {"table", table}});
            }
            r.diagnostic = failing.str();
            if (!r.diagnostic.empty()) r.exit_code = exit_code::mismatch;
            return r;
        },
        exit_code::constraint);
}

CommandResult cmd_convert(ConversionDirection direction, const ComplexMatrix& op,
                          const ComplexMatrix& h, const RunConfig& cfg) {
    return guarded(
        [&] {
            const ConversionResult c = convert(direction, op, h, cfg.tol, cfg.seed);
            CommandResult r;
            if (cfg.format == Format::Csv) {
                r.output = matrix_to_csv(c.q);
                return r;
            }
            Json j;
            j["direction"] = std::string(to_string(c.direction));
            j["q"] = matrix_to_json(c.q);
            j["a"] = matrix_to_json(c.a);
            j["hermitian"] = c.hermitian;
            j["real"] = c.real;
            j["involutory"] = c.involutory;
            j["target_kind_satisfied"] = c.target_kind_satisfied;
            j["degenerate"] = c.degenerate;
            j["family_dimension"] = c.family_dimension;
            j["residuals"] = {{"structure", c.residuals.structure},
                              {"involution", c.residuals.involution},
                              {"intertwining", c.residuals.intertwining}};
            j["witness_residual"] = c.witness_residual;
            j["message"] = c.message;
            r.output = dump(j);
            return r;
        },
        exit_code::dimension);
}

CommandResult cmd_jordan(const ComplexMatrix& h, std::optional<Complex> lambda, Complex alpha,
                         const RunConfig& cfg) {
    return guarded(
        [&] {
            require_square(h, "jordan");
            Complex lam;
            if (lambda) {
                lam = *lambda;
            } else {
                const SpectrumReport spec = classify_spectrum(h, cfg.tol);
                bool found = false;
                for (const auto& e : spec.segre) {
                    if (e.blocks.front() > 1) {
                        lam = e.eigenvalue;
                        found = true;
                        break;
                    }
                }
                if (!found) throw ContractError("jordan: matrix has no defective eigenvalue");
            }
            const JordanChain c = jordan_chain(h, lam, cfg.tol, alpha);
            CommandResult r;
            if (cfg.format == Format::Csv) {
                std::ostringstream os;
                os << "vector,index,re,im\n";
                for (std::size_t k = 0; k < c.vectors.size(); ++k) {
                    for (Index i = 0; i < c.vectors[k].size(); ++i) {
                        os << k << ',' << i << ',' << format_real(c.vectors[k](i).real()) << ','
                           << format_real(c.vectors[k](i).imag()) << '\n';
                    }
                }
                r.output = os.str();
                return r;
            }
            Json vecs = Json::array();
            for (const auto& v : c.vectors) vecs.push_back(vector_json(v));
            Json j;
            j["eigenvalue"] = complex_to_json(c.eigenvalue);
            j["alpha"] = complex_to_json(c.alpha);
            j["vectors"] = std::move(vecs);
            j["residual"] = c.residual;
            r.output = dump(j);
            return r;
        },
        exit_code::constraint);
}

namespace {

Complex parse_complex_flag(const std::string& text, const char* what) {
    std::istringstream in(text);
    double re = 0.0, im = 0.0;
    char comma = 0;
    in >> re;
    if (!in) throw ParseError(std::string(what) + " must look like 're' or 're,im'");
    if (in >> comma) {
        if (comma != ',' || !(in >> im)) {
            throw ParseError(std::string(what) + " must look like 're' or 're,im'");
        }
        std::string rest;
        if (in >> rest) throw ParseError(std::string(what) + " has trailing characters");
    }
    return {re, im};
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
    const char* env = std::getenv("PTLAB_SEED");
    if (!env || !*env) return fallback;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw ParseError("PTLAB_SEED must be an unsigned integer");
    return static_cast<std::uint64_t>(v);
}

Json json_option(const std::string& inline_text, const std::string& file, const char* what) {
    if (!inline_text.empty() && !file.empty()) {
        throw ParseError(std::string("give either --") + what + " or --" + what + "-file");
    }
    if (!file.empty()) return read_json_file(file);
    if (!inline_text.empty()) return parse_json_text(inline_text);
    return Json::object();
}

void write_split(const std::string& dir, const std::map<std::string, ComplexMatrix>& mats) {
    std::filesystem::create_directories(dir);
    for (const auto& [name, m] : mats) {
        std::ofstream f(std::filesystem::path(dir) / (name + ".json"), std::ios::binary);
        if (!f) throw Error("cannot write into '" + dir + "'");
        f << matrix_to_json(m).dump(2) << '\n';
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Construct, classify and convert PT-symmetric, pseudo-Hermitian and "
                 "generalized PT-symmetric matrices"};
    app.fallthrough();
    app.require_subcommand(1);

    double tol_abs = ToleranceConfig{}.abs_tol;
    double tol_rel = ToleranceConfig{}.rel_tol;
    std::uint64_t seed = 42;
    std::string format = "json";
    std::string out_path;
    app.add_option("--tol-abs", tol_abs, "Absolute tolerance")->check(CLI::NonNegativeNumber);
    app.add_option("--tol-rel", tol_rel, "Relative tolerance")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", seed, "Random seed (PTLAB_SEED overrides)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "Write output to PATH instead of stdout");

    std::string matrix_path, operator_path, kind_name;
    auto* classify = app.add_subcommand("classify", "Symmetry, spectrum, Segre and metric report");
    classify->add_option("--matrix", matrix_path, "MatrixDocument file")->required();
    classify->add_option("--operator", operator_path, "Symmetry operator MatrixDocument");
    classify->add_option("--kind", kind_name, "Symmetry kind")
        ->check(CLI::IsMember({"pt", "pseudo", "genpt"}));

    std::string family, params_text, params_file, split_dir;
    auto* construct = app.add_subcommand("construct", "Build a matrix family");
    construct->add_option("--family", family, "Family name")->required();
    construct->add_option("--params", params_text, "Parameters as inline JSON");
    construct->add_option("--params-file", params_file, "Parameters JSON file");
    construct->add_option("--split-dir", split_dir, "Also write each matrix to DIR/<name>.json");

    std::string grid_text, grid_file;
    auto* sweep = app.add_subcommand("sweep", "Parameter sweeps as CSV or JSON");
    sweep->add_option("--family", family, "degeneration, pt2 or pseudo2")->required();
    sweep->add_option("--grid", grid_text, "Grid as inline JSON");
    sweep->add_option("--grid-file", grid_file, "Grid JSON file");

    Index max_dim = 6;
    auto* count = app.add_subcommand("count", "Reproduce the real-parameter count table");
    count->add_option("--max-dim", max_dim, "Largest dimension");

    std::string direction;
    auto* conv = app.add_subcommand("convert", "Convert between symmetry classes");
    conv->add_option("--direction", direction, "Conversion direction")
        ->required()
        ->check(CLI::IsMember({"pt-to-pseudo", "pseudo-to-pt", "genpt-to-pseudo"}));
    conv->add_option("--operator", operator_path, "Source operator MatrixDocument")->required();
    conv->add_option("--matrix", matrix_path, "MatrixDocument file")->required();

    std::string lambda_text, alpha_text = "0";
    auto* jordan = app.add_subcommand("jordan", "Extract a Jordan chain");
    jordan->add_option("--matrix", matrix_path, "MatrixDocument file")->required();
    jordan->add_option("--lambda", lambda_text, "Eigenvalue 're,im' (default: first defective)");
    jordan->add_option("--alpha", alpha_text, "Free chain constant 're,im'");

    std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::parse;
    }

    CommandResult result;
    try {
        RunConfig cfg;
        cfg.tol.abs_tol = tol_abs;
        cfg.tol.rel_tol = tol_rel;
        cfg.seed = seed_from_env(seed);
        cfg.format = format == "csv" ? Format::Csv : Format::Json;
        if (*classify) {
            const ComplexMatrix h = read_matrix_file(matrix_path);
            std::optional<ComplexMatrix> op;
            std::optional<SymmetryKind> kind;
            if (!operator_path.empty()) op = read_matrix_file(operator_path);
            if (!kind_name.empty()) kind = symmetry_kind_from_string(kind_name);
            result = cmd_classify(h, op, kind, cfg);
        } else if (*construct) {
            result = cmd_construct(family, json_option(params_text, params_file, "params"), cfg);
            if (result.exit_code == exit_code::ok && !split_dir.empty()) {
                write_split(split_dir, result.matrices);
            }
        } else if (*sweep) {
            result = cmd_sweep(family, json_option(grid_text, grid_file, "grid"), cfg);
        } else if (*count) {
            result = cmd_count(max_dim, cfg);
        } else if (*conv) {
            result = cmd_convert(conversion_direction_from_string(direction),
                                 read_matrix_file(operator_path), read_matrix_file(matrix_path),
                                 cfg);
        } else if (*jordan) {
            std::optional<Complex> lambda;
            if (!lambda_text.empty()) lambda = parse_complex_flag(lambda_text, "--lambda");
            result = cmd_jordan(read_matrix_file(matrix_path), lambda,
                                parse_complex_flag(alpha_text, "--alpha"), cfg);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::parse;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::internal;
    }

    if (!result.output.empty()) {
        if (out_path.empty()) {
            out << result.output;
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) {
                err << "error: cannot write '" << out_path << "'\n";
                return exit_code::internal;
            }
            f << result.output;
        }
    }
    if (!result.diagnostic.empty()) {
        err << (result.exit_code == exit_code::ok ? "" : "error: ") << result.diagnostic;
        if (result.diagnostic.back() != '\n') err << '\n';
    }
    return result.exit_code;
}

}  // namespace ptlab::cli

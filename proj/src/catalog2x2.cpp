#include "ptlab/catalog2x2.hpp"

#include <cmath>
#include <sstream>

namespace ptlab::catalog {

namespace {

const Complex kI(0.0, 1.0);

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

ComplexVector vec2(Complex a, Complex b) {
    ComplexVector v(2);
    v << a, b;
    return v;
}

struct Frame {
    double nr[3];
    double nt[3];
    double nphi[3];
};

Frame spherical_frame(double theta, double phi) {
    const double st = std::sin(theta), ct = std::cos(theta);
    const double sp = std::sin(phi), cp = std::cos(phi);
    return Frame{{st * cp, st * sp, ct}, {ct * cp, ct * sp, -st}, {-sp, cp, 0.0}};
}

}  // namespace

const PauliBasis& pauli() {
    static const PauliBasis basis{
        mat2(1.0, 0.0, 0.0, 1.0),
        mat2(0.0, 1.0, 1.0, 0.0),
        mat2(0.0, -kI, kI, 0.0),
        mat2(1.0, 0.0, 0.0, -1.0),
    };
    return basis;
}

ComplexMatrix pauli_dot(Complex x, Complex y, Complex z) {
    const PauliBasis& s = pauli();
    return x * s.sigma1 + y * s.sigma2 + z * s.sigma3;
}

std::optional<std::string> metric_constraint_violation(const Pt2Params& p) {
    if (!(p.u * p.gamma > 0.0)) return std::string("u*gamma > 0 violated");
    if (!(p.v * p.v < p.gamma * p.gamma - p.rho * p.rho)) {
        return std::string("v^2 < gamma^2 - rho^2 violated");
    }
    return std::nullopt;
}

ComplexMatrix pt2_hamiltonian(const Pt2Params& p) {
    const double s = std::sin(p.delta), c = std::cos(p.delta);
    return mat2(p.e + p.gamma * c, -kI * (p.gamma * s - p.rho), kI * (p.gamma * s + p.rho),
                p.e - p.gamma * c);
}

Pt2Family pt2_family(const Pt2Params& p) {
    Pt2Family f;
    f.h0 = pt2_hamiltonian(p);
    const Complex root = std::sqrt(Complex(p.gamma * p.gamma - p.rho * p.rho, 0.0));
    f.e_plus = p.e + root;
    f.e_minus = p.e - root;
    const Complex g = p.gamma * std::polar(1.0, p.delta);
    f.eigvec_plus = vec2(g - kI * p.rho + root, g + kI * p.rho - root);
    f.eigvec_minus = vec2(g - kI * p.rho - root, g + kI * p.rho + root);

    if (auto why = metric_constraint_violation(p)) {
        f.metric_reason = *why;
        return f;
    }
    const double s = std::sin(p.delta), c = std::cos(p.delta);
    MetricData m;
    m.w0 = p.u * (p.gamma * pauli().sigma0 +
                  pauli_dot(0.0, p.v * s - p.rho * c, p.v * c + p.rho * s));
    const double hyp = std::sqrt(p.rho * p.rho + p.v * p.v);
    m.omega_plus = p.u * (p.gamma + hyp);
    m.omega_minus = p.u * (p.gamma - hyp);
    const double r = root.real();
    m.norm_plus = 4.0 * p.u * p.gamma * r * (r + p.v);
    m.norm_minus = 4.0 * p.u * p.gamma * r * (r - p.v);
    f.metric = m;
    return f;
}

ComplexMatrix coset_r1(double theta, double phi) {
    const double ct = std::cos(0.5 * theta), st = std::sin(0.5 * theta);
    const ComplexMatrix rot = mat2(ct, -st, st, ct);
    return mat2(std::exp(-0.5 * phi), 0.0, 0.0, std::exp(0.5 * phi)) * rot;
}

ComplexMatrix coset_r2(double theta, double phi) {
    const double ch = std::cosh(0.5 * theta), sh = std::sinh(0.5 * theta);
    const ComplexMatrix boost = mat2(ch, -sh, -sh, ch);
    return mat2(std::exp(-0.5 * phi), 0.0, 0.0, std::exp(0.5 * phi)) * boost;
}

Pt2Transformed pt2_transformed(Chart chart, const Pt2Params& p) {
    const double e = p.e, g = p.gamma, r = p.rho;
    const double sd = std::sin(p.delta), cd = std::cos(p.delta);
    const double st = std::sin(p.theta), ct = std::cos(p.theta);
    const double sht = std::sinh(p.theta), cht = std::cosh(p.theta);
    const double ep = std::exp(p.phi), em = std::exp(-p.phi);
    const double a = r * sd + p.v * cd;  // rho sin d + v cos d
    const double b = r * cd - p.v * sd;  // rho cos d - v sin d
    const bool metric_ok = !metric_constraint_violation(p).has_value();

    Pt2Transformed t;
    if (chart == Chart::R1) {
        t.r = coset_r1(p.theta, p.phi);
        t.p = mat2(ct, em * st, ep * st, -ct);
        t.h = mat2(e + g * cd * ct - kI * r * st, (g * cd * st - kI * g * sd + kI * r * ct) * em,
                   (g * cd * st + kI * g * sd + kI * r * ct) * ep, e - g * cd * ct + kI * r * st);
        if (metric_ok) {
            t.w = p.u * mat2((g + ct * a) * ep, st * a + kI * b, st * a - kI * b, (g - ct * a) * em);
        }
    } else {
        t.r = coset_r2(p.theta, p.phi);
        t.p = mat2(cht, em * sht, -ep * sht, -cht);
        const Complex z(p.delta, p.theta);
        t.h = mat2(e + g * std::cos(z), -kI * (g * std::sin(z) - r) * em,
                   kI * (g * std::sin(z) + r) * ep, e - g * std::cos(z));
        if (metric_ok) {
            t.w = p.u * mat2((g * cht + a) * ep, g * sht + kI * b, g * sht - kI * b,
                             (g * cht - a) * em);
        }
    }
    return t;
}

ComplexMatrix pseudo2_hamiltonian(const Pt2Params& p) {
    return mat2(p.e + p.gamma, p.rho * std::polar(1.0, p.delta), -p.rho * std::polar(1.0, -p.delta),
                p.e - p.gamma);
}

Pseudo2Family pseudo2_family(const Pt2Params& p) {
    Pseudo2Family f;
    f.h0 = pseudo2_hamiltonian(p);
    const Complex root = std::sqrt(Complex(p.gamma * p.gamma - p.rho * p.rho, 0.0));
    f.e_plus = p.e + root;
    f.e_minus = p.e - root;
    const Complex low = -p.rho * std::polar(1.0, -p.delta);
    f.eigvec_plus = vec2(p.gamma + root, low);
    f.eigvec_minus = vec2(p.gamma - root, low);

    const double ch = std::cos(0.5 * p.theta), sh = std::sin(0.5 * p.theta);
    f.u = mat2(std::polar(1.0, -0.5 * p.phi), 0.0, 0.0, std::polar(1.0, 0.5 * p.phi)) *
          mat2(ch, -sh, sh, ch);
    const Frame fr = spherical_frame(p.theta, p.phi);
    f.ptilde = pauli_dot(fr.nr[0], fr.nr[1], fr.nr[2]);
    const double sd = std::sin(p.delta), cd = std::cos(p.delta);
    Complex comp[3];
    for (int k = 0; k < 3; ++k) {
        comp[k] = p.gamma * fr.nr[k] + kI * p.rho * sd * fr.nt[k] + kI * p.rho * cd * fr.nphi[k];
    }
    f.h = p.e * pauli().sigma0 + pauli_dot(comp[0], comp[1], comp[2]);

    if (auto why = metric_constraint_violation(p)) {
        f.metric_reason = *why;
        return f;
    }
    MetricData m;
    m.w0 = p.u * mat2(p.gamma + p.v, p.rho * std::polar(1.0, p.delta),
                      p.rho * std::polar(1.0, -p.delta), p.gamma - p.v);
    const double hyp = std::sqrt(p.rho * p.rho + p.v * p.v);
    m.omega_plus = p.u * (p.gamma + hyp);
    m.omega_minus = p.u * (p.gamma - hyp);
    const double r = root.real();
    m.norm_plus = 2.0 * p.u * r * (p.gamma + r) * (r + p.v);
    m.norm_minus = 2.0 * p.u * r * (p.gamma - r) * (r - p.v);
    f.metric = m;

    double wc[3];
    for (int k = 0; k < 3; ++k) {
        wc[k] = p.v * fr.nr[k] + p.rho * cd * fr.nt[k] - p.rho * sd * fr.nphi[k];
    }
    f.w = p.u * (p.gamma * pauli().sigma0 + pauli_dot(wc[0], wc[1], wc[2]));
    return f;
}

std::string_view to_string(CrossCase c) {
    switch (c) {
        case CrossCase::PtildeForH0: return "ptilde_for_h0";
        case CrossCase::PForHtilde0: return "p_for_htilde0";
        case CrossCase::Delta1: return "delta1";
        case CrossCase::Delta2: return "delta2";
        case CrossCase::Delta3: return "delta3";
    }
    return "unknown";
}

CrossCase cross_case_from_string(std::string_view name) {
    for (CrossCase c : {CrossCase::PtildeForH0, CrossCase::PForHtilde0, CrossCase::Delta1,
                        CrossCase::Delta2, CrossCase::Delta3}) {
        if (name == to_string(c)) return c;
    }
    throw ContractError("unknown cross-operator case '" + std::string(name) + "'");
}

double cross_normalizer(CrossCase c, const Pt2Params& p) {
    const double g = p.gamma, r = p.rho;
    const double sd = std::sin(p.delta), cd = std::cos(p.delta);
    const double st = std::sin(p.theta), ct = std::cos(p.theta);
    switch (c) {
        case CrossCase::PtildeForH0: return 1.0;
        case CrossCase::PForHtilde0: return g * g - r * r * cd * cd;
        case CrossCase::Delta1: {
            const double sp = std::sin(p.phi), cp = std::cos(p.phi);
            const double x = cd * ct * sp - sd * cp;
            const double y = sd * ct * sp + cd * cp;
            return g * g * x * x + (g * g - r * r) * y * y;
        }
        case CrossCase::Delta2: {
            const double chp = std::cosh(p.phi), shp = std::sinh(p.phi);
            const double y = g * sd * chp + r * ct * shp;
            return g * g * cd * cd * (st * st * chp * chp + ct * ct) + y * y;
        }
        case CrossCase::Delta3: {
            const double chp = std::cosh(p.phi), shp = std::sinh(p.phi);
            const double sht = std::sinh(p.theta), cht = std::cosh(p.theta);
            const double y = g * sd * cht * chp + r * shp;
            return g * g * cd * cd * (1.0 + sht * sht * chp * chp) + y * y;
        }
    }
    return 0.0;
}

ComplexMatrix cross_operators(CrossCase c, const Pt2Params& p, double threshold) {
    const double delta_n = cross_normalizer(c, p);
    if (!(delta_n > threshold)) {
        std::ostringstream os;
        os << "cross operator " << to_string(c) << ": normalizer " << delta_n
           << " is not above " << threshold << " (singular case)";
        throw ContractError(os.str());
    }
    const double norm = 1.0 / std::sqrt(delta_n);
    const double g = p.gamma, r = p.rho;
    const double sd = std::sin(p.delta), cd = std::cos(p.delta);
    const double st = std::sin(p.theta), ct = std::cos(p.theta);
    const double sp = std::sin(p.phi), cp = std::cos(p.phi);
    const double chp = std::cosh(p.phi), shp = std::sinh(p.phi);
    const double cht = std::cosh(p.theta), sht = std::sinh(p.theta);

    ComplexMatrix out;
    switch (c) {
        case CrossCase::PtildeForH0:
            out = pauli_dot(0.0, sd, cd);
            break;
        case CrossCase::PForHtilde0:
            out = norm * mat2(g, r * cd, -r * cd, -g);
            break;
        case CrossCase::Delta1: {
            const double p12 = g * st * cp + r * cd * cp + r * sd * ct * sp;
            const double p21 = g * st * cp - r * cd * cp - r * sd * ct * sp;
            out = norm * mat2(g * ct, p12, p21, -g * ct);
            break;
        }
        case CrossCase::Delta2: {
            const Complex q12 = g * cd * st * chp - kI * g * sd * chp - kI * r * ct * shp;
            const Complex q21 = g * cd * st * chp + kI * g * sd * chp + kI * r * ct * shp;
            out = norm * mat2(g * cd * ct, q12, q21, -g * cd * ct);
            break;
        }
        case CrossCase::Delta3: {
            const Complex q12 = -g * cd * sht * shp - kI * g * sd * cht * chp - kI * r * shp;
            const Complex q21 = -g * cd * sht * shp + kI * g * sd * cht * chp + kI * r * shp;
            out = norm * mat2(g * cd * cht, q12, q21, -g * cd * cht);
            break;
        }
    }
    return fix_sign(out);
}

ComplexMatrix ptilde_for_h1_phi0(const Pt2Params& p) {
    const double sd = std::sin(p.delta), cd = std::cos(p.delta);
    const double st = std::sin(p.theta), ct = std::cos(p.theta);
    return mat2(cd * ct, cd * st - kI * sd, cd * st + kI * sd, -cd * ct);
}

ComplexMatrix genpt2_operator(const GenPt2Params& p) {
    const double st = std::sin(p.theta), ct = std::cos(p.theta);
    const double sd = std::sin(p.delta), cd = std::cos(p.delta);
    const double th = std::tanh(p.phi);
    const Complex pre = std::cosh(p.phi) * std::polar(1.0, p.alpha);
    return pre * mat2(ct + kI * st * sd, kI * (st * cd - th), kI * (st * cd + th), ct - kI * st * sd);
}

ComplexMatrix pt2_jordan_hamiltonian(double e, double gamma, double delta) {
    Pt2Params p;
    p.e = e;
    p.gamma = gamma;
    p.rho = gamma;
    p.delta = delta;
    return pt2_hamiltonian(p);
}

JordanChain2 pt2_jordan_chain(double e, double gamma, double delta, Complex n0, Complex alpha) {
    const double s = std::sin(delta), c = std::cos(delta);
    if (gamma == 0.0 || c == 0.0) {
        throw ContractError("PT Jordan chain requires gamma != 0 and cos(delta) != 0");
    }
    JordanChain2 chain;
    chain.eigenvalue = e;
    chain.phi0 = n0 * vec2(1.0 - s, kI * c);
    chain.phi1 = n0 * vec2((1.0 - s) / (gamma * c), 0.0) + alpha * chain.phi0;
    return chain;
}

JordanChain2 pseudo2_jordan_chain(double e, double gamma, double delta, Complex n0, Complex alpha) {
    if (gamma == 0.0) throw ContractError("pseudo Jordan chain requires gamma != 0");
    JordanChain2 chain;
    chain.eigenvalue = e;
    const Complex ph = std::polar(1.0, -delta);
    chain.phi0 = n0 * vec2(1.0, -ph);
    chain.phi1 = n0 * vec2(0.0, ph / gamma) + alpha * chain.phi0;
    return chain;
}

}  // namespace ptlab::catalog

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ptlab/numerics.hpp"

namespace ptlab::catalog {

/// sigma0 (identity) and the three Pauli matrices.
struct PauliBasis {
    ComplexMatrix sigma0;
    ComplexMatrix sigma1;
    ComplexMatrix sigma2;
    ComplexMatrix sigma3;
};

const PauliBasis& pauli();

/// (x, y, z) . sigma for complex components.
ComplexMatrix pauli_dot(Complex x, Complex y, Complex z);

struct Pt2Params {
    double e = 0.0;
    double gamma = 0.0;
    double rho = 0.0;
    double delta = 0.0;
    double u = 1.0;
    double v = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

struct GenPt2Params {
    double theta = 0.0;
    double delta = 0.0;
    double phi = 0.0;
    double alpha = 0.0;
};

/// Empty when u gamma > 0 and v^2 < gamma^2 - rho^2; otherwise names the violated constraint.
std::optional<std::string> metric_constraint_violation(const Pt2Params& p);

/// Closed-form metric data; present only when the metric constraints hold.
struct MetricData {
    ComplexMatrix w0;
    double omega_plus = 0.0;
    double omega_minus = 0.0;
    /// <E_pm| W0 |E_pm> with n_pm = 1, closed form.
    double norm_plus = 0.0;
    double norm_minus = 0.0;
};

struct Pt2Family {
    ComplexMatrix h0;
    Complex e_plus;
    Complex e_minus;
    ComplexVector eigvec_plus;   ///< n_plus = 1
    ComplexVector eigvec_minus;  ///< n_minus = 1
    std::optional<MetricData> metric;
    std::string metric_reason;  ///< why `metric` is absent
};

/// PT-symmetric H0 = e sigma0 + (i rho, gamma sin delta, gamma cos delta) . sigma with P0 = sigma3.
Pt2Family pt2_family(const Pt2Params& p);
ComplexMatrix pt2_hamiltonian(const Pt2Params& p);

enum class Chart { R1, R2 };

struct Pt2Transformed {
    ComplexMatrix r;  ///< real coset element
    ComplexMatrix p;  ///< R sigma3 R^-1 closed form
    ComplexMatrix h;  ///< R H0 R^-1 closed form
    std::optional<ComplexMatrix> w;  ///< (R^-1)^dagger W0 R^-1, closed form
};

ComplexMatrix coset_r1(double theta, double phi);
ComplexMatrix coset_r2(double theta, double phi);
Pt2Transformed pt2_transformed(Chart chart, const Pt2Params& p);

struct Pseudo2Family {
    ComplexMatrix h0;  ///< pseudo-Hermitian for P~0 = sigma3
    Complex e_plus;
    Complex e_minus;
    ComplexVector eigvec_plus;
    ComplexVector eigvec_minus;
    std::optional<MetricData> metric;
    std::string metric_reason;
    ComplexMatrix u;        ///< exp(-i phi sigma3 / 2) exp(-i theta sigma2 / 2)
    ComplexMatrix ptilde;   ///< n^r . sigma
    ComplexMatrix h;        ///< e sigma0 + (gamma n^r + i rho sin(delta) n^theta + i rho cos(delta) n^phi) . sigma
    std::optional<ComplexMatrix> w;  ///< u [gamma sigma0 + (v n^r + rho cos(delta) n^theta - rho sin(delta) n^phi) . sigma]
};

Pseudo2Family pseudo2_family(const Pt2Params& p);
ComplexMatrix pseudo2_hamiltonian(const Pt2Params& p);

enum class CrossCase {
    PtildeForH0,       ///< P~ = (0, sin delta, cos delta) . sigma for the PT family H0
    PForHtilde0,       ///< P for the pseudo family H~0, normalized by sqrt(gamma^2 - rho^2 cos^2 delta)
    Delta1,            ///< P for the rotated pseudo family H~
    Delta2,            ///< P~ for H1
    Delta3,            ///< P~' for H2
};

std::string_view to_string(CrossCase c);
CrossCase cross_case_from_string(std::string_view name);

/// Normalizer of the case (1 for PtildeForH0); the operator exists only when it is > 0.
double cross_normalizer(CrossCase c, const Pt2Params& p);

/// Closed-form cross operator; throws ContractError naming the normalizer when it is
/// <= threshold. Sign fixed so that the (1,1) entry is nonnegative.
ComplexMatrix cross_operators(CrossCase c, const Pt2Params& p, double threshold = 1e-10);

/// P~ for H1 at phi = 0, written without the normalizer.
ComplexMatrix ptilde_for_h1_phi0(const Pt2Params& p);

/// cosh(phi) e^{i alpha} [[cos t + i sin t sin d, i (sin t cos d - tanh phi)],
///                        [i (sin t cos d + tanh phi), cos t - i sin t sin d]].
ComplexMatrix genpt2_operator(const GenPt2Params& p);

using ptlab::fix_sign;

struct JordanChain2 {
    Complex eigenvalue;
    ComplexVector phi0;
    ComplexVector phi1;
};

/// PT family at gamma = rho != 0: Phi0 = n0 (1 - sin d, i cos d),
/// Phi1 = n0 ((1 - sin d) / (gamma cos d), 0) + alpha Phi0. Requires cos(delta) != 0.
JordanChain2 pt2_jordan_chain(double e, double gamma, double delta, Complex n0, Complex alpha);
ComplexMatrix pt2_jordan_hamiltonian(double e, double gamma, double delta);

/// Pseudo family at gamma = rho != 0: Phi0 = n0 (1, -e^{-i d}),
/// Phi1 = n0 (0, e^{-i d} / gamma) + alpha Phi0.
JordanChain2 pseudo2_jordan_chain(double e, double gamma, double delta, Complex n0, Complex alpha);

}  // namespace ptlab::catalog

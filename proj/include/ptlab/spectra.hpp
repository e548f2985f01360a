#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ptlab/parallel.hpp"
#include "ptlab/symmetry.hpp"

namespace ptlab {

enum class RealityClass {
    AllRealDiagonalizable,
    AllRealDefective,
    ConjugatePairs,      ///< no real eigenvalue, complex ones paired with their conjugates
    Mixed,               ///< real eigenvalues and conjugate pairs
    NotConjugateClosed,  ///< some eigenvalue has no conjugate partner
};

std::string_view to_string(RealityClass c);

struct SegreEntry {
    /// Mean of the eigenvalue cluster; imaginary part zeroed for real clusters.
    Complex eigenvalue;
    bool real = false;
    /// Jordan block sizes, descending.
    std::vector<Index> blocks;
};

struct SpectrumReport {
    std::vector<Complex> eigenvalues;
    RealityClass reality_class = RealityClass::AllRealDiagonalizable;
    std::vector<SegreEntry> segre;
    /// Set when a symmetry operator was supplied and the symmetry holds.
    std::optional<bool> unbroken;
    std::optional<SymmetryReport> symmetry;
    /// Cluster tolerance actually used (10 rel_tol ||H||).
    double cluster_tolerance = 0.0;
    bool indeterminate = false;
    std::string diagnostic;
};

struct SuppliedSymmetry {
    SymmetryKind kind;
    ComplexMatrix op;
};

SpectrumReport classify_spectrum(const ComplexMatrix& h, const ToleranceConfig& tol = {},
                                 const std::optional<SuppliedSymmetry>& symmetry = std::nullopt);

struct AlignedEigenvectors {
    std::vector<double> eigenvalues;
    /// Column k satisfies P conj(v) = v and H v = E_k v.
    ComplexMatrix vectors;
    /// PT eigenvalues lambda_n of the unaligned unit eigenvectors (|lambda_n| = 1).
    std::vector<Complex> pt_eigenvalues;
    double max_residual = 0.0;
};

/// Requires a real involution P with P H = H* P and a real simple spectrum.
AlignedEigenvectors align_pt_phases(const ComplexMatrix& p, const ComplexMatrix& h,
                                    const ToleranceConfig& tol = {});

struct JordanChain {
    Complex eigenvalue;
    /// Phi_0, Phi_1, ...; Phi_0 has unit norm and its largest entry real positive.
    std::vector<ComplexVector> vectors;
    /// Free constant: Phi_k is shifted by alpha Phi_{k-1} for k >= 1.
    Complex alpha{0.0, 0.0};
    /// Largest of ||(H - lambda) Phi_0|| and ||(H - lambda) Phi_{k+1} - Phi_k||.
    double residual = 0.0;
};

/// Chain for an eigenvalue with geometric multiplicity 1 and algebraic multiplicity >= 2.
JordanChain jordan_chain(const ComplexMatrix& h, Complex lambda, const ToleranceConfig& tol = {},
                         Complex alpha = {0.0, 0.0});

struct PtJordan {
    ComplexMatrix h0;
    /// Diag{1_m, i 1_n}; Lambda H0 Lambda^-1 = J_{m+n}(lambda).
    ComplexMatrix lambda_matrix;
};

PtJordan build_pt_jordan(Index m, Index n, double lambda);

enum class DegenerationFamily { PT2, Pseudo2 };

std::string_view to_string(DegenerationFamily f);
DegenerationFamily degeneration_family_from_string(std::string_view name);

/// y ~ prefactor * eps^slope from a least-squares fit in log-log coordinates.
struct PowerFit {
    double slope = 0.0;
    double prefactor = 0.0;
};

struct DegenerationScan {
    DegenerationFamily family = DegenerationFamily::PT2;
    double u = 1.0;
    double gamma = 1.0;
    std::vector<double> epsilons;
    std::vector<double> omega_small;
    std::vector<double> omega_large;
    std::vector<double> norm_plus;
    std::vector<double> norm_minus;
    /// Present when at least two epsilons were scanned.
    std::optional<PowerFit> fit_omega_small;
    std::optional<PowerFit> fit_norm_plus;
    std::optional<PowerFit> fit_norm_minus;
};

/// rho = gamma sqrt(1 - eps) and v = 0 for both families.
DegenerationScan degeneration_scan(double u, double gamma, const std::vector<double>& epsilons,
                                   DegenerationFamily family,
                                   Execution exec = Execution::Parallel);

PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

/// Columns: epsilon, omega_small, omega_large, norm_plus, norm_minus.
std::string to_csv(const DegenerationScan& scan);

std::vector<double> logspace(double lo_exp, double hi_exp, std::size_t count);

}  // namespace ptlab

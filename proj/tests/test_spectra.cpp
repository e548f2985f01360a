#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "ptlab/catalog2x2.hpp"
#include "ptlab/spectra.hpp"
#include "test_support.hpp"

using namespace ptlab;
using namespace ptlab::testing;

namespace {

const Complex I(0.0, 1.0);

catalog::Pt2Params pt2(double e, double gamma, double rho, double delta) {
    catalog::Pt2Params p;
    p.e = e;
    p.gamma = gamma;
    p.rho = rho;
    p.delta = delta;
    return p;
}

std::vector<std::vector<Index>> segre_blocks(const SpectrumReport& r) {
    std::vector<std::vector<Index>> out;
    for (const auto& s : r.segre) out.push_back(s.blocks);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(ClassifySpectrum, UnbrokenTwoByTwo) {
    for (double delta : {0.0, 0.4, 2.0}) {
        const auto r = classify_spectrum(catalog::pt2_hamiltonian(pt2(0.0, 2.0, 1.0, delta)), {},
                                         SuppliedSymmetry{SymmetryKind::PT, diagonal_parity_matrix(1, 1)});
        EXPECT_EQ(r.reality_class, RealityClass::AllRealDiagonalizable);
        ASSERT_EQ(r.eigenvalues.size(), 2u);
        EXPECT_NEAR(r.eigenvalues[0].real(), -std::sqrt(3.0), 1e-14);
        EXPECT_NEAR(r.eigenvalues[1].real(), std::sqrt(3.0), 1e-14);
        ASSERT_TRUE(r.unbroken);
        EXPECT_TRUE(*r.unbroken);
        EXPECT_FALSE(r.indeterminate);
    }
}

TEST(ClassifySpectrum, BrokenTwoByTwo) {
    const auto r = classify_spectrum(catalog::pt2_hamiltonian(pt2(0.0, 1.0, 2.0, 0.0)), {},
                                     SuppliedSymmetry{SymmetryKind::PT, diagonal_parity_matrix(1, 1)});
    EXPECT_EQ(r.reality_class, RealityClass::ConjugatePairs);
    EXPECT_NEAR(std::abs(r.eigenvalues[0] + I * std::sqrt(3.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(r.eigenvalues[1] - I * std::sqrt(3.0)), 0.0, 1e-14);
    ASSERT_TRUE(r.unbroken);
    EXPECT_FALSE(*r.unbroken);
}

TEST(ClassifySpectrum, JordanBlock) {
    const auto r = classify_spectrum(jordan_block(3, 5.0));
    EXPECT_EQ(r.reality_class, RealityClass::AllRealDefective);
    ASSERT_EQ(r.segre.size(), 1u);
    EXPECT_NEAR(std::abs(r.segre[0].eigenvalue - 5.0), 0.0, 1e-12);
    EXPECT_EQ(r.segre[0].blocks, (std::vector<Index>{3}));
    EXPECT_FALSE(r.unbroken.has_value());
}

TEST(ClassifySpectrum, MixedAndNotClosed) {
    ComplexMatrix h = ComplexMatrix::Zero(3, 3);
    h(0, 0) = 1.0;
    h(1, 1) = 2.0 + I;
    h(2, 2) = 2.0 - I;
    EXPECT_EQ(classify_spectrum(h).reality_class, RealityClass::Mixed);
    h(2, 2) = 3.0;
    EXPECT_EQ(classify_spectrum(h).reality_class, RealityClass::NotConjugateClosed);
}

TEST(ClassifySpectrum, DirectSumSegre) {
    ComplexMatrix h = ComplexMatrix::Zero(6, 6);
    h.block(0, 0, 3, 3) = jordan_block(3, 1.0);
    h.block(3, 3, 2, 2) = jordan_block(2, 1.0);
    h(5, 5) = -2.0;
    const auto r = classify_spectrum(h);
    EXPECT_EQ(r.reality_class, RealityClass::AllRealDefective);
    EXPECT_EQ(segre_blocks(r), (std::vector<std::vector<Index>>{{1}, {3, 2}}));
}

TEST(ClassifySpectrum, SegreInvariantUnderSimilarity) {
    std::mt19937_64 rng(51);
    ComplexMatrix h = ComplexMatrix::Zero(5, 5);
    h.block(0, 0, 2, 2) = jordan_block(2, 0.5);
    h.block(2, 2, 2, 2) = jordan_block(2, -1.0);
    h(4, 4) = 2.0;
    const auto base = segre_blocks(classify_spectrum(h));
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix t = well_conditioned_complex(5, rng);
        const auto r = classify_spectrum(t * h * t.inverse());
        EXPECT_FALSE(r.indeterminate) << r.diagnostic;
        EXPECT_EQ(segre_blocks(r), base);
    }
}

TEST(ClassifySpectrum, SegreSumsToDimension) {
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 50; ++trial) {
        const Index n = 1 + trial % 6;
        const auto r = classify_spectrum(random_complex(n, n, rng));
        Index total = 0;
        for (const auto& s : r.segre)
            for (Index b : s.blocks) total += b;
        EXPECT_EQ(total, n);
    }
}

TEST(ClassifySpectrum, PtSymmetricSpectraClosedUnderConjugation) {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 200; ++trial) {
        const Index m = 1 + trial % 3, n = (trial / 3) % 3;
        PtBlockParams p{m, n, random_real(m, m, rng), random_real(m, n, rng), random_real(n, m, rng),
                        random_real(n, n, rng)};
        const auto r = classify_spectrum(construct_pt_block(p), {},
                                         SuppliedSymmetry{SymmetryKind::PT, diagonal_parity_matrix(m, n)});
        EXPECT_NE(r.reality_class, RealityClass::NotConjugateClosed);
        ASSERT_TRUE(r.unbroken);
        EXPECT_EQ(*r.unbroken, r.reality_class == RealityClass::AllRealDiagonalizable ||
                                   r.reality_class == RealityClass::AllRealDefective);
    }
}

TEST(ClassifySpectrum, FailingSymmetryLeavesUnbrokenUnset) {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = I;
    const auto r = classify_spectrum(d, {}, SuppliedSymmetry{SymmetryKind::PT, diagonal_parity_matrix(1, 1)});
    ASSERT_TRUE(r.symmetry);
    EXPECT_FALSE(r.symmetry->holds);
    EXPECT_FALSE(r.unbroken.has_value());
}

TEST(AlignPtPhases, AlreadyAligned) {
    const ComplexMatrix s3 = catalog::pauli().sigma3;
    const auto a = align_pt_phases(s3, s3);
    for (Index k = 0; k < 2; ++k) {
        const ComplexVector v = a.vectors.col(k);
        EXPECT_LE((s3 * v.conjugate() - v).norm(), 1e-14);
        EXPECT_NEAR(std::abs(a.pt_eigenvalues[k]), 1.0, 1e-14);
    }
}

TEST(AlignPtPhases, UnbrokenFamily) {
    const ComplexMatrix s3 = catalog::pauli().sigma3;
    const ComplexMatrix h = catalog::pt2_hamiltonian(pt2(0.0, 2.0, 1.0, 0.4));
    const auto a = align_pt_phases(s3, h);
    ASSERT_EQ(a.eigenvalues.size(), 2u);
    for (Index k = 0; k < 2; ++k) {
        const ComplexVector v = a.vectors.col(k);
        EXPECT_NEAR(std::abs(a.pt_eigenvalues[k]), 1.0, 1e-12);
        EXPECT_LE((s3 * v.conjugate() - v).norm(), 1e-12);
        EXPECT_LE((h * v - a.eigenvalues[k] * v).norm(), 1e-12);
    }
}

TEST(AlignPtPhases, BrokenFamilyThrowsNamingEigenvalue) {
    try {
        align_pt_phases(catalog::pauli().sigma3, catalog::pt2_hamiltonian(pt2(0.0, 1.0, 2.0, 0.0)));
        FAIL() << "expected ContractError";
    } catch (const ContractError& e) {
        EXPECT_NE(std::string(e.what()).find("complex"), std::string::npos) << e.what();
    }
}

TEST(JordanChain, TwoByTwoNilpotent) {
    const auto c = jordan_chain(jordan_block(2, 0.0), 0.0);
    ASSERT_EQ(c.vectors.size(), 2u);
    EXPECT_LE((c.vectors[0] - ComplexVector::Unit(2, 0)).norm(), 1e-14);
    EXPECT_LE((c.vectors[1] - ComplexVector::Unit(2, 1)).norm(), 1e-14);
}

TEST(JordanChain, PtFamilyMatchesClosedForm) {
    for (double gamma : {0.5, 1.0, 3.0}) {
        for (double delta : {-1.0, 0.0, 0.4, 1.2}) {
            const double e = 0.7;
            const ComplexMatrix h = catalog::pt2_jordan_hamiltonian(e, gamma, delta);
            for (double alpha : {0.0, 1.0, -2.5}) {
                const auto num = jordan_chain(h, e, {}, alpha);
                EXPECT_LT(num.residual, 1e-10);
                // Same line as the closed-form Phi0, up to the normalization n0.
                const auto ref = catalog::pt2_jordan_chain(e, gamma, delta, 1.0, alpha);
                const Complex n0 = ref.phi0.dot(num.vectors[0]) / ref.phi0.squaredNorm();
                EXPECT_LE((num.vectors[0] - n0 * ref.phi0).norm(), 1e-10);
                // With the same n0 the closed-form Phi1 differs from ours by a multiple of Phi0.
                const auto scaled = catalog::pt2_jordan_chain(e, gamma, delta, n0, 0.0);
                const ComplexVector diff = num.vectors[1] - scaled.phi1;
                const ComplexVector along = (num.vectors[0].dot(diff) / num.vectors[0].squaredNorm()) * num.vectors[0];
                EXPECT_LE((diff - along).norm(), 1e-10);
            }
        }
    }
}

TEST(JordanChain, ChainRelationsForJordanConstructions) {
    for (Index m = 1; m <= 3; ++m) {
        for (Index n = 1; n <= 3; ++n) {
            const auto pj = build_pt_jordan(m, n, 1.5);
            const auto c = jordan_chain(pj.h0, 1.5);
            ASSERT_EQ(Index(c.vectors.size()), m + n);
            const ComplexMatrix shifted = pj.h0 - 1.5 * ComplexMatrix::Identity(m + n, m + n);
            EXPECT_LE((shifted * c.vectors[0]).norm(), 1e-10);
            for (std::size_t k = 0; k + 1 < c.vectors.size(); ++k) {
                EXPECT_LE((shifted * c.vectors[k + 1] - c.vectors[k]).norm(), 1e-10);
            }
        }
    }
}

TEST(JordanChain, ContractErrors) {
    EXPECT_THROW(jordan_chain(catalog::pauli().sigma3, 1.0), ContractError);
    EXPECT_THROW(jordan_chain(jordan_block(2, 0.0), 3.0), ContractError);
    EXPECT_THROW(jordan_chain(ComplexMatrix::Zero(2, 2), 0.0), ContractError);
}

TEST(BuildPtJordan, OneOneExample) {
    const auto pj = build_pt_jordan(1, 1, 0.0);
    ComplexMatrix h(2, 2);
    h << 0.0, I, 0.0, 0.0;
    EXPECT_EQ(pj.h0, h);
    ComplexMatrix lam = ComplexMatrix::Zero(2, 2);
    lam(0, 0) = 1.0;
    lam(1, 1) = I;
    EXPECT_EQ(pj.lambda_matrix, lam);
    EXPECT_LE(max_abs(lam * h * lam.inverse() - jordan_block(2, 0.0)), 1e-15);
}

TEST(BuildPtJordan, SimilarToSingleBlockAndPtSymmetric) {
    for (Index m = 1; m <= 4; ++m) {
        for (Index n = 1; n <= 4; ++n) {
            const auto pj = build_pt_jordan(m, n, 3.0);
            EXPECT_LE(max_abs(pj.lambda_matrix * pj.h0 * pj.lambda_matrix.inverse() - jordan_block(m + n, 3.0)),
                      1e-14);
            EXPECT_TRUE(check_symmetry(SymmetryKind::PT, diagonal_parity_matrix(m, n), pj.h0).holds);
        }
    }
    const auto r = classify_spectrum(build_pt_jordan(2, 1, 3.0).h0);
    ASSERT_EQ(r.segre.size(), 1u);
    EXPECT_EQ(r.segre[0].blocks, (std::vector<Index>{3}));
    EXPECT_THROW(build_pt_jordan(0, 1, 0.0), DimensionError);
}

TEST(Degeneration, LimitsForPtFamily) {
    auto eps = logspace(-6.0, -2.0, 9);
    std::reverse(eps.begin(), eps.end());
    const auto scan = degeneration_scan(1.0, 1.0, eps, DegenerationFamily::PT2);
    EXPECT_NEAR(scan.omega_large.back(), 2.0, 0.02);
    EXPECT_NEAR(scan.omega_small.back() / eps.back(), 0.5, 0.01);
    ASSERT_TRUE(scan.fit_omega_small && scan.fit_norm_plus && scan.fit_norm_minus);
    EXPECT_NEAR(scan.fit_omega_small->slope, 1.0, 0.05);
    EXPECT_NEAR(scan.fit_norm_plus->slope, 1.0, 0.05);
    EXPECT_NEAR(scan.fit_norm_minus->slope, 1.0, 0.05);
}

TEST(Degeneration, BothFamiliesScaleLinearly) {
    auto eps = logspace(-6.0, -2.0, 17);
    std::reverse(eps.begin(), eps.end());
    for (auto fam : {DegenerationFamily::PT2, DegenerationFamily::Pseudo2}) {
        for (double u : {0.5, 2.0}) {
            const double gamma = 1.5;
            const auto scan = degeneration_scan(u, gamma, eps, fam);
            EXPECT_NEAR(scan.fit_omega_small->slope, 1.0, 0.05);
            EXPECT_NEAR(scan.fit_omega_small->prefactor, 0.5 * u * gamma, 0.05 * 0.5 * u * gamma);
        }
    }
}

TEST(Degeneration, OmegaValuesAreMetricEigenvalues) {
    // Independent oracle: both omegas are eigenvalues of the closed-form metric, so their sum is
    // the trace 2 u gamma and their product the determinant.
    const std::vector<double> eps{0.5, 0.1, 1e-3};
    const double u = 1.2, gamma = 0.8;
    const auto scan = degeneration_scan(u, gamma, eps, DegenerationFamily::Pseudo2);
    for (std::size_t k = 0; k < eps.size(); ++k) {
        EXPECT_NEAR(scan.omega_small[k] + scan.omega_large[k], 2.0 * u * gamma, 1e-12);
        const double rho2 = gamma * gamma * (1.0 - eps[k]);
        EXPECT_NEAR(scan.omega_small[k] * scan.omega_large[k], u * u * (gamma * gamma - rho2), 1e-12);
    }
}

TEST(Degeneration, PreconditionsEnforced) {
    EXPECT_THROW(degeneration_scan(-1.0, 1.0, {0.1}, DegenerationFamily::PT2), ContractError);
    EXPECT_THROW(degeneration_scan(1.0, 1.0, {0.1, 0.2}, DegenerationFamily::PT2), ContractError);
    EXPECT_THROW(degeneration_scan(1.0, 1.0, {1.0}, DegenerationFamily::PT2), ContractError);
}

TEST(Degeneration, CsvHeader) {
    const auto scan = degeneration_scan(1.0, 1.0, {0.1, 0.01}, DegenerationFamily::PT2);
    std::istringstream in(to_csv(scan));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "epsilon,omega_small,omega_large,norm_plus,norm_minus");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 2);
}

TEST(PowerFit, ExactPowerLaw) {
    std::vector<double> x{1e-4, 1e-3, 1e-2}, y;
    for (double v : x) y.push_back(3.0 * std::pow(v, 1.5));
    const auto f = fit_power_law(x, y);
    EXPECT_NEAR(f.slope, 1.5, 1e-12);
    EXPECT_NEAR(f.prefactor, 3.0, 1e-10);
}

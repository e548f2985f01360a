#pragma once

#include <cmath>
#include <random>

#include <Eigen/QR>

#include "ptlab/catalog2x2.hpp"
#include "ptlab/numerics.hpp"

namespace ptlab::testing {

inline RealMatrix random_real(Index r, Index c, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, scale);
    RealMatrix m(r, c);
    for (Index i = 0; i < r; ++i)
        for (Index k = 0; k < c; ++k) m(i, k) = normal(rng);
    return m;
}

inline ComplexMatrix random_complex(Index r, Index c, std::mt19937_64& rng, double scale = 1.0) {
    ComplexMatrix m(r, c);
    m.real() = random_real(r, c, rng, scale);
    m.imag() = random_real(r, c, rng, scale);
    return m;
}

inline ComplexMatrix random_hermitian(Index n, std::mt19937_64& rng) {
    const ComplexMatrix a = random_complex(n, n, rng);
    return 0.5 * (a + a.adjoint());
}

inline ComplexMatrix random_unitary(Index n, std::mt19937_64& rng) {
    Eigen::HouseholderQR<ComplexMatrix> qr(random_complex(n, n, rng));
    return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

/// Identity plus a moderate random perturbation: invertible with modest condition number.
inline RealMatrix well_conditioned_real(Index n, std::mt19937_64& rng) {
    return RealMatrix::Identity(n, n) + random_real(n, n, rng, 0.3 / std::sqrt(double(n)));
}

inline ComplexMatrix well_conditioned_complex(Index n, std::mt19937_64& rng) {
    return ComplexMatrix::Identity(n, n) + random_complex(n, n, rng, 0.3 / std::sqrt(double(n)));
}

/// Fields shared by the PT and pseudo 2x2 family records.
struct FamilyView {
    ComplexMatrix h0;
    Complex e_plus;
    Complex e_minus;
    ComplexVector eigvec_plus;
    ComplexVector eigvec_minus;
    std::optional<catalog::MetricData> metric;
    std::string metric_reason;
};

inline FamilyView family_view(const catalog::Pt2Params& p, bool pseudo) {
    auto pick = [](const auto& f) {
        return FamilyView{f.h0, f.e_plus, f.e_minus, f.eigvec_plus, f.eigvec_minus, f.metric, f.metric_reason};
    };
    return pseudo ? pick(catalog::pseudo2_family(p)) : pick(catalog::pt2_family(p));
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace ptlab::testing

// Copyright 2026 The hvkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hvkit/hilbert.hpp"
#include "support.hpp"

using namespace hvkit;
using hvkit::testing::naive_expectation;
using hvkit::testing::naive_inner;
using hvkit::testing::naive_kron;
using hvkit::testing::raw;

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2;

/// Random 2x2 unitary from a Haar frame.
CMatrix random_unitary(Rng &rng) {
    const auto f = random_frame(2, rng);
    CMatrix u(2, 2);
    u.col(0) = f[0].amplitudes();
    u.col(1) = f[1].amplitudes();
    return u;
}

} // namespace

TEST(Ket, RejectsNonUnitAndTooSmall) {
    EXPECT_THROW(Ket(CVector{{1.0, 1.0}}), InvalidInput);
    EXPECT_THROW(Ket(CVector{{1.0}}), InvalidInput);
    EXPECT_THROW(Ket::normalized(CVector::Zero(3)), InvalidInput);
}

TEST(Ket, CanonicalPhase) {
    const Ket k(CVector{{Complex(0, kInvSqrt2), Complex(kInvSqrt2, 0)}});
    EXPECT_DOUBLE_EQ(k[0].real(), kInvSqrt2);
    EXPECT_DOUBLE_EQ(k[0].imag(), 0.0);
    EXPECT_NEAR(std::abs(k[1] - Complex(0, -kInvSqrt2)), 0.0, 1e-15);
    // Leading zero amplitude: the first nonzero one carries the phase.
    const Ket j(CVector{{0.0, Complex(0, -1)}});
    EXPECT_DOUBLE_EQ(j[1].real(), 1.0);
}

TEST(Inner, Examples) {
    EXPECT_DOUBLE_EQ(std::abs(inner(ket_zero(), ket_zero())), 1.0);
    EXPECT_NEAR(std::abs(inner(ket_zero(), ket_plus())), kInvSqrt2, 1e-15);
    EXPECT_THROW((void)inner(ket_zero(), Ket::basis(3, 0)), InvalidInput);
}

TEST(Inner, MatchesComponentSumOnRandomKets) {
    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        const Ket u = random_ket(4, rng);
        const Ket v = random_ket(4, rng);
        const Complex want = naive_inner(raw(u), raw(v));
        EXPECT_NEAR(std::abs(inner(u, v) - want), 0.0, 1e-14);
        EXPECT_LE(std::abs(inner(u, v)), 1.0 + 1e-12);
        // Conjugate symmetry.
        EXPECT_NEAR(std::abs(inner(v, u) - std::conj(want)), 0.0, 1e-14);
    }
}

TEST(Tensor, Examples) {
    const Ket zz = tensor(ket_zero(), ket_zero());
    ASSERT_EQ(zz.dim(), 4u);
    EXPECT_DOUBLE_EQ(zz[0].real(), 1.0);
    for (std::size_t i = 1; i < 4; ++i) {
        EXPECT_EQ(std::abs(zz[i]), 0.0);
    }
    const Ket zp = tensor(ket_zero(), ket_plus());
    const auto want = naive_kron(raw(ket_zero()), raw(ket_plus()));
    ASSERT_EQ(want.size(), 4u);
    EXPECT_NEAR(zp[0].real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(zp[1].real(), kInvSqrt2, 1e-15);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(std::abs(zp[i] - want[i]), 0.0, 1e-15);
    }
}

TEST(Tensor, InnerFactorisesAndNormMultiplies) {
    Rng rng(12);
    for (int t = 0; t < 200; ++t) {
        const Ket a = random_ket(2, rng);
        const Ket b = random_ket(2, rng);
        const Ket c = random_ket(2, rng);
        const Ket d = random_ket(2, rng);
        // Brute-force 4-dim inner product on Kronecker vectors built by hand.
        const Complex brute = naive_inner(naive_kron(raw(a), raw(b)), naive_kron(raw(c), raw(d)));
        // Canonical phase may rotate the product relative to raw kron.
        EXPECT_NEAR(std::abs(inner(tensor(a, b), tensor(c, d))), std::abs(brute), 1e-14);
        EXPECT_NEAR(std::abs(brute - inner(a, c) * inner(b, d)), 0.0, 1e-14);
        EXPECT_NEAR(tensor(a, b).amplitudes().norm(), 1.0, 1e-12);
    }
}

TEST(Tensor, AssociativeUpToOrdering) {
    Rng rng(13);
    for (int t = 0; t < 50; ++t) {
        const Ket a = random_ket(2, rng);
        const Ket b = random_ket(2, rng);
        const Ket c = random_ket(2, rng);
        EXPECT_TRUE(same_ray(tensor(tensor(a, b), c), tensor(a, tensor(b, c))));
    }
}

TEST(Observable, RejectsBrokenSpectralData) {
    const CMatrix p0 = ket_zero().projector();
    const CMatrix p1 = ket_one().projector();
    const CMatrix pp = ket_plus().projector();
    EXPECT_THROW(Observable({}), InvalidInput);
    EXPECT_THROW(Observable({{1.0, p0}}), InvalidInput);              // sum != I
    EXPECT_THROW(Observable({{1.0, p0}, {1.0, p1}}), InvalidInput);   // repeated eigenvalue
    EXPECT_THROW(Observable({{1.0, p0}, {2.0, pp}}), InvalidInput);   // not orthogonal
    CMatrix bad = p0;
    bad(0, 1) = 0.5;
    EXPECT_THROW(Observable({{1.0, bad}, {2.0, p1}}), InvalidInput);  // not Hermitian
    EXPECT_THROW(Observable({{1.0, 2.0 * p0}, {2.0, p1}}), InvalidInput);
    EXPECT_NO_THROW(Observable({{1.0, p0}, {-1.0, p1}}));
}

TEST(BornProb, Examples) {
    const Observable z = Observable::qubit_spin({0, 0, 1});
    EXPECT_NEAR(born_prob(z, ket_zero(), 1.0), 1.0, 1e-15);
    EXPECT_NEAR(born_prob(z, ket_zero(), -1.0), 0.0, 1e-15);
    EXPECT_THROW((void)born_prob(z, ket_zero(), 3.0), InvalidInput);
    EXPECT_THROW((void)born_prob(z, Ket::basis(4, 0), 1.0), InvalidInput);

    // Projector onto phi-perp for phi = |+>, psi = |0>: 1 - |<0|+>|^2 = 1/2.
    const Observable perp =
        Observable::projector_test(orthogonal_complement_2d(ket_plus()).projector());
    EXPECT_NEAR(born_prob(perp, ket_zero(), 1.0), 0.5, 1e-15);
}

TEST(BornProb, MatchesDenseOracleAndNormalises) {
    Rng rng(14);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t d = 2 + static_cast<std::size_t>(t % 3);
        const Observable m = random_observable(d, rng);
        const Ket psi = random_ket(d, rng);
        double total = 0.0;
        for (std::size_t k = 0; k < m.size(); ++k) {
            const double p = born_prob(m, psi, m[k].eigenvalue);
            EXPECT_NEAR(p, naive_expectation(m[k].projector, raw(psi)), 1e-13);
            EXPECT_GE(p, 0.0);
            EXPECT_LE(p, 1.0);
            total += p;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(OrthogonalComplement, Examples) {
    const Ket one = orthogonal_complement_2d(ket_zero());
    EXPECT_DOUBLE_EQ(one[0].real(), 0.0);
    EXPECT_DOUBLE_EQ(one[1].real(), 1.0);
    const Ket m = orthogonal_complement_2d(ket_plus());
    EXPECT_NEAR(m[0].real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(m[1].real(), -kInvSqrt2, 1e-15);
    EXPECT_THROW((void)orthogonal_complement_2d(Ket::basis(3, 0)), InvalidInput);
}

TEST(OrthogonalComplement, OrthogonalAndInvolutive) {
    Rng rng(15);
    for (int t = 0; t < 500; ++t) {
        const Ket psi = random_ket(2, rng);
        const Ket perp = orthogonal_complement_2d(psi);
        EXPECT_LE(std::abs(naive_inner(raw(psi), raw(perp))), 1e-12);
        EXPECT_GT(perp[0].real() + (std::abs(perp[0]) < 1e-12 ? perp[1].real() : 0.0), 0.0);
        EXPECT_NEAR(std::abs(inner(psi, orthogonal_complement_2d(perp))), 1.0, 1e-12);
    }
}

TEST(PbrBasis, ReferencePair) {
    const PbrBasis b = build_pbr_basis(ket_zero(), ket_plus());
    EXPECT_LE(b.orthogonality_residual(), 1e-12);
    EXPECT_LE(b.gram_deviation(), 1e-12);
    CMatrix sum = CMatrix::Zero(4, 4);
    for (const auto &k : b.kets) {
        sum += k.projector();
    }
    EXPECT_LE((sum - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PbrBasis, BornTableHasOneZeroPerRowAndColumn) {
    const PbrBasis b = build_pbr_basis(ket_zero(), ket_plus());
    const auto prods = b.products();
    int zeros = 0;
    for (std::size_t s = 0; s < 4; ++s) {
        for (std::size_t k = 0; k < 4; ++k) {
            const double p = naive_expectation(b.kets[k].projector(), raw(prods[s]));
            if (p <= kZeroProbability) {
                ++zeros;
                EXPECT_EQ(s, k) << "product " << s << " is Born-zero for xi " << k;
            }
        }
    }
    EXPECT_EQ(zeros, 4);
}

TEST(PbrBasis, CovariantUnderJointRotations) {
    Rng rng(16);
    for (int t = 0; t < 100; ++t) {
        const CMatrix u = random_unitary(rng);
        const Ket one = Ket::normalized(u * ket_zero().amplitudes());
        const Ket two = Ket::normalized(u * ket_plus().amplitudes());
        const PbrBasis b = build_pbr_basis(one, two);
        EXPECT_LE(b.orthogonality_residual(), 1e-12);
        EXPECT_LE(b.gram_deviation(), 1e-12);
    }
}

TEST(PbrBasis, RejectsOtherOverlaps) {
    EXPECT_THROW((void)build_pbr_basis(ket_zero(), ket_one()), InvalidInput);
    EXPECT_THROW((void)build_pbr_basis(ket_zero(), ket_zero()), InvalidInput);
    EXPECT_THROW((void)build_pbr_basis(ket_zero(), qubit_ket(1.0, 0.0)), InvalidInput);
    EXPECT_THROW((void)build_pbr_basis(Ket::basis(3, 0), ket_plus()), InvalidInput);
}

TEST(PbrObservable, LabelsAndZeros) {
    const PbrBasis b = build_pbr_basis(ket_zero(), ket_plus());
    const Observable m = pbr_observable(b);
    ASSERT_EQ(m.size(), 4u);
    EXPECT_EQ(m.spectrum(), (std::vector<double>{1, 2, 3, 4}));
    const std::array<Ket, 2> states = {ket_zero(), ket_plus()};
    for (int x = 1; x <= 2; ++x) {
        for (int y = 1; y <= 2; ++y) {
            const Ket xy = tensor(states[x - 1], states[y - 1]);
            EXPECT_LE(born_prob(m, xy, pbr_label(x, y)), 1e-12);
        }
    }
    double total = 0.0;
    for (double k : m.spectrum()) {
        total += born_prob(m, tensor(ket_zero(), ket_zero()), k);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

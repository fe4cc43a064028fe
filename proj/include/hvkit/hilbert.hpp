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
/**
 * @file
 * Finite-dimensional Hilbert-space arithmetic: kets, discrete observables in
 * spectral form, tensor products, Born probabilities, and the two-qubit
 * antidistinguishing basis for a pair of qubit preparations.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"
#include "random.hpp"

namespace hvkit {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Entrywise tolerance for unit norms, projector identities and Gram checks.
inline constexpr double kTolerance = 1e-12;
/// A Born probability at or below this value is an exact zero.
inline constexpr double kZeroProbability = 1e-12;

/**
 * Unit-norm state vector, dim >= 2.
 *
 * Kets are stored in canonical phase: the first amplitude whose modulus
 * exceeds kTolerance is real and positive. Two kets that differ only by a
 * global phase therefore compare equal amplitude by amplitude.
 */
class Ket {
  public:
    explicit Ket(CVector amplitudes) : amps_(std::move(amplitudes)) {
        detail::require(amps_.size() >= 2, "ket dimension must be >= 2");
        const double n = amps_.norm();
        detail::require(std::abs(n - 1.0) <= kTolerance,
                        "ket is not unit norm (norm = " + std::to_string(n) +
                            ")");
        canonicalize_phase();
    }

    /// Normalises `amplitudes` first; rejects the zero vector.
    static Ket normalized(CVector amplitudes) {
        const double n = amplitudes.norm();
        detail::require(n > kTolerance, "cannot normalise a zero vector");
        return Ket(amplitudes / n);
    }

    static Ket basis(std::size_t dim, std::size_t index) {
        detail::require(index < dim, "basis index out of range");
        CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
        v(static_cast<Eigen::Index>(index)) = 1.0;
        return Ket(std::move(v));
    }

    [[nodiscard]] std::size_t dim() const {
        return static_cast<std::size_t>(amps_.size());
    }
    [[nodiscard]] const CVector &amplitudes() const { return amps_; }
    [[nodiscard]] Complex operator[](std::size_t i) const {
        return amps_(static_cast<Eigen::Index>(i));
    }
    /// |psi><psi|
    [[nodiscard]] CMatrix projector() const { return amps_ * amps_.adjoint(); }

  private:
    void canonicalize_phase() {
        for (Eigen::Index i = 0; i < amps_.size(); ++i) {
            const double r = std::abs(amps_(i));
            if (r > kTolerance) {
                amps_ *= std::conj(amps_(i)) / r;
                amps_(i) = r;
                return;
            }
        }
    }

    CVector amps_;
};

/// <a|b>, conjugate-linear in `a`.
inline Complex inner(const Ket &a, const Ket &b) {
    detail::require(a.dim() == b.dim(), "inner: dimension mismatch (" +
                                            std::to_string(a.dim()) + " vs " +
                                            std::to_string(b.dim()) + ")");
    return a.amplitudes().dot(b.amplitudes());
}

/// |<a|b>|^2
inline double overlap(const Ket &a, const Ket &b) {
    return std::norm(inner(a, b));
}

/// Equality up to global phase.
inline bool same_ray(const Ket &a, const Ket &b) {
    return a.dim() == b.dim() && std::abs(inner(a, b)) > 1.0 - kTolerance;
}

/// Kronecker product with `a`'s index major: (a (x) b)[i*db + j] = a_i b_j.
inline Ket tensor(const Ket &a, const Ket &b) {
    const auto da = static_cast<Eigen::Index>(a.dim());
    const auto db = static_cast<Eigen::Index>(b.dim());
    CVector out(da * db);
    for (Eigen::Index i = 0; i < da; ++i) {
        out.segment(i * db, db) = a.amplitudes()(i) * b.amplitudes();
    }
    return Ket::normalized(std::move(out));
}

inline Ket ket_zero() { return Ket::basis(2, 0); }
inline Ket ket_one() { return Ket::basis(2, 1); }
inline Ket ket_plus() {
    return Ket(CVector{{std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2}});
}
inline Ket ket_minus() {
    return Ket(CVector{{std::numbers::sqrt2 / 2, -std::numbers::sqrt2 / 2}});
}

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
inline Ket qubit_ket(double theta, double phi) {
    return Ket::normalized(CVector{
        {Complex(std::cos(theta / 2), 0.0),
         std::polar(1.0, phi) * std::sin(theta / 2)}});
}

/// The unique (canonical-phase) qubit ket orthogonal to `phi`.
inline Ket orthogonal_complement_2d(const Ket &phi) {
    detail::require(phi.dim() == 2, "orthogonal_complement_2d needs dim 2");
    return Ket::normalized(
        CVector{{-std::conj(phi[1]), std::conj(phi[0])}});
}

// ---------------------------------------------------------------------------
// Observables
// ---------------------------------------------------------------------------

struct Outcome {
    double eigenvalue;
    CMatrix projector;
};

/**
 * Discrete Hermitian observable in spectral form {(k, P_k)}.
 *
 * The constructor enforces: each P_k is a nonzero Hermitian idempotent, the
 * P_k are mutually orthogonal and sum to the identity, and eigenvalues are
 * pairwise distinct.
 */
class Observable {
  public:
    explicit Observable(std::vector<Outcome> outcomes)
        : outcomes_(std::move(outcomes)) {
        detail::require(!outcomes_.empty(), "observable has no outcomes");
        const Eigen::Index d = outcomes_.front().projector.rows();
        detail::require(d >= 1, "observable has empty projectors");
        CMatrix sum = CMatrix::Zero(d, d);
        for (std::size_t j = 0; j < outcomes_.size(); ++j) {
            const CMatrix &p = outcomes_[j].projector;
            detail::require(p.rows() == d && p.cols() == d,
                            "projector shape mismatch");
            detail::require(max_abs(p * p - p) <= kTolerance,
                            "projector is not idempotent");
            detail::require(max_abs(p - p.adjoint()) <= kTolerance,
                            "projector is not Hermitian");
            detail::require(p.trace().real() > 0.5, "projector is zero");
            for (std::size_t k = 0; k < j; ++k) {
                detail::require(outcomes_[k].eigenvalue !=
                                    outcomes_[j].eigenvalue,
                                "eigenvalues are not distinct");
                detail::require(
                    max_abs(outcomes_[k].projector * p) <= kTolerance,
                    "projectors are not mutually orthogonal");
            }
            sum += p;
        }
        detail::require(max_abs(sum - CMatrix::Identity(d, d)) <= kTolerance,
                        "projectors do not sum to the identity");
    }

    /// Rank-1 projectors onto an orthonormal basis, one eigenvalue each.
    static Observable from_basis(std::span<const Ket> basis,
                                 std::span<const double> eigenvalues) {
        detail::require(basis.size() == eigenvalues.size(),
                        "from_basis: basis/eigenvalue count mismatch");
        std::vector<Outcome> out;
        out.reserve(basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i) {
            out.push_back({eigenvalues[i], basis[i].projector()});
        }
        return Observable(std::move(out));
    }

    /// The projector measured on its own: {(1, P), (0, I - P)}. A full-rank
    /// P yields the single-outcome observable {(1, I)}.
    static Observable projector_test(const CMatrix &p) {
        const auto d = p.rows();
        const CMatrix rest = CMatrix::Identity(d, d) - p;
        if (rest.trace().real() < 0.5) {
            return Observable({{1.0, p}});
        }
        return Observable({{1.0, p}, {0.0, rest}});
    }

    /// {(1, I)}: the measurement with a single certain outcome.
    static Observable trivial(std::size_t dim) {
        const auto d = static_cast<Eigen::Index>(dim);
        return Observable({{1.0, CMatrix::Identity(d, d)}});
    }

    /// Spin along a unit Bloch axis: +1 on the axis state, -1 on its
    /// antipode.
    static Observable qubit_spin(const std::array<double, 3> &axis) {
        const double n = std::hypot(axis[0], axis[1], axis[2]);
        detail::require(n > kTolerance, "spin axis must be nonzero");
        const double x = axis[0] / n;
        const double y = axis[1] / n;
        const double z = axis[2] / n;
        CMatrix up(2, 2);
        up << Complex(1 + z, 0), Complex(x, -y), Complex(x, y),
            Complex(1 - z, 0);
        up *= 0.5;
        return Observable({{1.0, up}, {-1.0, CMatrix::Identity(2, 2) - up}});
    }

    [[nodiscard]] std::size_t dim() const {
        return static_cast<std::size_t>(outcomes_.front().projector.rows());
    }
    [[nodiscard]] std::size_t size() const { return outcomes_.size(); }
    [[nodiscard]] const std::vector<Outcome> &outcomes() const {
        return outcomes_;
    }
    [[nodiscard]] const Outcome &operator[](std::size_t i) const {
        return outcomes_[i];
    }

    [[nodiscard]] std::optional<std::size_t> index_of(double k) const {
        for (std::size_t i = 0; i < outcomes_.size(); ++i) {
            if (outcomes_[i].eigenvalue == k) {
                return i;
            }
        }
        return std::nullopt;
    }

    [[nodiscard]] std::vector<double> spectrum() const {
        std::vector<double> s;
        s.reserve(outcomes_.size());
        for (const auto &o : outcomes_) {
            s.push_back(o.eigenvalue);
        }
        return s;
    }

  private:
    static double max_abs(const CMatrix &m) {
        return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
    }

    std::vector<Outcome> outcomes_;
};

/// <psi|P_i|psi> for the i-th outcome, clamped to [0, 1].
inline double born_prob_at(const Observable &m, const Ket &psi,
                           std::size_t index) {
    detail::require(psi.dim() == m.dim(), "born_prob: dimension mismatch");
    detail::require(index < m.size(), "born_prob: outcome index out of range");
    const auto &v = psi.amplitudes();
    const double p = v.dot(m[index].projector * v).real();
    return std::clamp(p, 0.0, 1.0);
}

/// Pr(M = k | psi) = <psi|P_k|psi>.
inline double born_prob(const Observable &m, const Ket &psi, double k) {
    const auto idx = m.index_of(k);
    detail::require(idx.has_value(),
                    "born_prob: " + std::to_string(k) + " is not in the spectrum");
    return born_prob_at(m, psi, *idx);
}

/// Born probabilities in outcome order.
inline std::vector<double> born_distribution(const Observable &m,
                                             const Ket &psi) {
    std::vector<double> p(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        p[i] = born_prob_at(m, psi, i);
    }
    return p;
}

// ---------------------------------------------------------------------------
// Random states and observables
// ---------------------------------------------------------------------------

inline CVector gaussian_vector(std::size_t dim, Rng &rng) {
    CVector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        v(i) = Complex(re, im);
    }
    return v;
}

/// Unitarily invariant (Haar) random ket.
inline Ket random_ket(std::size_t dim, Rng &rng) {
    return Ket::normalized(gaussian_vector(dim, rng));
}

/// Haar-random orthonormal frame: Gram-Schmidt on complex Gaussian vectors.
inline std::vector<Ket> random_frame(std::size_t dim, Rng &rng) {
    std::vector<CVector> cols;
    cols.reserve(dim);
    while (cols.size() < dim) {
        CVector v = gaussian_vector(dim, rng);
        for (const auto &c : cols) {
            v -= c.dot(v) * c;
        }
        const double n = v.norm();
        if (n > 1e-6) {
            cols.push_back(v / n);
        }
    }
    std::vector<Ket> frame;
    frame.reserve(dim);
    for (auto &c : cols) {
        frame.push_back(Ket::normalized(std::move(c)));
    }
    return frame;
}

/// Rank-1 observable on a Haar-random frame with eigenvalues 1..dim.
inline Observable random_observable(std::size_t dim, Rng &rng) {
    const auto frame = random_frame(dim, rng);
    std::vector<double> ev(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        ev[i] = static_cast<double>(i + 1);
    }
    return Observable::from_basis(frame, ev);
}

// ---------------------------------------------------------------------------
// Antidistinguishing two-qubit basis
// ---------------------------------------------------------------------------

/// Index of the product |x,y> (x, y in {1, 2}) in the four-element tables
/// below: 11 -> 0, 12 -> 1, 21 -> 2, 22 -> 3.
constexpr std::size_t pairing_index(int x, int y) {
    return static_cast<std::size_t>(2 * (x - 1) + (y - 1));
}

/**
 * Orthonormal basis {xi_11, xi_12, xi_21, xi_22} of C^2 (x) C^2 with
 * <xi_xy | x,y> = 0, built from the preparation pair (|1>, |2>).
 */
struct PbrBasis {
    std::array<Ket, 4> kets;
    Ket one;
    Ket two;

    [[nodiscard]] std::array<Ket, 4> products() const {
        return {tensor(one, one), tensor(one, two), tensor(two, one),
                tensor(two, two)};
    }

    /// max_{x,y} |<xi_xy | x,y>|
    [[nodiscard]] double orthogonality_residual() const {
        const auto prods = products();
        double r = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            r = std::max(r, std::abs(inner(kets[i], prods[i])));
        }
        return r;
    }

    /// max entrywise |G - I| for the Gram matrix G_ij = <xi_i|xi_j>.
    [[nodiscard]] double gram_deviation() const {
        double r = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                const Complex g = inner(kets[i], kets[j]);
                r = std::max(r, std::abs(g - (i == j ? 1.0 : 0.0)));
            }
        }
        return r;
    }
};

/// |<1|2>| must equal 2^{-1/2} to within this tolerance.
inline constexpr double kPbrOverlapTolerance = 1e-9;

/**
 * Build the antidistinguishing basis for preparations with |<1|2>| = 2^{-1/2}.
 *
 * The reference basis for (|0>, |+>) is
 *   xi_11 = (|0,1> + |1,0>)/sqrt2      xi_12 = (|0,-> + |1,+>)/sqrt2
 *   xi_21 = (|+,1> + |-,0>)/sqrt2      xi_22 = (|+,-> + |-,+>)/sqrt2
 * and is carried to (|1>, |2>) by U (x) U, where U|0> ~ |1> and U|+> ~ |2>.
 * Residuals are bounded by kTolerance plus the input's overlap defect.
 */
inline PbrBasis build_pbr_basis(const Ket &one, const Ket &two) {
    detail::require(one.dim() == 2 && two.dim() == 2,
                    "build_pbr_basis needs two qubit kets");
    const Complex a = inner(one, two);
    const double defect = std::abs(std::abs(a) - std::numbers::sqrt2 / 2);
    detail::require(defect <= kPbrOverlapTolerance,
                    "build_pbr_basis: |<1|2>| = " + std::to_string(std::abs(a)) +
                        " is not 2^{-1/2} (general overlap is unsupported)");

    const Ket one_perp = orthogonal_complement_2d(one);
    const Complex b = inner(one_perp, two);
    const Complex ea = a / std::abs(a);
    const Complex eb = b / std::abs(b);
    // U|0> = ea|1>, U|1> = eb|1perp>  =>  U|+> = |2> when |a| = |b| = 2^{-1/2}.
    CMatrix u(2, 2);
    u.col(0) = ea * one.amplitudes();
    u.col(1) = eb * one_perp.amplitudes();
    CMatrix uu(4, 4);
    for (Eigen::Index i = 0; i < 2; ++i) {
        for (Eigen::Index j = 0; j < 2; ++j) {
            uu.block(2 * i, 2 * j, 2, 2) = u(i, j) * u;
        }
    }

    const double h = std::numbers::sqrt2 / 2;
    const CVector z = ket_zero().amplitudes();
    const CVector o = ket_one().amplitudes();
    const CVector p = ket_plus().amplitudes();
    const CVector m = ket_minus().amplitudes();
    auto kron = [](const CVector &x, const CVector &y) {
        CVector out(4);
        for (Eigen::Index i = 0; i < 2; ++i) {
            out.segment(2 * i, 2) = x(i) * y;
        }
        return out;
    };
    const std::array<CVector, 4> reference = {
        CVector(h * (kron(z, o) + kron(o, z))),
        CVector(h * (kron(z, m) + kron(o, p))),
        CVector(h * (kron(p, o) + kron(m, z))),
        CVector(h * (kron(p, m) + kron(m, p)))};

    PbrBasis basis{{Ket::normalized(uu * reference[0]),
                    Ket::normalized(uu * reference[1]),
                    Ket::normalized(uu * reference[2]),
                    Ket::normalized(uu * reference[3])},
                   one,
                   two};

    const double bound = kTolerance + 4.0 * defect;
    const double orth = basis.orthogonality_residual();
    const double gram = basis.gram_deviation();
    if (orth > bound || gram > kTolerance) {
        throw InternalError("build_pbr_basis: post-condition failed "
                            "(orthogonality residual " +
                            std::to_string(orth) + ", Gram deviation " +
                            std::to_string(gram) + ")");
    }
    return basis;
}

/// Eigenvalue label k_xy for outcome xi_xy: k_11=1, k_12=2, k_21=3, k_22=4.
constexpr double pbr_label(int x, int y) {
    return static_cast<double>(pairing_index(x, y) + 1);
}

/// Maximal measurement with eigenstates xi_xy and labels k_xy.
inline Observable pbr_observable(const PbrBasis &basis) {
    const std::array<double, 4> labels = {pbr_label(1, 1), pbr_label(1, 2),
                                          pbr_label(2, 1), pbr_label(2, 2)};
    return Observable::from_basis(basis.kets, labels);
}

/// Computational-basis measurement on dim d with labels 1..d.
inline Observable computational_observable(std::size_t dim) {
    std::vector<Ket> frame;
    std::vector<double> labels;
    for (std::size_t i = 0; i < dim; ++i) {
        frame.push_back(Ket::basis(dim, i));
        labels.push_back(static_cast<double>(i + 1));
    }
    return Observable::from_basis(frame, labels);
}

} // namespace hvkit

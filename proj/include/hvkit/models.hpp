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
 * The Kochen-Specker qubit model and Bell's ontic model.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "error.hpp"
#include "hilbert.hpp"
#include "ontology.hpp"
#include "quadrature.hpp"

namespace hvkit {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3 &a, const Vec3 &b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

/// Standard Bloch map (<X>, <Y>, <Z>).
inline Vec3 bloch_from_ket(const Ket &psi) {
    detail::require(psi.dim() == 2, "bloch_from_ket needs a qubit ket");
    const Complex c = std::conj(psi[0]) * psi[1];
    const Vec3 r{2.0 * c.real(), 2.0 * c.imag(),
                 std::norm(psi[0]) - std::norm(psi[1])};
    const double n = std::hypot(r[0], r[1], r[2]);
    return {r[0] / n, r[1] / n, r[2] / n};
}

inline Ket ket_from_bloch(const Vec3 &r) {
    const double n = std::hypot(r[0], r[1], r[2]);
    detail::require(n > kTolerance, "ket_from_bloch: zero vector");
    const double z = std::clamp(r[2] / n, -1.0, 1.0);
    return qubit_ket(std::acos(z), std::atan2(r[1], r[0]));
}

/// Bloch vector m of a rank-1 qubit projector P = (I + m.sigma)/2.
inline Vec3 bloch_from_projector(const CMatrix &p) {
    return {2.0 * p(1, 0).real(), 2.0 * p(1, 0).imag(),
            (p(0, 0) - p(1, 1)).real()};
}

namespace detail {

/// First component with modulus above kTolerance is positive.
inline bool lex_positive(const Vec3 &m) {
    for (double c : m) {
        if (std::abs(c) > kTolerance) {
            return c > 0.0;
        }
    }
    return false;
}

/// Right-handed orthonormal (e1, e2) completing n.
inline std::pair<Vec3, Vec3> tangent_frame(const Vec3 &n) {
    const Vec3 helper = std::abs(n[2]) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
    Vec3 e1{helper[1] * n[2] - helper[2] * n[1],
            helper[2] * n[0] - helper[0] * n[2],
            helper[0] * n[1] - helper[1] * n[0]};
    const double l = std::hypot(e1[0], e1[1], e1[2]);
    for (double &c : e1) {
        c /= l;
    }
    const Vec3 e2{n[1] * e1[2] - n[2] * e1[1], n[2] * e1[0] - n[0] * e1[2],
                  n[0] * e1[1] - n[1] * e1[0]};
    return {e1, e2};
}

inline Vec3 spherical(const Vec3 &n, const Vec3 &e1, const Vec3 &e2,
                      double cos_t, double phi) {
    const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
    Vec3 r{};
    for (std::size_t i = 0; i < 3; ++i) {
        r[i] = sin_t * std::cos(phi) * e1[i] + sin_t * std::sin(phi) * e2[i] +
               cos_t * n[i];
    }
    const double l = std::hypot(r[0], r[1], r[2]);
    return {r[0] / l, r[1] / l, r[2] / l};
}

/**
 * Projector-determined total order on outcomes.
 *
 * Entries are compared column-major (real, then imaginary part), with
 * differences below 1e-9 treated as ties. The order depends only on the
 * projectors, never on eigenvalue labels, so P and I - P sit in the same
 * relative order in every observable that contains them.
 */
inline std::vector<std::size_t> canonical_order(const Observable &m) {
    std::vector<std::size_t> order(m.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    auto before = [&](std::size_t a, std::size_t b) {
        const CMatrix &pa = m[a].projector;
        const CMatrix &pb = m[b].projector;
        for (Eigen::Index j = 0; j < pa.size(); ++j) {
            const Complex x = pa(j);
            const Complex y = pb(j);
            if (std::abs(x.real() - y.real()) > 1e-9) {
                return x.real() > y.real();
            }
            if (std::abs(x.imag() - y.imag()) > 1e-9) {
                return x.imag() > y.imag();
            }
        }
        return a < b;
    };
    std::stable_sort(order.begin(), order.end(), before);
    return order;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Kochen-Specker
// ---------------------------------------------------------------------------

/**
 * Kochen-Specker qubit model.
 *
 * Lambda_psi is the open hemisphere {lambda in S^2 : lambda.n_psi > 0} with
 * density (lambda.n_psi)/pi with respect to solid angle. A rank-1 projector
 * with Bloch vector m takes value 1 iff lambda.m > 0; within kTolerance of
 * the great circle lambda.m = 0 it takes value 1 iff m is lexicographically
 * positive. An
 * observable answers with the eigenvalue of the projector that takes
 * value 1, so projectors and observables agree pointwise.
 */
class KsModel final : public OntologicalModel {
  public:
    /// Grid and bracket width for the level-set scan along a meridian.
    static constexpr std::size_t kMeridianGrid = 8;
    static constexpr double kMeridianTolerance = 1e-15;

    [[nodiscard]] std::string name() const override { return "ks"; }
    [[nodiscard]] std::size_t dim() const override { return 2; }

    [[nodiscard]] bool is_associated(const HiddenState &lambda,
                                     const Ket &psi) const override {
        return dot(point(lambda), bloch_from_ket(psi)) > 0.0;
    }

    [[nodiscard]] double density(const HiddenState &lambda,
                                 const Ket &psi) const override {
        const double c = dot(point(lambda), bloch_from_ket(psi));
        return c > 0.0 ? c / std::numbers::pi : 0.0;
    }

    /// cos(theta) = sqrt(v), v uniform in (0, 1]; azimuth uniform.
    [[nodiscard]] HiddenState sample(const Ket &psi, Rng &rng) const override {
        const Vec3 n = bloch_from_ket(psi);
        const auto [e1, e2] = detail::tangent_frame(n);
        const double cos_t = std::sqrt(1.0 - rng.uniform());
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        return HiddenState::sphere(detail::spherical(n, e1, e2, cos_t, phi));
    }
    using OntologicalModel::sample;

    [[nodiscard]] double respond(const HiddenState &lambda,
                                 const Observable &m) const override {
        detail::require(m.dim() == 2, "ks model governs dimension 2 only");
        return m[respond_index_at(point(lambda), m)].eigenvalue;
    }

    /**
     * Response integral in a frame with pole n_psi.
     *
     * With s = sin^2(theta) the density (cos theta / pi) dOmega becomes
     * ds dphi / (2 pi). Along a meridian (fixed phi, s from 0 to 1) a
     * half-space indicator changes value at most once, so the level sets
     * in s are measured exactly by bisection; the azimuthal integral is
     * adaptive Gauss-Kronrod.
     */
    [[nodiscard]] std::optional<std::vector<QuadratureValue>>
    integrate_responses(const Ket &psi, const Observable &m) const override {
        detail::require(psi.dim() == 2 && m.dim() == 2,
                        "ks quadrature: dimension mismatch");
        const Vec3 n = bloch_from_ket(psi);
        const auto [e1, e2] = detail::tangent_frame(n);
        std::map<double, quadrature::LevelLengths> cache;
        auto lengths_at = [&](double phi) -> const quadrature::LevelLengths & {
            auto it = cache.find(phi);
            if (it == cache.end()) {
                auto label = [&](double s) {
                    return respond_index_at(
                        detail::spherical(n, e1, e2, std::sqrt(1.0 - s), phi), m);
                };
                it = cache
                         .emplace(phi, quadrature::level_lengths(
                                           label, m.size(), 0.0, 1.0,
                                           kMeridianGrid, kMeridianTolerance))
                         .first;
            }
            return it->second;
        };
        std::vector<QuadratureValue> out;
        for (std::size_t k = 0; k < m.size(); ++k) {
            auto f = [&](double phi) {
                return lengths_at(phi).lengths[k] / (2.0 * std::numbers::pi);
            };
            double err = 0.0;
            const double v =
                boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                    f, 0.0, 2.0 * std::numbers::pi, 15, 1e-10, &err);
            out.push_back({v, err});
        }
        return out;
    }

  private:
    static const Vec3 &point(const HiddenState &lambda) {
        const auto *p = lambda.get_if<SpherePoint>();
        detail::require(p != nullptr, "ks model needs a sphere-point state");
        return p->r;
    }

    static std::size_t respond_index_at(const Vec3 &r, const Observable &m) {
        if (m.size() == 1) {
            return 0;
        }
        const Vec3 m0 = bloch_from_projector(m[0].projector);
        // The outcome whose Bloch vector is lexicographically positive owns
        // the boundary circle.
        const double s = dot(r, m0);
        if (std::abs(s) <= kTolerance) {
            return detail::lex_positive(m0) ? 0 : 1;
        }
        return s > 0.0 ? 0 : 1;
    }
};

// ---------------------------------------------------------------------------
// Bell
// ---------------------------------------------------------------------------

/**
 * Bell's ontic model on dimension d.
 *
 * lambda = (psi, u) with u uniform on [0, 1]; distinct rays never share a
 * complete state. An observable partitions [0, 1] into consecutive intervals
 * of length Pr(M = k | psi), taken in the projector-determined order of
 * detail::canonical_order (right-open, the last nonempty interval closed),
 * and answers with the outcome whose interval contains u. Born
 * probabilities at or below kZeroProbability get empty intervals.
 */
class BellModel final : public OntologicalModel {
  public:
    static constexpr std::size_t kGrid = 1024;
    static constexpr double kBracketTolerance = 1e-15;

    explicit BellModel(std::size_t dim = 2) : dim_(dim) {
        detail::require(dim >= 2, "bell model dimension must be >= 2");
    }

    [[nodiscard]] std::string name() const override { return "bell"; }
    [[nodiscard]] std::size_t dim() const override { return dim_; }

    [[nodiscard]] bool is_associated(const HiddenState &lambda,
                                     const Ket &psi) const override {
        return same_ray(point(lambda).ket, psi);
    }

    /// Lebesgue density in u on Lambda_psi.
    [[nodiscard]] double density(const HiddenState &lambda,
                                 const Ket &psi) const override {
        return is_associated(lambda, psi) ? 1.0 : 0.0;
    }

    [[nodiscard]] HiddenState sample(const Ket &psi, Rng &rng) const override {
        detail::require(psi.dim() == dim_, "bell sample: dimension mismatch");
        return HiddenState::bell(psi, rng.uniform());
    }
    using OntologicalModel::sample;

    [[nodiscard]] double respond(const HiddenState &lambda,
                                 const Observable &m) const override {
        const auto &p = point(lambda);
        return m[respond_index_at(p.ket, p.u, m)].eigenvalue;
    }

    [[nodiscard]] std::optional<std::vector<QuadratureValue>>
    integrate_responses(const Ket &psi, const Observable &m) const override {
        detail::require(psi.dim() == dim_ && m.dim() == dim_,
                        "bell quadrature: dimension mismatch");
        auto label = [&](double u) { return respond_index_at(psi, u, m); };
        const auto lv = quadrature::level_lengths(label, m.size(), 0.0, 1.0,
                                                  kGrid, kBracketTolerance);
        std::vector<QuadratureValue> out;
        for (double len : lv.lengths) {
            out.push_back({len, lv.error_bound});
        }
        return out;
    }

  private:
    static const BellPoint &point(const HiddenState &lambda) {
        const auto *p = lambda.get_if<BellPoint>();
        detail::require(p != nullptr, "bell model needs a bell-point state");
        return *p;
    }

    std::size_t respond_index_at(const Ket &ket, double u,
                                 const Observable &m) const {
        detail::require(m.dim() == dim_ && ket.dim() == dim_,
                        "bell respond: dimension mismatch");
        double cumulative = 0.0;
        std::optional<std::size_t> last_nonempty;
        for (std::size_t idx : detail::canonical_order(m)) {
            const double p = born_prob_at(m, ket, idx);
            if (p <= kZeroProbability) {
                continue;
            }
            cumulative += p;
            last_nonempty = idx;
            if (u < cumulative) {
                return idx;
            }
        }
        return *last_nonempty;
    }

    std::size_t dim_;
};

/// "ks" or "bell".
inline std::shared_ptr<const OntologicalModel>
make_model(const std::string &name, std::size_t dim = 2) {
    if (name == "ks") {
        detail::require(dim == 2, "ks model governs dimension 2 only");
        return std::make_shared<KsModel>();
    }
    if (name == "bell") {
        return std::make_shared<BellModel>(dim);
    }
    throw InvalidInput("unknown model '" + name + "' (expected ks or bell)");
}

} // namespace hvkit

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
 * Ontological (hidden-variables) model framework.
 *
 * A model assigns each ket psi a set Lambda_psi of complete states with a
 * density p_psi, and answers every measurement deterministically through a
 * response function that sees only the complete state. The checks here
 * (unity, tracking, Born reproduction, Assumption A) treat the model as a
 * black box behind the OntologicalModel interface.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "error.hpp"
#include "hilbert.hpp"
#include "random.hpp"

namespace hvkit {

// ---------------------------------------------------------------------------
// Complete states
// ---------------------------------------------------------------------------

/// Unit vector on S^2.
struct SpherePoint {
    std::array<double, 3> r;
};

/// A ket together with a uniform variate u in [0, 1].
struct BellPoint {
    Ket ket;
    double u;
};

class HiddenState {
  public:
    using Payload = std::variant<SpherePoint, BellPoint>;

    static HiddenState sphere(std::array<double, 3> r) {
        const double n = std::hypot(r[0], r[1], r[2]);
        detail::require(std::abs(n - 1.0) <= kTolerance,
                        "sphere point is not unit norm");
        return HiddenState(SpherePoint{r});
    }

    static HiddenState bell(Ket ket, double u) {
        detail::require(u >= 0.0 && u <= 1.0, "bell point u outside [0, 1]");
        return HiddenState(BellPoint{std::move(ket), u});
    }

    [[nodiscard]] const Payload &payload() const { return payload_; }

    template <class T> [[nodiscard]] const T *get_if() const {
        return std::get_if<T>(&payload_);
    }

  private:
    explicit HiddenState(Payload p) : payload_(std::move(p)) {}
    Payload payload_;
};

// ---------------------------------------------------------------------------
// Model interface
// ---------------------------------------------------------------------------

/// Per-outcome value of the response integral over Lambda_psi.
struct QuadratureValue {
    double value;
    double error_bound;
};

/**
 * Deterministic ontological model on a fixed Hilbert-space dimension.
 *
 * Implementations must keep `respond` a pure function of (lambda, M): it may
 * not consult any quantum state other than one stored inside lambda, and it
 * returns an element of M's spectrum.
 */
class OntologicalModel {
  public:
    virtual ~OntologicalModel() = default;

    [[nodiscard]] virtual std::string name() const = 0;
    [[nodiscard]] virtual std::size_t dim() const = 0;

    /// lambda in Lambda_psi.
    [[nodiscard]] virtual bool is_associated(const HiddenState &lambda,
                                             const Ket &psi) const = 0;
    /// p_psi(lambda) with respect to the model's reference measure.
    [[nodiscard]] virtual double density(const HiddenState &lambda,
                                         const Ket &psi) const = 0;
    /// Draw lambda ~ p_psi.
    [[nodiscard]] virtual HiddenState sample(const Ket &psi, Rng &rng) const = 0;
    /// M(lambda): the eigenvalue that obtains if M is measured.
    [[nodiscard]] virtual double respond(const HiddenState &lambda,
                                         const Observable &m) const = 0;

    /// Deterministic integral of the responses against p_psi, one entry per
    /// outcome of `m`, or nullopt if the model has no quadrature rule.
    [[nodiscard]] virtual std::optional<std::vector<QuadratureValue>>
    integrate_responses(const Ket & /*psi*/, const Observable & /*m*/) const {
        return std::nullopt;
    }

    [[nodiscard]] HiddenState sample(const Ket &psi, std::uint64_t seed) const {
        Rng rng(seed);
        return sample(psi, rng);
    }

  protected:
    OntologicalModel() = default;
    OntologicalModel(const OntologicalModel &) = default;
    OntologicalModel &operator=(const OntologicalModel &) = default;
};

/// Index into m.outcomes() of the response; throws InternalError if the
/// model answered with an eigenvalue outside the spectrum.
inline std::size_t respond_index(const OntologicalModel &model,
                                 const HiddenState &lambda,
                                 const Observable &m) {
    const double k = model.respond(lambda, m);
    const auto idx = m.index_of(k);
    if (!idx) {
        throw InternalError("model '" + model.name() + "' answered " +
                            std::to_string(k) +
                            ", which is not in the spectrum");
    }
    return *idx;
}

struct ResponseEntry {
    double eigenvalue;
    int probability;
};

/// pr(M = k | lambda) over the spectrum: one entry is 1, the rest 0.
inline std::vector<ResponseEntry>
respond_distribution(const OntologicalModel &model, const HiddenState &lambda,
                     const Observable &m) {
    detail::require(m.dim() == model.dim(),
                    "respond_distribution: dimension mismatch");
    const std::size_t hit = respond_index(model, lambda, m);
    std::vector<ResponseEntry> dist;
    dist.reserve(m.size());
    int total = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const int p = (i == hit) ? 1 : 0;
        total += p;
        dist.push_back({m[i].eigenvalue, p});
    }
    if (total != 1) {
        throw InternalError("response distribution does not sum to 1");
    }
    return dist;
}

// ---------------------------------------------------------------------------
// Seeded sampling loops
// ---------------------------------------------------------------------------

/// Samples are drawn in fixed-size batches, each from its own sub-stream,
/// so a run can be split across workers by batch index without changing
/// any result.
inline constexpr std::size_t kBatchSize = 4096;

template <class F>
void for_each_draw(std::size_t n, std::uint64_t seed, F &&fn) {
    for (std::size_t start = 0; start < n; start += kBatchSize) {
        Rng rng = Rng::stream(seed, start / kBatchSize);
        const std::size_t stop = std::min(n, start + kBatchSize);
        for (std::size_t i = start; i < stop; ++i) {
            fn(rng, i);
        }
    }
}

// ---------------------------------------------------------------------------
// Tracking
// ---------------------------------------------------------------------------

struct TrackingWitness {
    std::string observable;
    double outcome;
};

struct TrackingReport {
    bool tracks = true;
    std::size_t tested_observables = 0;
    std::vector<TrackingWitness> witnesses;
    std::string method;
};

struct TrackingOptions {
    /// Size of the observable family used above dimension 2.
    std::size_t samples = 64;
    std::uint64_t seed = 0;
};

namespace detail {

/// Orthonormal frame whose first element is `psi`.
inline std::vector<Ket> frame_through(const Ket &psi, Rng &rng) {
    const std::size_t d = psi.dim();
    std::vector<CVector> cols{psi.amplitudes()};
    while (cols.size() < d) {
        CVector v = gaussian_vector(d, rng);
        for (const auto &c : cols) {
            v -= c.dot(v) * c;
        }
        const double n = v.norm();
        if (n > 1e-6) {
            cols.push_back(v / n);
        }
    }
    std::vector<Ket> frame;
    for (auto &c : cols) {
        frame.push_back(Ket::normalized(std::move(c)));
    }
    return frame;
}

inline void check_zero_outcomes(const OntologicalModel &model,
                                const HiddenState &lambda, const Ket &psi,
                                const Observable &m, const std::string &label,
                                TrackingReport &report) {
    ++report.tested_observables;
    const std::size_t hit = respond_index(model, lambda, m);
    if (born_prob_at(m, psi, hit) <= kZeroProbability) {
        report.witnesses.push_back({label, m[hit].eigenvalue});
    }
}

} // namespace detail

/**
 * Does lambda track psi: whenever Pr(M = k | psi) = 0, is pr(M = k | lambda)
 * also 0?
 *
 * In dimension 2 the only Born-zero outcome of any observable is the
 * projector onto psi-perp, so the test reduces to a single projector
 * measurement ("analytic-2d"). Above dimension 2 a seeded family of
 * observables with projectors annihilating psi is checked ("sampled"); a
 * witness refutes tracking, an empty witness list only fails to refute it.
 */
inline TrackingReport tracks(const OntologicalModel &model,
                             const HiddenState &lambda, const Ket &psi,
                             const TrackingOptions &opts = {}) {
    detail::require(psi.dim() == model.dim(), "tracks: dimension mismatch");
    TrackingReport report;
    if (psi.dim() == 2) {
        report.method = "analytic-2d";
        const Observable perp = Observable::projector_test(
            orthogonal_complement_2d(psi).projector());
        detail::check_zero_outcomes(model, lambda, psi, perp,
                                    "projector onto psi-perp", report);
    } else {
        report.method = "sampled";
        const auto d = static_cast<Eigen::Index>(psi.dim());
        const CMatrix rest = CMatrix::Identity(d, d) - psi.projector();
        detail::check_zero_outcomes(model, lambda, psi,
                                    Observable::projector_test(rest),
                                    "projector onto psi-perp subspace", report);
        Rng rng = Rng::stream(opts.seed, 0x7472616b);
        std::vector<double> labels(psi.dim());
        for (std::size_t j = 0; j < labels.size(); ++j) {
            labels[j] = static_cast<double>(j + 1);
        }
        for (std::size_t i = 1; i < opts.samples; ++i) {
            const auto frame = detail::frame_through(psi, rng);
            if (i % 2 == 0) {
                detail::check_zero_outcomes(
                    model, lambda, psi, Observable::from_basis(frame, labels),
                    "frame through psi #" + std::to_string(i), report);
            } else {
                detail::check_zero_outcomes(
                    model, lambda, psi,
                    Observable::projector_test(frame[1].projector()),
                    "projector inside psi-perp #" + std::to_string(i), report);
            }
        }
    }
    report.tracks = report.witnesses.empty();
    return report;
}

// ---------------------------------------------------------------------------
// Born reproduction
// ---------------------------------------------------------------------------

struct QuadratureScheme {};
struct MonteCarloScheme {
    std::size_t n;
    std::uint64_t seed;
};
using BornScheme = std::variant<QuadratureScheme, MonteCarloScheme>;

struct BornEntry {
    double eigenvalue;
    double estimate;
    /// Standard error (Monte Carlo) or quadrature error bound.
    double error;
    double born;
    [[nodiscard]] double deviation() const { return std::abs(estimate - born); }
};

struct BornCheck {
    std::string scheme;
    std::size_t n_samples = 0;
    std::vector<BornEntry> entries;

    [[nodiscard]] double max_deviation() const {
        double r = 0.0;
        for (const auto &e : entries) {
            r = std::max(r, e.deviation());
        }
        return r;
    }
};

/// Estimate the integral of pr(M = k | lambda) p_psi(lambda) for every
/// outcome and compare it with the Born probability.
inline BornCheck check_born_reproduction(const OntologicalModel &model,
                                         const Ket &psi, const Observable &m,
                                         const BornScheme &scheme) {
    detail::require(psi.dim() == model.dim() && m.dim() == model.dim(),
                    "check_born_reproduction: dimension mismatch");
    const auto born = born_distribution(m, psi);
    BornCheck out;
    if (std::holds_alternative<QuadratureScheme>(scheme)) {
        out.scheme = "quadrature";
        const auto values = model.integrate_responses(psi, m);
        detail::require(values.has_value(), "model '" + model.name() +
                                                "' has no quadrature rule");
        for (std::size_t i = 0; i < m.size(); ++i) {
            out.entries.push_back({m[i].eigenvalue, (*values)[i].value,
                                   (*values)[i].error_bound, born[i]});
        }
        return out;
    }
    const auto &mc = std::get<MonteCarloScheme>(scheme);
    detail::require(mc.n > 0, "Monte Carlo sample count must be positive");
    out.scheme = "montecarlo";
    out.n_samples = mc.n;
    std::vector<std::size_t> counts(m.size(), 0);
    for_each_draw(mc.n, mc.seed, [&](Rng &rng, std::size_t) {
        const HiddenState lambda = model.sample(psi, rng);
        ++counts[respond_index(model, lambda, m)];
    });
    const auto n = static_cast<double>(mc.n);
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double p = static_cast<double>(counts[i]) / n;
        // Sample standard deviation of a 0/1 indicator, over sqrt(N).
        const double var = mc.n > 1 ? p * (1.0 - p) * n / (n - 1.0) : 0.0;
        out.entries.push_back(
            {m[i].eigenvalue, p, std::sqrt(var / n), born[i]});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Assumption A
// ---------------------------------------------------------------------------

struct AssumptionAViolation {
    Ket psi;
    HiddenState lambda;
    Observable observable;
    double outcome;
};

/**
 * Randomised search for violations of "P_k(lambda) = 0 implies M(lambda) != k".
 *
 * Each trial draws a Haar-random psi, lambda ~ p_psi, and a Haar-random
 * observable M; every P_k is measured on its own as {(1, P_k), (0, I - P_k)}.
 * Trial t uses sub-stream t of `seed`.
 */
inline std::vector<AssumptionAViolation>
check_assumption_a(const OntologicalModel &model, std::size_t trials,
                   std::uint64_t seed) {
    detail::require(trials > 0, "check_assumption_a: trials must be positive");
    std::vector<AssumptionAViolation> violations;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = Rng::stream(seed, t);
        const Ket psi = random_ket(model.dim(), rng);
        const HiddenState lambda = model.sample(psi, rng);
        const Observable m = random_observable(model.dim(), rng);
        const double value = model.respond(lambda, m);
        for (const auto &outcome : m.outcomes()) {
            const double pk =
                model.respond(lambda, Observable::projector_test(outcome.projector));
            if (pk == 0.0 && value == outcome.eigenvalue) {
                violations.push_back({psi, lambda, m, outcome.eigenvalue});
            }
        }
    }
    return violations;
}

} // namespace hvkit

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
 * Composition of complete states and the contradiction pipeline.
 *
 * Two qubit preparations |1>, |2> with |<1|2>| = 2^{-1/2}. Under Assumption A
 * some complete states prepared from |1> also track |2>. Pairing such a
 * state with itself, the composition rule PI_{c,tr} says the pair tracks all
 * four products |x,y>; every outcome of the antidistinguishing measurement
 * is then Born-zero for one of those products, so none of them can occur.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"
#include "hilbert.hpp"
#include "ontology.hpp"

namespace hvkit {

// ---------------------------------------------------------------------------
// Lemma measure
// ---------------------------------------------------------------------------

struct MeasureEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
    /// |<psi|phi>|^2
    double target = 0.0;
    std::uint64_t seed = 0;
    /// Overlap is 0 or 1, outside the lemma's hypotheses.
    bool degenerate = false;
    std::size_t set_size = 0;
    /// Members of the set whose tracking of phi was checked / refuted.
    std::size_t tracking_checked = 0;
    std::size_t tracking_failures = 0;

    [[nodiscard]] bool within(double n_sigma) const {
        return std::abs(value - target) <= n_sigma * std_error + kTolerance;
    }
};

/// Two-outcome measurement of the projector onto phi-perp.
inline Observable perp_test(const Ket &phi) {
    return Observable::projector_test(orthogonal_complement_2d(phi).projector());
}

/**
 * Fraction of lambda ~ p_psi for which the projector onto phi-perp takes
 * value 0, with its binomial standard error; every such lambda is also
 * checked to track phi.
 */
inline MeasureEstimate lemma_tracking_set_measure(const OntologicalModel &model,
                                                  const Ket &psi,
                                                  const Ket &phi, std::size_t n,
                                                  std::uint64_t seed) {
    detail::require(n > 0, "lemma: sample count must be positive");
    detail::require(psi.dim() == 2 && phi.dim() == 2 && model.dim() == 2,
                    "lemma: qubit kets and a qubit model are required");
    const Observable test = perp_test(phi);
    MeasureEstimate est;
    est.n_samples = n;
    est.seed = seed;
    est.target = overlap(psi, phi);
    est.degenerate = est.target <= kZeroProbability ||
                     est.target >= 1.0 - kZeroProbability;
    for_each_draw(n, seed, [&](Rng &rng, std::size_t) {
        const HiddenState lambda = model.sample(psi, rng);
        if (model.respond(lambda, test) != 0.0) {
            return;
        }
        ++est.set_size;
        ++est.tracking_checked;
        if (!tracks(model, lambda, phi).tracks) {
            ++est.tracking_failures;
        }
    });
    const auto nn = static_cast<double>(n);
    est.value = static_cast<double>(est.set_size) / nn;
    est.std_error = std::sqrt(est.value * (1.0 - est.value) / nn);
    return est;
}

// ---------------------------------------------------------------------------
// Composition
// ---------------------------------------------------------------------------

/// One subsystem: its model, its complete state, and the kets it is
/// claimed to track.
struct Subsystem {
    const OntologicalModel *model;
    HiddenState lambda;
    std::vector<Ket> tracked;
};

struct CompositeHiddenState {
    HiddenState left;
    HiddenState right;
    /// Left-major Cartesian product of the two tracked lists.
    std::vector<std::pair<Ket, Ket>> tracked_products;
};

/// A claimed tracked ket failed its tracking check.
class TrackingRejected : public InvalidInput {
  public:
    TrackingRejected(const std::string &what, TrackingReport report)
        : InvalidInput(what), report_(std::move(report)) {}
    [[nodiscard]] const TrackingReport &report() const { return report_; }

  private:
    TrackingReport report_;
};

/// PI_{c,tr}: if lambda_1 tracks a and lambda_2 tracks b, the pair tracks
/// a (x) b. Every claim is verified with tracks() first.
inline CompositeHiddenState compose_pi_ctr(const Subsystem &left,
                                           const Subsystem &right) {
    detail::require(!left.tracked.empty() && !right.tracked.empty(),
                    "compose: each side must claim at least one tracked ket");
    for (const Subsystem *side : {&left, &right}) {
        const char *tag = side == &left ? "left" : "right";
        for (std::size_t i = 0; i < side->tracked.size(); ++i) {
            auto report = tracks(*side->model, side->lambda, side->tracked[i]);
            if (!report.tracks) {
                throw TrackingRejected(std::string(tag) + " complete state " +
                                           "does not track claimed ket #" +
                                           std::to_string(i),
                                       std::move(report));
            }
        }
    }
    CompositeHiddenState out{left.lambda, right.lambda, {}};
    for (const auto &a : left.tracked) {
        for (const auto &b : right.tracked) {
            out.tracked_products.emplace_back(a, b);
        }
    }
    return out;
}

/// PI_c: the same composition with association-checked inputs. Association
/// implies tracking and the conclusions coincide, so this delegates.
inline CompositeHiddenState compose_pi_c(const Subsystem &left,
                                         const Subsystem &right) {
    for (const Subsystem *side : {&left, &right}) {
        for (const auto &k : side->tracked) {
            detail::require(side->model->is_associated(side->lambda, k),
                            "compose_pi_c: complete state is not associated "
                            "with a claimed ket");
        }
    }
    return compose_pi_ctr(left, right);
}

struct ForcedZero {
    std::size_t outcome_index;
    double eigenvalue;
    /// Index into tracked_products of the first product that forces it.
    std::size_t product_index;
    double born;
};

/// Outcomes k with born_prob(M, a (x) b, k) <= kZeroProbability for some
/// tracked product (a, b); tracking then forces pr(M = k | lambda_c) = 0.
inline std::vector<ForcedZero>
forced_zero_outcomes(const CompositeHiddenState &composite,
                     const Observable &m) {
    std::vector<Ket> products;
    for (const auto &[a, b] : composite.tracked_products) {
        products.push_back(tensor(a, b));
        detail::require(products.back().dim() == m.dim(),
                        "forced_zero_outcomes: dimension mismatch");
    }
    std::vector<ForcedZero> out;
    for (std::size_t k = 0; k < m.size(); ++k) {
        for (std::size_t j = 0; j < products.size(); ++j) {
            const double p = born_prob_at(m, products[j], k);
            if (p <= kZeroProbability) {
                out.push_back({k, m[k].eigenvalue, j, p});
                break;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Contradiction certificate
// ---------------------------------------------------------------------------

struct ContradictionCertificate {
    std::string left_model;
    std::string right_model;
    Ket one;
    Ket two;
    HiddenState witness_left;
    HiddenState witness_right;
    std::size_t witness_draws = 0;
    /// "pbr" or "custom".
    std::string observable_kind;
    Observable observable;
    /// Set when observable_kind == "pbr".
    std::optional<double> basis_orthogonality_residual;
    std::optional<double> basis_gram_deviation;
    std::vector<std::pair<Ket, Ket>> tracked_products;
    std::vector<ForcedZero> forced_zero;
    /// Largest total response probability the forced zeros leave room for.
    double response_sum = 1.0;
    bool verdict = false;
};

/// Recompute (response_sum, verdict) from the forced-zero list alone.
inline std::pair<double, bool> verdict_from(const std::vector<ForcedZero> &fz,
                                            std::size_t outcome_count) {
    std::vector<bool> hit(outcome_count, false);
    for (const auto &f : fz) {
        if (f.outcome_index < outcome_count) {
            hit[f.outcome_index] = true;
        }
    }
    const bool all = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    return {all ? 0.0 : 1.0, all};
}

class WitnessNotFound : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Witness {
    HiddenState lambda;
    std::size_t draws;
};

/// Rejection sampling from p_one for a complete state that tracks both
/// `one` and `two`.
inline Witness find_lemma_witness(const OntologicalModel &model, const Ket &one,
                                  const Ket &two, std::uint64_t seed,
                                  std::size_t budget) {
    const Observable test = perp_test(two);
    Rng rng(seed);
    for (std::size_t draw = 1; draw <= budget; ++draw) {
        HiddenState lambda = model.sample(one, rng);
        if (model.respond(lambda, test) == 0.0 &&
            tracks(model, lambda, two).tracks &&
            tracks(model, lambda, one).tracks) {
            return {std::move(lambda), draw};
        }
    }
    throw WitnessNotFound("no complete state tracking both preparations in " +
                          std::to_string(budget) + " draws of model '" +
                          model.name() + "'");
}

struct ContradictionOptions {
    std::size_t witness_budget = 100000;
    /// Replaces the antidistinguishing measurement (negative controls).
    std::optional<Observable> observable;
};

/**
 * Run the contradiction for preparations (one, two), |<1|2>| = 2^{-1/2}.
 *
 * When both sides use the same model the one witness lambda serves as
 * lambda_c = (lambda, lambda); otherwise each side gets its own witness.
 */
inline ContradictionCertificate
run_contradiction(const OntologicalModel &left_model,
                  const OntologicalModel &right_model, const Ket &one,
                  const Ket &two, std::uint64_t seed,
                  const ContradictionOptions &opts = {}) {
    detail::require(one.dim() == 2 && two.dim() == 2,
                    "run_contradiction: qubit preparations required");
    const double defect =
        std::abs(std::abs(inner(one, two)) - std::numbers::sqrt2 / 2);
    detail::require(defect <= kPbrOverlapTolerance,
                    "run_contradiction: |<1|2>| must equal 2^{-1/2}");

    const Witness wl = find_lemma_witness(left_model, one, two,
                                          Rng::stream(seed, 0).bits(),
                                          opts.witness_budget);
    const bool shared = &left_model == &right_model;
    const Witness wr =
        shared ? wl
               : find_lemma_witness(right_model, one, two,
                                    Rng::stream(seed, 1).bits(),
                                    opts.witness_budget);

    const CompositeHiddenState composite =
        compose_pi_ctr({&left_model, wl.lambda, {one, two}},
                       {&right_model, wr.lambda, {one, two}});

    const PbrBasis basis = build_pbr_basis(one, two);
    ContradictionCertificate cert{
        left_model.name(),
        right_model.name(),
        one,
        two,
        wl.lambda,
        wr.lambda,
        wl.draws + (shared ? 0 : wr.draws),
        opts.observable ? "custom" : "pbr",
        opts.observable ? *opts.observable : pbr_observable(basis),
        std::nullopt,
        std::nullopt,
        composite.tracked_products,
        {},
        1.0,
        false};
    if (!opts.observable) {
        cert.basis_orthogonality_residual = basis.orthogonality_residual();
        cert.basis_gram_deviation = basis.gram_deviation();
    }
    cert.forced_zero = forced_zero_outcomes(composite, cert.observable);
    std::tie(cert.response_sum, cert.verdict) =
        verdict_from(cert.forced_zero, cert.observable.size());
    return cert;
}

} // namespace hvkit

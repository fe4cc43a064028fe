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
// Test-only oracles and fixtures. The oracles work on raw std::vector data
// and never call into the hvkit routines they are used to check.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "hvkit/hilbert.hpp"
#include "hvkit/ontology.hpp"

namespace hvkit::testing {

using cvec = std::vector<std::complex<double>>;

inline cvec raw(const Ket &k) {
    cvec v(k.dim());
    for (std::size_t i = 0; i < k.dim(); ++i) {
        v[i] = k[i];
    }
    return v;
}

/// sum_i conj(a_i) b_i, component by component.
inline std::complex<double> naive_inner(const cvec &a, const cvec &b) {
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

inline cvec naive_kron(const cvec &a, const cvec &b) {
    cvec out;
    for (const auto &x : a) {
        for (const auto &y : b) {
            out.push_back(x * y);
        }
    }
    return out;
}

/// <psi| P |psi> by explicit dense matrix-vector product.
inline double naive_expectation(const CMatrix &p, const cvec &psi) {
    std::complex<double> s = 0.0;
    for (std::size_t r = 0; r < psi.size(); ++r) {
        std::complex<double> row = 0.0;
        for (std::size_t c = 0; c < psi.size(); ++c) {
            row += p(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * psi[c];
        }
        s += std::conj(psi[r]) * row;
    }
    return s.real();
}

/// Wraps a model and inverts its answer whenever the measurement is a
/// two-outcome projector test {(1, P), (0, I - P)}.
class InvertedProjectorModel final : public OntologicalModel {
  public:
    explicit InvertedProjectorModel(const OntologicalModel &inner) : inner_(inner) {}
    [[nodiscard]] std::string name() const override { return "inverted-" + inner_.name(); }
    [[nodiscard]] std::size_t dim() const override { return inner_.dim(); }
    [[nodiscard]] bool is_associated(const HiddenState &l, const Ket &p) const override {
        return inner_.is_associated(l, p);
    }
    [[nodiscard]] double density(const HiddenState &l, const Ket &p) const override {
        return inner_.density(l, p);
    }
    [[nodiscard]] HiddenState sample(const Ket &p, Rng &rng) const override {
        return inner_.sample(p, rng);
    }
    using OntologicalModel::sample;
    [[nodiscard]] double respond(const HiddenState &l, const Observable &m) const override {
        const double v = inner_.respond(l, m);
        const bool projector_test =
            m.size() == 2 && m[0].eigenvalue == 1.0 && m[1].eigenvalue == 0.0;
        return projector_test ? 1.0 - v : v;
    }

  private:
    const OntologicalModel &inner_;
};

/// Answers every measurement with its first listed outcome, whatever lambda.
class FirstOutcomeModel final : public OntologicalModel {
  public:
    [[nodiscard]] std::string name() const override { return "first-outcome"; }
    [[nodiscard]] std::size_t dim() const override { return 2; }
    [[nodiscard]] bool is_associated(const HiddenState &, const Ket &) const override {
        return true;
    }
    [[nodiscard]] double density(const HiddenState &, const Ket &) const override { return 1.0; }
    [[nodiscard]] HiddenState sample(const Ket &, Rng &rng) const override {
        return HiddenState::bell(ket_zero(), rng.uniform());
    }
    using OntologicalModel::sample;
    [[nodiscard]] double respond(const HiddenState &, const Observable &m) const override {
        return m[0].eigenvalue;
    }
};

} // namespace hvkit::testing

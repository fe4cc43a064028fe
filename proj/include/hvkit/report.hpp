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
 * JSON encoding of hvkit results, and a standalone audit of certificate
 * files.
 *
 * Kets are arrays of [re, im] pairs; matrices are row-major arrays of such
 * rows. Doubles are written in shortest round-trip form.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hilbert.hpp"
#include "nogo.hpp"
#include "ontology.hpp"

namespace hvkit {

inline constexpr const char *kVersion = "1.0.0";
inline constexpr const char *kReportSchema = "hvkit.report/1";
inline constexpr const char *kCertificateSchema = "hvkit.certificate/1";

using Json = nlohmann::json;

inline Json to_json(const Ket &k) {
    Json a = Json::array();
    for (std::size_t i = 0; i < k.dim(); ++i) {
        a.push_back({k[i].real(), k[i].imag()});
    }
    return a;
}

inline Ket ket_from_json(const Json &j) {
    detail::require(j.is_array(), "ket must be an array of [re, im] pairs");
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) =
            Complex(j[i].at(0).get<double>(), j[i].at(1).get<double>());
    }
    return Ket(std::move(v));
}

inline Json to_json(const CMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline CMatrix matrix_from_json(const Json &j) {
    const auto n = static_cast<Eigen::Index>(j.size());
    CMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const Json &row = j.at(static_cast<std::size_t>(r));
        detail::require(static_cast<Eigen::Index>(row.size()) == n,
                        "matrix must be square");
        for (Eigen::Index c = 0; c < n; ++c) {
            const Json &e = row.at(static_cast<std::size_t>(c));
            m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return m;
}

inline Json to_json(const Observable &m) {
    Json out = Json::array();
    for (const auto &o : m.outcomes()) {
        out.push_back(
            {{"eigenvalue", o.eigenvalue}, {"projector", to_json(o.projector)}});
    }
    return out;
}

inline Observable observable_from_json(const Json &j) {
    std::vector<Outcome> outs;
    for (const auto &o : j) {
        outs.push_back({o.at("eigenvalue").get<double>(),
                        matrix_from_json(o.at("projector"))});
    }
    return Observable(std::move(outs));
}

inline Json to_json(const HiddenState &s) {
    if (const auto *p = s.get_if<SpherePoint>()) {
        return {{"kind", "sphere"}, {"r", p->r}};
    }
    const auto &b = *s.get_if<BellPoint>();
    return {{"kind", "bell"}, {"ket", to_json(b.ket)}, {"u", b.u}};
}

inline Json to_json(const TrackingReport &r) {
    Json w = Json::array();
    for (const auto &x : r.witnesses) {
        w.push_back({{"observable", x.observable}, {"outcome", x.outcome}});
    }
    return {{"tracks", r.tracks},
            {"tested_observables", r.tested_observables},
            {"witnesses", w},
            {"method", r.method}};
}

inline Json to_json(const AssumptionAViolation &v) {
    return {{"psi", to_json(v.psi)},
            {"lambda", to_json(v.lambda)},
            {"observable", to_json(v.observable)},
            {"outcome", v.outcome}};
}

inline Json to_json(const BornCheck &b) {
    Json e = Json::array();
    for (const auto &x : b.entries) {
        e.push_back({{"eigenvalue", x.eigenvalue},
                     {"estimate", x.estimate},
                     {"error", x.error},
                     {"born", x.born},
                     {"deviation", x.deviation()}});
    }
    return {{"scheme", b.scheme}, {"n_samples", b.n_samples}, {"outcomes", e}};
}

inline Json to_json(const MeasureEstimate &m) {
    return {{"value", m.value},
            {"stderr", m.std_error},
            {"n_samples", m.n_samples},
            {"target", m.target},
            {"seed", m.seed},
            {"degenerate", m.degenerate},
            {"set_size", m.set_size},
            {"tracking_checked", m.tracking_checked},
            {"tracking_failures", m.tracking_failures}};
}

inline Json to_json(const ContradictionCertificate &c) {
    Json products = Json::array();
    for (const auto &[a, b] : c.tracked_products) {
        products.push_back({{"left", to_json(a)}, {"right", to_json(b)}});
    }
    Json forced = Json::array();
    for (const auto &f : c.forced_zero) {
        forced.push_back({{"outcome_index", f.outcome_index},
                          {"eigenvalue", f.eigenvalue},
                          {"product_index", f.product_index},
                          {"born", f.born}});
    }
    Json basis = nullptr;
    if (c.basis_orthogonality_residual) {
        basis = {{"orthogonality_residual", *c.basis_orthogonality_residual},
                 {"gram_deviation", *c.basis_gram_deviation}};
    }
    return {{"schema", kCertificateSchema},
            {"left_model", c.left_model},
            {"right_model", c.right_model},
            {"one", to_json(c.one)},
            {"two", to_json(c.two)},
            {"witness_left", to_json(c.witness_left)},
            {"witness_right", to_json(c.witness_right)},
            {"witness_draws", c.witness_draws},
            {"observable_kind", c.observable_kind},
            {"observable", to_json(c.observable)},
            {"basis", basis},
            {"tracked_products", products},
            {"forced_zero", forced},
            {"outcome_count", c.observable.size()},
            {"response_sum", c.response_sum},
            {"verdict", c.verdict}};
}

// ---------------------------------------------------------------------------
// Certificate audit
// ---------------------------------------------------------------------------

struct CertificateAudit {
    bool ok = true;
    /// Largest recomputed Born probability over the forcing entries.
    double max_forcing_born = 0.0;
    bool verdict = false;
    std::vector<std::string> problems;
};

/**
 * Re-check a certificate from its JSON alone: every forcing entry's Born
 * probability is recomputed from the stored product kets and projector, and
 * the verdict is recomputed from the forced-zero list.
 */
inline CertificateAudit audit_certificate(const Json &cert) {
    CertificateAudit audit;
    auto fail = [&](std::string msg) {
        audit.ok = false;
        audit.problems.push_back(std::move(msg));
    };
    try {
        const Observable m = observable_from_json(cert.at("observable"));
        std::vector<Ket> products;
        for (const auto &p : cert.at("tracked_products")) {
            products.push_back(tensor(ket_from_json(p.at("left")),
                                      ket_from_json(p.at("right"))));
        }
        std::vector<ForcedZero> fz;
        for (const auto &f : cert.at("forced_zero")) {
            const auto k = f.at("outcome_index").get<std::size_t>();
            const auto j = f.at("product_index").get<std::size_t>();
            if (k >= m.size() || j >= products.size()) {
                fail("forcing entry indexes outside the certificate");
                continue;
            }
            const double born = born_prob_at(m, products[j], k);
            audit.max_forcing_born = std::max(audit.max_forcing_born, born);
            if (born > kZeroProbability) {
                fail("outcome " + std::to_string(k) + " is not Born-zero for product " +
                     std::to_string(j) + " (" + std::to_string(born) + ")");
            }
            if (m[k].eigenvalue != f.at("eigenvalue").get<double>()) {
                fail("forcing entry eigenvalue does not match the observable");
            }
            fz.push_back({k, m[k].eigenvalue, j, born});
        }
        const auto [sum, verdict] = verdict_from(fz, m.size());
        audit.verdict = verdict;
        if (verdict != cert.at("verdict").get<bool>()) {
            fail("stored verdict disagrees with the forced-zero list");
        }
        if (sum != cert.at("response_sum").get<double>()) {
            fail("stored response_sum disagrees with the forced-zero list");
        }
        if (cert.at("outcome_count").get<std::size_t>() != m.size()) {
            fail("outcome_count disagrees with the observable");
        }
    } catch (const std::exception &e) {
        fail(std::string("malformed certificate: ") + e.what());
    }
    return audit;
}

} // namespace hvkit

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
#include <gtest/gtest.h>

#include "hvkit/models.hpp"
#include "hvkit/report.hpp"
#include "support.hpp"

using namespace hvkit;

namespace {

Json ks_certificate() {
    const KsModel ks;
    return to_json(run_contradiction(ks, ks, ket_zero(), ket_plus(), 7));
}

} // namespace

TEST(Json, KetRoundTrip) {
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        const Ket k = random_ket(4, rng);
        const Json j = Json::parse(to_json(k).dump());
        const Ket back = ket_from_json(j);
        EXPECT_EQ((back.amplitudes() - k.amplitudes()).norm(), 0.0);
    }
    EXPECT_THROW((void)ket_from_json(Json::parse("[[1,0],[1,0]]")), InvalidInput);
}

TEST(Json, ObservableRoundTrip) {
    const Observable m = pbr_observable(build_pbr_basis(ket_zero(), ket_plus()));
    const Observable back = observable_from_json(Json::parse(to_json(m).dump()));
    ASSERT_EQ(back.size(), m.size());
    for (std::size_t k = 0; k < m.size(); ++k) {
        EXPECT_EQ(back[k].eigenvalue, m[k].eigenvalue);
        EXPECT_EQ((back[k].projector - m[k].projector).norm(), 0.0);
    }
}

TEST(Json, CertificateLayout) {
    const Json c = ks_certificate();
    EXPECT_EQ(c.at("schema"), kCertificateSchema);
    EXPECT_EQ(c.at("verdict"), true);
    EXPECT_EQ(c.at("response_sum"), 0.0);
    EXPECT_EQ(c.at("outcome_count"), 4);
    EXPECT_EQ(c.at("forced_zero").size(), 4u);
    EXPECT_EQ(c.at("tracked_products").size(), 4u);
    EXPECT_LE(c.at("basis").at("orthogonality_residual").get<double>(), 1e-12);
    EXPECT_EQ(c.at("witness_left").at("kind"), "sphere");
}

TEST(Audit, AcceptsGenuineCertificates) {
    for (const std::string name : {"ks", "bell"}) {
        const auto m = make_model(name);
        const Json c = to_json(run_contradiction(*m, *m, ket_zero(), ket_plus(), 3));
        const auto a = audit_certificate(Json::parse(c.dump()));
        EXPECT_TRUE(a.ok) << name;
        EXPECT_TRUE(a.verdict);
        EXPECT_LE(a.max_forcing_born, 1e-12);
    }
}

TEST(Audit, DetectsTampering) {
    const Json good = ks_certificate();

    Json flipped = good;
    flipped["verdict"] = false;
    EXPECT_FALSE(audit_certificate(flipped).ok);

    Json sum = good;
    sum["response_sum"] = 1.0;
    EXPECT_FALSE(audit_certificate(sum).ok);

    // Point a forcing entry at a product for which the outcome is not Born-zero.
    Json wrong = good;
    auto &f = wrong["forced_zero"][0];
    f["product_index"] = (f["product_index"].get<std::size_t>() + 1) % 4;
    const auto a = audit_certificate(wrong);
    EXPECT_FALSE(a.ok);
    EXPECT_GT(a.max_forcing_born, 1e-12);

    Json dropped = good;
    dropped["forced_zero"].erase(0);
    const auto d = audit_certificate(dropped);
    EXPECT_FALSE(d.ok);
    EXPECT_FALSE(d.verdict);

    Json broken = good;
    broken.erase("observable");
    EXPECT_FALSE(audit_certificate(broken).ok);
}

TEST(Json, MeasureEstimateFields) {
    const KsModel ks;
    const Json j = to_json(lemma_tracking_set_measure(ks, ket_zero(), ket_plus(), 1000, 2));
    for (const char *key : {"value", "stderr", "n_samples", "target", "seed", "degenerate"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
}

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
 * Command dispatch behind the hvkit executable.
 *
 * run() turns a RunConfig into a Report. A report's "ok" flag is true iff
 * every check landed on its expected verdict; the executable maps it to the
 * process exit status. Everything except the "timings" block is a pure
 * function of the config.
 */

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hilbert.hpp"
#include "models.hpp"
#include "nogo.hpp"
#include "ontology.hpp"
#include "report.hpp"

namespace hvkit::cli {

struct RunConfig {
    /// born | lemma | assumption-a | tracking | certificate | verify | sweep | all
    std::string command;
    std::string model = "ks";
    /// Right-hand model for `certificate`; defaults to `model`.
    std::optional<std::string> right_model;
    std::string psi = "zero";
    std::string phi = "plus";
    /// Measurement axis state for `born` (spin along its Bloch vector).
    std::string axis = "plus";
    std::string one = "zero";
    std::string two = "plus";
    /// Overrides `phi` with cos(t/2)|0> + sin(t/2)|1>, cos^2(t/2) = overlap.
    std::optional<double> overlap;
    std::size_t n_samples = 100000;
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    /// quadrature | montecarlo
    std::string scheme = "quadrature";
    /// pbr | computational
    std::string observable = "pbr";
    std::vector<double> angles_deg = {0.0,   22.5,  45.0,  67.5, 90.0,
                                      112.5, 135.0, 157.5, 180.0};
    std::string certificate_path;
    std::string output;
    /// json | csv
    std::string format = "json";
};

struct Report {
    Json body;
    bool ok = true;
    /// Set for CSV sweeps.
    std::string csv;
};

/// Default seed: $HVKIT_SEED if set, otherwise 1.
inline std::uint64_t default_seed() {
    if (const char *s = std::getenv("HVKIT_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception &) {
            throw InvalidInput(std::string("HVKIT_SEED is not an integer: ") + s);
        }
    }
    return 1;
}

/// "zero", "one", "plus", "minus", or "theta,phi" Bloch angles in radians.
inline Ket parse_state(const std::string &text) {
    if (text == "zero") {
        return ket_zero();
    }
    if (text == "one") {
        return ket_one();
    }
    if (text == "plus") {
        return ket_plus();
    }
    if (text == "minus") {
        return ket_minus();
    }
    const auto comma = text.find(',');
    if (comma != std::string::npos) {
        try {
            std::size_t used_a = 0;
            std::size_t used_b = 0;
            const std::string a = text.substr(0, comma);
            const std::string b = text.substr(comma + 1);
            const double theta = std::stod(a, &used_a);
            const double phi = std::stod(b, &used_b);
            if (used_a == a.size() && used_b == b.size() &&
                std::isfinite(theta) && std::isfinite(phi)) {
                return qubit_ket(theta, phi);
            }
        } catch (const std::exception &) {
        }
    }
    throw InvalidInput("cannot parse state '" + text +
                       "' (use zero, one, plus, minus or theta,phi)");
}

inline Ket ket_with_overlap(double p) {
    hvkit::detail::require(p >= 0.0 && p <= 1.0, "overlap must lie in [0, 1]");
    return qubit_ket(2.0 * std::acos(std::sqrt(p)), 0.0);
}

/// Fixed-format double for CSV cells (17 significant digits).
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace detail {

/// Tolerance used for quadrature Born checks, per model.
inline double quadrature_tolerance(const OntologicalModel &m) {
    return m.name() == "ks" ? 1e-6 : 1e-12;
}

class Runner {
  public:
    explicit Runner(const RunConfig &cfg) : cfg_(cfg) {}

    Report finish() {
        Report r;
        r.ok = ok_;
        r.body = {{"schema", kReportSchema},
                  {"toolkit_version", kVersion},
                  {"config", echo()},
                  {"results", results_},
                  {"ok", ok_},
                  {"timings", timings_}};
        r.csv = csv_;
        return r;
    }

    /// Runs `fn`, records its result (which must carry "passed") and timing.
    void check(const std::string &name, const std::function<Json()> &fn) {
        const auto t0 = std::chrono::steady_clock::now();
        Json j = fn();
        const auto t1 = std::chrono::steady_clock::now();
        j["check"] = name;
        ok_ = ok_ && j.at("passed").get<bool>();
        results_.push_back(std::move(j));
        timings_.push_back(
            {{"check", name},
             {"seconds", std::chrono::duration<double>(t1 - t0).count()}});
    }

    std::string csv_;

  private:
    Json echo() const {
        Json c = {{"command", cfg_.command},
                  {"model", cfg_.model},
                  {"psi", cfg_.psi},
                  {"phi", cfg_.phi},
                  {"axis", cfg_.axis},
                  {"one", cfg_.one},
                  {"two", cfg_.two},
                  {"n_samples", cfg_.n_samples},
                  {"trials", cfg_.trials},
                  {"seed", cfg_.seed},
                  {"scheme", cfg_.scheme},
                  {"observable", cfg_.observable},
                  {"angles_deg", cfg_.angles_deg},
                  {"format", cfg_.format}};
        c["right_model"] = cfg_.right_model ? Json(*cfg_.right_model) : Json();
        c["overlap"] = cfg_.overlap ? Json(*cfg_.overlap) : Json();
        c["certificate"] = cfg_.certificate_path;
        return c;
    }

    const RunConfig &cfg_;
    Json results_ = Json::array();
    Json timings_ = Json::array();
    bool ok_ = true;
};

inline Json born_result(const OntologicalModel &model, const Ket &psi,
                        const Observable &m, const BornScheme &scheme) {
    const BornCheck b = check_born_reproduction(model, psi, m, scheme);
    bool passed = true;
    for (const auto &e : b.entries) {
        const double tol = b.scheme == "quadrature" ? quadrature_tolerance(model)
                                                    : 4.0 * e.error + kTolerance;
        passed = passed && e.deviation() <= tol;
    }
    Json j = to_json(b);
    j["model"] = model.name();
    j["psi"] = to_json(psi);
    j["passed"] = passed;
    return j;
}

inline Json lemma_result(const OntologicalModel &model, const Ket &psi,
                         const Ket &phi, std::size_t n, std::uint64_t seed) {
    const MeasureEstimate est =
        lemma_tracking_set_measure(model, psi, phi, n, seed);
    Json j = to_json(est);
    j["model"] = model.name();
    j["passed"] = est.within(4.0) && est.tracking_failures == 0;
    return j;
}

inline Json tracking_result(const OntologicalModel &model, const Ket &psi,
                            std::size_t n, std::uint64_t seed) {
    std::size_t failures = 0;
    Json first_failure = nullptr;
    for_each_draw(n, seed, [&](Rng &rng, std::size_t) {
        const HiddenState lambda = model.sample(psi, rng);
        const TrackingReport r = tracks(model, lambda, psi);
        if (!r.tracks) {
            if (failures == 0) {
                first_failure = {{"lambda", to_json(lambda)},
                                 {"report", to_json(r)}};
            }
            ++failures;
        }
    });
    return {{"model", model.name()},
            {"psi", to_json(psi)},
            {"n_samples", n},
            {"failures", failures},
            {"first_failure", first_failure},
            {"passed", failures == 0}};
}

inline Json assumption_a_result(const OntologicalModel &model,
                                std::size_t trials, std::uint64_t seed) {
    const auto v = check_assumption_a(model, trials, seed);
    Json listed = Json::array();
    for (std::size_t i = 0; i < v.size() && i < 10; ++i) {
        listed.push_back(to_json(v[i]));
    }
    return {{"model", model.name()},
            {"trials", trials},
            {"violations", v.size()},
            {"first_violations", listed},
            {"passed", v.empty()}};
}

inline Json certificate_result(const OntologicalModel &left,
                               const OntologicalModel &right, const Ket &one,
                               const Ket &two, std::uint64_t seed,
                               const std::string &observable) {
    ContradictionOptions opts;
    bool expected = true;
    if (observable == "computational") {
        opts.observable = computational_observable(4);
        expected = false;
    } else if (observable != "pbr") {
        throw InvalidInput("unknown observable '" + observable +
                           "' (expected pbr or computational)");
    }
    const ContradictionCertificate cert =
        run_contradiction(left, right, one, two, seed, opts);
    const Json cj = to_json(cert);
    const CertificateAudit audit = audit_certificate(cj);
    return {{"certificate", cj},
            {"expected_verdict", expected},
            {"forced_outcomes", cert.forced_zero.size()},
            {"audit_ok", audit.ok},
            {"audit_max_forcing_born", audit.max_forcing_born},
            {"passed", cert.verdict == expected && audit.ok}};
}

struct SweepRow {
    double angle_deg;
    double overlap;
    MeasureEstimate estimate;
    std::string model;
};

} // namespace detail

/// Lemma measure against overlap on an angle grid (Bloch angle between
/// psi = |0> and phi, in degrees).
inline std::vector<detail::SweepRow> sweep_rows(const RunConfig &cfg) {
    hvkit::detail::require(cfg.angles_deg.size() >= 2,
                    "sweep needs at least two angles");
    const auto model = make_model(cfg.model);
    std::vector<detail::SweepRow> rows;
    for (std::size_t i = 0; i < cfg.angles_deg.size(); ++i) {
        const double a = cfg.angles_deg[i];
        const Ket phi = qubit_ket(a * std::numbers::pi / 180.0, 0.0);
        const auto est = lemma_tracking_set_measure(
            *model, ket_zero(), phi, cfg.n_samples, Rng::stream(cfg.seed, i).bits());
        rows.push_back({a, est.target, est, model->name()});
    }
    return rows;
}

inline std::string sweep_csv(const std::vector<detail::SweepRow> &rows) {
    std::ostringstream os;
    os << "angle_deg,overlap,estimated_measure,stderr,model,degenerate\n";
    for (const auto &r : rows) {
        os << fmt17(r.angle_deg) << ',' << fmt17(r.overlap) << ','
           << fmt17(r.estimate.value) << ',' << fmt17(r.estimate.std_error)
           << ',' << r.model << ',' << (r.estimate.degenerate ? 1 : 0) << '\n';
    }
    return os.str();
}

inline Report run(const RunConfig &cfg) {
    hvkit::detail::require(cfg.n_samples >= 1, "n_samples must be >= 1");
    hvkit::detail::require(cfg.trials >= 1, "trials must be >= 1");
    hvkit::detail::require(cfg.format == "json" || cfg.format == "csv",
                    "format must be json or csv");
    hvkit::detail::require(cfg.format == "json" || cfg.command == "sweep",
                    "csv output is only available for sweep");
    detail::Runner runner(cfg);
    const std::string &cmd = cfg.command;

    if (cmd == "born") {
        const auto model = make_model(cfg.model);
        const Ket psi = parse_state(cfg.psi);
        const Observable m = Observable::qubit_spin(bloch_from_ket(parse_state(cfg.axis)));
        BornScheme scheme = QuadratureScheme{};
        if (cfg.scheme == "montecarlo") {
            scheme = MonteCarloScheme{cfg.n_samples, cfg.seed};
        } else if (cfg.scheme != "quadrature") {
            throw InvalidInput("unknown scheme '" + cfg.scheme + "'");
        }
        runner.check("born", [&] { return detail::born_result(*model, psi, m, scheme); });
    } else if (cmd == "lemma") {
        const auto model = make_model(cfg.model);
        const Ket psi = parse_state(cfg.psi);
        const Ket phi = cfg.overlap ? ket_with_overlap(*cfg.overlap) : parse_state(cfg.phi);
        runner.check("lemma", [&] {
            return detail::lemma_result(*model, psi, phi, cfg.n_samples, cfg.seed);
        });
    } else if (cmd == "tracking") {
        const auto model = make_model(cfg.model);
        const Ket psi = parse_state(cfg.psi);
        runner.check("tracking", [&] {
            return detail::tracking_result(*model, psi, cfg.n_samples, cfg.seed);
        });
    } else if (cmd == "assumption-a") {
        const auto model = make_model(cfg.model);
        runner.check("assumption-a", [&] {
            return detail::assumption_a_result(*model, cfg.trials, cfg.seed);
        });
    } else if (cmd == "certificate") {
        const auto left = make_model(cfg.model);
        const auto right =
            cfg.right_model && *cfg.right_model != cfg.model ? make_model(*cfg.right_model) : left;
        const Ket one = parse_state(cfg.one);
        const Ket two = parse_state(cfg.two);
        runner.check("certificate", [&] {
            return detail::certificate_result(*left, *right, one, two, cfg.seed,
                                              cfg.observable);
        });
    } else if (cmd == "verify") {
        std::ifstream in(cfg.certificate_path);
        if (!in) {
            throw std::runtime_error("cannot open certificate '" + cfg.certificate_path + "'");
        }
        Json file = Json::parse(in);
        // Accept either a bare certificate or a report wrapping one.
        if (file.contains("results")) {
            file = file.at("results").at(0).at("certificate");
        }
        runner.check("verify", [&] {
            const CertificateAudit a = audit_certificate(file);
            return Json{{"audit_ok", a.ok},
                        {"verdict", a.verdict},
                        {"max_forcing_born", a.max_forcing_born},
                        {"problems", a.problems},
                        {"passed", a.ok}};
        });
    } else if (cmd == "sweep") {
        const auto rows = sweep_rows(cfg);
        runner.check("sweep", [&] {
            Json jr = Json::array();
            bool passed = true;
            for (const auto &r : rows) {
                const bool row_ok = r.estimate.degenerate ||
                                    (r.estimate.within(4.0) &&
                                     r.estimate.tracking_failures == 0);
                passed = passed && row_ok;
                jr.push_back({{"angle_deg", r.angle_deg},
                              {"overlap", r.overlap},
                              {"estimated_measure", r.estimate.value},
                              {"stderr", r.estimate.std_error},
                              {"model", r.model},
                              {"degenerate", r.estimate.degenerate},
                              {"passed", row_ok}});
            }
            return Json{{"rows", jr}, {"passed", passed}};
        });
        runner.csv_ = sweep_csv(rows);
    } else if (cmd == "all") {
        std::uint64_t stream = 0;
        auto next_seed = [&] { return Rng::stream(cfg.seed, stream++).bits(); };
        for (const std::string name : {"ks", "bell"}) {
            const auto model = make_model(name);
            for (double deg : {0.0, 30.0, 45.0, 60.0, 90.0, 120.0, 180.0}) {
                const double a = deg * std::numbers::pi / 180.0;
                const Observable m = Observable::qubit_spin({std::sin(a), 0.0, std::cos(a)});
                runner.check(name + "/born/" + fmt17(deg), [&] {
                    return detail::born_result(*model, ket_zero(), m, QuadratureScheme{});
                });
            }
            for (double p : {0.1, 0.25, 0.5, 0.75, 0.9}) {
                const std::uint64_t s = next_seed();
                runner.check(name + "/lemma/" + fmt17(p), [&] {
                    return detail::lemma_result(*model, ket_zero(), ket_with_overlap(p),
                                                cfg.n_samples, s);
                });
            }
            const std::uint64_t ts = next_seed();
            runner.check(name + "/tracking", [&] {
                return detail::tracking_result(*model, parse_state(cfg.psi),
                                               std::min<std::size_t>(cfg.n_samples, 10000), ts);
            });
            const std::uint64_t as = next_seed();
            runner.check(name + "/assumption-a", [&] {
                return detail::assumption_a_result(*model, cfg.trials, as);
            });
            const std::uint64_t cs = next_seed();
            for (const std::string obs : {"pbr", "computational"}) {
                runner.check(name + "/certificate/" + obs, [&] {
                    return detail::certificate_result(*model, *model, ket_zero(), ket_plus(), cs,
                                                      obs);
                });
            }
        }
    } else {
        throw InvalidInput("unknown command '" + cmd + "'");
    }
    return runner.finish();
}

/// Serialised report: CSV for csv-format sweeps, otherwise indented JSON.
inline std::string render(const RunConfig &cfg, const Report &r) {
    if (cfg.format == "csv") {
        return r.csv;
    }
    return r.body.dump(2) + "\n";
}

/// The report body without its timing block; identical configs must give
/// identical strings.
inline std::string deterministic_part(const Report &r) {
    Json b = r.body;
    b.erase("timings");
    return b.dump();
}

} // namespace hvkit::cli

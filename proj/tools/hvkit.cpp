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
 * hvkit command-line entry point.
 *
 *   hvkit <command> [options]
 *
 * Exit status 0 iff every check in the report landed on its expected verdict;
 * 1 for a failed check; 2 for rejected input or I/O failure.
 */

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "hvkit/cli.hpp"

namespace {

void add_common(CLI::App *sub, hvkit::cli::RunConfig &cfg) {
    sub->add_option("-o,--output", cfg.output, "Write the report here (default: stdout)");
    sub->add_option("--seed", cfg.seed, "64-bit seed (default: $HVKIT_SEED or 1)");
    sub->add_option("-n,--samples", cfg.n_samples, "Monte Carlo sample count");
}

void add_model(CLI::App *sub, hvkit::cli::RunConfig &cfg) {
    sub->add_option("-m,--model", cfg.model, "ks or bell")->check(CLI::IsMember({"ks", "bell"}));
}

} // namespace

int main(int argc, char **argv) {
    hvkit::cli::RunConfig cfg;
    try {
        cfg.seed = hvkit::cli::default_seed();
    } catch (const std::exception &e) {
        std::cerr << "hvkit: " << e.what() << '\n';
        return 2;
    }

    CLI::App app{"hvkit: hidden-variables model verification toolkit"};
    app.set_version_flag("--version", std::string(hvkit::kVersion));
    app.require_subcommand(1);

    auto *born = app.add_subcommand("born", "Born-rule reproduction for a spin measurement");
    add_common(born, cfg);
    add_model(born, cfg);
    born->add_option("--psi", cfg.psi, "Prepared state");
    born->add_option("--axis", cfg.axis, "Measure spin along this state's Bloch vector");
    born->add_option("--scheme", cfg.scheme, "quadrature or montecarlo")
        ->check(CLI::IsMember({"quadrature", "montecarlo"}));

    auto *lemma = app.add_subcommand("lemma", "Measure of the set tracking both states");
    add_common(lemma, cfg);
    add_model(lemma, cfg);
    lemma->add_option("--psi", cfg.psi, "Prepared state");
    lemma->add_option("--phi", cfg.phi, "Second state");
    lemma->add_option("--overlap", cfg.overlap, "Use phi with |<psi|phi>|^2 = overlap (psi = zero)");

    auto *aa = app.add_subcommand("assumption-a", "Randomised Assumption A check");
    add_common(aa, cfg);
    add_model(aa, cfg);
    aa->add_option("--trials", cfg.trials, "Number of random trials");

    auto *tr = app.add_subcommand("tracking", "Sampled complete states track their preparation");
    add_common(tr, cfg);
    add_model(tr, cfg);
    tr->add_option("--psi", cfg.psi, "Prepared state");

    auto *cert = app.add_subcommand("certificate", "Contradiction certificate");
    add_common(cert, cfg);
    add_model(cert, cfg);
    std::string right;
    cert->add_option("--right-model", right, "Model for the second system")
        ->check(CLI::IsMember({"ks", "bell"}));
    cert->add_option("--one", cfg.one, "First preparation");
    cert->add_option("--two", cfg.two, "Second preparation");
    cert->add_option("--observable", cfg.observable, "pbr or computational (negative control)")
        ->check(CLI::IsMember({"pbr", "computational"}));

    auto *verify = app.add_subcommand("verify", "Re-check a certificate file");
    verify->add_option("certificate", cfg.certificate_path, "Certificate or report JSON")
        ->required();
    verify->add_option("-o,--output", cfg.output, "Write the report here (default: stdout)");

    auto *sweep = app.add_subcommand("sweep", "Lemma measure against overlap over an angle grid");
    add_common(sweep, cfg);
    add_model(sweep, cfg);
    sweep->add_option("--angles", cfg.angles_deg, "Bloch angles in degrees")->delimiter(',');
    sweep->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    auto *all = app.add_subcommand("all", "Every check, both models");
    add_common(all, cfg);
    all->add_option("--trials", cfg.trials, "Assumption A trials per model");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    if (!right.empty()) {
        cfg.right_model = right;
    }

    try {
        const auto report = hvkit::cli::run(cfg);
        const std::string text = hvkit::cli::render(cfg, report);
        if (cfg.output.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(cfg.output);
            if (!(out << text)) {
                std::cerr << "hvkit: cannot write '" << cfg.output << "'\n";
                return 2;
            }
        }
        return report.ok ? 0 : 1;
    } catch (const std::exception &e) {
        std::cerr << "hvkit: " << e.what() << '\n';
        return 2;
    }
}

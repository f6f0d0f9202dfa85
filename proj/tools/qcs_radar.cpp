// SPDX-License-Identifier: Apache-2.0
//
// qcs-radar: quantized compressive sensing for FMCW range estimation
// Copyright (C) 2026 The qcs-radar authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// qcs_radar: simulate, ambiguity, recover and gen-capture subcommands.
// Failures print one line "error[<kind>]: <message>" to stderr and exit 1;
// command-line usage errors exit 2.

#include "qcs/commands.hpp"
#include "qcs/errors.hpp"
#include "qcs/evaluation.hpp"
#include "qcs/io.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <numbers>
#include <string>

namespace
{

void report(const std::string &kind, const std::string &message)
{
    std::string line = message;
    for (char &c : line)
        if (c == '\n' || c == '\r')
            c = ' ';
    std::cerr << "error[" << kind << "]: " << line << '\n';
}

void warn(const std::string &message) { std::cerr << "warning: " << message << '\n'; }

qcs::BitDepth bit_depth_arg(const std::string &text) { return qcs::parse_bit_depth(text); }

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Quantized compressive sensing for FMCW radar range profiles"};
    app.require_subcommand(1);

    // simulate
    std::string config_path, out_path;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> sim_seed;
    auto *simulate = app.add_subcommand("simulate", "Run a Monte Carlo grid and write aggregates as CSV");
    simulate->add_option("--config", config_path, "Experiment configuration (JSON)")->required();
    simulate->add_option("--out", out_path, "Results CSV")->required();
    simulate->add_option("--trials", trials, "Override the number of trials per grid point");
    simulate->add_option("--seed", sim_seed, "Override the master seed");

    // ambiguity
    qcs::AmbiguityOptions amb;
    std::string amb_bits = "1";
    auto *ambiguity = app.add_subcommand("ambiguity", "Demonstrate undithered quantization ambiguity");
    ambiguity->add_option("--n", amb.n_bins, "Number of range bins N")->capture_default_str();
    ambiguity->add_option("--n0", amb.n0, "Bin of the unit target")->capture_default_str();
    ambiguity->add_option("--n1", amb.n1, "Bin of the weak target")->capture_default_str();
    ambiguity->add_option("--psi0", amb.psi0, "Phase of the unit target")->capture_default_str();
    ambiguity->add_option("--psi1", amb.psi1, "Phase of the weak target")->capture_default_str();
    ambiguity->add_option("--gamma", amb.gamma, "Amplitude of the weak target")->capture_default_str();
    ambiguity->add_option("--bits", amb_bits, "Bits per component")->capture_default_str();
    ambiguity->add_option("--meas", amb.n_meas, "Number of measurements M")->capture_default_str();
    ambiguity->add_option("--seeds", amb.n_seeds, "Dither seeds to test")->capture_default_str();
    ambiguity->add_option("--seed", amb.seed, "Base seed")->capture_default_str();

    // recover
    std::string capture_path, algo = "qiht";
    qcs::RecoverOptions rec;
    auto *recover = app.add_subcommand("recover", "Estimate targets from a capture");
    recover->add_option("--capture", capture_path, "Capture sidecar (JSON)")->required();
    recover->add_option("--algo", algo, "pbp or qiht")->capture_default_str()->check(CLI::IsMember({"pbp", "qiht"}));
    recover->add_option("--sparsity", rec.sparsity, "Number of targets K")->required();
    recover->add_option("--mu", rec.step_size, "QIHT step size")->capture_default_str();
    recover->add_option("--max-iters", rec.max_iters, "QIHT iteration budget (default max(20, 100 K))");
    recover->add_option("--target", rec.consistency_target, "QIHT consistency target")->capture_default_str();

    // gen-capture
    qcs::CaptureOptions gen;
    std::string gen_out, gen_bits = "1", gen_storage = "seed";
    bool undithered = false;
    auto *gen_capture = app.add_subcommand("gen-capture", "Synthesize a capture of a sparse scene");
    gen_capture->add_option("--out", gen_out, "Capture sidecar to write (payload goes next to it as .iq)")->required();
    gen_capture->add_option("--n", gen.n_bins, "Number of range bins N")->capture_default_str();
    gen_capture->add_option("--sparsity", gen.sparsity, "Number of random targets K")->capture_default_str();
    gen_capture->add_option("--targets", gen.target_bins, "Explicit 1-based target bins")->delimiter(',');
    gen_capture->add_option("--bits", gen_bits, "Bits per component or \"unquantized\"")->capture_default_str();
    gen_capture->add_option("--meas", gen.n_meas, "Number of measurements M")->capture_default_str();
    gen_capture->add_flag("--undithered", undithered, "Quantize without dither");
    gen_capture
        ->add_option("--dither-storage", gen_storage, "How the dither is recorded: seed, values or unrecorded")
        ->capture_default_str()
        ->check(CLI::IsMember({"seed", "values", "unrecorded"}));
    gen_capture->add_flag("--plan-seed", gen.plan_by_seed, "Store the sampling plan as a seed");
    gen_capture->add_option("--seed", gen.seed, "Scene, plan and dither seed")->capture_default_str();
    gen_capture->add_option("--f0", gen.radar.carrier_hz, "Carrier frequency [Hz]")->capture_default_str();
    gen_capture->add_option("--bandwidth", gen.radar.bandwidth_hz, "Ramp bandwidth [Hz]")->capture_default_str();
    gen_capture->add_option("--ramp-duration", gen.radar.ramp_duration_s, "Ramp duration [s]")->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        report("usage", e.what());
        return 2;
    }

    try
    {
        if (*simulate)
        {
            qcs::ExperimentConfig cfg = qcs::parse_config(config_path);
            if (trials)
                cfg.trials = *trials;
            if (sim_seed)
                cfg.master_seed = *sim_seed;
            cfg.validate();
            qcs::RunOptions ro;
            ro.on_warning = warn;
            const auto results = qcs::run_grid(cfg, ro);
            qcs::write_results(results, out_path);
        }
        else if (*ambiguity)
        {
            amb.bit_depth = bit_depth_arg(amb_bits);
            std::cout << qcs::run_ambiguity(amb).dump(2) << '\n';
        }
        else if (*recover)
        {
            std::vector<std::string> warnings;
            const qcs::Capture cap = qcs::read_capture(capture_path, &warnings);
            for (const auto &w : warnings)
                warn(w);
            rec.algorithm = qcs::parse_algorithm(algo);
            std::cout << qcs::recover_capture(cap, rec).dump(2) << '\n';
        }
        else if (*gen_capture)
        {
            gen.bit_depth = bit_depth_arg(gen_bits);
            gen.dithered = !undithered;
            gen.dither_storage = gen_storage == "values"       ? qcs::DitherStorage::values
                                 : gen_storage == "unrecorded" ? qcs::DitherStorage::unrecorded
                                                               : qcs::DitherStorage::seed;
            const qcs::Capture cap = qcs::synthesize_capture(gen);
            qcs::write_capture(cap, gen_out);
            std::cout << qcs::Json{{"sidecar", gen_out},
                                   {"payload", qcs::payload_path_for(gen_out).string()},
                                   {"truth_bins", *cap.truth_bins}}
                             .dump()
                      << '\n';
        }
    }
    catch (const qcs::Error &e)
    {
        report(std::string(qcs::to_string(e.kind())), e.what());
        return 1;
    }
    catch (const std::exception &e)
    {
        report("internal", e.what());
        return 1;
    }
    return 0;
}

// Copyright 2026 The qsl-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qsl/cli.hpp"

namespace {

void add_common_flags(CLI::App *cmd, qsl::cli::Overrides &o) {
    cmd->add_option("--config", o.config_path, "JSON run configuration")->required();
    cmd->add_option("--seed", o.seed, "Master seed (overrides the config)");
    cmd->add_option("--trials", o.trials, "Number of trials (overrides the config)");
    cmd->add_option("--out", o.out, "Write the report here instead of stdout");
    cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Secure-sampling protocol simulator"};
    app.require_subcommand(1);

    qsl::cli::BoundsArgs bounds;
    auto *bounds_cmd = app.add_subcommand("bounds", "Print sample complexities and the secure window");
    bounds_cmd->add_option("--epsilon", bounds.epsilon, "Accuracy epsilon in (0, 1)");
    bounds_cmd->add_option("--delta", bounds.delta, "Confidence delta in (0, 1)");
    bounds_cmd->add_option("--h-size", bounds.h_size, "Hypothesis class size |H| >= 2");
    bounds_cmd->add_option("--m", bounds.m, "Label qubit count");
    bounds_cmd->add_option("--m-max", bounds.m_max, "Print windows for m .. m-max");
    bounds_cmd->add_option("--format", bounds.format, "table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));

    qsl::cli::Overrides run;
    auto *run_cmd = app.add_subcommand("run", "Run one session; exit 0/2/3 = Completed/AbortedR1/QuitR2");
    add_common_flags(run_cmd, run);
    run_cmd->add_option("--trace", run.trace_path, "Write the per-round trace CSV here");

    qsl::cli::Overrides sweep;
    auto *sweep_cmd = app.add_subcommand("sweep", "Run sessions over an attack grid and emit CSV");
    add_common_flags(sweep_cmd, sweep);
    sweep_cmd->add_option("--grid", sweep.grid, "Attack grid entry, e.g. intercept_random:0,0.5,1 (repeatable)");

    qsl::cli::Overrides montecarlo;
    auto *mc_cmd = app.add_subcommand("montecarlo", "Aggregate session or PAC trials into a summary");
    add_common_flags(mc_cmd, montecarlo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (bounds_cmd->parsed()) {
        return qsl::cli::cmd_bounds(bounds, std::cout, std::cerr);
    }
    if (run_cmd->parsed()) {
        return qsl::cli::cmd_run(run, std::cout, std::cerr);
    }
    if (sweep_cmd->parsed()) {
        return qsl::cli::cmd_sweep(sweep, std::cout, std::cerr);
    }
    return qsl::cli::cmd_montecarlo(montecarlo, std::cout, std::cerr);
}

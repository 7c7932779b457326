/*
 * Copyright 2026 The SNE-Sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "CLI11.hpp"

#include "sne/cli.hpp"

namespace {

void add_config_flags(CLI::App *app, sne::SneConfig *config) {
    app->add_option("--slices", config->n_slices, "Slice count (stock: 1, 2, 4, or 8)");
    app->add_option("--clusters-per-slice", config->clusters_per_slice,
                    "Clusters per slice");
    app->add_option("--neurons-per-cluster", config->neurons_per_cluster,
                    "Time-multiplexed neuron slots per cluster");
    app->add_option("--clock-hz", config->clock_hz, "Core clock in Hz");
    app->add_option("--cycles-per-event", config->cycles_per_event,
                    "Cluster occupancy per accepted update event");
    app->add_option("--fire-scan-cycles", config->fire_scan_cycles,
                    "Minimum cycles for a fire scan");
    app->add_option("--fifo-depth", config->fifo_depth_cluster, "Cluster output FIFO depth");
    app->add_option("--dma-fifo-depth", config->dma_fifo_depth, "Input DMA FIFO depth");
    app->add_option("--dma-latency", config->dma_latency_cycles,
                    "Extra cycles between DMA input words");
    app->add_flag("--fire-overlap", config->fire_overlap,
                  "Let update processing overlap a running fire scan");
}

void add_energy_flags(CLI::App *app, sne::EnergyParams *energy) {
    app->add_option("--pj-per-sop", energy->pj_per_sop, "Energy per synaptic operation, pJ");
    app->add_option("--power-mw", energy->power_mw, "Busy power at the calibrated slice count, mW");
    app->add_option("--static-power-mw", energy->static_power_mw, "Static power, mW");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Event-driven spiking convolution accelerator simulator"};
    app.require_subcommand(1);

    sne::cli::RunOptions run_opt;
    CLI::App *run = app.add_subcommand("run", "Simulate a network over an event stream");
    run->add_option("network", run_opt.network_path, "Network description JSON")->required();
    run->add_option("events", run_opt.events_path, "Input event file (.sne-evt or .csv)")
        ->required();
    run->add_option("--mode", run_opt.mode, "golden | arch | compare")
        ->check(CLI::IsMember({"golden", "arch", "compare"}));
    run->add_option("--out", run_opt.out_dir, "Output directory");
    run->add_option("--seed", run_opt.seed, "Seed recorded in the report");
    run->add_flag("--cycle-log", run_opt.cycle_log, "Record a per-cycle activity CSV");
    add_config_flags(run, &run_opt.config);
    add_energy_flags(run, &run_opt.energy);

    sne::cli::GenOptions gen_opt;
    CLI::App *gen = app.add_subcommand("gen", "Generate a synthetic event stream");
    gen->add_option("--height", gen_opt.height, "Input map height");
    gen->add_option("--width", gen_opt.width, "Input map width");
    gen->add_option("--channels", gen_opt.channels, "Input channels");
    gen->add_option("--timesteps", gen_opt.t_steps, "Timestep count");
    gen->add_option("--activity", gen_opt.activity, "Update density in [0, 1]");
    gen->add_option("--seed", gen_opt.seed, "RNG seed");
    gen->add_option("--out", gen_opt.out_path, "Output event file")->required();

    sne::cli::ReportOptions report_opt;
    CLI::App *report = app.add_subcommand("report", "Aggregate run reports or traces");
    report->add_option("inputs", report_opt.inputs, "Report or trace JSON files")->required();
    report->add_option("--out", report_opt.out_dir, "Output directory");
    report->add_option("--prefix", report_opt.prefix, "Output file prefix");
    add_energy_flags(report, &report_opt.energy);

    sne::cli::PlanOptions plan_opt;
    CLI::App *plan = app.add_subcommand("plan", "Print the mapping plan for a network");
    plan->add_option("network", plan_opt.network_path, "Network description JSON")->required();
    plan->add_option("--out", plan_opt.out_path, "Write JSON here instead of stdout");
    add_config_flags(plan, &plan_opt.config);

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        return sne::cli::cmd_run(run_opt);
    }
    if (gen->parsed()) {
        return sne::cli::cmd_gen(gen_opt);
    }
    if (report->parsed()) {
        return sne::cli::cmd_report(report_opt);
    }
    if (plan->parsed()) {
        return sne::cli::cmd_plan(plan_opt);
    }
    return sne::cli::kError;
}

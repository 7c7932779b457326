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
#include "sne/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

#include "sne/driver.hpp"
#include "sne/errors.hpp"
#include "sne/event_io.hpp"
#include "sne/log.hpp"
#include "sne/net_desc.hpp"

namespace fs = std::filesystem;

namespace sne::cli {

namespace {

bool ends_with(const std::string &s, const std::string &suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(),
                                                  suffix) == 0;
}

EventStream load_events(const std::string &path) {
    if (ends_with(path, ".csv")) {
        return read_event_csv(path);
    }
    return read_event_file(path);
}

void store_events(const std::string &path, const EventStream &stream) {
    if (ends_with(path, ".csv")) {
        write_event_csv(stream, path);
    } else {
        write_event_file(stream, path);
    }
}

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out) {
        throw IoError("write failed on " + path.string());
    }
}

std::vector<double> layer_activities(const NetworkSpec &net,
                                     const std::vector<long long> &boundary_counts) {
    std::vector<double> result;
    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        const LayerSpec &spec = net.layers[k].spec;
        const double window = static_cast<double>(spec.h_in) * spec.w_in * spec.c_in *
                              spec.t_steps;
        result.push_back(static_cast<double>(boundary_counts[k]) / window);
    }
    return result;
}

} // namespace

int cmd_run(const RunOptions &opt) {
    try {
        if (opt.mode != "golden" && opt.mode != "arch" && opt.mode != "compare") {
            std::fprintf(stderr, "unknown mode \"%s\" (expected golden, arch, or compare)\n",
                         opt.mode.c_str());
            return kError;
        }
        SneConfig config = opt.config;
        config.record_cycle_trace = opt.cycle_log;
        const NetworkSpec net = load_network(opt.network_path);
        const EventStream input = load_events(opt.events_path);
        const MappingPlan mapping = plan(net, config);
        fs::create_directories(opt.out_dir);
        const fs::path out_dir(opt.out_dir);

        write_text(out_dir / "plan.json", plan_to_json(mapping));

        EventStream golden_out;
        if (opt.mode == "golden" || opt.mode == "compare") {
            const GoldenNetworkResult golden = run_golden_network(net, input);
            golden_out = golden.output;
            store_events((out_dir / "golden_events.sne-evt").string(), golden.output);
            nlohmann::json stats;
            stats["schema_version"] = 1;
            stats["layers"] = nlohmann::json::array();
            for (std::size_t k = 0; k < golden.layer_stats.size(); ++k) {
                const GoldenStats &s = golden.layer_stats[k];
                stats["layers"].push_back({{"input_updates", s.total_input_updates()},
                                           {"output_updates", s.total_output_updates()},
                                           {"weight_applications", s.weight_applications},
                                           {"spikes", s.spikes}});
            }
            write_text(out_dir / "golden_stats.json", stats.dump(2));
        }

        if (opt.mode == "arch" || opt.mode == "compare") {
            const ArchRunResult arch = run_arch_plan(config, mapping, net, input);
            store_events((out_dir / "arch_events.sne-evt").string(), arch.output);
            write_text(out_dir / "trace.json", arch.trace.to_json(config));
            if (opt.cycle_log) {
                write_text(out_dir / "cycles.csv", arch.trace.cycle_log_csv());
            }
            PerfReport report = report_from_trace(config, opt.energy, arch.trace);
            report.layer_activity = layer_activities(net, arch.boundary_counts);
            report.seed = opt.seed;
            write_text(out_dir / "report.json", report.to_json());
            write_text(out_dir / "report.csv",
                       PerfReport::csv_header() + "\n" + report.to_csv_row() + "\n");

            if (opt.mode == "compare") {
                const StreamDiff diff = compare_streams(golden_out, arch.output);
                write_text(out_dir / "diff.txt", diff.summary() + "\n");
                std::printf("%s\n", diff.summary().c_str());
                if (!diff.equal()) {
                    return kMismatch;
                }
            }
        }
        return kOk;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kError;
    }
}

EventStream generate_stream(const GenOptions &opt) {
    if (opt.activity < 0.0 || opt.activity > 1.0) {
        throw SneError("activity must be in [0, 1], got " + std::to_string(opt.activity));
    }
    if (opt.height < 1 || opt.width < 1 || opt.channels < 1 || opt.t_steps < 1) {
        throw SneError("stream dimensions must be positive");
    }
    if (opt.height > kMaxCoord + 1 || opt.width > kMaxCoord + 1 ||
        opt.channels > kMaxChannel + 1 || opt.t_steps > kMaxTimestep + 1) {
        throw SneError("stream dimensions exceed the event encoding range");
    }

    const long long positions =
        static_cast<long long>(opt.height) * opt.width * opt.channels;
    const long long total = std::llround(opt.activity * static_cast<double>(positions) *
                                         static_cast<double>(opt.t_steps));
    std::mt19937_64 rng(opt.seed);

    std::vector<Event> events;
    events.reserve(static_cast<std::size_t>(total) + static_cast<std::size_t>(opt.t_steps) + 1);
    events.push_back(Event::reset());

    std::vector<long long> pool(static_cast<std::size_t>(positions));
    for (int t = 0; t < opt.t_steps; ++t) {
        long long count = total / opt.t_steps;
        if (t < total % opt.t_steps) {
            count += 1;
        }
        std::iota(pool.begin(), pool.end(), 0LL);
        std::vector<Event> at_t;
        for (long long i = 0; i < count; ++i) {
            std::uniform_int_distribution<long long> pick(i, positions - 1);
            std::swap(pool[static_cast<std::size_t>(i)],
                      pool[static_cast<std::size_t>(pick(rng))]);
            const long long idx = pool[static_cast<std::size_t>(i)];
            const int c = static_cast<int>(idx / (opt.height * opt.width));
            const long long rem = idx % (opt.height * opt.width);
            at_t.push_back(Event::update(c, t, static_cast<int>(rem % opt.width),
                                         static_cast<int>(rem / opt.width)));
        }
        std::sort(at_t.begin(), at_t.end(), canonical_less);
        events.insert(events.end(), at_t.begin(), at_t.end());
        events.push_back(Event::fire(t));
    }

    EventStream stream = EventStream::from_events(std::move(events), opt.t_steps);
    require_valid(stream);
    return stream;
}

int cmd_gen(const GenOptions &opt) {
    try {
        if (opt.out_path.empty()) {
            std::fprintf(stderr, "gen needs an output path\n");
            return kError;
        }
        const EventStream stream = generate_stream(opt);
        store_events(opt.out_path, stream);
        std::printf("wrote %zu events (%d timesteps) to %s\n", stream.events.size(),
                    opt.t_steps, opt.out_path.c_str());
        return kOk;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kError;
    }
}

namespace {

PerfReport report_from_json(const nlohmann::json &root, const EnergyParams &energy,
                            const std::string &path) {
    if (root.value("schema_version", -1) != 1) {
        throw CodecError(path + ": schema-version mismatch");
    }
    if (root.contains("peak_sops")) {
        // A finished run report: read the figures straight back.
        PerfReport r;
        r.total_events = root.value("total_events", 0LL);
        r.sop_count = root.value("sop_count", 0LL);
        r.cycles = root.value("cycles", 0LL);
        const auto cc = root.value("cluster_cycles", nlohmann::json::object());
        r.cluster_busy_cycles = cc.value("busy", 0LL);
        r.cluster_stall_cycles = cc.value("stall", 0LL);
        r.cluster_idle_cycles = cc.value("idle", 0LL);
        r.inference_time_s = root.value("inference_time_s", 0.0);
        if (root.contains("inference_rate_hz") && root["inference_rate_hz"].is_number()) {
            r.inference_rate_hz = root["inference_rate_hz"].get<double>();
        } else {
            r.inference_rate_hz = std::numeric_limits<double>::infinity();
        }
        const auto ej = root.value("energy_j", nlohmann::json::object());
        r.energy_time_model_j = ej.value("time_model", 0.0);
        r.energy_op_model_j = ej.value("op_model", 0.0);
        r.peak_sops = root.value("peak_sops", 0.0);
        r.effective_sops = root.value("effective_sops", 0.0);
        r.effective_tsops_w = root.value("effective_tsops_w", 0.0);
        r.layer_activity = root.value("layer_activity", std::vector<double>{});
        r.power_extrapolated = root.value("power_extrapolated", false);
        r.n_slices = root.value("n_slices", 0);
        r.seed = root.value("seed", 0LL);
        return r;
    }
    if (!root.contains("config")) {
        throw CodecError(path + ": neither a run report nor a trace");
    }
    // A raw trace: rebuild the counters the report needs and derive it.
    const nlohmann::json &jc = root.at("config");
    SneConfig config;
    config.n_slices = jc.at("n_slices").get<int>();
    config.clusters_per_slice = jc.at("clusters_per_slice").get<int>();
    config.neurons_per_cluster = jc.at("neurons_per_cluster").get<int>();
    config.cycles_per_event = jc.at("cycles_per_event").get<int>();
    config.fire_scan_cycles = jc.at("fire_scan_cycles").get<int>();
    config.clock_hz = jc.at("clock_hz").get<double>();
    SimTrace trace;
    trace.cycles = root.at("cycles").get<long long>();
    trace.sop_count = root.at("sop_count").get<long long>();
    const nlohmann::json &je = root.at("events");
    trace.events_reset = je.at("reset").get<long long>();
    trace.events_update = je.at("update").get<long long>();
    trace.events_fire = je.at("fire").get<long long>();
    for (const nlohmann::json &jt : root.at("clusters")) {
        trace.clusters.push_back(CompTally{jt.at("busy").get<long long>(),
                                           jt.at("stall").get<long long>(),
                                           jt.at("idle").get<long long>()});
    }
    return report_from_trace(config, energy, trace);
}

} // namespace

int cmd_report(const ReportOptions &opt) {
    try {
        if (opt.inputs.empty()) {
            std::fprintf(stderr, "report needs at least one input file\n");
            return kError;
        }
        std::set<std::string> seen;
        std::vector<PerfReport> rows;
        for (const std::string &path : opt.inputs) {
            std::ifstream in(path, std::ios::binary);
            if (!in) {
                throw IoError("cannot open " + path);
            }
            std::ostringstream buffer;
            buffer << in.rdbuf();
            if (!seen.insert(buffer.str()).second) {
                std::fprintf(stderr, "warning: duplicate input ignored: %s\n", path.c_str());
                continue;
            }
            nlohmann::json root;
            try {
                root = nlohmann::json::parse(buffer.str());
            } catch (const nlohmann::json::exception &e) {
                throw CodecError(path + ": " + e.what());
            }
            rows.push_back(report_from_json(root, opt.energy, path));
        }

        fs::create_directories(opt.out_dir);
        const fs::path out_dir(opt.out_dir);

        std::ostringstream csv;
        csv << PerfReport::csv_header() << "\n";
        nlohmann::json jarr = nlohmann::json::array();
        for (const PerfReport &r : rows) {
            csv << r.to_csv_row() << "\n";
            jarr.push_back(nlohmann::json::parse(r.to_json()));
        }
        write_text(out_dir / (opt.prefix + ".csv"), csv.str());
        write_text(out_dir / (opt.prefix + ".json"), jarr.dump(2));

        std::ostringstream plot_slices;
        plot_slices << "n_slices,peak_sops,effective_sops\n";
        for (const PerfReport &r : rows) {
            plot_slices << r.n_slices << ',' << r.peak_sops << ',' << r.effective_sops << "\n";
        }
        write_text(out_dir / (opt.prefix + "_slices_throughput.csv"), plot_slices.str());

        std::ostringstream plot_energy;
        plot_energy << "mean_activity,energy_time_model_j,energy_op_model_j\n";
        for (const PerfReport &r : rows) {
            double mean = 0.0;
            if (!r.layer_activity.empty()) {
                for (double a : r.layer_activity) {
                    mean += a;
                }
                mean /= static_cast<double>(r.layer_activity.size());
            }
            plot_energy << mean << ',' << r.energy_time_model_j << ',' << r.energy_op_model_j
                        << "\n";
        }
        write_text(out_dir / (opt.prefix + "_activity_energy.csv"), plot_energy.str());

        std::printf("aggregated %zu reports into %s\n", rows.size(),
                    (out_dir / (opt.prefix + ".csv")).c_str());
        return kOk;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kError;
    }
}

int cmd_plan(const PlanOptions &opt) {
    try {
        const NetworkSpec net = load_network(opt.network_path);
        const MappingPlan mapping = plan(net, opt.config);
        const std::string text = plan_to_json(mapping);
        if (opt.out_path.empty()) {
            std::printf("%s\n", text.c_str());
        } else {
            write_text(opt.out_path, text);
        }
        return kOk;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kError;
    }
}

} // namespace sne::cli

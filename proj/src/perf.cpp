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
#include "sne/perf.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "sne/errors.hpp"

namespace sne {

void EnergyParams::validate() const {
    if (!(pj_per_sop > 0.0)) {
        throw SneError("pj_per_sop must be positive");
    }
    if (!(power_mw > 0.0)) {
        throw SneError("power_mw must be positive");
    }
    if (static_power_mw < 0.0) {
        throw SneError("static_power_mw must be non-negative");
    }
    if (calibrated_slices <= 0) {
        throw SneError("calibrated_slices must be positive");
    }
    for (const auto &[slices, mw] : power_table_mw) {
        if (slices <= 0 || !(mw > 0.0)) {
            throw SneError("power table entries must be positive");
        }
    }
}

double EnergyParams::power_for(int n_slices, bool *extrapolated) const {
    validate();
    if (n_slices <= 0) {
        throw SneError("slice count must be positive");
    }
    if (extrapolated != nullptr) {
        *extrapolated = false;
    }
    const auto it = power_table_mw.find(n_slices);
    if (it != power_table_mw.end()) {
        return it->second;
    }
    if (n_slices == calibrated_slices) {
        return power_mw;
    }
    if (extrapolated != nullptr) {
        *extrapolated = true;
    }
    return power_mw * static_cast<double>(n_slices) / static_cast<double>(calibrated_slices);
}

double peak_sops(const SneConfig &config) {
    config.validate();
    return static_cast<double>(config.n_slices) * static_cast<double>(config.clusters_per_slice) *
           config.clock_hz;
}

double event_latency_s(const SneConfig &config) {
    config.validate();
    return static_cast<double>(config.cycles_per_event) / config.clock_hz;
}

Throughput throughput(const SneConfig &config, const SimTrace &trace) {
    Throughput t;
    t.peak_sops = peak_sops(config);
    if (trace.cycles <= 0) {
        throw SneError("zero-cycle trace has no throughput");
    }
    t.effective_sops =
        static_cast<double>(trace.sop_count) / (static_cast<double>(trace.cycles) / config.clock_hz);
    return t;
}

Efficiency efficiency(const EnergyParams &params, const SneConfig &config) {
    params.validate();
    Efficiency e;
    const double watts = params.power_for(config.n_slices) * 1e-3;
    e.from_power_tsops_w = peak_sops(config) / watts / 1e12;
    e.from_pj_tsops_w = 1.0 / params.pj_per_sop;
    const double gap = std::fabs(e.from_power_tsops_w - e.from_pj_tsops_w);
    e.consistent_1pct = gap <= 0.01 * std::max(e.from_power_tsops_w, e.from_pj_tsops_w);
    return e;
}

namespace {

PerfReport finish_report(const SneConfig &config, const EnergyParams &params, PerfReport r) {
    bool extrapolated = false;
    const double power_w = params.power_for(config.n_slices, &extrapolated) * 1e-3;
    const double static_w = params.static_power_mw * 1e-3;

    r.n_slices = config.n_slices;
    r.power_extrapolated = extrapolated;
    r.peak_sops = peak_sops(config);

    const double wall_s = static_cast<double>(r.cycles) / config.clock_hz;
    r.inference_time_s = wall_s;
    r.inference_rate_hz =
        wall_s > 0.0 ? 1.0 / wall_s : std::numeric_limits<double>::infinity();

    // Busy-power model: the calibrated draw applies while clusters work,
    // scaled by how many of them do; idle silicon costs static power only.
    const double busy_s = static_cast<double>(r.cluster_busy_cycles) /
                          static_cast<double>(config.total_clusters()) / config.clock_hz;
    r.energy_time_model_j = power_w * busy_s + static_w * wall_s;
    r.energy_op_model_j = params.pj_per_sop * 1e-12 * static_cast<double>(r.sop_count);

    r.effective_sops = wall_s > 0.0 ? static_cast<double>(r.sop_count) / wall_s : 0.0;
    const double total_w = power_w + static_w;
    r.effective_tsops_w = r.effective_sops / total_w / 1e12;
    return r;
}

} // namespace

PerfReport inference_figures(const SneConfig &config, const EnergyParams &params,
                             const std::vector<long long> &events_per_layer) {
    config.validate();
    params.validate();
    if (events_per_layer.empty()) {
        throw SneError("no event counts given");
    }
    PerfReport r;
    for (long long n : events_per_layer) {
        if (n < 0) {
            throw SneError("negative event count");
        }
        r.total_events += n;
    }
    r.cycles = r.total_events * config.cycles_per_event;
    r.cluster_busy_cycles = r.cycles * config.total_clusters();
    r.sop_count = r.cluster_busy_cycles;
    r.cluster_stall_cycles = 0;
    r.cluster_idle_cycles = 0;
    return finish_report(config, params, r);
}

PerfReport report_from_trace(const SneConfig &config, const EnergyParams &params,
                             const SimTrace &trace) {
    config.validate();
    params.validate();
    PerfReport r;
    r.total_events = trace.events_reset + trace.events_update + trace.events_fire;
    r.sop_count = trace.sop_count;
    r.cycles = trace.cycles;
    for (const CompTally &c : trace.clusters) {
        r.cluster_busy_cycles += c.busy;
        r.cluster_stall_cycles += c.stall;
        r.cluster_idle_cycles += c.idle;
    }
    return finish_report(config, params, r);
}

double activity(const EventStream &stream, const LayerSpec &spec) {
    spec.validate();
    const long long window = static_cast<long long>(spec.h_in) * spec.w_in * spec.c_in *
                             spec.t_steps;
    if (window <= 0) {
        throw SneError("zero-size layer window");
    }
    long long updates = 0;
    for (const Event &e : stream.events) {
        if (e.op == EventOp::Update) {
            updates += 1;
        }
    }
    return static_cast<double>(updates) / static_cast<double>(window);
}

std::string PerfReport::to_json() const {
    nlohmann::json root;
    root["schema_version"] = 1;
    root["total_events"] = total_events;
    root["sop_count"] = sop_count;
    root["cycles"] = cycles;
    root["cluster_cycles"] = {{"busy", cluster_busy_cycles},
                              {"stall", cluster_stall_cycles},
                              {"idle", cluster_idle_cycles}};
    root["inference_time_s"] = inference_time_s;
    if (std::isinf(inference_rate_hz)) {
        root["inference_rate_hz"] = "unbounded";
    } else {
        root["inference_rate_hz"] = inference_rate_hz;
    }
    root["energy_j"] = {{"time_model", energy_time_model_j}, {"op_model", energy_op_model_j}};
    root["peak_sops"] = peak_sops;
    root["effective_sops"] = effective_sops;
    root["effective_tsops_w"] = effective_tsops_w;
    root["layer_activity"] = layer_activity;
    root["power_extrapolated"] = power_extrapolated;
    root["n_slices"] = n_slices;
    root["seed"] = seed;
    return root.dump(2);
}

std::string PerfReport::csv_header() {
    return "n_slices,total_events,sop_count,cycles,busy_cycles,inference_time_s,"
           "inference_rate_hz,energy_time_model_j,energy_op_model_j,peak_sops,"
           "effective_sops,effective_tsops_w,seed";
}

std::string PerfReport::to_csv_row() const {
    std::ostringstream out;
    out << n_slices << ',' << total_events << ',' << sop_count << ',' << cycles << ','
        << cluster_busy_cycles << ',' << inference_time_s << ',';
    if (std::isinf(inference_rate_hz)) {
        out << "inf";
    } else {
        out << inference_rate_hz;
    }
    out << ',' << energy_time_model_j << ',' << energy_op_model_j << ',' << peak_sops << ','
        << effective_sops << ',' << effective_tsops_w << ',' << seed;
    return out.str();
}

} // namespace sne

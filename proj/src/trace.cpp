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
#include "sne/arch/trace.hpp"

#include <sstream>

#include "json.hpp"

namespace sne {

void SneConfig::validate() const {
    const auto check = [](long long value, const char *name) {
        if (value <= 0) {
            throw SneError(std::string(name) + " must be positive, got " +
                           std::to_string(value));
        }
    };
    check(n_slices, "n_slices");
    check(clusters_per_slice, "clusters_per_slice");
    check(neurons_per_cluster, "neurons_per_cluster");
    check(cycles_per_event, "cycles_per_event");
    check(fire_scan_cycles, "fire_scan_cycles");
    check(fifo_depth_cluster, "fifo_depth_cluster");
    check(dma_fifo_depth, "dma_fifo_depth");
    check(n_dmas, "n_dmas");
    check(weight_bits, "weight_bits");
    check(state_bits, "state_bits");
    check(deadlock_cycle_budget, "deadlock_cycle_budget");
    if (clock_hz <= 0) {
        throw SneError("clock_hz must be positive");
    }
    if (dma_latency_cycles < 0) {
        throw SneError("dma_latency_cycles must be non-negative");
    }
}

long long SimTrace::slice_busy_total() const {
    long long sum = 0;
    for (const CompTally &t : slices) {
        sum += t.busy;
    }
    return sum;
}

long long SimTrace::cluster_busy_total() const {
    long long sum = 0;
    for (const CompTally &t : clusters) {
        sum += t.busy;
    }
    return sum;
}

namespace {

void add_tally(CompTally &into, const CompTally &from) {
    into.busy += from.busy;
    into.stall += from.stall;
    into.idle += from.idle;
}

nlohmann::json tally_json(const CompTally &t) {
    return nlohmann::json{{"busy", t.busy}, {"stall", t.stall}, {"idle", t.idle}};
}

} // namespace

void SimTrace::accumulate(const SimTrace &other) {
    cycles += other.cycles;
    sop_count += other.sop_count;
    events_reset += other.events_reset;
    events_update += other.events_update;
    events_fire += other.events_fire;
    output_events += other.output_events;
    dma_words_in += other.dma_words_in;
    dma_words_out += other.dma_words_out;
    reprogram_count += other.reprogram_count;
    if (slices.size() < other.slices.size()) {
        slices.resize(other.slices.size());
    }
    for (std::size_t i = 0; i < other.slices.size(); ++i) {
        add_tally(slices[i], other.slices[i]);
    }
    if (clusters.size() < other.clusters.size()) {
        clusters.resize(other.clusters.size());
    }
    for (std::size_t i = 0; i < other.clusters.size(); ++i) {
        add_tally(clusters[i], other.clusters[i]);
    }
    add_tally(collector, other.collector);
    add_tally(xbar, other.xbar);
    add_tally(dma_in, other.dma_in);
    add_tally(dma_out, other.dma_out);
    cycle_log.insert(cycle_log.end(), other.cycle_log.begin(), other.cycle_log.end());
}

std::string SimTrace::to_json(const SneConfig &config) const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["config"] = {
        {"n_slices", config.n_slices},
        {"clusters_per_slice", config.clusters_per_slice},
        {"neurons_per_cluster", config.neurons_per_cluster},
        {"cycles_per_event", config.cycles_per_event},
        {"fire_scan_cycles", config.fire_scan_cycles},
        {"clock_hz", config.clock_hz},
    };
    j["cycles"] = cycles;
    j["sop_count"] = sop_count;
    j["events"] = {{"reset", events_reset},
                   {"update", events_update},
                   {"fire", events_fire},
                   {"output", output_events}};
    j["dma_words"] = {{"in", dma_words_in}, {"out", dma_words_out}};
    j["reprogram_count"] = reprogram_count;
    nlohmann::json slice_arr = nlohmann::json::array();
    for (const CompTally &t : slices) {
        slice_arr.push_back(tally_json(t));
    }
    j["slices"] = slice_arr;
    nlohmann::json cluster_arr = nlohmann::json::array();
    for (const CompTally &t : clusters) {
        cluster_arr.push_back(tally_json(t));
    }
    j["clusters"] = cluster_arr;
    j["collector"] = tally_json(collector);
    j["xbar"] = tally_json(xbar);
    j["dma_in"] = tally_json(dma_in);
    j["dma_out"] = tally_json(dma_out);
    return j.dump(2);
}

std::string SimTrace::cycle_log_csv() const {
    std::ostringstream out;
    out << "cycle,slices_busy,clusters_busy,clusters_stalled,deliveries,sops\n";
    for (const CycleRecord &r : cycle_log) {
        out << r.cycle << ',' << r.slices_busy << ',' << r.clusters_busy << ','
            << r.clusters_stalled << ',' << r.deliveries << ',' << r.sops << '\n';
    }
    return out.str();
}

} // namespace sne

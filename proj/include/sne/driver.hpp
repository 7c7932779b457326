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
#pragma once

#include <string>
#include <vector>

#include "sne/arch/sim.hpp"
#include "sne/golden.hpp"
#include "sne/mapper.hpp"

namespace sne {

/// Dense-reference run of a whole network, layer by layer.
struct GoldenNetworkResult {
    EventStream output;
    std::vector<EventStream> layer_outputs;
    std::vector<GoldenStats> layer_stats;
};

GoldenNetworkResult run_golden_network(const NetworkSpec &net, const EventStream &input);

/// Architectural run of a whole plan. Pipelined plans run once; tiled
/// plans run every pass, reloading weights in between, with each layer's
/// merged output stored and re-read as the next layer's input.
struct ArchRunResult {
    EventStream output;
    SimTrace trace;
    /// Update-event count entering each layer, then the final output
    /// count. Pipelined intermediates never materialize and read 0.
    std::vector<long long> boundary_counts;
};

ArchRunResult run_arch_plan(const SneConfig &config, const MappingPlan &plan,
                            const NetworkSpec &net, const EventStream &input);

/// Merges per-pass output streams of one layer: updates are combined in
/// canonical order and each timestep's control events are kept once.
EventStream merge_pass_outputs(const std::vector<EventStream> &outputs, int t_max);

/// Order-insensitive stream comparison.
struct StreamDiff {
    long long missing{0};
    long long extra{0};
    std::vector<Event> examples;

    bool equal() const { return missing == 0 && extra == 0; }
    std::string summary() const;
};

StreamDiff compare_streams(const EventStream &expect, const EventStream &got);

} // namespace sne

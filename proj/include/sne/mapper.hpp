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

#include <memory>
#include <string>
#include <vector>

#include "sne/arch/config.hpp"
#include "sne/filter_bank.hpp"
#include "sne/layer.hpp"
#include "sne/neuron.hpp"

namespace sne {

/// One layer of a network: geometry, neuron parameters, and its weights.
struct NetworkLayer {
    LayerSpec spec;
    LifParams params;
    std::shared_ptr<const FilterBank> bank;
    int weight_set{0};
};

/// An ordered stack of shape-compatible layers.
struct NetworkSpec {
    std::vector<NetworkLayer> layers;

    /// Throws PlanError on an empty network, invalid layers, missing or
    /// mismatched weights, or inter-layer extent mismatches.
    void validate() const;

    long long total_neurons() const;
};

enum class MapMode { Pipelined, Tiled };

const char *to_string(MapMode mode);

/// One cluster's share of a layer: a rectangular tile of one output
/// channel's map, at most neurons_per_cluster neurons.
struct ClusterAssignment {
    int cluster{0};
    int c_out{0};
    int x0{0};
    int y0{0};
    int tile_w{0};
    int tile_h{0};

    int neuron_count() const { return tile_w * tile_h; }
    bool operator==(const ClusterAssignment &) const = default;
};

/// One slice's share of a pass: a contiguous output-channel range of one
/// layer, spread over that slice's clusters.
struct SliceAssignment {
    int slice{0};
    int layer{0};
    int weight_set{0};
    int c_out_begin{0};
    int c_out_end{0};
    std::vector<ClusterAssignment> clusters;

    bool operator==(const SliceAssignment &) const = default;
};

/// One device-resident working set. Pipelined plans have a single pass
/// holding every layer; tiled plans reprogram between passes.
struct MappingPass {
    std::vector<SliceAssignment> slices;

    bool operator==(const MappingPass &) const = default;
};

struct MappingPlan {
    MapMode mode{MapMode::Pipelined};
    std::vector<MappingPass> passes;
    /// Set when the plan leaves calibrated territory (a layer spanning
    /// several slices, or a non-stock slice count).
    bool extrapolated{false};

    int reprogram_count() const { return static_cast<int>(passes.size()); }
    bool operator==(const MappingPlan &) const = default;
};

/// Chooses pipelined mode when every layer fits the device at once (at
/// cluster granularity) with disjoint slice groups; otherwise builds a
/// tiled schedule that packs whole output channels greedily per pass, in
/// channel order. A channel wider than one slice spreads its spatial
/// tiles over as many slices as it needs; a channel wider than the whole
/// device is unmappable. Throws PlanError when even one tile cannot be
/// placed.
MappingPlan plan(const NetworkSpec &net, const SneConfig &config);

/// Exhaustively checks coverage and exclusivity: every output neuron of
/// every layer is assigned to exactly one (pass, slice, cluster, slot) and
/// every assignment fits the device. Throws PlanError with the offending
/// neuron or tile.
void verify_plan(const MappingPlan &plan, const NetworkSpec &net, const SneConfig &config);

/// Packed weight image for one pass, ready to program a device.
struct PassImage {
    int pass{0};
    int slice{0};
    int layer{0};
    std::vector<uint8_t> image;
};

/// Packs, per pass and slice, the weight subset that pass actually loads
/// (channel range sliced out of the layer bank). Throws PlanError when a
/// referenced weight set is absent.
std::vector<PassImage> emit_pass_images(const MappingPlan &plan, const NetworkSpec &net);

struct MemoryTraffic {
    long long input_words{0};
    long long output_words{0};
    long long weight_words{0};

    long long data_words() const { return input_words + output_words; }
};

/// Expected external-memory word traffic for a plan. boundary_counts[k]
/// is the update-event count entering layer k; boundary_counts[L] is the
/// final output count. Pipelined plans move only the first and last
/// streams; tiled plans re-read a layer's input once per pass over it and
/// write each pass's share of the output, split proportionally by channel
/// count. Weight-image words are tallied separately.
MemoryTraffic estimate_memory_traffic(const MappingPlan &plan, const NetworkSpec &net,
                                      const std::vector<long long> &boundary_counts);

/// Plan serialization for reproducible runs.
std::string plan_to_json(const MappingPlan &plan);
MappingPlan plan_from_json(const std::string &text);

} // namespace sne

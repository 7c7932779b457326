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

#include <vector>

#include "sne/event.hpp"
#include "sne/layer.hpp"
#include "sne/neuron.hpp"

namespace sne {

/// Per-timestep event tallies from one dense layer execution.
struct GoldenStats {
    std::vector<long long> input_updates;
    std::vector<long long> output_updates;
    long long weight_applications{0};
    long long spikes{0};

    long long total_input_updates() const;
    long long total_output_updates() const;
};

struct GoldenResult {
    EventStream output;
    GoldenStats stats;
};

/// Dense, hardware-agnostic reference execution of one layer.
///
/// Every neuron leaks once per timestep transition (so state read at
/// timestep t carries exactly t accumulated leak steps), then each update
/// event at that timestep scatters one weight per receptive-field neuron of
/// every output channel (applied one at a time in stream order, saturating
/// after each), then a fire marker scans all neurons in channel-major
/// (channel, y, x) order, emitting an update-typed output event per neuron
/// at or above threshold and applying the reset policy. A leading reset
/// event zeroes all membranes and is mirrored to the output, as are fire
/// markers, so the output is a well-formed stream over the same window.
GoldenResult golden_layer_exec(const LayerSpec &spec, const FilterBank &bank,
                               const LifParams &params, const EventStream &input, int set = 0);

} // namespace sne

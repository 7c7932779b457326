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

#include <optional>

#include "sne/event.hpp"
#include "sne/filter_bank.hpp"

namespace sne {

/// Geometry of one event-driven convolution layer. Stride is fixed at 1;
/// padding is symmetric per axis.
struct LayerSpec {
    int c_in{1};
    int c_out{1};
    int h_in{1};
    int w_in{1};
    int k_h{1};
    int k_w{1};
    int p_h{0};
    int p_w{0};
    int t_steps{1};

    int h_out() const { return h_in + 2 * p_h - k_h + 1; }
    int w_out() const { return w_in + 2 * p_w - k_w + 1; }
    int neurons_per_channel() const { return h_out() * w_out(); }
    int total_neurons() const { return c_out * neurons_per_channel(); }

    FilterShape filter_shape() const { return FilterShape{c_out, c_in, k_h, k_w}; }

    /// Throws SneError on non-positive dims, negative padding, empty output,
    /// or extents that do not fit the packed event fields (channels < 64,
    /// coordinates < 256, timesteps < 256).
    void validate() const;

    bool operator==(const LayerSpec &) const = default;
};

/// Inclusive output-neuron window touched by an input event; empty when the
/// event lies outside every kernel footprint.
struct FieldWindow {
    int i0{0};
    int i1{-1};
    int j0{0};
    int j1{-1};

    bool empty() const { return i0 > i1 || j0 > j1; }
};

/// Output rows/cols whose kernel window covers input position (e_x, e_y),
/// clipped to the layer's output extent.
FieldWindow receptive_field(const LayerSpec &spec, int e_x, int e_y);

/// Weight routed from input event (k_i, e_x, e_y) to output neuron
/// (c_out, i, j), or nullopt when the neuron is outside the event's
/// receptive field. Throws SneError on out-of-extent coordinates.
std::optional<int8_t> weight_lookup(const LayerSpec &spec, const FilterBank &bank, int set,
                                    int c_out, int i, int j, int k_i, int e_x, int e_y);

} // namespace sne

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

#include <cstdint>
#include <string>

#include "sne/errors.hpp"

namespace sne {

/// What happens to the membrane potential when a neuron spikes.
enum class ResetPolicy : uint8_t { ToZero = 0, SubtractThreshold = 1, None = 2 };

const char *to_string(ResetPolicy p);
ResetPolicy reset_policy_from_string(const std::string &name);

/// Quantized linear-decay LIF parameters. Leak is in membrane units per
/// timestep. With zero_floor_leak the decay stops at zero instead of driving
/// the potential down to v_min; off by default.
struct LifParams {
    int leak{0};
    int v_th{1};
    ResetPolicy reset_policy{ResetPolicy::ToZero};
    bool zero_floor_leak{false};
    int v_min{-128};
    int v_max{127};

    /// Throws SneError unless v_min <= v_th <= v_max and leak >= 0.
    void validate() const;

    bool operator==(const LifParams &) const = default;
};

/// Per-neuron state: 8-bit membrane potential plus the timestep it was last
/// brought up to date, so leak over idle gaps can be applied lazily.
struct NeuronState {
    int8_t v_mem{0};
    int tlu{0};

    bool operator==(const NeuronState &) const = default;
};

/// Clamp to [v_min, v_max]; defaults are the signed 8-bit limits.
int saturate_s8(long long v, int v_min = -128, int v_max = 127);

/// Decay over dt timesteps in one shot. Exactly equals dt unit steps with
/// zero input, saturation included: x -> max(x - L, v_min) composed dt times
/// is max(x - L*dt, v_min). The zero-floor variant decays toward zero from
/// either sign and also composes exactly.
int apply_leak(int v, int leak, int dt, bool zero_floor, int v_min = -128);

/// One membrane update: leak for dt timesteps, then integrate w_sum,
/// saturating after each stage. Advances tlu by dt. Throws on dt < 0.
NeuronState membrane_step(NeuronState state, const LifParams &params, int dt, int w_sum);

/// Plain-leak form with the default signed 8-bit bounds.
NeuronState membrane_step(NeuronState state, int leak, int dt, int w_sum);

struct FireResult {
    bool spiked{false};
    NeuronState state;
};

/// Threshold compare with the convention theta(0) = 1: a neuron spikes iff
/// v_mem >= v_th. On a spike the membrane is transformed per reset_policy;
/// otherwise it is left untouched.
FireResult fire_check(NeuronState state, const LifParams &params);

} // namespace sne

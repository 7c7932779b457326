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
#include "sne/neuron.hpp"

#include <algorithm>
#include <string>

namespace sne {

const char *to_string(ResetPolicy p) {
    switch (p) {
    case ResetPolicy::ToZero:
        return "to_zero";
    case ResetPolicy::SubtractThreshold:
        return "subtract_threshold";
    case ResetPolicy::None:
        return "none";
    }
    return "unknown";
}

ResetPolicy reset_policy_from_string(const std::string &name) {
    if (name == "to_zero") return ResetPolicy::ToZero;
    if (name == "subtract_threshold") return ResetPolicy::SubtractThreshold;
    if (name == "none") return ResetPolicy::None;
    throw SneError("unknown reset policy '" + name + "'");
}

void LifParams::validate() const {
    if (leak < 0) {
        throw SneError("leak must be non-negative, got " + std::to_string(leak));
    }
    if (v_min > v_max) {
        throw SneError("v_min " + std::to_string(v_min) + " exceeds v_max " +
                       std::to_string(v_max));
    }
    if (v_th < v_min || v_th > v_max) {
        throw SneError("v_th " + std::to_string(v_th) + " outside [" + std::to_string(v_min) +
                       ", " + std::to_string(v_max) + "]");
    }
}

int saturate_s8(long long v, int v_min, int v_max) {
    return static_cast<int>(std::clamp<long long>(v, v_min, v_max));
}

int apply_leak(int v, int leak, int dt, bool zero_floor, int v_min) {
    const long long total = static_cast<long long>(leak) * dt;
    if (!zero_floor) {
        return static_cast<int>(std::max<long long>(v - total, v_min));
    }
    if (v > 0) {
        return static_cast<int>(std::max<long long>(v - total, 0));
    }
    if (v < 0) {
        return static_cast<int>(std::min<long long>(v + total, 0));
    }
    return 0;
}

NeuronState membrane_step(NeuronState state, const LifParams &params, int dt, int w_sum) {
    if (dt < 0) {
        throw SneError("membrane_step: negative dt " + std::to_string(dt));
    }
    const int leaked = apply_leak(state.v_mem, params.leak, dt, params.zero_floor_leak,
                                  params.v_min);
    state.v_mem = static_cast<int8_t>(
        saturate_s8(static_cast<long long>(leaked) + w_sum, params.v_min, params.v_max));
    state.tlu += dt;
    return state;
}

NeuronState membrane_step(NeuronState state, int leak, int dt, int w_sum) {
    LifParams params;
    params.leak = leak;
    return membrane_step(state, params, dt, w_sum);
}

FireResult fire_check(NeuronState state, const LifParams &params) {
    FireResult result;
    result.spiked = state.v_mem >= params.v_th;
    if (result.spiked) {
        switch (params.reset_policy) {
        case ResetPolicy::ToZero:
            state.v_mem = 0;
            break;
        case ResetPolicy::SubtractThreshold:
            state.v_mem = static_cast<int8_t>(
                saturate_s8(static_cast<long long>(state.v_mem) - params.v_th, params.v_min,
                            params.v_max));
            break;
        case ResetPolicy::None:
            break;
        }
    }
    result.state = state;
    return result;
}

} // namespace sne

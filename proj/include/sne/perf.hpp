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

#include <map>
#include <string>
#include <vector>

#include "sne/arch/config.hpp"
#include "sne/arch/trace.hpp"
#include "sne/event.hpp"
#include "sne/layer.hpp"

namespace sne {

/// Energy calibration. The defaults describe the stock 8-slice device:
/// 0.221 pJ per synaptic operation and 11.29 mW under full activity.
/// Power for other slice counts comes from the table when supplied and
/// otherwise scales linearly with slice count (an extrapolation).
struct EnergyParams {
    double pj_per_sop{0.221};
    double power_mw{11.29};
    int calibrated_slices{8};
    /// Busy power only; static draw is separate and defaults to zero.
    double static_power_mw{0.0};
    std::map<int, double> power_table_mw;

    void validate() const;

    /// Busy power for a slice count. Sets *extrapolated when the value is
    /// scaled rather than taken from the table or the calibration point.
    double power_for(int n_slices, bool *extrapolated = nullptr) const;
};

struct Throughput {
    double peak_sops{0.0};
    double effective_sops{0.0};
};

double peak_sops(const SneConfig &config);

/// Wall time one event occupies a slice: cycles_per_event / clock_hz.
double event_latency_s(const SneConfig &config);

/// Peak plus achieved SOP rate for a finished run. Throws SneError on a
/// zero-cycle trace.
Throughput throughput(const SneConfig &config, const SimTrace &trace);

/// The same number computed two independent ways; they must agree within
/// one percent for a self-consistent calibration.
struct Efficiency {
    double from_power_tsops_w{0.0};
    double from_pj_tsops_w{0.0};
    bool consistent_1pct{false};
};

Efficiency efficiency(const EnergyParams &params, const SneConfig &config);

/// Reported figures for one inference. Both energy models are always
/// present: time model = busy power x busy time (+ static x wall time),
/// op model = pj_per_sop x SOP count. They coincide exactly when every
/// busy cluster cycle performs one SOP and static power is zero.
struct PerfReport {
    long long total_events{0};
    long long sop_count{0};
    long long cycles{0};
    long long cluster_busy_cycles{0};
    long long cluster_stall_cycles{0};
    long long cluster_idle_cycles{0};

    double inference_time_s{0.0};
    /// 1 / inference_time_s; +infinity for a zero-event inference.
    double inference_rate_hz{0.0};
    double energy_time_model_j{0.0};
    double energy_op_model_j{0.0};

    double peak_sops{0.0};
    double effective_sops{0.0};
    double effective_tsops_w{0.0};

    std::vector<double> layer_activity;
    bool power_extrapolated{false};
    int n_slices{0};
    long long seed{0};

    std::string to_json() const;
    static std::string csv_header();
    std::string to_csv_row() const;
};

/// Sequential inference model: events are consumed one at a time, each
/// holding the whole device for cycles_per_event cycles. Throws SneError
/// on negative counts or an empty list.
PerfReport inference_figures(const SneConfig &config, const EnergyParams &params,
                             const std::vector<long long> &events_per_layer);

/// Figures for a simulated run, using the trace's measured cycle and SOP
/// counts instead of the sequential model.
PerfReport report_from_trace(const SneConfig &config, const EnergyParams &params,
                             const SimTrace &trace);

/// Fraction of input positions that carry an update: UPDATE events over
/// h_in x w_in x c_in x t_steps. Throws SneError on a zero-size window.
double activity(const EventStream &stream, const LayerSpec &spec);

} // namespace sne

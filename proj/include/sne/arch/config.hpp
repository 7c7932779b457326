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

#include "sne/errors.hpp"

namespace sne {

/// Accelerator geometry and timing parameters. Defaults describe the
/// largest stock configuration: 8 slices of 16 clusters with 64
/// time-multiplexed neurons each at 400 MHz, one event consumed per slice
/// every 48 cycles.
struct SneConfig {
    int n_slices{8};
    int clusters_per_slice{16};
    int neurons_per_cluster{64};
    int cycles_per_event{48};
    int fire_scan_cycles{64};
    int fifo_depth_cluster{4};
    int dma_fifo_depth{16};
    int n_dmas{2};
    double clock_hz{4.0e8};
    int weight_bits{4};
    int state_bits{8};

    /// Extra cycles per DMA word to model memory access contention.
    int dma_latency_cycles{0};
    /// Cycles without forward progress before the simulator declares
    /// deadlock instead of spinning forever.
    long long deadlock_cycle_budget{1000000};
    /// Let a fire scan share the slice with next-timestep update
    /// processing (timing only; results are unaffected).
    bool fire_overlap{false};
    /// Keep a per-cycle activity log in the trace (large).
    bool record_cycle_trace{false};

    long long neuron_capacity() const {
        return static_cast<long long>(n_slices) * clusters_per_slice * neurons_per_cluster;
    }
    int total_clusters() const { return n_slices * clusters_per_slice; }

    /// True for the slice counts the calibration data covers.
    bool stock_slice_count() const {
        return n_slices == 1 || n_slices == 2 || n_slices == 4 || n_slices == 8;
    }

    /// Throws SneError on non-positive counts or clock.
    void validate() const;
};

} // namespace sne

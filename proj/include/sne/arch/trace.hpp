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

#include "sne/arch/config.hpp"

namespace sne {

/// Cycle tally for one component. Every simulated cycle lands in exactly
/// one bucket, so busy + stall + idle equals the simulated cycle count.
struct CompTally {
    long long busy{0};
    long long stall{0};
    long long idle{0};

    long long total() const { return busy + stall + idle; }
};

/// One row of the optional per-cycle activity log.
struct CycleRecord {
    long long cycle{0};
    int slices_busy{0};
    int clusters_busy{0};
    int clusters_stalled{0};
    int deliveries{0};
    long long sops{0};
};

/// Aggregate counters from one simulation run. A synaptic operation (SOP)
/// is one time-multiplexed neuron state update; a cluster performs one per
/// busy cycle while it processes an accepted update event.
struct SimTrace {
    long long cycles{0};
    long long sop_count{0};

    long long events_reset{0};
    long long events_update{0};
    long long events_fire{0};
    long long output_events{0};

    long long dma_words_in{0};
    long long dma_words_out{0};

    std::vector<CompTally> slices;
    std::vector<CompTally> clusters;
    CompTally collector;
    CompTally xbar;
    CompTally dma_in;
    CompTally dma_out;

    /// Weight images loaded; >1 means the run reprogrammed between passes.
    int reprogram_count{0};

    std::vector<CycleRecord> cycle_log;

    long long slice_busy_total() const;
    long long cluster_busy_total() const;

    /// Merge counters from a subsequent pass run on the same geometry.
    void accumulate(const SimTrace &other);

    std::string to_json(const SneConfig &config) const;
    std::string cycle_log_csv() const;
};

} // namespace sne

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

#include <deque>
#include <map>
#include <utility>
#include <vector>

#include "sne/arch/config.hpp"
#include "sne/arch/trace.hpp"
#include "sne/event.hpp"
#include "sne/mapper.hpp"

namespace sne {

/// Address-filter preview: which slices and clusters would accept an
/// event arriving at the first pipeline stage.
struct DispatchResult {
    std::vector<bool> slice_accept;
    std::vector<bool> cluster_accept;
};

struct StepDelta {
    bool progress{false};
    int deliveries{0};
    long long sops{0};
};

/// Pure form of the output collector: repeatedly takes the event with the
/// smallest timestep among the FIFO heads, breaking ties round-robin over
/// port order, until every FIFO is drained.
std::vector<Event> collector_merge(std::vector<std::deque<Event>> fifos);

/// Structural simulator for one device working set (one plan pass).
///
/// Per cycle: slices burn occupancy and advance fire scans (one TDM slot
/// per cycle, stalling on a full output FIFO); the collector drains one
/// event from one cluster FIFO into its layer boundary; boundaries whose
/// fire markers are complete deliver one event per cycle to the next slice
/// group behind an all-slices-ready barrier (or to the output DMA); the
/// input DMA refills its FIFO one word per cycle.
///
/// Functional effects are applied atomically when a slice group accepts an
/// event, so results are exact and independent of FIFO sizing; the cycle
/// machinery models timing only. Between slice groups, each timestep's
/// events are released in canonical (reset, then updates by channel, y, x)
/// order once every source slice has fired, which makes saturating-add
/// order well defined device-wide and equal to the dense reference.
class SimInstance {
public:
    /// Builds one pass of the plan. Validates geometry against the config
    /// and zeroes every neuron state (time-of-last-update starts at 0).
    SimInstance(const SneConfig &config, const MappingPlan &plan, int pass_index,
                const NetworkSpec &net);

    const SneConfig &config() const { return config_; }
    const SimTrace &trace() const { return trace_; }
    long long neuron_capacity() const { return config_.neuron_capacity(); }

    /// Which slices/clusters would accept this event at the first stage.
    DispatchResult dispatch_event(const Event &e) const;

    /// Validates an internal collector-to-slice route and returns the
    /// boundary index it rides. Throws PlanError for a self route, an
    /// unconfigured slice, or slices not on consecutive layers.
    int pipeline_route(int from_slice, int to_slice) const;

    /// Stage an input stream for manual stepping.
    void begin_inference(const EventStream &input);
    bool done() const;
    StepDelta step_cycle();

    /// begin_inference + step_cycle until done (or the deadlock budget is
    /// exhausted, which throws DeadlockError). Returns the output stream
    /// and the run's trace.
    std::pair<EventStream, SimTrace> run_inference(const EventStream &input);

    /// Test hooks: direct neuron state access by physical location.
    NeuronState peek_neuron(int slice, int cluster, int slot) const;
    void poke_neuron(int slice, int cluster, int slot, NeuronState state);

    /// Physical location of a layer's output neuron in this pass, as
    /// (slice, cluster, slot); throws PlanError if unmapped in this pass.
    struct Location {
        int slice{0};
        int cluster{0};
        int slot{0};
    };
    Location locate(int layer, int c_out, int i, int j) const;

private:
    struct ClusterHw {
        ClusterAssignment asg;
        std::vector<NeuronState> neurons;
        std::deque<Event> fifo;

        bool accepted_update{false};
        bool scanning{false};
        int slots_done{0};
        int scan_cycles_done{0};
        std::deque<std::pair<int, Event>> scan_emissions;

        bool busy_now{false};
        bool stall_now{false};
    };

    struct SliceHw {
        bool configured{false};
        SliceAssignment asg;
        int group{-1};
        std::vector<ClusterHw> clusters;

        int cycles_left{0};
        EventOp current_op{EventOp::Update};
        bool marker_pending{false};
        int marker_t{0};

        bool any_scanning() const;
        bool fifos_empty() const;
    };

    /// Event traffic leaving one slice group: staged per timestep until the
    /// group's fire markers arrive, then released in canonical order. An
    /// empty dst set routes to the output DMA.
    struct Boundary {
        std::vector<int> src_slices;
        std::vector<int> dst_slices;
        std::map<int, std::vector<Event>> staged;
        std::map<int, int> markers;
        std::deque<Event> ready;
    };

    const NetworkLayer &layer_of(const SliceHw &s) const;
    bool ready_for(const SliceHw &s, EventOp op) const;
    bool accepts(const SliceHw &s, const ClusterHw &c, const Event &e) const;
    void deliver(const std::vector<int> &slice_ids, const Event &e, bool from_input);
    void seal_boundary(Boundary &b);
    bool all_quiet() const;

    void phase_compute();
    void phase_collect();
    int phase_deliver();
    void phase_dma();
    void tally_cycle(int deliveries, bool delivery_blocked);

    SneConfig config_;
    MappingPlan plan_;
    int pass_index_{0};
    std::vector<NetworkLayer> layers_;

    std::vector<SliceHw> slices_;
    std::vector<std::vector<int>> groups_;
    std::vector<int> group_layer_;
    std::vector<Boundary> boundaries_;

    std::vector<Event> input_events_;
    std::size_t input_cursor_{0};
    int input_t_max_{0};
    std::deque<Event> dma_fifo_;
    int dma_in_wait_{0};

    std::vector<Event> output_events_;

    SimTrace trace_;
    int rr_port_{0};
    long long last_progress_cycle_{0};
    bool collector_moved_{false};
    bool dma_in_moved_{false};
    bool dma_in_blocked_{false};
    bool dma_out_moved_{false};
    bool delivery_blocked_{false};
    long long sops_this_cycle_{0};
    bool scan_advanced_{false};
};

/// Single-layer convenience wrapper matching the common case: one layer,
/// one pass, weights and neuron parameters supplied directly.
SimInstance configure(const SneConfig &config, const MappingPlan &plan, const LayerSpec &spec,
                      std::shared_ptr<const FilterBank> bank, const LifParams &params);

} // namespace sne

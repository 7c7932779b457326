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
#include "sne/arch/sim.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "sne/log.hpp"

namespace sne {

std::vector<Event> collector_merge(std::vector<std::deque<Event>> fifos) {
    std::vector<Event> merged;
    const std::size_t n = fifos.size();
    std::size_t last = n == 0 ? 0 : n - 1;
    for (;;) {
        int min_t = -1;
        for (const auto &f : fifos) {
            if (!f.empty() && (min_t < 0 || f.front().t < min_t)) {
                min_t = f.front().t;
            }
        }
        if (min_t < 0) {
            break;
        }
        for (std::size_t step = 1; step <= n; ++step) {
            const std::size_t port = (last + step) % n;
            if (!fifos[port].empty() && fifos[port].front().t == min_t) {
                merged.push_back(fifos[port].front());
                fifos[port].pop_front();
                last = port;
                break;
            }
        }
    }
    return merged;
}

bool SimInstance::SliceHw::any_scanning() const {
    for (const ClusterHw &c : clusters) {
        if (c.scanning) {
            return true;
        }
    }
    return false;
}

bool SimInstance::SliceHw::fifos_empty() const {
    for (const ClusterHw &c : clusters) {
        if (!c.fifo.empty()) {
            return false;
        }
    }
    return true;
}

SimInstance::SimInstance(const SneConfig &config, const MappingPlan &plan, int pass_index,
                         const NetworkSpec &net)
    : config_(config), plan_(plan), pass_index_(pass_index), layers_(net.layers) {
    config_.validate();
    net.validate();
    if (pass_index < 0 || pass_index >= static_cast<int>(plan.passes.size())) {
        throw PlanError("pass index " + std::to_string(pass_index) + " out of range (plan has " +
                        std::to_string(plan.passes.size()) + " passes)");
    }
    const MappingPass &pass = plan.passes[static_cast<std::size_t>(pass_index)];
    if (pass.slices.empty()) {
        throw PlanError("pass " + std::to_string(pass_index) + " assigns no slices");
    }

    slices_.resize(static_cast<std::size_t>(config_.n_slices));
    for (const SliceAssignment &asg : pass.slices) {
        if (asg.slice < 0 || asg.slice >= config_.n_slices) {
            throw PlanError("slice index " + std::to_string(asg.slice) + " out of range");
        }
        SliceHw &hw = slices_[static_cast<std::size_t>(asg.slice)];
        if (hw.configured) {
            throw PlanError("slice " + std::to_string(asg.slice) + " assigned twice in pass " +
                            std::to_string(pass_index));
        }
        if (asg.layer < 0 || asg.layer >= static_cast<int>(layers_.size())) {
            throw PlanError("layer index " + std::to_string(asg.layer) + " out of range");
        }
        const NetworkLayer &layer = layers_[static_cast<std::size_t>(asg.layer)];
        if (asg.weight_set < 0 || asg.weight_set >= layer.bank->set_count()) {
            throw PlanError("weight set " + std::to_string(asg.weight_set) +
                            " absent from layer " + std::to_string(asg.layer) + " bank");
        }
        if (static_cast<int>(asg.clusters.size()) > config_.clusters_per_slice) {
            throw PlanError("slice " + std::to_string(asg.slice) + " assigns " +
                            std::to_string(asg.clusters.size()) + " clusters, device has " +
                            std::to_string(config_.clusters_per_slice));
        }
        hw.configured = true;
        hw.asg = asg;
        std::set<int> seen;
        for (const ClusterAssignment &c : asg.clusters) {
            const std::string where = "layer " + std::to_string(asg.layer) + " channel " +
                                      std::to_string(c.c_out) + " tile at (" +
                                      std::to_string(c.x0) + "," + std::to_string(c.y0) + ")";
            if (c.cluster < 0 || c.cluster >= config_.clusters_per_slice) {
                throw PlanError("unmappable " + where + ": cluster index " +
                                std::to_string(c.cluster) + " out of range");
            }
            if (!seen.insert(c.cluster).second) {
                throw PlanError("cluster " + std::to_string(c.cluster) + " of slice " +
                                std::to_string(asg.slice) + " assigned twice");
            }
            if (c.neuron_count() <= 0 || c.neuron_count() > config_.neurons_per_cluster) {
                throw PlanError("unmappable " + where + ": " + std::to_string(c.neuron_count()) +
                                " neurons exceed cluster capacity " +
                                std::to_string(config_.neurons_per_cluster));
            }
            if (c.c_out < 0 || c.c_out >= layer.spec.c_out) {
                throw PlanError("unmappable " + where + ": channel out of layer range");
            }
            if (c.x0 < 0 || c.y0 < 0 || c.x0 + c.tile_w > layer.spec.w_out() ||
                c.y0 + c.tile_h > layer.spec.h_out()) {
                throw PlanError("unmappable " + where + ": tile exceeds the output map");
            }
            ClusterHw chw;
            chw.asg = c;
            chw.neurons.assign(static_cast<std::size_t>(c.neuron_count()), NeuronState{});
            hw.clusters.push_back(std::move(chw));
        }
    }

    // Slice groups follow the layer chain; layers present must be contiguous.
    std::set<int> layer_ids;
    for (const SliceAssignment &asg : pass.slices) {
        layer_ids.insert(asg.layer);
    }
    const int first_layer = *layer_ids.begin();
    const int last_layer = *layer_ids.rbegin();
    if (last_layer - first_layer + 1 != static_cast<int>(layer_ids.size())) {
        throw PlanError("pass " + std::to_string(pass_index) +
                        " holds a non-contiguous layer chain");
    }
    for (int layer = first_layer; layer <= last_layer; ++layer) {
        std::vector<int> group;
        for (std::size_t s = 0; s < slices_.size(); ++s) {
            if (slices_[s].configured && slices_[s].asg.layer == layer) {
                slices_[s].group = static_cast<int>(groups_.size());
                group.push_back(static_cast<int>(s));
            }
        }
        groups_.push_back(std::move(group));
        group_layer_.push_back(layer);
    }
    boundaries_.resize(groups_.size());
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        boundaries_[g].src_slices = groups_[g];
        if (g + 1 < groups_.size()) {
            boundaries_[g].dst_slices = groups_[g + 1];
        }
    }

    trace_.slices.assign(static_cast<std::size_t>(config_.n_slices), CompTally{});
    trace_.clusters.assign(static_cast<std::size_t>(config_.total_clusters()), CompTally{});
    trace_.reprogram_count = 1;
}

const NetworkLayer &SimInstance::layer_of(const SliceHw &s) const {
    return layers_[static_cast<std::size_t>(s.asg.layer)];
}

bool SimInstance::ready_for(const SliceHw &s, EventOp op) const {
    if (s.cycles_left > 0) {
        return false;
    }
    const bool scanning = s.any_scanning();
    if (op == EventOp::Fire) {
        return !scanning && !s.marker_pending;
    }
    return !scanning || config_.fire_overlap;
}

bool SimInstance::accepts(const SliceHw &s, const ClusterHw &c, const Event &e) const {
    const FieldWindow win = receptive_field(layer_of(s).spec, e.x, e.y);
    if (win.empty()) {
        return false;
    }
    const ClusterAssignment &a = c.asg;
    return win.j0 < a.x0 + a.tile_w && win.j1 >= a.x0 && win.i0 < a.y0 + a.tile_h &&
           win.i1 >= a.y0;
}

DispatchResult SimInstance::dispatch_event(const Event &e) const {
    DispatchResult r;
    r.slice_accept.assign(static_cast<std::size_t>(config_.n_slices), false);
    r.cluster_accept.assign(static_cast<std::size_t>(config_.total_clusters()), false);
    for (int sid : groups_.front()) {
        const SliceHw &s = slices_[static_cast<std::size_t>(sid)];
        const LayerSpec &spec = layer_of(s).spec;
        if (e.op == EventOp::Update &&
            (e.channel >= spec.c_in || e.x >= spec.w_in || e.y >= spec.h_in)) {
            throw SneError("event outside layer extent: " + to_string(e));
        }
        for (const ClusterHw &c : s.clusters) {
            const bool ok = e.op != EventOp::Update || accepts(s, c, e);
            if (ok) {
                r.cluster_accept[static_cast<std::size_t>(sid * config_.clusters_per_slice +
                                                          c.asg.cluster)] = true;
                r.slice_accept[static_cast<std::size_t>(sid)] = true;
            }
        }
    }
    return r;
}

int SimInstance::pipeline_route(int from_slice, int to_slice) const {
    if (from_slice == to_slice) {
        throw PlanError("self route on slice " + std::to_string(from_slice));
    }
    const auto check = [&](int sid) -> const SliceHw & {
        if (sid < 0 || sid >= config_.n_slices ||
            !slices_[static_cast<std::size_t>(sid)].configured) {
            throw PlanError("slice " + std::to_string(sid) + " is not configured");
        }
        return slices_[static_cast<std::size_t>(sid)];
    };
    const SliceHw &from = check(from_slice);
    const SliceHw &to = check(to_slice);
    if (to.group != from.group + 1) {
        throw PlanError("no route from slice " + std::to_string(from_slice) + " to slice " +
                        std::to_string(to_slice) + ": layers are not consecutive");
    }
    return from.group;
}

void SimInstance::deliver(const std::vector<int> &slice_ids, const Event &e, bool from_input) {
    if (from_input) {
        switch (e.op) {
        case EventOp::Reset:
            trace_.events_reset += 1;
            break;
        case EventOp::Update:
            trace_.events_update += 1;
            break;
        case EventOp::Fire:
            trace_.events_fire += 1;
            break;
        }
    }
    const int group = slices_[static_cast<std::size_t>(slice_ids.front())].group;
    Boundary &boundary = boundaries_[static_cast<std::size_t>(group)];
    switch (e.op) {
    case EventOp::Reset:
        for (int sid : slice_ids) {
            SliceHw &s = slices_[static_cast<std::size_t>(sid)];
            s.cycles_left = 1;
            s.current_op = EventOp::Reset;
            for (ClusterHw &c : s.clusters) {
                c.accepted_update = true;
                for (NeuronState &n : c.neurons) {
                    n.v_mem = 0;
                    n.tlu = e.t;
                }
            }
        }
        boundary.staged[e.t].push_back(e);
        break;
    case EventOp::Update:
        for (int sid : slice_ids) {
            SliceHw &s = slices_[static_cast<std::size_t>(sid)];
            const NetworkLayer &layer = layer_of(s);
            const LayerSpec &spec = layer.spec;
            if (e.channel >= spec.c_in || e.x >= spec.w_in || e.y >= spec.h_in) {
                throw SneError("event outside layer extent: " + to_string(e));
            }
            const FieldWindow win = receptive_field(spec, e.x, e.y);
            bool any = false;
            for (ClusterHw &c : s.clusters) {
                c.accepted_update = accepts(s, c, e);
                if (!c.accepted_update) {
                    continue;
                }
                any = true;
                const ClusterAssignment &a = c.asg;
                const int i_lo = std::max(win.i0, a.y0);
                const int i_hi = std::min(win.i1, a.y0 + a.tile_h - 1);
                const int j_lo = std::max(win.j0, a.x0);
                const int j_hi = std::min(win.j1, a.x0 + a.tile_w - 1);
                for (int i = i_lo; i <= i_hi; ++i) {
                    for (int j = j_lo; j <= j_hi; ++j) {
                        const int kh = e.y - i + spec.p_h;
                        const int kw = e.x - j + spec.p_w;
                        const int8_t w =
                            layer.bank->at(s.asg.weight_set, a.c_out, e.channel, kh, kw);
                        NeuronState &n =
                            c.neurons[static_cast<std::size_t>((i - a.y0) * a.tile_w + (j - a.x0))];
                        n = membrane_step(n, layer.params, e.t - n.tlu, w);
                    }
                }
            }
            if (any) {
                s.cycles_left = config_.cycles_per_event;
                s.current_op = EventOp::Update;
            }
        }
        break;
    case EventOp::Fire:
        for (int sid : slice_ids) {
            SliceHw &s = slices_[static_cast<std::size_t>(sid)];
            const NetworkLayer &layer = layer_of(s);
            s.marker_pending = true;
            s.marker_t = e.t;
            for (ClusterHw &c : s.clusters) {
                c.scanning = true;
                c.slots_done = 0;
                c.scan_cycles_done = 0;
                c.scan_emissions.clear();
                const ClusterAssignment &a = c.asg;
                for (int slot = 0; slot < a.neuron_count(); ++slot) {
                    NeuronState &n = c.neurons[static_cast<std::size_t>(slot)];
                    n = membrane_step(n, layer.params, e.t - n.tlu, 0);
                    const FireResult fr = fire_check(n, layer.params);
                    n = fr.state;
                    if (fr.spiked) {
                        const int x = a.x0 + slot % a.tile_w;
                        const int y = a.y0 + slot / a.tile_w;
                        c.scan_emissions.emplace_back(slot, Event::update(a.c_out, e.t, x, y));
                    }
                }
            }
        }
        break;
    }
}

void SimInstance::phase_compute() {
    for (SliceHw &s : slices_) {
        if (!s.configured) {
            continue;
        }
        if (s.cycles_left > 0) {
            s.cycles_left -= 1;
            for (ClusterHw &c : s.clusters) {
                if (c.accepted_update) {
                    c.busy_now = true;
                    if (s.current_op == EventOp::Update) {
                        trace_.sop_count += 1;
                        sops_this_cycle_ += 1;
                    }
                }
            }
            if (s.cycles_left == 0) {
                for (ClusterHw &c : s.clusters) {
                    c.accepted_update = false;
                }
            }
            scan_advanced_ = true;
        }
        for (ClusterHw &c : s.clusters) {
            if (!c.scanning) {
                continue;
            }
            if (c.slots_done >= config_.neurons_per_cluster &&
                c.scan_cycles_done >= config_.fire_scan_cycles) {
                c.scanning = false;
                continue;
            }
            if (c.slots_done < config_.neurons_per_cluster) {
                if (!c.scan_emissions.empty() && c.scan_emissions.front().first == c.slots_done) {
                    if (static_cast<int>(c.fifo.size()) >= config_.fifo_depth_cluster) {
                        c.stall_now = true;
                        continue;
                    }
                    c.fifo.push_back(c.scan_emissions.front().second);
                    c.scan_emissions.pop_front();
                }
                c.slots_done += 1;
            }
            c.scan_cycles_done += 1;
            c.busy_now = true;
            scan_advanced_ = true;
            if (c.slots_done >= config_.neurons_per_cluster &&
                c.scan_cycles_done >= config_.fire_scan_cycles) {
                c.scanning = false;
            }
        }
    }
}

void SimInstance::phase_collect() {
    const int total_ports = config_.total_clusters();
    int min_t = -1;
    for (const SliceHw &s : slices_) {
        for (const ClusterHw &c : s.clusters) {
            if (!c.fifo.empty() && (min_t < 0 || c.fifo.front().t < min_t)) {
                min_t = c.fifo.front().t;
            }
        }
    }
    if (min_t >= 0) {
        for (int step = 1; step <= total_ports; ++step) {
            const int port = (rr_port_ + step) % total_ports;
            const int sid = port / config_.clusters_per_slice;
            const int cid = port % config_.clusters_per_slice;
            SliceHw &s = slices_[static_cast<std::size_t>(sid)];
            ClusterHw *cluster = nullptr;
            for (ClusterHw &c : s.clusters) {
                if (c.asg.cluster == cid) {
                    cluster = &c;
                    break;
                }
            }
            if (cluster == nullptr || cluster->fifo.empty() ||
                cluster->fifo.front().t != min_t) {
                continue;
            }
            Boundary &b = boundaries_[static_cast<std::size_t>(s.group)];
            const Event e = cluster->fifo.front();
            cluster->fifo.pop_front();
            b.staged[e.t].push_back(e);
            rr_port_ = port;
            collector_moved_ = true;
            break;
        }
    }

    for (SliceHw &s : slices_) {
        if (s.configured && s.marker_pending && !s.any_scanning() && s.fifos_empty()) {
            Boundary &b = boundaries_[static_cast<std::size_t>(s.group)];
            b.markers[s.marker_t] += 1;
            s.marker_pending = false;
            scan_advanced_ = true;
        }
    }
    for (Boundary &b : boundaries_) {
        seal_boundary(b);
    }

    // A stream with no trailing fire marker leaves staged control events
    // behind; once nothing can move any more, release them as-is.
    if (input_cursor_ >= input_events_.size() && dma_fifo_.empty() && all_quiet()) {
        bool ready_empty = true;
        for (const Boundary &b : boundaries_) {
            if (!b.ready.empty()) {
                ready_empty = false;
                break;
            }
        }
        if (ready_empty) {
            for (Boundary &b : boundaries_) {
                for (auto &[t, events] : b.staged) {
                    std::stable_sort(events.begin(), events.end(), canonical_less);
                    for (const Event &e : events) {
                        b.ready.push_back(e);
                    }
                    scan_advanced_ = true;
                }
                b.staged.clear();
            }
        }
    }
}

void SimInstance::seal_boundary(Boundary &b) {
    while (!b.markers.empty()) {
        const auto first = b.markers.begin();
        if (first->second < static_cast<int>(b.src_slices.size())) {
            break;
        }
        const int t = first->first;
        for (auto it = b.staged.begin(); it != b.staged.end() && it->first <= t;) {
            std::stable_sort(it->second.begin(), it->second.end(), canonical_less);
            for (const Event &e : it->second) {
                b.ready.push_back(e);
            }
            it = b.staged.erase(it);
        }
        b.ready.push_back(Event::fire(t));
        b.markers.erase(first);
        scan_advanced_ = true;
    }
}

int SimInstance::phase_deliver() {
    int deliveries = 0;
    bool blocked = false;

    if (!dma_fifo_.empty()) {
        const Event &e = dma_fifo_.front();
        bool all_ready = true;
        for (int sid : groups_.front()) {
            if (!ready_for(slices_[static_cast<std::size_t>(sid)], e.op)) {
                all_ready = false;
                break;
            }
        }
        if (all_ready) {
            const Event taken = e;
            dma_fifo_.pop_front();
            deliver(groups_.front(), taken, true);
            deliveries += 1;
        } else {
            blocked = true;
        }
    }

    for (Boundary &b : boundaries_) {
        if (b.dst_slices.empty() || b.ready.empty()) {
            continue;
        }
        const Event &e = b.ready.front();
        bool all_ready = true;
        for (int sid : b.dst_slices) {
            if (!ready_for(slices_[static_cast<std::size_t>(sid)], e.op)) {
                all_ready = false;
                break;
            }
        }
        if (all_ready) {
            const Event taken = e;
            b.ready.pop_front();
            deliver(b.dst_slices, taken, false);
            deliveries += 1;
        } else {
            blocked = true;
        }
    }

    delivery_blocked_ = blocked;
    return deliveries;
}

void SimInstance::phase_dma() {
    if (input_cursor_ < input_events_.size()) {
        if (static_cast<int>(dma_fifo_.size()) >= config_.dma_fifo_depth) {
            dma_in_blocked_ = true;
        } else if (dma_in_wait_ > 0) {
            dma_in_wait_ -= 1;
            dma_in_moved_ = true;
        } else {
            dma_fifo_.push_back(input_events_[input_cursor_]);
            input_cursor_ += 1;
            trace_.dma_words_in += 1;
            dma_in_wait_ = config_.dma_latency_cycles;
            dma_in_moved_ = true;
        }
    }

    const bool shared_dma = config_.n_dmas < 2;
    if (shared_dma && dma_in_moved_) {
        return;
    }
    Boundary &last = boundaries_.back();
    if (last.dst_slices.empty() && !last.ready.empty()) {
        const Event e = last.ready.front();
        last.ready.pop_front();
        output_events_.push_back(e);
        trace_.dma_words_out += 1;
        if (e.op == EventOp::Update) {
            trace_.output_events += 1;
        }
        dma_out_moved_ = true;
    }
}

bool SimInstance::all_quiet() const {
    for (const SliceHw &s : slices_) {
        if (!s.configured) {
            continue;
        }
        if (s.cycles_left > 0 || s.marker_pending || s.any_scanning() || !s.fifos_empty()) {
            return false;
        }
    }
    return true;
}

void SimInstance::tally_cycle(int deliveries, bool delivery_blocked) {
    trace_.cycles += 1;
    int slices_busy = 0;
    int clusters_busy = 0;
    int clusters_stalled = 0;
    for (std::size_t sid = 0; sid < slices_.size(); ++sid) {
        SliceHw &s = slices_[sid];
        bool slice_active = false;
        std::vector<bool> cluster_seen(static_cast<std::size_t>(config_.clusters_per_slice),
                                       false);
        for (ClusterHw &c : s.clusters) {
            const std::size_t global =
                sid * static_cast<std::size_t>(config_.clusters_per_slice) +
                static_cast<std::size_t>(c.asg.cluster);
            cluster_seen[static_cast<std::size_t>(c.asg.cluster)] = true;
            if (c.busy_now) {
                trace_.clusters[global].busy += 1;
                clusters_busy += 1;
                slice_active = true;
            } else if (c.stall_now) {
                trace_.clusters[global].stall += 1;
                clusters_stalled += 1;
                slice_active = true;
            } else {
                trace_.clusters[global].idle += 1;
            }
            c.busy_now = false;
            c.stall_now = false;
        }
        for (int cid = 0; cid < config_.clusters_per_slice; ++cid) {
            if (!cluster_seen[static_cast<std::size_t>(cid)]) {
                trace_.clusters[sid * static_cast<std::size_t>(config_.clusters_per_slice) +
                                static_cast<std::size_t>(cid)]
                    .idle += 1;
            }
        }
        if (slice_active) {
            trace_.slices[sid].busy += 1;
            slices_busy += 1;
        } else {
            trace_.slices[sid].idle += 1;
        }
    }

    if (collector_moved_) {
        trace_.collector.busy += 1;
    } else {
        trace_.collector.idle += 1;
    }
    if (deliveries > 0) {
        trace_.xbar.busy += 1;
    } else if (delivery_blocked) {
        trace_.xbar.stall += 1;
    } else {
        trace_.xbar.idle += 1;
    }
    if (dma_in_moved_) {
        trace_.dma_in.busy += 1;
    } else if (dma_in_blocked_) {
        trace_.dma_in.stall += 1;
    } else {
        trace_.dma_in.idle += 1;
    }
    if (dma_out_moved_) {
        trace_.dma_out.busy += 1;
    } else {
        trace_.dma_out.idle += 1;
    }

    if (config_.record_cycle_trace) {
        trace_.cycle_log.push_back(CycleRecord{trace_.cycles, slices_busy, clusters_busy,
                                               clusters_stalled, deliveries, sops_this_cycle_});
    }

    const bool progress = collector_moved_ || dma_in_moved_ || dma_out_moved_ ||
                          deliveries > 0 || scan_advanced_ || sops_this_cycle_ > 0;
    if (progress) {
        last_progress_cycle_ = trace_.cycles;
    }
}

void SimInstance::begin_inference(const EventStream &input) {
    require_valid(input);
    input_events_ = input.events;
    input_cursor_ = 0;
    input_t_max_ = input.t_max;
    dma_fifo_.clear();
    dma_in_wait_ = 0;
    output_events_.clear();
    rr_port_ = 0;
    last_progress_cycle_ = 0;

    for (SliceHw &s : slices_) {
        s.cycles_left = 0;
        s.marker_pending = false;
        for (ClusterHw &c : s.clusters) {
            c.neurons.assign(c.neurons.size(), NeuronState{});
            c.fifo.clear();
            c.scanning = false;
            c.accepted_update = false;
            c.slots_done = 0;
            c.scan_cycles_done = 0;
            c.scan_emissions.clear();
            c.busy_now = false;
            c.stall_now = false;
        }
    }
    for (Boundary &b : boundaries_) {
        b.staged.clear();
        b.markers.clear();
        b.ready.clear();
    }

    trace_ = SimTrace{};
    trace_.slices.assign(static_cast<std::size_t>(config_.n_slices), CompTally{});
    trace_.clusters.assign(static_cast<std::size_t>(config_.total_clusters()), CompTally{});
    trace_.reprogram_count = 1;
}

bool SimInstance::done() const {
    if (input_cursor_ < input_events_.size() || !dma_fifo_.empty()) {
        return false;
    }
    if (!all_quiet()) {
        return false;
    }
    for (const Boundary &b : boundaries_) {
        if (!b.staged.empty() || !b.ready.empty()) {
            return false;
        }
    }
    return true;
}

StepDelta SimInstance::step_cycle() {
    collector_moved_ = false;
    dma_in_moved_ = false;
    dma_in_blocked_ = false;
    dma_out_moved_ = false;
    sops_this_cycle_ = 0;
    scan_advanced_ = false;

    const long long sops_before = trace_.sop_count;
    phase_compute();
    phase_collect();
    const int deliveries = phase_deliver();
    phase_dma();
    tally_cycle(deliveries, delivery_blocked_);

    if (trace_.cycles - last_progress_cycle_ > config_.deadlock_cycle_budget) {
        throw DeadlockError("no progress for " + std::to_string(config_.deadlock_cycle_budget) +
                            " cycles at cycle " + std::to_string(trace_.cycles) + " (" +
                            std::to_string(input_events_.size() - input_cursor_) +
                            " input events undelivered)");
    }

    StepDelta delta;
    delta.progress = trace_.cycles == last_progress_cycle_;
    delta.deliveries = deliveries;
    delta.sops = trace_.sop_count - sops_before;
    return delta;
}

std::pair<EventStream, SimTrace> SimInstance::run_inference(const EventStream &input) {
    begin_inference(input);
    while (!done()) {
        step_cycle();
    }
    log::debug("run complete: " + std::to_string(trace_.cycles) + " cycles, " +
               std::to_string(trace_.sop_count) + " sops");
    return {EventStream::from_events(output_events_, input_t_max_), trace_};
}

NeuronState SimInstance::peek_neuron(int slice, int cluster, int slot) const {
    if (slice < 0 || slice >= static_cast<int>(slices_.size())) {
        throw PlanError("slice " + std::to_string(slice) + " is not on this device");
    }
    const SliceHw &s = slices_[static_cast<std::size_t>(slice)];
    for (const ClusterHw &c : s.clusters) {
        if (c.asg.cluster == cluster) {
            if (slot < 0 || slot >= static_cast<int>(c.neurons.size())) {
                throw PlanError("slot " + std::to_string(slot) + " out of range");
            }
            return c.neurons[static_cast<std::size_t>(slot)];
        }
    }
    throw PlanError("cluster " + std::to_string(cluster) + " of slice " + std::to_string(slice) +
                    " is not configured");
}

void SimInstance::poke_neuron(int slice, int cluster, int slot, NeuronState state) {
    if (slice < 0 || slice >= static_cast<int>(slices_.size())) {
        throw PlanError("slice " + std::to_string(slice) + " is not on this device");
    }
    SliceHw &s = slices_[static_cast<std::size_t>(slice)];
    for (ClusterHw &c : s.clusters) {
        if (c.asg.cluster == cluster) {
            if (slot < 0 || slot >= static_cast<int>(c.neurons.size())) {
                throw PlanError("slot " + std::to_string(slot) + " out of range");
            }
            c.neurons[static_cast<std::size_t>(slot)] = state;
            return;
        }
    }
    throw PlanError("cluster " + std::to_string(cluster) + " of slice " + std::to_string(slice) +
                    " is not configured");
}

SimInstance::Location SimInstance::locate(int layer, int c_out, int i, int j) const {
    for (std::size_t sid = 0; sid < slices_.size(); ++sid) {
        const SliceHw &s = slices_[sid];
        if (!s.configured || s.asg.layer != layer) {
            continue;
        }
        for (const ClusterHw &c : s.clusters) {
            const ClusterAssignment &a = c.asg;
            if (a.c_out == c_out && i >= a.y0 && i < a.y0 + a.tile_h && j >= a.x0 &&
                j < a.x0 + a.tile_w) {
                return Location{static_cast<int>(sid), a.cluster,
                                (i - a.y0) * a.tile_w + (j - a.x0)};
            }
        }
    }
    throw PlanError("neuron (layer " + std::to_string(layer) + ", channel " +
                    std::to_string(c_out) + ", " + std::to_string(i) + "," + std::to_string(j) +
                    ") is not mapped in this pass");
}

SimInstance configure(const SneConfig &config, const MappingPlan &plan, const LayerSpec &spec,
                      std::shared_ptr<const FilterBank> bank, const LifParams &params) {
    if (plan.passes.size() != 1) {
        throw PlanError("single-layer configure expects a one-pass plan, got " +
                        std::to_string(plan.passes.size()) + " passes");
    }
    NetworkSpec net;
    net.layers.push_back(NetworkLayer{spec, params, std::move(bank), 0});
    return SimInstance(config, plan, 0, net);
}

} // namespace sne

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
#include "sne/driver.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sne/log.hpp"

namespace sne {

GoldenNetworkResult run_golden_network(const NetworkSpec &net, const EventStream &input) {
    net.validate();
    GoldenNetworkResult result;
    EventStream stream = input;
    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        const NetworkLayer &layer = net.layers[k];
        GoldenResult r =
            golden_layer_exec(layer.spec, *layer.bank, layer.params, stream, layer.weight_set);
        stream = r.output;
        result.layer_outputs.push_back(stream);
        result.layer_stats.push_back(r.stats);
    }
    result.output = std::move(stream);
    return result;
}

EventStream merge_pass_outputs(const std::vector<EventStream> &outputs, int t_max) {
    std::map<int, std::vector<Event>> updates;
    std::set<int> resets;
    std::set<int> fires;
    for (const EventStream &s : outputs) {
        for (const Event &e : s.events) {
            switch (e.op) {
            case EventOp::Reset:
                resets.insert(e.t);
                break;
            case EventOp::Update:
                updates[e.t].push_back(e);
                break;
            case EventOp::Fire:
                fires.insert(e.t);
                break;
            }
        }
    }
    std::vector<Event> merged;
    std::set<int> timesteps;
    for (const auto &[t, _] : updates) {
        timesteps.insert(t);
    }
    timesteps.insert(resets.begin(), resets.end());
    timesteps.insert(fires.begin(), fires.end());
    for (int t : timesteps) {
        if (resets.count(t) != 0) {
            merged.push_back(Event::make(EventOp::Reset, 0, t, 0, 0));
        }
        auto it = updates.find(t);
        if (it != updates.end()) {
            std::stable_sort(it->second.begin(), it->second.end(), canonical_less);
            merged.insert(merged.end(), it->second.begin(), it->second.end());
        }
        if (fires.count(t) != 0) {
            merged.push_back(Event::fire(t));
        }
    }
    return EventStream::from_events(std::move(merged), t_max);
}

namespace {

long long count_updates(const EventStream &s) {
    long long n = 0;
    for (const Event &e : s.events) {
        if (e.op == EventOp::Update) {
            n += 1;
        }
    }
    return n;
}

} // namespace

ArchRunResult run_arch_plan(const SneConfig &config, const MappingPlan &plan,
                            const NetworkSpec &net, const EventStream &input) {
    verify_plan(plan, net, config);
    ArchRunResult result;
    result.boundary_counts.assign(net.layers.size() + 1, 0);
    result.boundary_counts[0] = count_updates(input);

    if (plan.mode == MapMode::Pipelined) {
        SimInstance sim(config, plan, 0, net);
        auto [output, trace] = sim.run_inference(input);
        result.output = std::move(output);
        result.trace = std::move(trace);
        result.boundary_counts.back() = count_updates(result.output);
        return result;
    }

    // Tiled: passes are grouped per layer in plan order; each layer's
    // input is the previous layer's merged output, re-run once per pass.
    EventStream stream = input;
    bool first = true;
    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        result.boundary_counts[k] = count_updates(stream);
        std::vector<EventStream> pass_outputs;
        for (std::size_t p = 0; p < plan.passes.size(); ++p) {
            if (plan.passes[p].slices.front().layer != static_cast<int>(k)) {
                continue;
            }
            SimInstance sim(config, plan, static_cast<int>(p), net);
            auto [output, trace] = sim.run_inference(stream);
            pass_outputs.push_back(std::move(output));
            if (first) {
                result.trace = std::move(trace);
                first = false;
            } else {
                result.trace.accumulate(trace);
            }
        }
        if (pass_outputs.empty()) {
            throw PlanError("plan has no pass for layer " + std::to_string(k));
        }
        stream = merge_pass_outputs(pass_outputs, stream.t_max);
        log::debug("layer " + std::to_string(k) + " merged " +
                   std::to_string(pass_outputs.size()) + " passes, " +
                   std::to_string(stream.events.size()) + " events");
    }
    result.output = std::move(stream);
    result.boundary_counts.back() = count_updates(result.output);
    return result;
}

StreamDiff compare_streams(const EventStream &expect, const EventStream &got) {
    std::vector<Event> a = expect.events;
    std::vector<Event> b = got.events;
    std::sort(a.begin(), a.end(), canonical_less);
    std::sort(b.begin(), b.end(), canonical_less);

    StreamDiff diff;
    const auto equal = [](const Event &x, const Event &y) {
        return !canonical_less(x, y) && !canonical_less(y, x);
    };
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (j >= b.size() || (i < a.size() && canonical_less(a[i], b[j]))) {
            diff.missing += 1;
            if (diff.examples.size() < 8) {
                diff.examples.push_back(a[i]);
            }
            i += 1;
        } else if (i >= a.size() || canonical_less(b[j], a[i])) {
            diff.extra += 1;
            if (diff.examples.size() < 8) {
                diff.examples.push_back(b[j]);
            }
            j += 1;
        } else if (equal(a[i], b[j])) {
            i += 1;
            j += 1;
        }
    }
    return diff;
}

std::string StreamDiff::summary() const {
    std::string out = std::to_string(missing + extra) + " mismatching events";
    if (!equal()) {
        out += " (" + std::to_string(missing) + " missing, " + std::to_string(extra) +
               " unexpected)";
        for (const Event &e : examples) {
            out += "\n  " + to_string(e);
        }
    }
    return out;
}

} // namespace sne

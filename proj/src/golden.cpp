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
#include "sne/golden.hpp"

#include <numeric>
#include <string>

namespace sne {

long long GoldenStats::total_input_updates() const {
    return std::accumulate(input_updates.begin(), input_updates.end(), 0LL);
}

long long GoldenStats::total_output_updates() const {
    return std::accumulate(output_updates.begin(), output_updates.end(), 0LL);
}

GoldenResult golden_layer_exec(const LayerSpec &spec, const FilterBank &bank,
                               const LifParams &params, const EventStream &input, int set) {
    spec.validate();
    params.validate();
    if (bank.shape() != spec.filter_shape()) {
        throw SneError("filter bank shape does not match layer");
    }
    if (set < 0 || set >= bank.set_count()) {
        throw SneError("weight set " + std::to_string(set) + " out of range (bank has " +
                       std::to_string(bank.set_count()) + " sets)");
    }
    require_valid(input);

    const int h_out = spec.h_out();
    const int w_out = spec.w_out();
    std::vector<NeuronState> neurons(static_cast<std::size_t>(spec.total_neurons()));
    const auto index = [&](int co, int i, int j) {
        return static_cast<std::size_t>((co * h_out + i) * w_out + j);
    };

    GoldenResult result;
    result.stats.input_updates.assign(static_cast<std::size_t>(input.t_max), 0);
    result.stats.output_updates.assign(static_cast<std::size_t>(input.t_max), 0);
    std::vector<Event> out;

    std::size_t next = 0;
    for (int t = 0; t < input.t_max; ++t) {
        // Leak is applied on entry to each timestep after the first, so a
        // neuron read at timestep t has accumulated exactly t leak steps.
        // This matches a device whose time-of-last-update starts at 0.
        if (t > 0) {
            for (NeuronState &n : neurons) {
                n = membrane_step(n, params, 1, 0);
            }
        }
        while (next < input.events.size() && input.events[next].t == t) {
            const Event &e = input.events[next];
            ++next;
            switch (e.op) {
            case EventOp::Reset:
                for (NeuronState &n : neurons) {
                    n.v_mem = 0;
                }
                out.push_back(e);
                break;
            case EventOp::Update: {
                if (e.channel >= spec.c_in || e.x >= spec.w_in || e.y >= spec.h_in) {
                    throw SneError("event outside layer extent: " + to_string(e));
                }
                result.stats.input_updates[static_cast<std::size_t>(t)] += 1;
                const FieldWindow win = receptive_field(spec, e.x, e.y);
                for (int co = 0; co < spec.c_out; ++co) {
                    for (int i = win.i0; i <= win.i1; ++i) {
                        for (int j = win.j0; j <= win.j1; ++j) {
                            const int kh = e.y - i + spec.p_h;
                            const int kw = e.x - j + spec.p_w;
                            const int8_t w = bank.at(set, co, e.channel, kh, kw);
                            NeuronState &n = neurons[index(co, i, j)];
                            n = membrane_step(n, params, 0, w);
                            result.stats.weight_applications += 1;
                        }
                    }
                }
                break;
            }
            case EventOp::Fire:
                for (int co = 0; co < spec.c_out; ++co) {
                    for (int i = 0; i < h_out; ++i) {
                        for (int j = 0; j < w_out; ++j) {
                            NeuronState &n = neurons[index(co, i, j)];
                            const FireResult fr = fire_check(n, params);
                            n = fr.state;
                            if (fr.spiked) {
                                out.push_back(Event::update(co, t, j, i));
                                result.stats.output_updates[static_cast<std::size_t>(t)] += 1;
                                result.stats.spikes += 1;
                            }
                        }
                    }
                }
                out.push_back(e);
                break;
            }
        }
    }

    result.output = EventStream::from_events(std::move(out), input.t_max);
    return result;
}

} // namespace sne

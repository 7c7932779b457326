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
#include "sne/mapper.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "sne/errors.hpp"

namespace sne {

namespace {

struct Tile {
    int x0;
    int y0;
    int w;
    int h;
};

/// Row-major spatial tiles of one output channel. The tile side matches a
/// full cluster for the stock 64-neuron configuration and shrinks for
/// smaller clusters so a tile never overflows one.
std::vector<Tile> channel_tiles(const LayerSpec &spec, const SneConfig &config) {
    int side = 8;
    while (side > 1 && side * side > config.neurons_per_cluster) {
        side -= 1;
    }
    std::vector<Tile> tiles;
    const int h = spec.h_out();
    const int w = spec.w_out();
    for (int y0 = 0; y0 < h; y0 += side) {
        for (int x0 = 0; x0 < w; x0 += side) {
            tiles.push_back(Tile{x0, y0, std::min(side, w - x0), std::min(side, h - y0)});
        }
    }
    return tiles;
}

/// Sequentially fills clusters of a slice block with whole channels
/// [c_begin, c_end) of one layer, one tile per cluster, starting at
/// slice_begin. Returns one slice past the last one used.
int fill_slices(std::vector<SliceAssignment> &out, const NetworkLayer &layer, int layer_index,
                int c_begin, int c_end, int slice_begin, const SneConfig &config) {
    const std::vector<Tile> tiles = channel_tiles(layer.spec, config);
    int slice = slice_begin;
    int cluster = 0;
    SliceAssignment cur;
    cur.slice = slice;
    cur.layer = layer_index;
    cur.weight_set = layer.weight_set;
    cur.c_out_begin = c_begin;
    cur.c_out_end = c_begin;
    for (int c = c_begin; c < c_end; ++c) {
        for (const Tile &t : tiles) {
            if (cluster == config.clusters_per_slice) {
                out.push_back(cur);
                slice += 1;
                cluster = 0;
                cur = SliceAssignment{};
                cur.slice = slice;
                cur.layer = layer_index;
                cur.weight_set = layer.weight_set;
                cur.c_out_begin = c;
                cur.c_out_end = c;
            }
            if (slice >= config.n_slices) {
                throw PlanError("layer " + std::to_string(layer_index) +
                                " overflows the device at channel " + std::to_string(c));
            }
            cur.clusters.push_back(ClusterAssignment{cluster, c, t.x0, t.y0, t.w, t.h});
            cur.c_out_end = c + 1;
            cluster += 1;
        }
    }
    if (!cur.clusters.empty()) {
        out.push_back(cur);
        slice += 1;
    }
    return slice;
}

long long clusters_of_layer(const LayerSpec &spec, const SneConfig &config) {
    int side = 8;
    while (side > 1 && side * side > config.neurons_per_cluster) {
        side -= 1;
    }
    const long long per_channel =
        static_cast<long long>((spec.h_out() + side - 1) / side) *
        static_cast<long long>((spec.w_out() + side - 1) / side);
    return per_channel * spec.c_out;
}

long long clusters_of_channel(const LayerSpec &spec, const SneConfig &config) {
    return clusters_of_layer(spec, config) / spec.c_out;
}

} // namespace

const char *to_string(MapMode mode) {
    return mode == MapMode::Pipelined ? "pipelined" : "tiled";
}

void NetworkSpec::validate() const {
    if (layers.empty()) {
        throw PlanError("empty network");
    }
    for (std::size_t k = 0; k < layers.size(); ++k) {
        const NetworkLayer &layer = layers[k];
        const std::string where = "layer " + std::to_string(k);
        try {
            layer.spec.validate();
            layer.params.validate();
        } catch (const SneError &e) {
            throw PlanError(where + ": " + e.what());
        }
        if (!layer.bank) {
            throw PlanError(where + " has no weights");
        }
        if (!(layer.bank->shape() == layer.spec.filter_shape())) {
            throw PlanError(where + ": weight bank shape does not match the layer");
        }
        if (layer.weight_set < 0 || layer.weight_set >= layer.bank->set_count()) {
            throw PlanError(where + ": weight set " + std::to_string(layer.weight_set) +
                            " absent from bank");
        }
        if (k > 0) {
            const LayerSpec &prev = layers[k - 1].spec;
            if (prev.c_out != layer.spec.c_in || prev.h_out() != layer.spec.h_in ||
                prev.w_out() != layer.spec.w_in) {
                throw PlanError(where + " input extent does not match layer " +
                                std::to_string(k - 1) + " output");
            }
        }
    }
}

long long NetworkSpec::total_neurons() const {
    long long total = 0;
    for (const NetworkLayer &layer : layers) {
        total += layer.spec.total_neurons();
    }
    return total;
}

MappingPlan plan(const NetworkSpec &net, const SneConfig &config) {
    config.validate();
    net.validate();

    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        const long long per_channel = clusters_of_channel(net.layers[k].spec, config);
        if (per_channel > config.total_clusters()) {
            throw PlanError("unmappable: one channel of layer " + std::to_string(k) + " needs " +
                            std::to_string(per_channel) + " clusters, device has " +
                            std::to_string(config.total_clusters()));
        }
    }

    // Pipelined fits when every layer gets its own block of whole slices.
    long long slices_needed = 0;
    for (const NetworkLayer &layer : net.layers) {
        const long long clusters = clusters_of_layer(layer.spec, config);
        slices_needed += (clusters + config.clusters_per_slice - 1) / config.clusters_per_slice;
    }

    MappingPlan result;
    if (slices_needed <= config.n_slices) {
        result.mode = MapMode::Pipelined;
        MappingPass pass;
        int slice = 0;
        for (std::size_t k = 0; k < net.layers.size(); ++k) {
            const int begin = slice;
            slice = fill_slices(pass.slices, net.layers[k], static_cast<int>(k), 0,
                                net.layers[k].spec.c_out, slice, config);
            if (slice - begin > 1) {
                result.extrapolated = true;
            }
        }
        result.passes.push_back(std::move(pass));
    } else {
        result.mode = MapMode::Tiled;
        for (std::size_t k = 0; k < net.layers.size(); ++k) {
            const NetworkLayer &layer = net.layers[k];
            const long long per_channel = clusters_of_channel(layer.spec, config);
            int c = 0;
            while (c < layer.spec.c_out) {
                // Whole channels, in index order, until the device is full.
                // A channel too wide for the device was rejected above, so
                // every pass makes progress.
                int c_end = c;
                long long used = 0;
                while (c_end < layer.spec.c_out &&
                       used + per_channel <= config.total_clusters()) {
                    used += per_channel;
                    c_end += 1;
                }
                MappingPass pass;
                fill_slices(pass.slices, layer, static_cast<int>(k), c, c_end, 0, config);
                result.passes.push_back(std::move(pass));
                c = c_end;
            }
        }
    }
    if (!config.stock_slice_count()) {
        result.extrapolated = true;
    }
    verify_plan(result, net, config);
    return result;
}

void verify_plan(const MappingPlan &plan, const NetworkSpec &net, const SneConfig &config) {
    net.validate();
    if (plan.passes.empty()) {
        throw PlanError("plan has no passes");
    }
    if (plan.mode == MapMode::Pipelined && plan.passes.size() != 1) {
        throw PlanError("pipelined plan must hold exactly one pass");
    }

    // One coverage counter per output neuron of each layer.
    std::vector<std::vector<int>> coverage(net.layers.size());
    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        coverage[k].assign(static_cast<std::size_t>(net.layers[k].spec.total_neurons()), 0);
    }

    for (std::size_t p = 0; p < plan.passes.size(); ++p) {
        const MappingPass &pass = plan.passes[p];
        std::set<int> slices_seen;
        std::set<std::pair<int, int>> sets_seen;
        for (const SliceAssignment &asg : pass.slices) {
            const std::string where =
                "pass " + std::to_string(p) + " slice " + std::to_string(asg.slice);
            if (asg.slice < 0 || asg.slice >= config.n_slices) {
                throw PlanError(where + ": slice index out of range");
            }
            if (!slices_seen.insert(asg.slice).second) {
                throw PlanError(where + ": slice assigned twice");
            }
            if (asg.layer < 0 || asg.layer >= static_cast<int>(net.layers.size())) {
                throw PlanError(where + ": layer index out of range");
            }
            const NetworkLayer &layer = net.layers[static_cast<std::size_t>(asg.layer)];
            if (asg.weight_set < 0 || asg.weight_set >= layer.bank->set_count()) {
                throw PlanError(where + ": weight set " + std::to_string(asg.weight_set) +
                                " absent from layer bank");
            }
            sets_seen.insert({asg.layer, asg.weight_set});
            if (static_cast<int>(asg.clusters.size()) > config.clusters_per_slice) {
                throw PlanError(where + ": too many clusters");
            }
            std::set<int> clusters_seen;
            long long neurons = 0;
            for (const ClusterAssignment &c : asg.clusters) {
                if (c.cluster < 0 || c.cluster >= config.clusters_per_slice) {
                    throw PlanError(where + ": cluster index out of range");
                }
                if (!clusters_seen.insert(c.cluster).second) {
                    throw PlanError(where + ": cluster " + std::to_string(c.cluster) +
                                    " assigned twice");
                }
                if (c.neuron_count() <= 0 || c.neuron_count() > config.neurons_per_cluster) {
                    throw PlanError(where + ": tile of " + std::to_string(c.neuron_count()) +
                                    " neurons overflows a cluster");
                }
                const LayerSpec &spec = layer.spec;
                if (c.c_out < 0 || c.c_out >= spec.c_out || c.x0 < 0 || c.y0 < 0 ||
                    c.x0 + c.tile_w > spec.w_out() || c.y0 + c.tile_h > spec.h_out()) {
                    throw PlanError(where + ": tile exceeds the output map");
                }
                if (c.c_out < asg.c_out_begin || c.c_out >= asg.c_out_end) {
                    throw PlanError(where + ": tile channel outside the slice range");
                }
                neurons += c.neuron_count();
                for (int i = c.y0; i < c.y0 + c.tile_h; ++i) {
                    for (int j = c.x0; j < c.x0 + c.tile_w; ++j) {
                        const std::size_t cell = static_cast<std::size_t>(
                            (static_cast<long long>(c.c_out) * spec.h_out() + i) * spec.w_out() +
                            j);
                        coverage[static_cast<std::size_t>(asg.layer)][cell] += 1;
                    }
                }
            }
            if (neurons > static_cast<long long>(config.clusters_per_slice) *
                              config.neurons_per_cluster) {
                throw PlanError(where + ": slice neuron budget exceeded");
            }
        }
        if (static_cast<int>(sets_seen.size()) > FilterBank::kMaxSets) {
            throw PlanError("pass " + std::to_string(p) + " references more than " +
                            std::to_string(FilterBank::kMaxSets) + " weight sets");
        }
    }

    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        const LayerSpec &spec = net.layers[k].spec;
        for (std::size_t cell = 0; cell < coverage[k].size(); ++cell) {
            if (coverage[k][cell] != 1) {
                const long long per_map =
                    static_cast<long long>(spec.h_out()) * spec.w_out();
                const long long c = static_cast<long long>(cell) / per_map;
                const long long rem = static_cast<long long>(cell) % per_map;
                throw PlanError("layer " + std::to_string(k) + " neuron (channel " +
                                std::to_string(c) + ", " + std::to_string(rem / spec.w_out()) +
                                "," + std::to_string(rem % spec.w_out()) + ") covered " +
                                std::to_string(coverage[k][cell]) + " times");
            }
        }
    }
}

std::vector<PassImage> emit_pass_images(const MappingPlan &plan, const NetworkSpec &net) {
    net.validate();
    std::vector<PassImage> images;
    for (std::size_t p = 0; p < plan.passes.size(); ++p) {
        for (const SliceAssignment &asg : plan.passes[p].slices) {
            if (asg.layer < 0 || asg.layer >= static_cast<int>(net.layers.size())) {
                throw PlanError("pass " + std::to_string(p) + " references missing layer " +
                                std::to_string(asg.layer));
            }
            const NetworkLayer &layer = net.layers[static_cast<std::size_t>(asg.layer)];
            if (asg.weight_set < 0 || asg.weight_set >= layer.bank->set_count()) {
                throw PlanError("pass " + std::to_string(p) + " references weight set " +
                                std::to_string(asg.weight_set) + " absent from layer " +
                                std::to_string(asg.layer));
            }
            const FilterBank sub =
                slice_bank(*layer.bank, asg.weight_set, asg.c_out_begin, asg.c_out_end);
            images.push_back(
                PassImage{static_cast<int>(p), asg.slice, asg.layer, pack_weights(sub)});
        }
    }
    return images;
}

MemoryTraffic estimate_memory_traffic(const MappingPlan &plan, const NetworkSpec &net,
                                      const std::vector<long long> &boundary_counts) {
    if (boundary_counts.size() != net.layers.size() + 1) {
        throw PlanError("expected " + std::to_string(net.layers.size() + 1) +
                        " boundary counts, got " + std::to_string(boundary_counts.size()));
    }
    MemoryTraffic traffic;
    if (plan.mode == MapMode::Pipelined) {
        traffic.input_words = boundary_counts.front();
        traffic.output_words = boundary_counts.back();
    } else {
        // Each pass re-reads its layer's whole input stream; each layer's
        // output hits memory exactly once since its passes partition the
        // output channels.
        for (const MappingPass &pass : plan.passes) {
            traffic.input_words +=
                boundary_counts[static_cast<std::size_t>(pass.slices.front().layer)];
        }
        for (std::size_t k = 1; k < boundary_counts.size(); ++k) {
            traffic.output_words += boundary_counts[k];
        }
    }
    for (const PassImage &image : emit_pass_images(plan, net)) {
        traffic.weight_words += static_cast<long long>((image.image.size() + 3) / 4);
    }
    return traffic;
}

std::string plan_to_json(const MappingPlan &plan) {
    nlohmann::json root;
    root["schema_version"] = 1;
    root["mode"] = to_string(plan.mode);
    root["extrapolated"] = plan.extrapolated;
    nlohmann::json passes = nlohmann::json::array();
    for (const MappingPass &pass : plan.passes) {
        nlohmann::json slices = nlohmann::json::array();
        for (const SliceAssignment &asg : pass.slices) {
            nlohmann::json clusters = nlohmann::json::array();
            for (const ClusterAssignment &c : asg.clusters) {
                clusters.push_back({{"cluster", c.cluster},
                                    {"c_out", c.c_out},
                                    {"x0", c.x0},
                                    {"y0", c.y0},
                                    {"tile_w", c.tile_w},
                                    {"tile_h", c.tile_h}});
            }
            slices.push_back({{"slice", asg.slice},
                              {"layer", asg.layer},
                              {"weight_set", asg.weight_set},
                              {"c_out_begin", asg.c_out_begin},
                              {"c_out_end", asg.c_out_end},
                              {"clusters", std::move(clusters)}});
        }
        passes.push_back({{"slices", std::move(slices)}});
    }
    root["passes"] = std::move(passes);
    return root.dump(2);
}

MappingPlan plan_from_json(const std::string &text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw CodecError(std::string("plan json: ") + e.what());
    }
    try {
        MappingPlan plan;
        const std::string mode = root.at("mode").get<std::string>();
        if (mode == "pipelined") {
            plan.mode = MapMode::Pipelined;
        } else if (mode == "tiled") {
            plan.mode = MapMode::Tiled;
        } else {
            throw CodecError("plan json: unknown mode \"" + mode + "\"");
        }
        plan.extrapolated = root.value("extrapolated", false);
        for (const nlohmann::json &jpass : root.at("passes")) {
            MappingPass pass;
            for (const nlohmann::json &jslice : jpass.at("slices")) {
                SliceAssignment asg;
                asg.slice = jslice.at("slice").get<int>();
                asg.layer = jslice.at("layer").get<int>();
                asg.weight_set = jslice.at("weight_set").get<int>();
                asg.c_out_begin = jslice.at("c_out_begin").get<int>();
                asg.c_out_end = jslice.at("c_out_end").get<int>();
                for (const nlohmann::json &jc : jslice.at("clusters")) {
                    asg.clusters.push_back(ClusterAssignment{
                        jc.at("cluster").get<int>(), jc.at("c_out").get<int>(),
                        jc.at("x0").get<int>(), jc.at("y0").get<int>(),
                        jc.at("tile_w").get<int>(), jc.at("tile_h").get<int>()});
                }
                pass.slices.push_back(std::move(asg));
            }
            plan.passes.push_back(std::move(pass));
        }
        return plan;
    } catch (const nlohmann::json::exception &e) {
        throw CodecError(std::string("plan json: ") + e.what());
    }
}

} // namespace sne

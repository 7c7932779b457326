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
#include "sne/net_desc.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "json.hpp"

#include "sne/errors.hpp"
#include "sne/event_io.hpp"

namespace sne {

NetworkSpec parse_network(const std::string &text, const std::string &base_dir) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw CodecError(std::string("network json: ") + e.what());
    }
    try {
        const int schema = root.value("schema_version", 1);
        if (schema != 1) {
            throw CodecError("network json: unsupported schema_version " +
                             std::to_string(schema));
        }
        const int t_steps = root.at("t_steps").get<int>();
        NetworkSpec net;
        for (const nlohmann::json &jl : root.at("layers")) {
            NetworkLayer layer;
            layer.spec.c_in = jl.at("c_in").get<int>();
            layer.spec.c_out = jl.at("c_out").get<int>();
            layer.spec.h_in = jl.at("h_in").get<int>();
            layer.spec.w_in = jl.at("w_in").get<int>();
            layer.spec.k_h = jl.value("k_h", 1);
            layer.spec.k_w = jl.value("k_w", 1);
            layer.spec.p_h = jl.value("p_h", 0);
            layer.spec.p_w = jl.value("p_w", 0);
            layer.spec.t_steps = t_steps;
            layer.params.v_th = jl.value("v_th", 1);
            layer.params.leak = jl.value("leak", 0);
            layer.params.zero_floor_leak = jl.value("zero_floor_leak", false);
            layer.params.reset_policy = reset_policy_from_string(jl.value("reset", "to_zero"));
            layer.weight_set = jl.value("weight_set", 0);
            if (jl.contains("weights")) {
                const std::filesystem::path p =
                    std::filesystem::path(base_dir) / jl.at("weights").get<std::string>();
                layer.bank = std::make_shared<FilterBank>(read_weight_file(p.string()));
            } else if (jl.contains("weights_seed")) {
                const int sets = jl.value("weight_sets", 1);
                layer.bank = std::make_shared<FilterBank>(make_random_bank(
                    layer.spec.filter_shape(), sets, jl.at("weights_seed").get<uint64_t>()));
            } else {
                throw CodecError("network json: layer needs \"weights\" or \"weights_seed\"");
            }
            net.layers.push_back(std::move(layer));
        }
        net.validate();
        return net;
    } catch (const nlohmann::json::exception &e) {
        throw CodecError(std::string("network json: ") + e.what());
    }
}

NetworkSpec load_network(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open network file " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string base = std::filesystem::path(path).parent_path().string();
    try {
        return parse_network(buffer.str(), base.empty() ? "." : base);
    } catch (const CodecError &e) {
        throw CodecError(path + ": " + e.what());
    }
}

} // namespace sne

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
#include "sne/filter_bank.hpp"

#include <random>
#include <utility>

namespace sne {

namespace {

constexpr char kMagic[4] = {'S', 'N', 'E', 'W'};
constexpr uint8_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 16;

std::size_t payload_bytes_per_set(const FilterShape &shape) {
    return (static_cast<std::size_t>(shape.weights_per_set()) + 1) / 2;
}

} // namespace

void FilterShape::validate() const {
    for (const auto &[name, value] : {std::pair{"c_out", c_out}, {"c_in", c_in},
                                      {"k_h", k_h}, {"k_w", k_w}}) {
        if (value < 1 || value > 255) {
            throw CodecError(std::string("filter shape field '") + name +
                             "' out of range: " + std::to_string(value) + " (valid 1..255)");
        }
    }
}

FilterBank::FilterBank(FilterShape shape) : shape_(shape) {
    shape_.validate();
}

int FilterBank::add_set(std::vector<int8_t> weights) {
    if (set_count() >= kMaxSets) {
        throw CodecError("filter bank capacity exceeded: at most " +
                         std::to_string(kMaxSets) + " weight sets");
    }
    if (weights.size() != static_cast<std::size_t>(shape_.weights_per_set())) {
        throw CodecError("weight set size " + std::to_string(weights.size()) +
                         " does not match shape (" + std::to_string(shape_.weights_per_set()) +
                         " weights)");
    }
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] < kWeightMin || weights[i] > kWeightMax) {
            throw CodecError("weight out of 4-bit range at flat index " + std::to_string(i) +
                             ": " + std::to_string(weights[i]));
        }
    }
    sets_.push_back(std::move(weights));
    return set_count() - 1;
}

std::size_t FilterBank::flat_index(int c_out, int c_in, int k_h, int k_w) const {
    return ((static_cast<std::size_t>(c_out) * shape_.c_in + c_in) * shape_.k_h + k_h) *
               shape_.k_w + k_w;
}

int8_t FilterBank::at(int set, int c_out, int c_in, int k_h, int k_w) const {
    return sets_.at(set)[flat_index(c_out, c_in, k_h, k_w)];
}

const std::vector<int8_t> &FilterBank::set(int id) const {
    if (id < 0 || id >= set_count()) {
        throw CodecError("weight set id " + std::to_string(id) + " out of range (bank has " +
                         std::to_string(set_count()) + " sets)");
    }
    return sets_[id];
}

std::vector<uint8_t> pack_weight_payload(const FilterBank &bank) {
    const std::size_t per_set = payload_bytes_per_set(bank.shape());
    std::vector<uint8_t> out;
    out.reserve(per_set * bank.set_count());
    for (int s = 0; s < bank.set_count(); ++s) {
        const auto &weights = bank.set(s);
        for (std::size_t i = 0; i < weights.size(); i += 2) {
            const uint8_t low = static_cast<uint8_t>(weights[i]) & 0x0f;
            const uint8_t high =
                (i + 1 < weights.size()) ? (static_cast<uint8_t>(weights[i + 1]) & 0x0f) : 0;
            out.push_back(static_cast<uint8_t>(low | (high << 4)));
        }
    }
    return out;
}

std::vector<uint8_t> pack_weights(const FilterBank &bank) {
    std::vector<uint8_t> image(kHeaderBytes, 0);
    image[0] = kMagic[0];
    image[1] = kMagic[1];
    image[2] = kMagic[2];
    image[3] = kMagic[3];
    image[4] = kVersion;
    const auto sets = static_cast<uint16_t>(bank.set_count());
    image[5] = static_cast<uint8_t>(sets & 0xff);
    image[6] = static_cast<uint8_t>(sets >> 8);
    image[7] = static_cast<uint8_t>(bank.shape().c_out);
    image[8] = static_cast<uint8_t>(bank.shape().c_in);
    image[9] = static_cast<uint8_t>(bank.shape().k_h);
    image[10] = static_cast<uint8_t>(bank.shape().k_w);
    // bytes 11..15 are pad
    const auto payload = pack_weight_payload(bank);
    image.insert(image.end(), payload.begin(), payload.end());
    return image;
}

FilterBank unpack_weights(const std::vector<uint8_t> &image) {
    if (image.size() < kHeaderBytes) {
        throw CodecError("weight image truncated: " + std::to_string(image.size()) +
                         " bytes, header needs " + std::to_string(kHeaderBytes));
    }
    if (image[0] != kMagic[0] || image[1] != kMagic[1] || image[2] != kMagic[2] ||
        image[3] != kMagic[3]) {
        throw CodecError("weight image has bad magic (expected \"SNEW\")");
    }
    if (image[4] != kVersion) {
        throw CodecError("unsupported weight image version " + std::to_string(image[4]));
    }
    const int sets = image[5] | (image[6] << 8);
    FilterShape shape{image[7], image[8], image[9], image[10]};
    shape.validate();
    if (sets > FilterBank::kMaxSets) {
        throw CodecError("weight image declares " + std::to_string(sets) + " sets (max " +
                         std::to_string(FilterBank::kMaxSets) + ")");
    }
    const std::size_t per_set = payload_bytes_per_set(shape);
    const std::size_t expected = kHeaderBytes + per_set * static_cast<std::size_t>(sets);
    if (image.size() != expected) {
        throw CodecError("weight image size mismatch: got " + std::to_string(image.size()) +
                         " bytes, expected " + std::to_string(expected));
    }
    FilterBank bank(shape);
    const int per_set_weights = shape.weights_per_set();
    for (int s = 0; s < sets; ++s) {
        std::vector<int8_t> weights(per_set_weights);
        const std::size_t base = kHeaderBytes + per_set * static_cast<std::size_t>(s);
        for (int i = 0; i < per_set_weights; ++i) {
            const uint8_t byte = image[base + static_cast<std::size_t>(i) / 2];
            const uint8_t nibble = (i % 2 == 0) ? (byte & 0x0f) : (byte >> 4);
            weights[i] = static_cast<int8_t>(nibble >= 8 ? static_cast<int>(nibble) - 16
                                                         : static_cast<int>(nibble));
        }
        bank.add_set(std::move(weights));
    }
    return bank;
}

FilterBank slice_bank(const FilterBank &bank, int set, int c_out_begin, int c_out_end) {
    const FilterShape &src = bank.shape();
    if (set < 0 || set >= bank.set_count()) {
        throw CodecError("weight set " + std::to_string(set) + " out of range (bank has " +
                         std::to_string(bank.set_count()) + ")");
    }
    if (c_out_begin < 0 || c_out_end > src.c_out || c_out_begin >= c_out_end) {
        throw CodecError("channel slice [" + std::to_string(c_out_begin) + "," +
                         std::to_string(c_out_end) + ") out of range for c_out=" +
                         std::to_string(src.c_out));
    }
    FilterShape shape{c_out_end - c_out_begin, src.c_in, src.k_h, src.k_w};
    FilterBank out(shape);
    std::vector<int8_t> weights;
    weights.reserve(static_cast<std::size_t>(shape.weights_per_set()));
    for (int co = c_out_begin; co < c_out_end; ++co) {
        for (int ci = 0; ci < src.c_in; ++ci) {
            for (int kh = 0; kh < src.k_h; ++kh) {
                for (int kw = 0; kw < src.k_w; ++kw) {
                    weights.push_back(bank.at(set, co, ci, kh, kw));
                }
            }
        }
    }
    out.add_set(std::move(weights));
    return out;
}

FilterBank make_random_bank(FilterShape shape, int sets, uint64_t seed) {
    std::mt19937_64 rng(seed);
    FilterBank bank(shape);
    for (int s = 0; s < sets; ++s) {
        std::vector<int8_t> weights(shape.weights_per_set());
        for (auto &w : weights) {
            w = static_cast<int8_t>(static_cast<int>(rng() % 16) - 8);
        }
        bank.add_set(std::move(weights));
    }
    return bank;
}

} // namespace sne

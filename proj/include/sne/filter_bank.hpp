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

#include <cstdint>
#include <vector>

#include "sne/errors.hpp"

namespace sne {

/// Shape of one convolution weight set: W[c_out][c_in][k_h][k_w].
struct FilterShape {
    int c_out{1};
    int c_in{1};
    int k_h{1};
    int k_w{1};

    int weights_per_set() const { return c_out * c_in * k_h * k_w; }
    void validate() const;
    bool operator==(const FilterShape &) const = default;
};

/// Up to 256 same-shaped sets of signed 4-bit convolution weights.
class FilterBank {
public:
    static constexpr int kMaxSets = 256;
    static constexpr int kWeightMin = -8;
    static constexpr int kWeightMax = 7;

    explicit FilterBank(FilterShape shape);

    /// Appends a set (flat, c_out-major / k_w-minor). Returns the set id.
    /// Throws on shape mismatch, out-of-range weight, or set overflow.
    int add_set(std::vector<int8_t> weights);

    int8_t at(int set, int c_out, int c_in, int k_h, int k_w) const;
    std::size_t flat_index(int c_out, int c_in, int k_h, int k_w) const;

    int set_count() const { return static_cast<int>(sets_.size()); }
    const FilterShape &shape() const { return shape_; }
    const std::vector<int8_t> &set(int id) const;

    bool operator==(const FilterBank &) const = default;

private:
    FilterShape shape_;
    std::vector<std::vector<int8_t>> sets_;
};

/// Packed nibbles for all sets, two weights per byte, low nibble first,
/// each set padded to a byte boundary. No header.
std::vector<uint8_t> pack_weight_payload(const FilterBank &bank);

/// Self-describing weight image: 16-byte header (magic "SNEW", version,
/// set count, shape) followed by the packed nibble payload.
std::vector<uint8_t> pack_weights(const FilterBank &bank);

/// Inverse of pack_weights. Throws CodecError on malformed images.
FilterBank unpack_weights(const std::vector<uint8_t> &image);

/// Single-set sub-bank covering output channels [c_out_begin, c_out_end)
/// of one set of the source bank.
FilterBank slice_bank(const FilterBank &bank, int set, int c_out_begin, int c_out_end);

/// Deterministic random bank for synthetic workloads and tests.
FilterBank make_random_bank(FilterShape shape, int sets, uint64_t seed);

} // namespace sne

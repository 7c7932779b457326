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
#include "sne/layer.hpp"

#include <algorithm>
#include <string>

namespace sne {

namespace {

void check_positive(int value, const char *name) {
    if (value <= 0) {
        throw SneError(std::string(name) + " must be positive, got " + std::to_string(value));
    }
}

void check_range(int value, int lo, int hi, const char *name) {
    if (value < lo || value > hi) {
        throw SneError(std::string(name) + " = " + std::to_string(value) + " outside [" +
                       std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
}

} // namespace

void LayerSpec::validate() const {
    check_positive(c_in, "c_in");
    check_positive(c_out, "c_out");
    check_positive(h_in, "h_in");
    check_positive(w_in, "w_in");
    check_positive(k_h, "k_h");
    check_positive(k_w, "k_w");
    check_positive(t_steps, "t_steps");
    if (p_h < 0 || p_w < 0) {
        throw SneError("padding must be non-negative");
    }
    if (h_out() < 1 || w_out() < 1) {
        throw SneError("empty output plane: " + std::to_string(h_out()) + "x" +
                       std::to_string(w_out()));
    }
    // Extents must stay encodable as events on both sides of the layer.
    check_range(c_in, 1, kMaxChannel + 1, "c_in");
    check_range(c_out, 1, kMaxChannel + 1, "c_out");
    check_range(h_in, 1, kMaxCoord + 1, "h_in");
    check_range(w_in, 1, kMaxCoord + 1, "w_in");
    check_range(h_out(), 1, kMaxCoord + 1, "h_out");
    check_range(w_out(), 1, kMaxCoord + 1, "w_out");
    check_range(t_steps, 1, kMaxTimestep + 1, "t_steps");
}

FieldWindow receptive_field(const LayerSpec &spec, int e_x, int e_y) {
    FieldWindow w;
    w.i0 = std::max(0, e_y + spec.p_h - spec.k_h + 1);
    w.i1 = std::min(spec.h_out() - 1, e_y + spec.p_h);
    w.j0 = std::max(0, e_x + spec.p_w - spec.k_w + 1);
    w.j1 = std::min(spec.w_out() - 1, e_x + spec.p_w);
    return w;
}

std::optional<int8_t> weight_lookup(const LayerSpec &spec, const FilterBank &bank, int set,
                                    int c_out, int i, int j, int k_i, int e_x, int e_y) {
    check_range(c_out, 0, spec.c_out - 1, "c_out");
    check_range(k_i, 0, spec.c_in - 1, "k_i");
    check_range(e_x, 0, spec.w_in - 1, "e_x");
    check_range(e_y, 0, spec.h_in - 1, "e_y");
    check_range(i, 0, spec.h_out() - 1, "i");
    check_range(j, 0, spec.w_out() - 1, "j");
    const int kh = e_y - i + spec.p_h;
    const int kw = e_x - j + spec.p_w;
    if (kh < 0 || kh >= spec.k_h || kw < 0 || kw >= spec.k_w) {
        return std::nullopt;
    }
    return bank.at(set, c_out, k_i, kh, kw);
}

} // namespace sne

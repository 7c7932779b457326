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

#include <filesystem>

#include "sne/event.hpp"
#include "sne/filter_bank.hpp"

namespace sne {

/// .sne-evt: little-endian 32-bit event words in stream order.
EventStream read_event_file(const std::filesystem::path &path);
void write_event_file(const EventStream &s, const std::filesystem::path &path);

/// .sne-evt.csv: header "op,channel,t,y,x", one event per row.
EventStream read_event_csv(const std::filesystem::path &path);
void write_event_csv(const EventStream &s, const std::filesystem::path &path);

/// .sne-wgt: the pack_weights image on disk.
FilterBank read_weight_file(const std::filesystem::path &path);
void write_weight_file(const FilterBank &bank, const std::filesystem::path &path);

} // namespace sne

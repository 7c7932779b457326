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

#include <string>

#include "sne/mapper.hpp"

namespace sne {

/// Loads a network description document:
///
///   {
///     "schema_version": 1,
///     "t_steps": 16,
///     "layers": [
///       { "c_in": 2, "c_out": 4, "h_in": 32, "w_in": 32,
///         "k_h": 3, "k_w": 3, "p_h": 1, "p_w": 1,
///         "v_th": 4, "leak": 1, "reset": "to_zero",
///         "zero_floor_leak": false,
///         "weights": "layer0.sne-wgt",       // or:
///         "weights_seed": 7,
///         "weight_set": 0 }
///     ]
///   }
///
/// Each layer carries either a packed weight file (resolved relative to
/// the document) or a seed for a reproducible random bank. Throws IoError
/// for unreadable files and CodecError for malformed documents.
NetworkSpec load_network(const std::string &path);

/// Parses a document from memory; weight paths resolve against base_dir.
NetworkSpec parse_network(const std::string &text, const std::string &base_dir);

} // namespace sne

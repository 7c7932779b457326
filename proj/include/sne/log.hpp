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

namespace sne::log {

enum class Level : int { Error = 0, Warn = 1, Info = 2, Debug = 3 };

// Verbosity comes from the SNE_SIM_LOG environment variable
// (error|warn|info|debug, default warn). Read once at first use.
Level level();
void set_level(Level lvl);

void write(Level lvl, const std::string &msg);

inline void error(const std::string &msg) { write(Level::Error, msg); }
inline void warn(const std::string &msg) { write(Level::Warn, msg); }
inline void info(const std::string &msg) { write(Level::Info, msg); }
inline void debug(const std::string &msg) { write(Level::Debug, msg); }

} // namespace sne::log

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
#include "sne/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace sne::log {

namespace {

Level parse_env() {
    const char *env = std::getenv("SNE_SIM_LOG");
    if (env == nullptr) {
        return Level::Warn;
    }
    if (std::strcmp(env, "error") == 0) return Level::Error;
    if (std::strcmp(env, "warn") == 0) return Level::Warn;
    if (std::strcmp(env, "info") == 0) return Level::Info;
    if (std::strcmp(env, "debug") == 0) return Level::Debug;
    return Level::Warn;
}

Level &current() {
    static Level lvl = parse_env();
    return lvl;
}

const char *tag(Level lvl) {
    switch (lvl) {
    case Level::Error: return "error";
    case Level::Warn: return "warn";
    case Level::Info: return "info";
    case Level::Debug: return "debug";
    }
    return "?";
}

} // namespace

Level level() { return current(); }

void set_level(Level lvl) { current() = lvl; }

void write(Level lvl, const std::string &msg) {
    if (static_cast<int>(lvl) > static_cast<int>(current())) {
        return;
    }
    std::fprintf(stderr, "[sne:%s] %s\n", tag(lvl), msg.c_str());
}

} // namespace sne::log

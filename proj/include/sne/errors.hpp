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

#include <stdexcept>
#include <string>

namespace sne {

/// Base error for everything the simulator can reject at runtime.
class SneError : public std::runtime_error {
public:
    explicit SneError(const std::string &msg) : std::runtime_error(msg) {}
};

/// Malformed packed words, event fields out of range, bad weight images.
class CodecError : public SneError {
public:
    explicit CodecError(const std::string &msg) : SneError(msg) {}
};

/// File-level problems: missing, truncated, unparseable.
class IoError : public SneError {
public:
    explicit IoError(const std::string &msg) : SneError(msg) {}
};

/// A plan that does not fit the configured device geometry.
class PlanError : public SneError {
public:
    explicit PlanError(const std::string &msg) : SneError(msg) {}
};

/// Simulator made no forward progress within the configured cycle budget.
class DeadlockError : public SneError {
public:
    explicit DeadlockError(const std::string &msg) : SneError(msg) {}
};

} // namespace sne

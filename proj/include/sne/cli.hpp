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
#include <vector>

#include "sne/arch/config.hpp"
#include "sne/event.hpp"
#include "sne/perf.hpp"

namespace sne::cli {

/// Exit codes, stable across releases: kOk on success, kMismatch when a
/// comparison found differing outputs, kError for any operational failure
/// (unreadable file, parse error, unmappable plan, deadlock).
inline constexpr int kOk = 0;
inline constexpr int kMismatch = 1;
inline constexpr int kError = 2;

struct RunOptions {
    std::string network_path;
    std::string events_path;
    std::string out_dir{"."};
    std::string mode{"compare"};
    SneConfig config{};
    EnergyParams energy{};
    bool cycle_log{false};
    long long seed{0};
};

/// Runs the dense reference, the architectural simulator, or both, and
/// writes output events plus report artifacts into out_dir.
int cmd_run(const RunOptions &opt);

struct GenOptions {
    int height{128};
    int width{128};
    int channels{2};
    int t_steps{100};
    double activity{0.05};
    uint64_t seed{1};
    std::string out_path;
};

/// Writes a synthetic stream: a reset, then per timestep an exact-count
/// uniform sample of distinct update positions in canonical order and a
/// fire marker. Deterministic per seed.
int cmd_gen(const GenOptions &opt);

/// The stream cmd_gen writes, for direct use in tests.
EventStream generate_stream(const GenOptions &opt);

struct ReportOptions {
    std::vector<std::string> inputs;
    std::string out_dir{"."};
    std::string prefix{"report"};
    EnergyParams energy{};
};

/// Aggregates run reports and raw traces into one table (CSV + JSON)
/// plus plot-ready CSVs. Duplicate inputs are dropped with a warning;
/// an unknown schema version is an error.
int cmd_report(const ReportOptions &opt);

struct PlanOptions {
    std::string network_path;
    SneConfig config{};
    std::string out_path;
};

/// Prints (or writes) the mapping plan for a network as JSON.
int cmd_plan(const PlanOptions &opt);

} // namespace sne::cli

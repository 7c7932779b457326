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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sne/errors.hpp"

namespace sne {

// Event operations carried by the stream. Field value 3 is reserved and
// rejected by the decoder.
enum class EventOp : uint8_t { Reset = 0, Update = 1, Fire = 2 };

const char *to_string(EventOp op);

// Packed-word field limits.
constexpr int kMaxChannel = 63; // 6-bit channel field
constexpr int kMaxTimestep = 255;
constexpr int kMaxCoord = 255;

/// One explicit spatio-temporal event: operation, input channel, timestep
/// and position. Reset and fire events carry no meaningful coordinates;
/// channel/x/y are normalized to zero for them.
struct Event {
    EventOp op{EventOp::Update};
    uint8_t channel{0};
    uint8_t t{0};
    uint8_t y{0};
    uint8_t x{0};

    /// Validating constructor. Throws CodecError naming the offending field.
    static Event make(EventOp op, int channel, int t, int x, int y);

    static Event reset() { return make(EventOp::Reset, 0, 0, 0, 0); }
    static Event update(int channel, int t, int x, int y) {
        return make(EventOp::Update, channel, t, x, y);
    }
    static Event fire(int t) { return make(EventOp::Fire, 0, t, 0, 0); }

    bool operator==(const Event &) const = default;
};

std::string to_string(const Event &e);

/// The packed 32-bit on-wire form of an event.
/// Layout: [31:30] op, [29:24] channel, [23:16] t, [15:8] y, [7:0] x.
struct EventWord {
    uint32_t word{0};
    bool operator==(const EventWord &) const = default;
};

EventWord encode_event(const Event &e);
Event decode_event(EventWord w);

/// Total order used when assembling time-synchronized streams:
/// timestep, then op rank (reset < update < fire), then channel, y, x.
bool canonical_less(const Event &a, const Event &b);

/// An ordered sequence of events over t_max timesteps.
struct EventStream {
    std::vector<Event> events;
    int t_max{0};

    /// Smallest window covering every event: max t + 1, or 0 when empty.
    static int infer_t_max(const std::vector<Event> &events);

    /// Build a stream; t_max < 0 means infer from the events.
    static EventStream from_events(std::vector<Event> events, int t_max = -1);

    bool operator==(const EventStream &) const = default;
};

enum class StreamRule : uint8_t {
    SortedByTimestep,
    UpdateBeforeFire,
    SingleFirePerTimestep,
    ResetFirst,
    TimestepBound,
};

const char *to_string(StreamRule rule);

struct StreamViolation {
    std::size_t index{0};
    StreamRule rule{StreamRule::SortedByTimestep};
    std::string detail;
};

/// Checks every stream invariant; returns one entry per broken rule
/// occurrence. An empty result means the stream is well formed.
std::vector<StreamViolation> validate_stream(const EventStream &s);

/// Throws SneError describing the first violation, if any.
void require_valid(const EventStream &s);

/// Wraps a bag of update events into a well-formed stream: optional leading
/// reset, updates grouped by timestep, one fire marker per timestep
/// (also for timesteps without updates). Updates are sorted canonically.
EventStream with_timestep_markers(std::vector<Event> updates, int t_max,
                                  bool leading_reset = true);

/// The update events of a stream, in stream order.
std::vector<Event> updates_only(const EventStream &s);

} // namespace sne

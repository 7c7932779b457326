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
#include "sne/event.hpp"

#include <algorithm>
#include <cstdio>
#include <tuple>

namespace sne {

namespace {

void check_field(const char *name, int value, int max) {
    if (value < 0 || value > max) {
        throw CodecError(std::string("event field '") + name + "' out of range: " +
                         std::to_string(value) + " (valid 0.." + std::to_string(max) + ")");
    }
}

int op_rank(EventOp op) {
    switch (op) {
    case EventOp::Reset: return 0;
    case EventOp::Update: return 1;
    case EventOp::Fire: return 2;
    }
    return 3;
}

} // namespace

const char *to_string(EventOp op) {
    switch (op) {
    case EventOp::Reset: return "RST";
    case EventOp::Update: return "UPDATE";
    case EventOp::Fire: return "FIRE";
    }
    return "INVALID";
}

Event Event::make(EventOp op, int channel, int t, int x, int y) {
    check_field("t", t, kMaxTimestep);
    Event e;
    e.op = op;
    e.t = static_cast<uint8_t>(t);
    if (op == EventOp::Update) {
        check_field("channel", channel, kMaxChannel);
        check_field("x", x, kMaxCoord);
        check_field("y", y, kMaxCoord);
        e.channel = static_cast<uint8_t>(channel);
        e.x = static_cast<uint8_t>(x);
        e.y = static_cast<uint8_t>(y);
    }
    // Reset/fire coordinates are meaningless and normalized to zero.
    return e;
}

std::string to_string(const Event &e) {
    return std::string(to_string(e.op)) + "(c=" + std::to_string(e.channel) +
           ",t=" + std::to_string(e.t) + ",x=" + std::to_string(e.x) +
           ",y=" + std::to_string(e.y) + ")";
}

EventWord encode_event(const Event &e) {
    check_field("channel", e.channel, kMaxChannel);
    const uint32_t word = (static_cast<uint32_t>(e.op) << 30) |
                          (static_cast<uint32_t>(e.channel) << 24) |
                          (static_cast<uint32_t>(e.t) << 16) |
                          (static_cast<uint32_t>(e.y) << 8) |
                          static_cast<uint32_t>(e.x);
    return EventWord{word};
}

Event decode_event(EventWord w) {
    const uint32_t op_field = w.word >> 30;
    if (op_field == 3) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "0x%08x", w.word);
        throw CodecError(std::string("invalid opcode 3 in event word ") + buf);
    }
    const auto op = static_cast<EventOp>(op_field);
    const int channel = static_cast<int>((w.word >> 24) & 0x3f);
    const int t = static_cast<int>((w.word >> 16) & 0xff);
    const int y = static_cast<int>((w.word >> 8) & 0xff);
    const int x = static_cast<int>(w.word & 0xff);
    return Event::make(op, channel, t, x, y);
}

bool canonical_less(const Event &a, const Event &b) {
    return std::make_tuple(a.t, op_rank(a.op), a.channel, a.y, a.x) <
           std::make_tuple(b.t, op_rank(b.op), b.channel, b.y, b.x);
}

int EventStream::infer_t_max(const std::vector<Event> &events) {
    int t_max = 0;
    for (const Event &e : events) {
        t_max = std::max(t_max, static_cast<int>(e.t) + 1);
    }
    return t_max;
}

EventStream EventStream::from_events(std::vector<Event> events, int t_max) {
    EventStream s;
    s.t_max = (t_max < 0) ? infer_t_max(events) : t_max;
    s.events = std::move(events);
    return s;
}

const char *to_string(StreamRule rule) {
    switch (rule) {
    case StreamRule::SortedByTimestep: return "sorted-by-timestep";
    case StreamRule::UpdateBeforeFire: return "update-before-fire";
    case StreamRule::SingleFirePerTimestep: return "single-fire-per-timestep";
    case StreamRule::ResetFirst: return "reset-first";
    case StreamRule::TimestepBound: return "timestep-bound";
    }
    return "?";
}

std::vector<StreamViolation> validate_stream(const EventStream &s) {
    std::vector<StreamViolation> out;
    int prev_t = -1;
    int fired_t = -1; // timestep whose fire marker has been seen
    for (std::size_t i = 0; i < s.events.size(); ++i) {
        const Event &e = s.events[i];
        const int t = e.t;
        if (t < prev_t) {
            out.push_back({i, StreamRule::SortedByTimestep,
                           "t=" + std::to_string(t) + " after t=" + std::to_string(prev_t)});
        }
        prev_t = std::max(prev_t, t);
        if (t >= s.t_max) {
            out.push_back({i, StreamRule::TimestepBound,
                           "t=" + std::to_string(t) + " with t_max=" + std::to_string(s.t_max)});
        }
        switch (e.op) {
        case EventOp::Reset:
            if (i != 0) {
                out.push_back({i, StreamRule::ResetFirst, "reset event not at stream start"});
            }
            break;
        case EventOp::Update:
            if (t == fired_t) {
                out.push_back({i, StreamRule::UpdateBeforeFire,
                               "update at t=" + std::to_string(t) + " after fire"});
            }
            break;
        case EventOp::Fire:
            if (t == fired_t) {
                out.push_back({i, StreamRule::SingleFirePerTimestep,
                               "second fire at t=" + std::to_string(t)});
            } else {
                fired_t = t;
            }
            break;
        }
    }
    return out;
}

void require_valid(const EventStream &s) {
    const auto violations = validate_stream(s);
    if (!violations.empty()) {
        const StreamViolation &v = violations.front();
        throw SneError("invalid event stream: " + std::string(to_string(v.rule)) +
                       " at index " + std::to_string(v.index) + " (" + v.detail + ")" +
                       (violations.size() > 1
                            ? " and " + std::to_string(violations.size() - 1) + " more"
                            : ""));
    }
}

EventStream with_timestep_markers(std::vector<Event> updates, int t_max, bool leading_reset) {
    std::sort(updates.begin(), updates.end(), canonical_less);
    EventStream s;
    s.t_max = t_max;
    s.events.reserve(updates.size() + static_cast<std::size_t>(t_max) + 1);
    if (leading_reset) {
        s.events.push_back(Event::reset());
    }
    std::size_t cursor = 0;
    for (int t = 0; t < t_max; ++t) {
        while (cursor < updates.size() && updates[cursor].t == t) {
            s.events.push_back(updates[cursor]);
            ++cursor;
        }
        s.events.push_back(Event::fire(t));
    }
    if (cursor != updates.size()) {
        throw SneError("update event at t=" + std::to_string(updates[cursor].t) +
                       " outside window t_max=" + std::to_string(t_max));
    }
    return s;
}

std::vector<Event> updates_only(const EventStream &s) {
    std::vector<Event> out;
    out.reserve(s.events.size());
    for (const Event &e : s.events) {
        if (e.op == EventOp::Update) {
            out.push_back(e);
        }
    }
    return out;
}

} // namespace sne

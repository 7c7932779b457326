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
#include "sne/event_io.hpp"

#include <fstream>
#include <sstream>

namespace sne {

namespace {

std::vector<uint8_t> read_all_bytes(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open file: " + path.string());
    }
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read failed: " + path.string());
    }
    return bytes;
}

void write_all_bytes(const std::filesystem::path &path, const std::vector<uint8_t> &bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open file for writing: " + path.string());
    }
    out.write(reinterpret_cast<const char *>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

EventOp parse_op(const std::string &name, std::size_t line) {
    if (name == "RST") return EventOp::Reset;
    if (name == "UPDATE") return EventOp::Update;
    if (name == "FIRE") return EventOp::Fire;
    throw IoError("unknown op '" + name + "' at csv line " + std::to_string(line));
}

} // namespace

EventStream read_event_file(const std::filesystem::path &path) {
    const auto bytes = read_all_bytes(path);
    if (bytes.size() % 4 != 0) {
        throw IoError("truncated event file " + path.string() + ": " +
                      std::to_string(bytes.size()) + " bytes is not a multiple of 4");
    }
    std::vector<Event> events;
    events.reserve(bytes.size() / 4);
    for (std::size_t i = 0; i < bytes.size(); i += 4) {
        const uint32_t word = static_cast<uint32_t>(bytes[i]) |
                              (static_cast<uint32_t>(bytes[i + 1]) << 8) |
                              (static_cast<uint32_t>(bytes[i + 2]) << 16) |
                              (static_cast<uint32_t>(bytes[i + 3]) << 24);
        try {
            events.push_back(decode_event(EventWord{word}));
        } catch (const CodecError &err) {
            throw IoError("bad event word " + std::to_string(i / 4) + " in " + path.string() +
                          ": " + err.what());
        }
    }
    return EventStream::from_events(std::move(events));
}

void write_event_file(const EventStream &s, const std::filesystem::path &path) {
    std::vector<uint8_t> bytes;
    bytes.reserve(s.events.size() * 4);
    for (const Event &e : s.events) {
        const uint32_t word = encode_event(e).word;
        bytes.push_back(static_cast<uint8_t>(word & 0xff));
        bytes.push_back(static_cast<uint8_t>((word >> 8) & 0xff));
        bytes.push_back(static_cast<uint8_t>((word >> 16) & 0xff));
        bytes.push_back(static_cast<uint8_t>((word >> 24) & 0xff));
    }
    write_all_bytes(path, bytes);
}

EventStream read_event_csv(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open file: " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError("empty csv file: " + path.string());
    }
    if (line != "op,channel,t,y,x") {
        throw IoError("bad csv header in " + path.string() + ": '" + line + "'");
    }
    std::vector<Event> events;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::istringstream row(line);
        std::string op_name, field;
        int values[4] = {0, 0, 0, 0};
        if (!std::getline(row, op_name, ',')) {
            throw IoError("short csv row at line " + std::to_string(line_no));
        }
        for (int &value : values) {
            if (!std::getline(row, field, ',')) {
                throw IoError("short csv row at line " + std::to_string(line_no));
            }
            try {
                value = std::stoi(field);
            } catch (const std::exception &) {
                throw IoError("bad integer '" + field + "' at csv line " +
                              std::to_string(line_no));
            }
        }
        events.push_back(Event::make(parse_op(op_name, line_no), values[0], values[1],
                                     values[3], values[2]));
    }
    return EventStream::from_events(std::move(events));
}

void write_event_csv(const EventStream &s, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot open file for writing: " + path.string());
    }
    out << "op,channel,t,y,x\n";
    for (const Event &e : s.events) {
        out << to_string(e.op) << ',' << static_cast<int>(e.channel) << ','
            << static_cast<int>(e.t) << ',' << static_cast<int>(e.y) << ','
            << static_cast<int>(e.x) << '\n';
    }
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

FilterBank read_weight_file(const std::filesystem::path &path) {
    try {
        return unpack_weights(read_all_bytes(path));
    } catch (const CodecError &err) {
        throw IoError("bad weight file " + path.string() + ": " + err.what());
    }
}

void write_weight_file(const FilterBank &bank, const std::filesystem::path &path) {
    write_all_bytes(path, pack_weights(bank));
}

} // namespace sne

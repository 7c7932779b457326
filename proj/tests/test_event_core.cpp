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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "sne/errors.hpp"
#include "sne/event.hpp"
#include "sne/event_io.hpp"
#include "sne/filter_bank.hpp"

using namespace sne;

namespace {

std::filesystem::path temp_file(const std::string &name) {
    return std::filesystem::temp_directory_path() / ("sne_test_" + name);
}

} // namespace

TEST_CASE("event word layout") {
    const Event e = Event::update(1, 5, 7, 3);
    CHECK(encode_event(e).word == 0x41050307u);
    CHECK(decode_event(EventWord{0x41050307u}) == e);

    // An all-zero word is a reset at t=0.
    const Event z = decode_event(EventWord{0});
    CHECK(z.op == EventOp::Reset);
    CHECK(z == Event::reset());

    const Event f = Event::fire(255);
    CHECK(encode_event(f).word == 0x80FF0000u);
}

TEST_CASE("decoder rejects the reserved op field") {
    CHECK_THROWS_AS(decode_event(EventWord{0xC0000000u}), CodecError);
}

TEST_CASE("field range validation") {
    CHECK_THROWS_AS(Event::make(EventOp::Update, 64, 0, 0, 0), CodecError);
    CHECK_THROWS_AS(Event::make(EventOp::Update, -1, 0, 0, 0), CodecError);
    CHECK_THROWS_AS(Event::make(EventOp::Update, 0, 256, 0, 0), CodecError);
    CHECK_THROWS_AS(Event::make(EventOp::Update, 0, 0, 256, 0), CodecError);
    CHECK_THROWS_AS(Event::make(EventOp::Update, 0, 0, 0, 256), CodecError);
    CHECK_NOTHROW(Event::make(EventOp::Update, 63, 255, 255, 255));

    // Control events normalize their unused fields.
    const Event r = Event::make(EventOp::Reset, 9, 0, 4, 4);
    CHECK(r.channel == 0);
    CHECK(r.x == 0);
    CHECK(r.y == 0);
}

TEST_CASE("encode/decode round-trips random events") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 5000; ++i) {
        const int op = static_cast<int>(rng() % 3);
        const Event e = Event::make(static_cast<EventOp>(op), static_cast<int>(rng() % 64),
                                    static_cast<int>(rng() % 256), static_cast<int>(rng() % 256),
                                    static_cast<int>(rng() % 256));
        CHECK(decode_event(encode_event(e)) == e);
    }
}

TEST_CASE("canonical order ranks op within a timestep") {
    const Event rst = Event::make(EventOp::Reset, 0, 2, 0, 0);
    const Event upd = Event::update(0, 2, 0, 0);
    const Event fire = Event::fire(2);
    CHECK(canonical_less(rst, upd));
    CHECK(canonical_less(upd, fire));
    CHECK(canonical_less(Event::fire(1), rst));
    CHECK(canonical_less(Event::update(0, 2, 1, 0), Event::update(1, 2, 0, 0)));
    // y dominates x.
    CHECK(canonical_less(Event::update(0, 2, 5, 0), Event::update(0, 2, 0, 1)));
}

TEST_CASE("validate_stream flags each rule") {
    SUBCASE("sorted") {
        EventStream s = EventStream::from_events(
            {Event::update(0, 3, 0, 0), Event::update(0, 1, 0, 0)});
        const auto v = validate_stream(s);
        REQUIRE(!v.empty());
        CHECK(v.front().rule == StreamRule::SortedByTimestep);
    }
    SUBCASE("update after fire") {
        EventStream s = EventStream::from_events(
            {Event::fire(0), Event::update(0, 0, 0, 0)});
        const auto v = validate_stream(s);
        REQUIRE(!v.empty());
        CHECK(v.front().rule == StreamRule::UpdateBeforeFire);
    }
    SUBCASE("double fire") {
        EventStream s = EventStream::from_events({Event::fire(0), Event::fire(0)});
        const auto v = validate_stream(s);
        REQUIRE(!v.empty());
        CHECK(v.front().rule == StreamRule::SingleFirePerTimestep);
    }
    SUBCASE("late reset") {
        EventStream s = EventStream::from_events(
            {Event::update(0, 0, 0, 0), Event::make(EventOp::Reset, 0, 0, 0, 0)});
        const auto v = validate_stream(s);
        REQUIRE(!v.empty());
        CHECK(v.front().rule == StreamRule::ResetFirst);
    }
    SUBCASE("timestep bound") {
        EventStream s = EventStream::from_events({Event::update(0, 5, 0, 0)});
        s.t_max = 4;
        const auto v = validate_stream(s);
        REQUIRE(!v.empty());
        CHECK(v.front().rule == StreamRule::TimestepBound);
    }
    SUBCASE("well-formed") {
        const EventStream s = with_timestep_markers(
            {Event::update(0, 0, 1, 1), Event::update(1, 1, 0, 0)}, 2);
        CHECK(validate_stream(s).empty());
    }
}

TEST_CASE("with_timestep_markers builds a valid stream") {
    const EventStream s = with_timestep_markers({Event::update(0, 1, 3, 2)}, 3);
    REQUIRE(s.events.size() == 5);
    CHECK(s.events[0].op == EventOp::Reset);
    CHECK(s.events[1].op == EventOp::Fire); // t=0 has no updates
    CHECK(s.events[2].op == EventOp::Update);
    CHECK(s.events[3].op == EventOp::Fire);
    CHECK(s.events[4].op == EventOp::Fire);
    CHECK(validate_stream(s).empty());
}

TEST_CASE("event file round-trip and diagnostics") {
    const auto path = temp_file("events.sne-evt");
    std::mt19937_64 rng(7);
    std::vector<Event> updates;
    for (int i = 0; i < 300; ++i) {
        updates.push_back(Event::update(static_cast<int>(rng() % 4),
                                        static_cast<int>(rng() % 16),
                                        static_cast<int>(rng() % 12),
                                        static_cast<int>(rng() % 12)));
    }
    const EventStream s = with_timestep_markers(std::move(updates), 16);
    write_event_file(s, path);
    const EventStream back = read_event_file(path);
    CHECK(back.events == s.events);

    SUBCASE("byte stability") {
        std::ifstream first(path, std::ios::binary);
        std::string bytes1((std::istreambuf_iterator<char>(first)),
                           std::istreambuf_iterator<char>());
        write_event_file(back, path);
        std::ifstream second(path, std::ios::binary);
        std::string bytes2((std::istreambuf_iterator<char>(second)),
                           std::istreambuf_iterator<char>());
        CHECK(bytes1 == bytes2);
    }

    SUBCASE("truncated file") {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out.write("\x00\x00\x00\x00\x7f", 5);
        out.close();
        CHECK_THROWS_AS(read_event_file(path), IoError);
    }

    SUBCASE("empty file is an empty stream") {
        std::ofstream(path, std::ios::binary | std::ios::trunc).close();
        CHECK(read_event_file(path).events.empty());
    }

    SUBCASE("missing file") {
        CHECK_THROWS_AS(read_event_file(temp_file("no_such_file.sne-evt")), IoError);
    }

    std::filesystem::remove(path);
}

TEST_CASE("event csv round-trip") {
    const auto path = temp_file("events.csv");
    const EventStream s = with_timestep_markers(
        {Event::update(1, 0, 7, 3), Event::update(0, 1, 2, 2)}, 2);
    write_event_csv(s, path);
    CHECK(read_event_csv(path).events == s.events);

    SUBCASE("bad op name names the line") {
        std::ofstream out(path, std::ios::trunc);
        out << "op,channel,t,y,x\nRST,0,0,0,0\nBOGUS,0,0,0,0\n";
        out.close();
        CHECK_THROWS_WITH_AS(read_event_csv(path), doctest::Contains("line 3"), IoError);
    }
    std::filesystem::remove(path);
}

TEST_CASE("weight nibble packing") {
    FilterBank bank(FilterShape{1, 1, 1, 2});
    bank.add_set({-8, 7});
    const auto payload = pack_weight_payload(bank);
    REQUIRE(payload.size() == 1);
    CHECK(payload[0] == 0x78); // low nibble first: -8 then 7

    // Nine zero weights pack to five bytes (last one padding).
    FilterBank nine(FilterShape{1, 1, 3, 3});
    nine.add_set(std::vector<int8_t>(9, 0));
    CHECK(pack_weight_payload(nine).size() == 5);
}

TEST_CASE("weight image round-trips") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        FilterShape shape{1 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 3),
                          1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3)};
        const FilterBank bank = make_random_bank(shape, 1 + static_cast<int>(rng() % 5), rng());
        const FilterBank back = unpack_weights(pack_weights(bank));
        CHECK(back == bank);
    }
}

TEST_CASE("weight image rejects corruption") {
    const FilterBank bank = make_random_bank(FilterShape{2, 1, 3, 3}, 2, 5);
    auto image = pack_weights(bank);
    SUBCASE("bad magic") {
        image[0] ^= 0xFF;
        CHECK_THROWS_AS(unpack_weights(image), CodecError);
    }
    SUBCASE("short image") {
        image.resize(image.size() - 1);
        CHECK_THROWS_AS(unpack_weights(image), CodecError);
    }
    SUBCASE("header-only") {
        image.resize(8);
        CHECK_THROWS_AS(unpack_weights(image), CodecError);
    }
}

TEST_CASE("filter bank limits") {
    FilterBank bank(FilterShape{1, 1, 1, 1});
    for (int i = 0; i < FilterBank::kMaxSets; ++i) {
        bank.add_set({static_cast<int8_t>(i % 16 - 8)});
    }
    CHECK(bank.set_count() == 256);
    CHECK_THROWS_AS(bank.add_set({0}), CodecError);

    FilterBank wrong(FilterShape{1, 1, 2, 2});
    CHECK_THROWS_AS(wrong.add_set({1, 2, 3}), CodecError);
    CHECK_THROWS_AS(wrong.add_set({8, 0, 0, 0}), CodecError);  // out of 4-bit range
    CHECK_THROWS_AS(wrong.add_set({0, -9, 0, 0}), CodecError); // out of 4-bit range
}

TEST_CASE("slice_bank keeps the selected channels") {
    const FilterBank bank = make_random_bank(FilterShape{6, 2, 3, 3}, 3, 99);
    const FilterBank sub = slice_bank(bank, 1, 2, 5);
    REQUIRE(sub.shape().c_out == 3);
    CHECK(sub.set_count() == 1);
    for (int co = 0; co < 3; ++co) {
        for (int ci = 0; ci < 2; ++ci) {
            for (int kh = 0; kh < 3; ++kh) {
                for (int kw = 0; kw < 3; ++kw) {
                    CHECK(sub.at(0, co, ci, kh, kw) == bank.at(1, co + 2, ci, kh, kw));
                }
            }
        }
    }
    CHECK_THROWS_AS(slice_bank(bank, 3, 0, 1), CodecError);
    CHECK_THROWS_AS(slice_bank(bank, 0, 4, 3), CodecError);
}

TEST_CASE("weight file io") {
    const auto path = temp_file("bank.sne-wgt");
    const FilterBank bank = make_random_bank(FilterShape{4, 2, 3, 3}, 7, 1234);
    write_weight_file(bank, path);
    CHECK(read_weight_file(path) == bank);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_weight_file(path), IoError);
}

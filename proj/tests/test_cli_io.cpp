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

#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "json.hpp"
#include "sne/cli.hpp"
#include "sne/errors.hpp"
#include "sne/event_io.hpp"
#include "sne/mapper.hpp"
#include "sne/net_desc.hpp"

using namespace sne;

namespace {

namespace fs = std::filesystem;

/// Fresh scratch directory per test case, removed on destruction.
struct TempDir {
    fs::path path;

    explicit TempDir(const std::string &tag) {
        path = fs::temp_directory_path() / ("sne_cli_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }

    std::string file(const std::string &name) const { return (path / name).string(); }
};

void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    out << text;
}

const char *kTinyNet = R"({
  "schema_version": 1,
  "t_steps": 4,
  "layers": [
    { "c_in": 1, "c_out": 1, "h_in": 8, "w_in": 8,
      "v_th": 3, "weights_seed": 11 }
  ]
})";

} // namespace

TEST_CASE("generated streams hit the requested activity exactly") {
    cli::GenOptions opt;
    opt.height = 16;
    opt.width = 16;
    opt.channels = 2;
    opt.t_steps = 8;
    opt.activity = 0.05;
    opt.seed = 3;

    const EventStream s = generate_stream(opt);
    long long updates = 0;
    long long fires = 0;
    for (const Event &e : s.events) {
        updates += e.op == EventOp::Update ? 1 : 0;
        fires += e.op == EventOp::Fire ? 1 : 0;
    }
    // 0.05 * 16 * 16 * 2 * 8 = 204.8, rounded to the nearest whole event.
    CHECK(updates == 205);
    CHECK(fires == 8);
    CHECK(s.events.front().op == EventOp::Reset);
    CHECK(validate_stream(s).empty());

    // Positions within one timestep are distinct.
    std::set<std::tuple<int, int, int, int>> seen;
    for (const Event &e : s.events) {
        if (e.op == EventOp::Update) {
            CHECK(seen.insert({e.t, e.channel, e.y, e.x}).second);
        }
    }
}

TEST_CASE("the default-size stream carries the documented update count") {
    // 0.05 x 128 x 128 x 2 x 100 = 163840 update events exactly.
    const EventStream s = generate_stream(cli::GenOptions{});
    long long updates = 0;
    for (const Event &e : s.events) {
        updates += e.op == EventOp::Update ? 1 : 0;
    }
    CHECK(updates == 163840);
}

TEST_CASE("generation is deterministic per seed") {
    cli::GenOptions opt;
    opt.height = 12;
    opt.width = 9;
    opt.t_steps = 5;
    opt.seed = 42;
    const EventStream a = generate_stream(opt);
    const EventStream b = generate_stream(opt);
    CHECK(a == b);

    opt.seed = 43;
    CHECK(generate_stream(opt) != a);
}

TEST_CASE("zero activity yields control events only") {
    cli::GenOptions opt;
    opt.activity = 0.0;
    opt.t_steps = 3;
    const EventStream s = generate_stream(opt);
    for (const Event &e : s.events) {
        CHECK(e.op != EventOp::Update);
    }
    CHECK(s.events.size() == 4); // reset + three fires
}

TEST_CASE("generator rejects nonsense requests") {
    cli::GenOptions opt;
    opt.activity = 1.5;
    CHECK_THROWS_AS((void)generate_stream(opt), SneError);
    opt.activity = -0.1;
    CHECK_THROWS_AS((void)generate_stream(opt), SneError);
    opt = cli::GenOptions{};
    opt.channels = 0;
    CHECK_THROWS_AS((void)generate_stream(opt), SneError);
    opt = cli::GenOptions{};
    opt.height = 300; // does not fit the packed coordinate field
    CHECK_THROWS_AS((void)generate_stream(opt), SneError);
}

TEST_CASE("network documents load from json") {
    TempDir dir("netdesc");
    write_text(dir.file("net.json"), kTinyNet);
    const NetworkSpec net = load_network(dir.file("net.json"));
    REQUIRE(net.layers.size() == 1);
    CHECK(net.layers[0].spec.h_in == 8);
    CHECK(net.layers[0].spec.t_steps == 4);
    CHECK(net.layers[0].params.v_th == 3);
    CHECK(net.layers[0].bank != nullptr);

    // Same seed, same bank.
    const NetworkSpec again = load_network(dir.file("net.json"));
    CHECK(again.layers[0].bank->set(0) == net.layers[0].bank->set(0));
}

TEST_CASE("network documents resolve weight files next to themselves") {
    TempDir dir("netwgt");
    LayerSpec spec;
    spec.h_in = 8;
    spec.w_in = 8;
    spec.t_steps = 4;
    const FilterBank bank = make_random_bank(spec.filter_shape(), 1, 5);
    write_weight_file(bank, dir.file("w.sne-wgt"));

    write_text(dir.file("net.json"), R"({
      "schema_version": 1,
      "t_steps": 4,
      "layers": [ { "c_in": 1, "c_out": 1, "h_in": 8, "w_in": 8,
                    "weights": "w.sne-wgt" } ]
    })");
    const NetworkSpec net = load_network(dir.file("net.json"));
    CHECK(net.layers[0].bank->set(0) == bank.set(0));
}

TEST_CASE("malformed network documents carry their path in the error") {
    TempDir dir("netbad");
    CHECK_THROWS_AS((void)load_network(dir.file("absent.json")), IoError);

    write_text(dir.file("garbage.json"), "{ not json");
    CHECK_THROWS_WITH_AS((void)load_network(dir.file("garbage.json")),
                         doctest::Contains("garbage.json"), CodecError);

    write_text(dir.file("vago.json"), R"({"schema_version": 1, "t_steps": 4,
      "layers": [ { "c_in": 1, "c_out": 1, "h_in": 8, "w_in": 8 } ]})");
    CHECK_THROWS_WITH_AS((void)load_network(dir.file("vago.json")),
                         doctest::Contains("weights"), CodecError);

    write_text(dir.file("old.json"), R"({"schema_version": 2, "t_steps": 4, "layers": []})");
    CHECK_THROWS_AS((void)load_network(dir.file("old.json")), CodecError);
}

TEST_CASE("cmd_run compares the two executions and writes artifacts") {
    TempDir dir("run");
    write_text(dir.file("net.json"), kTinyNet);

    cli::GenOptions gen;
    gen.height = 8;
    gen.width = 8;
    gen.channels = 1;
    gen.t_steps = 4;
    gen.activity = 0.2;
    gen.seed = 9;
    gen.out_path = dir.file("in.sne-evt");
    REQUIRE(cli::cmd_gen(gen) == cli::kOk);

    cli::RunOptions run;
    run.network_path = dir.file("net.json");
    run.events_path = dir.file("in.sne-evt");
    run.out_dir = dir.file("out");
    run.mode = "compare";
    CHECK(cli::cmd_run(run) == cli::kOk);

    for (const char *name : {"plan.json", "golden_events.sne-evt", "arch_events.sne-evt",
                             "trace.json", "report.json", "report.csv", "diff.txt"}) {
        INFO(name);
        CHECK(fs::exists(fs::path(run.out_dir) / name));
    }

    // The two event artifacts decode to the same stream.
    const EventStream golden = read_event_file((fs::path(run.out_dir) / "golden_events.sne-evt").string());
    const EventStream arch = read_event_file((fs::path(run.out_dir) / "arch_events.sne-evt").string());
    CHECK(golden.events.size() == arch.events.size());

    // Achieved efficiency can never beat the calibrated peak.
    std::ifstream rep(fs::path(run.out_dir) / "report.json");
    const nlohmann::json report = nlohmann::json::parse(rep);
    CHECK(report.at("effective_tsops_w").get<double>() <= 4.54);
    CHECK(report.at("effective_tsops_w").get<double>() >= 0.0);
}

TEST_CASE("cmd_run accepts csv event input and single-engine modes") {
    TempDir dir("runcsv");
    write_text(dir.file("net.json"), kTinyNet);

    std::vector<Event> events = {Event::reset(), Event::update(0, 0, 2, 2),
                                 Event::fire(0), Event::fire(1), Event::fire(2),
                                 Event::fire(3)};
    write_event_csv(EventStream::from_events(std::move(events), 4), dir.file("in.csv"));

    cli::RunOptions run;
    run.network_path = dir.file("net.json");
    run.events_path = dir.file("in.csv");
    run.out_dir = dir.file("golden_only");
    run.mode = "golden";
    CHECK(cli::cmd_run(run) == cli::kOk);
    CHECK(fs::exists(fs::path(run.out_dir) / "golden_events.sne-evt"));
    CHECK(!fs::exists(fs::path(run.out_dir) / "arch_events.sne-evt"));

    run.out_dir = dir.file("arch_only");
    run.mode = "arch";
    CHECK(cli::cmd_run(run) == cli::kOk);
    CHECK(fs::exists(fs::path(run.out_dir) / "arch_events.sne-evt"));
    CHECK(!fs::exists(fs::path(run.out_dir) / "golden_events.sne-evt"));

    run.mode = "sideways";
    CHECK(cli::cmd_run(run) == cli::kError);
}

TEST_CASE("cmd_run reports operational failures with kError") {
    TempDir dir("runbad");
    cli::RunOptions run;
    run.network_path = dir.file("missing.json");
    run.events_path = dir.file("missing.sne-evt");
    run.out_dir = dir.file("out");
    CHECK(cli::cmd_run(run) == cli::kError);

    // Unreadable weights inside an otherwise fine document.
    write_text(dir.file("net.json"), R"({
      "schema_version": 1, "t_steps": 4,
      "layers": [ { "c_in": 1, "c_out": 1, "h_in": 8, "w_in": 8,
                    "weights": "nothere.sne-wgt" } ]
    })");
    cli::GenOptions gen;
    gen.height = 8;
    gen.width = 8;
    gen.channels = 1;
    gen.t_steps = 4;
    gen.out_path = dir.file("in.sne-evt");
    REQUIRE(cli::cmd_gen(gen) == cli::kOk);
    run.network_path = dir.file("net.json");
    run.events_path = dir.file("in.sne-evt");
    CHECK(cli::cmd_run(run) == cli::kError);
}

TEST_CASE("cmd_report aggregates reports and traces into one table") {
    TempDir dir("report");
    write_text(dir.file("net.json"), kTinyNet);

    cli::GenOptions gen;
    gen.height = 8;
    gen.width = 8;
    gen.channels = 1;
    gen.t_steps = 4;
    gen.activity = 0.1;
    gen.out_path = dir.file("in.sne-evt");
    REQUIRE(cli::cmd_gen(gen) == cli::kOk);

    cli::RunOptions run;
    run.network_path = dir.file("net.json");
    run.events_path = dir.file("in.sne-evt");
    run.out_dir = dir.file("out");
    REQUIRE(cli::cmd_run(run) == cli::kOk);

    cli::ReportOptions rep;
    rep.inputs = {(fs::path(run.out_dir) / "report.json").string(),
                  (fs::path(run.out_dir) / "trace.json").string()};
    rep.out_dir = dir.file("agg");
    rep.prefix = "sweep";
    CHECK(cli::cmd_report(rep) == cli::kOk);
    CHECK(fs::exists(fs::path(rep.out_dir) / "sweep.csv"));
    CHECK(fs::exists(fs::path(rep.out_dir) / "sweep.json"));
    CHECK(fs::exists(fs::path(rep.out_dir) / "sweep_slices_throughput.csv"));
    CHECK(fs::exists(fs::path(rep.out_dir) / "sweep_activity_energy.csv"));

    // The table has a header plus two rows.
    std::ifstream csv(fs::path(rep.out_dir) / "sweep.csv");
    std::string line;
    int rows = 0;
    while (std::getline(csv, line)) {
        rows += line.empty() ? 0 : 1;
    }
    CHECK(rows == 3);

    // Duplicate inputs fold into one row.
    cli::ReportOptions dup = rep;
    dup.inputs = {rep.inputs[0], rep.inputs[0]};
    dup.out_dir = dir.file("agg2");
    CHECK(cli::cmd_report(dup) == cli::kOk);
    std::ifstream csv2(fs::path(dup.out_dir) / "sweep.csv");
    rows = 0;
    while (std::getline(csv2, line)) {
        rows += line.empty() ? 0 : 1;
    }
    CHECK(rows == 2);

    // Unknown schema and empty input lists are operational errors.
    write_text(dir.file("weird.json"), R"({"schema_version": 77})");
    cli::ReportOptions bad = rep;
    bad.inputs = {dir.file("weird.json")};
    CHECK(cli::cmd_report(bad) == cli::kError);
    bad.inputs = {};
    CHECK(cli::cmd_report(bad) == cli::kError);
}

TEST_CASE("cmd_plan emits a parseable plan document") {
    TempDir dir("plan");
    write_text(dir.file("net.json"), kTinyNet);

    cli::PlanOptions opt;
    opt.network_path = dir.file("net.json");
    opt.out_path = dir.file("plan.json");
    CHECK(cli::cmd_plan(opt) == cli::kOk);

    std::ifstream in(opt.out_path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const MappingPlan p = plan_from_json(text);
    CHECK(p.mode == MapMode::Pipelined);
    REQUIRE(p.passes.size() == 1);

    opt.network_path = dir.file("absent.json");
    CHECK(cli::cmd_plan(opt) == cli::kError);
}

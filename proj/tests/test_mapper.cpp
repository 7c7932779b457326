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

#include <memory>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "sne/errors.hpp"
#include "sne/filter_bank.hpp"
#include "sne/mapper.hpp"

using namespace sne;

namespace {

NetworkSpec square_net(int c_out, int side, int layers = 1, int sets = 1) {
    LayerSpec spec;
    spec.c_in = 1;
    spec.c_out = c_out;
    spec.h_in = side;
    spec.w_in = side;
    spec.t_steps = 4;
    NetworkSpec net;
    auto bank = std::make_shared<FilterBank>(make_random_bank(spec.filter_shape(), sets, 7));
    net.layers.push_back(NetworkLayer{spec, LifParams{}, bank, 0});
    for (int k = 1; k < layers; ++k) {
        LayerSpec next = spec;
        next.c_in = c_out;
        auto nb = std::make_shared<FilterBank>(
            make_random_bank(next.filter_shape(), sets, 7 + static_cast<uint64_t>(k)));
        net.layers.push_back(NetworkLayer{next, LifParams{}, nb, 0});
    }
    return net;
}

} // namespace

TEST_CASE("two one-slice layers pipeline onto two slices") {
    const NetworkSpec net = square_net(1, 32, 2);
    SneConfig config;
    const MappingPlan p = plan(net, config);

    CHECK(p.mode == MapMode::Pipelined);
    REQUIRE(p.passes.size() == 1);
    REQUIRE(p.passes[0].slices.size() == 2);
    CHECK(p.passes[0].slices[0].layer == 0);
    CHECK(p.passes[0].slices[0].slice == 0);
    CHECK(p.passes[0].slices[1].layer == 1);
    CHECK(p.passes[0].slices[1].slice == 1);
    // 32x32 over 8x8 tiles: all sixteen clusters of the slice.
    CHECK(p.passes[0].slices[0].clusters.size() == 16);
    for (const ClusterAssignment &c : p.passes[0].slices[0].clusters) {
        CHECK(c.tile_w == 8);
        CHECK(c.tile_h == 8);
    }
    CHECK(!p.extrapolated);
    verify_plan(p, net, config);
}

TEST_CASE("an oversubscribed layer tiles in channel-packed passes") {
    // 32 channels of 32x32 want 32 slices; the device has 8, so the mapper
    // schedules 4 passes of 8 whole channels each.
    const NetworkSpec net = square_net(32, 32);
    SneConfig config;
    const MappingPlan p = plan(net, config);

    CHECK(p.mode == MapMode::Tiled);
    REQUIRE(p.passes.size() == 4);
    CHECK(p.reprogram_count() == 4);
    for (int k = 0; k < 4; ++k) {
        const MappingPass &pass = p.passes[static_cast<std::size_t>(k)];
        int lo = 1 << 20;
        int hi = -1;
        for (const SliceAssignment &asg : pass.slices) {
            lo = std::min(lo, asg.c_out_begin);
            hi = std::max(hi, asg.c_out_end);
        }
        CHECK(lo == 8 * k);
        CHECK(hi == 8 * (k + 1));
    }
    verify_plan(p, net, config);
}

TEST_CASE("the mode boundary sits exactly at device capacity") {
    SneConfig config;
    // 8 channels of 32x32 are exactly 8 slices' worth of clusters.
    CHECK(plan(square_net(8, 32), config).mode == MapMode::Pipelined);
    CHECK(plan(square_net(9, 32), config).mode == MapMode::Tiled);
    CHECK(plan(square_net(9, 32), config).passes.size() == 2);
}

TEST_CASE("invalid networks are rejected before mapping") {
    SneConfig config;
    NetworkSpec empty;
    CHECK_THROWS_AS((void)plan(empty, config), PlanError);

    // Inter-layer extent mismatch: 1 output channel feeding a 2-channel layer.
    NetworkSpec bad = square_net(1, 32, 2);
    LayerSpec wide = bad.layers[1].spec;
    wide.c_in = 2;
    bad.layers[1].spec = wide;
    bad.layers[1].bank =
        std::make_shared<FilterBank>(make_random_bank(wide.filter_shape(), 1, 3));
    CHECK_THROWS_AS((void)plan(bad, config), PlanError);

    // Bank shape that does not match the layer.
    NetworkSpec mismatched = square_net(1, 32);
    mismatched.layers[0].bank =
        std::make_shared<FilterBank>(FilterShape{2, 1, 1, 1});
    CHECK_THROWS_AS((void)plan(mismatched, config), PlanError);

    NetworkSpec no_bank = square_net(1, 32);
    no_bank.layers[0].bank = nullptr;
    CHECK_THROWS_AS((void)plan(no_bank, config), PlanError);

    NetworkSpec bad_set = square_net(1, 32);
    bad_set.layers[0].weight_set = 5;
    CHECK_THROWS_AS((void)plan(bad_set, config), PlanError);
}

TEST_CASE("one channel wider than the device is unmappable") {
    SneConfig tiny;
    tiny.n_slices = 1;
    // A single 64x64 channel needs 64 clusters; the slice has 16.
    CHECK_THROWS_WITH_AS((void)plan(square_net(1, 64), tiny),
                         doctest::Contains("unmappable"), PlanError);

    // Even the full stock device cannot host a 128x128 channel (256 clusters).
    SneConfig stock;
    CHECK_THROWS_AS((void)plan(square_net(1, 128), stock), PlanError);
}

TEST_CASE("tile sides shrink to fit small clusters") {
    SneConfig config;
    config.neurons_per_cluster = 16; // largest square tile is 4x4
    config.clusters_per_slice = 8;
    const NetworkSpec net = square_net(1, 8);
    const MappingPlan p = plan(net, config);

    REQUIRE(p.passes.size() == 1);
    const SliceAssignment &asg = p.passes[0].slices[0];
    CHECK(asg.clusters.size() == 4);
    for (const ClusterAssignment &c : asg.clusters) {
        CHECK(c.tile_w == 4);
        CHECK(c.tile_h == 4);
        CHECK(c.neuron_count() <= config.neurons_per_cluster);
    }
    verify_plan(p, net, config);
}

TEST_CASE("ragged extents get clipped edge tiles") {
    SneConfig config;
    const NetworkSpec net = square_net(1, 10); // 10x10 over 8x8 tiles
    const MappingPlan p = plan(net, config);
    verify_plan(p, net, config);

    const SliceAssignment &asg = p.passes[0].slices[0];
    REQUIRE(asg.clusters.size() == 4);
    long long covered = 0;
    for (const ClusterAssignment &c : asg.clusters) {
        covered += c.neuron_count();
    }
    CHECK(covered == 100);
}

TEST_CASE("verify_plan accepts every generated plan") {
    std::mt19937_64 rng(11);
    SneConfig config;
    for (int i = 0; i < 60; ++i) {
        const testsupport::RandomInstance inst = testsupport::make_random_instance(rng);
        const NetworkSpec net = testsupport::as_network(inst);
        const MappingPlan p = plan(net, config);
        CHECK_NOTHROW(verify_plan(p, net, config));
    }
}

TEST_CASE("verify_plan rejects corrupted plans") {
    SneConfig config;
    const NetworkSpec net = square_net(1, 32);
    const MappingPlan good = plan(net, config);

    MappingPlan missing = good;
    missing.passes[0].slices[0].clusters.pop_back();
    CHECK_THROWS_AS(verify_plan(missing, net, config), PlanError);

    MappingPlan doubled = good;
    doubled.passes[0].slices[0].clusters.push_back(
        doubled.passes[0].slices[0].clusters[0]);
    CHECK_THROWS_AS(verify_plan(doubled, net, config), PlanError);

    MappingPlan oversized = good;
    oversized.passes[0].slices[0].clusters[0].tile_w += 1;
    CHECK_THROWS_AS(verify_plan(oversized, net, config), PlanError);

    MappingPlan off_device = good;
    off_device.passes[0].slices[0].slice = config.n_slices;
    CHECK_THROWS_AS(verify_plan(off_device, net, config), PlanError);

    MappingPlan bad_channel = good;
    bad_channel.passes[0].slices[0].clusters[0].c_out = 3;
    CHECK_THROWS_AS(verify_plan(bad_channel, net, config), PlanError);
}

TEST_CASE("pass images hold exactly the channel range a pass loads") {
    const NetworkSpec nine = square_net(9, 32);
    SneConfig config;
    const MappingPlan p = plan(nine, config);
    REQUIRE(p.mode == MapMode::Tiled);
    REQUIRE(p.passes.size() == 2);

    const std::vector<PassImage> images = emit_pass_images(p, nine);
    const FilterBank &bank = *nine.layers[0].bank;

    // Pass 1 carries the straggler channel [8, 9).
    bool saw_tail = false;
    for (const PassImage &img : images) {
        if (img.pass != 1) {
            continue;
        }
        saw_tail = true;
        CHECK(img.layer == 0);
        CHECK(img.image == pack_weights(slice_bank(bank, 0, 8, 9)));
    }
    CHECK(saw_tail);

    // Second weight sets ride along when a layer selects them.
    NetworkSpec two_sets = square_net(1, 32, 1, 2);
    two_sets.layers[0].weight_set = 1;
    const MappingPlan p2 = plan(two_sets, config);
    const std::vector<PassImage> images2 = emit_pass_images(p2, two_sets);
    REQUIRE(images2.size() == 1);
    CHECK(images2[0].image ==
          pack_weights(slice_bank(*two_sets.layers[0].bank, 1, 0, 1)));

    // A plan referencing an absent set is rejected.
    MappingPlan stale = p2;
    stale.passes[0].slices[0].weight_set = 9;
    CHECK_THROWS_AS((void)emit_pass_images(stale, two_sets), PlanError);
}

TEST_CASE("memory traffic moves only edge streams when pipelined") {
    const NetworkSpec net = square_net(1, 32, 2);
    SneConfig config;
    const MappingPlan p = plan(net, config);
    REQUIRE(p.mode == MapMode::Pipelined);

    const MemoryTraffic t = estimate_memory_traffic(p, net, {1000, 700, 50});
    CHECK(t.input_words == 1000);
    CHECK(t.output_words == 50);
    CHECK(t.data_words() == 1050);

    long long image_words = 0;
    for (const PassImage &img : emit_pass_images(p, net)) {
        image_words += static_cast<long long>((img.image.size() + 3) / 4);
    }
    CHECK(t.weight_words == image_words);

    CHECK_THROWS_AS((void)estimate_memory_traffic(p, net, {1000, 50}), PlanError);
}

TEST_CASE("tiled plans re-read the input once per pass") {
    const NetworkSpec net = square_net(32, 32);
    SneConfig config;
    const MappingPlan p = plan(net, config);
    REQUIRE(p.passes.size() == 4);

    const MemoryTraffic t = estimate_memory_traffic(p, net, {1000, 50});
    CHECK(t.input_words == 4000);
    CHECK(t.output_words == 50);

    const MemoryTraffic quiet = estimate_memory_traffic(p, net, {0, 0});
    CHECK(quiet.data_words() == 0);
    CHECK(quiet.weight_words > 0);
}

TEST_CASE("plans survive a json round trip") {
    SneConfig config;
    for (const NetworkSpec &net : {square_net(1, 32, 2), square_net(32, 32)}) {
        const MappingPlan p = plan(net, config);
        const MappingPlan back = plan_from_json(plan_to_json(p));
        CHECK(back == p);
    }

    CHECK_THROWS_AS((void)plan_from_json("not json"), CodecError);
    CHECK_THROWS_AS((void)plan_from_json("{\"schema_version\": 99}"), CodecError);
    CHECK_THROWS_AS((void)plan_from_json("{\"schema_version\": 1}"), CodecError);
}

TEST_CASE("extrapolation is flagged off the calibrated envelope") {
    // One layer spread over several slices leaves the measured regime.
    SneConfig config;
    const MappingPlan wide = plan(square_net(32, 8), config);
    CHECK(wide.mode == MapMode::Pipelined);
    CHECK(wide.extrapolated);

    // A single-slice layer on a stock device is calibrated territory.
    const MappingPlan small = plan(square_net(1, 32), config);
    CHECK(!small.extrapolated);

    // Non-stock slice counts are extrapolated even when tiny.
    SneConfig odd;
    odd.n_slices = 3;
    CHECK(plan(square_net(1, 32), odd).extrapolated);

    // Tiled passes use the whole device loop, which is calibrated.
    CHECK(!plan(square_net(32, 32), config).extrapolated);
}

TEST_CASE("map mode names are stable") {
    CHECK(std::string(to_string(MapMode::Pipelined)) == "pipelined");
    CHECK(std::string(to_string(MapMode::Tiled)) == "tiled");
}

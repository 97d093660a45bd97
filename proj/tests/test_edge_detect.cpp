#include "doctest.h"
#include "test_util.hpp"

#include "slopeaa/edge_detect.hpp"
#include "slopeaa/error.hpp"

#include <random>

using namespace slopeaa;

TEST_CASE("two rows of maximal contrast") {
    const EdgeMask m = detect_edges(LumaBuffer(1, 2, {0.0, 1.0}), EdgeThreshold{});
    CHECK(m.top_edge(0, 1));
    CHECK_FALSE(m.top_edge(0, 0));
    CHECK_FALSE(m.left_edge(0, 1));
}

TEST_CASE("uniform image has no edges") {
    for (double t : {0.01, 0.1, 0.5, 0.99}) {
        const EdgeMask m = detect_edges(LumaBuffer(4, 3, std::vector<double>(12, 0.4)),
                                        EdgeThreshold(t));
        for (int y = 0; y < 3; ++y)
            for (int x = 0; x < 4; ++x) CHECK_FALSE(m.has_any_edge(x, y));
    }
}

TEST_CASE("difference equal to the threshold is not an edge") {
    // Dyadic values so the difference is exact.
    const EdgeMask equal = detect_edges(LumaBuffer(2, 1, {0.25, 0.5}), EdgeThreshold(0.25));
    CHECK_FALSE(equal.left_edge(1, 0));
    const EdgeMask above =
        detect_edges(LumaBuffer(2, 1, {0.25, 0.5 + 1.0 / 1024}), EdgeThreshold(0.25));
    CHECK(above.left_edge(1, 0));
}

TEST_CASE("threshold range") {
    CHECK(EdgeThreshold{}.value() == 0.1);
    CHECK_THROWS_AS(EdgeThreshold(0.0), ContractViolation);
    CHECK_THROWS_AS(EdgeThreshold(1.0), ContractViolation);
    CHECK_THROWS_AS(EdgeThreshold(-0.2), ContractViolation);
}

TEST_CASE("border edges cannot be set") {
    EdgeMask m(3, 3);
    CHECK_THROWS_AS(m.set_top_edge(1, 0, true), ContractViolation);
    CHECK_THROWS_AS(m.set_left_edge(0, 1, true), ContractViolation);
    CHECK_NOTHROW(m.set_top_edge(1, 0, false));
    CHECK_THROWS_AS(m.set_top_edge(3, 1, true), ContractViolation);
    m.set_left_edge(2, 1, true);
    // Right border of (1, 1) and left border of (2, 1).
    CHECK(m.has_any_edge(1, 1));
    CHECK(m.has_any_edge(2, 1));
    CHECK_FALSE(m.has_any_edge(0, 0));
    CHECK_FALSE(m.top_edge(-1, 1));
}

TEST_CASE("bi-level mask traces the region boundary") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const ImageBuffer img = testutil::random_blocks(rng, 17, 12, 2);
        const EdgeMask m = detect_edges(compute_luma(img), EdgeThreshold{});
        for (int y = 0; y < img.height(); ++y) {
            for (int x = 0; x < img.width(); ++x) {
                CHECK(m.top_edge(x, y) == (y > 0 && img.at(x, y) != img.at(x, y - 1)));
                CHECK(m.left_edge(x, y) == (x > 0 && img.at(x, y) != img.at(x - 1, y)));
            }
        }
    }
}

TEST_CASE("swapping the two colours keeps the mask") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        ImageBuffer img = testutil::random_blocks(rng, 15, 11, 2);
        const EdgeMask before = detect_edges(compute_luma(img), EdgeThreshold{});
        for (Rgba& p : img.pixels()) p = p == testutil::kWhite ? testutil::kBlack : testutil::kWhite;
        CHECK(detect_edges(compute_luma(img), EdgeThreshold{}) == before);
    }
}

TEST_CASE("raising the threshold never adds an edge") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> v(10 * 8);
        for (double& x : v) x = u(rng);
        const LumaBuffer l(10, 8, v);
        const double lo = 0.01 + 0.9 * u(rng);
        const double hi = lo + (0.99 - lo) * u(rng);
        const EdgeMask a = detect_edges(l, EdgeThreshold(lo));
        const EdgeMask b = detect_edges(l, EdgeThreshold(hi));
        for (int y = 0; y < 8; ++y) {
            for (int x = 0; x < 10; ++x) {
                if (b.top_edge(x, y)) CHECK(a.top_edge(x, y));
                if (b.left_edge(x, y)) CHECK(a.left_edge(x, y));
            }
        }
    }
}

TEST_CASE("edge mask debug view") {
    EdgeMask m(3, 2);
    m.set_top_edge(1, 1, true);
    m.set_left_edge(2, 1, true);
    m.set_top_edge(2, 1, true);
    const ImageBuffer v = render_edge_mask(m);
    CHECK(v.at(0, 0) == Rgba{0, 0, 0, 255});
    CHECK(v.at(1, 1) == Rgba{255, 0, 0, 255});
    CHECK(v.at(2, 1) == Rgba{255, 255, 0, 255});
}

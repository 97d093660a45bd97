#pragma once

#include "slopeaa/edge_detect.hpp"
#include "slopeaa/image.hpp"
#include "slopeaa/slope_predict.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace slopeaa {

inline constexpr int kBenchSchemaVersion = 1;

struct BenchScene {
    std::string name;
    ImageBuffer image;
};

/// One endpoint search, run both ways.
struct BenchSearch {
    int run_id = 0;  // index into the horizontal-then-vertical run list
    int direction = 0;
    int width = 0;
    int slope_probes = 0;
    std::int64_t brute_probes = 0;
    int slope_steps = 0;
    int brute_steps = 0;
    bool agree = false;
};

struct BenchRow {
    std::string scene;
    int cycles = 0;
    int searches = 0;
    std::int64_t slope_probes = 0;
    std::int64_t brute_probes = 0;
    int max_slope_probes = 0;  // per direction, over all searches
    int agreements = 0;
    std::vector<BenchSearch> detail;

    double mean_slope_probes() const;
    double mean_brute_probes() const;
    /// Brute-force probes per slope-search probe; NaN when no probes were spent.
    double ratio() const;
};

/// Runs extend_endpoint and brute_force_extend from both ends of every
/// Z-shaped run of width >= 2 that fits inside `search_cap`. Throws
/// ContractViolation if any search spends more than N + 2 probes.
BenchRow bench_scene(const BenchScene& scene, SearchBudget budget,
                     EdgeThreshold threshold = {}, int search_cap = 64);

/// Built-in scene set: the quality sweep plus slope 1/16, 128 x 128.
std::vector<BenchScene> builtin_bench_scenes();

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);
void write_bench_detail_csv(std::ostream& out, const std::vector<BenchRow>& rows);

} // namespace slopeaa

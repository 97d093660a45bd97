#pragma once

#include "slopeaa/edge_detect.hpp"
#include "slopeaa/edge_search.hpp"
#include "slopeaa/image.hpp"
#include "slopeaa/metrics.hpp"
#include "slopeaa/revectorize.hpp"
#include "slopeaa/slope_predict.hpp"

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

namespace slopeaa {

enum class AaMode {
    None,       // pass-through
    LocalMlaa,  // revectorize each run from its own ends
    SlopeMlaa,  // extend Z-shaped run ends along the line first
};

std::string_view to_string(AaMode mode) noexcept;
/// Parses "none", "mlaa" or "slope". Throws ContractViolation otherwise.
AaMode parse_mode(std::string_view text);

struct PipelineConfig {
    EdgeThreshold threshold;
    SearchBudget max_cycles;
    int search_cap = kDefaultSearchCap;
    AaMode mode = AaMode::SlopeMlaa;
    int threads = 1;  // 0 = hardware concurrency

    void validate() const;
};

/// One maximal run and what the pipeline did with its ends.
struct RunRecord {
    int id = 0;
    Orientation orientation = Orientation::Horizontal;
    RunSpan span;
    LineShape shape = LineShape::None;
    bool extendable = false;  // Z-shaped, width >= 2, fully inside the search cap
    std::optional<CorrectedEndpoint> neg;  // set for extendable runs
    std::optional<CorrectedEndpoint> pos;
};

struct PipelineResult {
    ImageBuffer image;
    EdgeMask mask;
    std::vector<RunRecord> runs;  // horizontal runs first, then vertical
    std::vector<BlendWeight> weights;
    MetricsReport metrics;  // probe accounting only; quality fields are left empty
};

/// Edge detection, revectorization and blending. Deterministic for a given
/// input and config, independent of the thread count.
PipelineResult run_pipeline(const ImageBuffer& image, const PipelineConfig& config);

/// Debug dump of every run, one CSV row each.
void write_runs_csv(std::ostream& out, const PipelineResult& result);

} // namespace slopeaa

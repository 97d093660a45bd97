#pragma once

#include "slopeaa/edge_search.hpp"
#include "slopeaa/image.hpp"
#include "slopeaa/slope_predict.hpp"

#include <optional>
#include <vector>

namespace slopeaa {

/// Straight piece of a reconstructed boundary, expressed in the frame of the
/// run it was built for: positions along the run axis, heights relative to
/// that run's edge line (negative = toward the lower side). Each end sits at a
/// crossing midpoint `offset` away from the edge line of its own step, which
/// lies `rise` lines away from the anchor run.
struct CorrectedSegment {
    Orientation orientation = Orientation::Horizontal;
    int line = 0;
    double start = 0.0;
    double end = 0.0;
    double offset_start = 0.0;
    double offset_end = 0.0;
    int rise_start = 0;
    int rise_end = 0;
    // Pixels along the axis that take their blend weights from this segment.
    int span_begin = 0;
    int span_end = 0;
    EdgeRun source_run;

    double height_start() const noexcept { return rise_start + offset_start; }
    double height_end() const noexcept { return rise_end + offset_end; }
    double height_at(double along) const noexcept;
};

enum class Neighbor { Above, Below, Left, Right };

struct BlendWeight {
    Pixel pixel;
    double area = 0.0;  // in [0, 0.5]
    Neighbor neighbor = Neighbor::Above;
};

/// Revectorizes a run. Z: one segment between the two crossing midpoints.
/// L: from the crossing midpoint down to the edge line at the open end.
/// U: two segments meeting on the edge line at the run's midpoint.
/// A corrected end (steps_absorbed > 0) moves that end to the far crossing.
std::vector<CorrectedSegment> build_segments(
    const EdgeRun& run, const std::optional<CorrectedEndpoint>& corrected_neg = std::nullopt,
    const std::optional<CorrectedEndpoint>& corrected_pos = std::nullopt);

/// Area between the segment and its edge line, per pixel column of the span,
/// attributed to the pixel on the segment's side. A column the segment
/// crosses is split at the zero crossing.
std::vector<BlendWeight> coverage_areas(const CorrectedSegment& segment);

/// out = (1 - a) in(p) + a in(neighbour) per weight, reading colours from
/// `image` only. Above/Below weights are applied first, Left/Right weights on
/// top of that result. Alpha is left alone.
ImageBuffer blend(const ImageBuffer& image, const std::vector<BlendWeight>& weights);

/// Debug view: red = vertical-neighbour weight, green = horizontal-neighbour
/// weight, both scaled so an area of 0.5 is full intensity.
ImageBuffer render_weight_map(int width, int height, const std::vector<BlendWeight>& weights);

} // namespace slopeaa

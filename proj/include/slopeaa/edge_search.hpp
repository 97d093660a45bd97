#pragma once

#include "slopeaa/edge_detect.hpp"
#include "slopeaa/image.hpp"

#include <string_view>
#include <vector>

namespace slopeaa {

enum class Orientation { Horizontal, Vertical };

/// Which perpendicular edge(s) terminate a run at one of its ends. "Lower" is
/// the side with the smaller coordinate: the row above a horizontal edge line,
/// the column left of a vertical one.
enum class CrossingPattern { None, TowardLower, TowardUpper, Both };

/// Linetype formed by a run's two end patterns.
enum class LineShape { None, L, U, Z };

std::string_view to_string(Orientation o) noexcept;
std::string_view to_string(CrossingPattern p) noexcept;
std::string_view to_string(LineShape s) noexcept;

constexpr Orientation other(Orientation o) noexcept {
    return o == Orientation::Horizontal ? Orientation::Vertical : Orientation::Horizontal;
}

/// The mask seen along one orientation. Horizontal edges lie on edge line
/// `line` (= row y, the border between rows y-1 and y) at position `along`
/// (= x). Vertical edges use the transposed roles. Edge lines run from 1 to
/// line_count() - 1.
class EdgeAxis {
public:
    EdgeAxis(const EdgeMask& mask, Orientation orientation) noexcept
        : mask_(&mask), orientation_(orientation) {}

    Orientation orientation() const noexcept { return orientation_; }
    int along_size() const noexcept {
        return orientation_ == Orientation::Horizontal ? mask_->width() : mask_->height();
    }
    int line_count() const noexcept {
        return orientation_ == Orientation::Horizontal ? mask_->height() : mask_->width();
    }

    bool parallel(int along, int line) const noexcept {
        return orientation_ == Orientation::Horizontal ? mask_->top_edge(along, line)
                                                       : mask_->left_edge(line, along);
    }

    /// Perpendicular edge at edge-line position `stop`, on pixel row/column `side`.
    bool perpendicular(int stop, int side) const noexcept {
        return orientation_ == Orientation::Horizontal ? mask_->left_edge(stop, side)
                                                       : mask_->top_edge(side, stop);
    }

    CrossingPattern pattern_at(int stop, int line) const noexcept;

    Pixel to_pixel(int along, int line) const noexcept {
        return orientation_ == Orientation::Horizontal ? Pixel{along, line} : Pixel{line, along};
    }
    int along_of(Pixel p) const noexcept {
        return orientation_ == Orientation::Horizontal ? p.x : p.y;
    }
    int line_of(Pixel p) const noexcept {
        return orientation_ == Orientation::Horizontal ? p.y : p.x;
    }

private:
    const EdgeMask* mask_;
    Orientation orientation_;
};

/// A horizontal or vertical edge run as seen from one query pixel.
struct EdgeRun {
    Orientation orientation = Orientation::Horizontal;
    Pixel anchor;
    int d_neg = 0;  // D_left or D_up
    int d_pos = 0;  // D_right or D_down
    CrossingPattern pattern_neg = CrossingPattern::None;
    CrossingPattern pattern_pos = CrossingPattern::None;
    bool truncated_neg = false;
    bool truncated_pos = false;

    /// Step width L.
    int width() const noexcept { return d_neg + d_pos + 1; }
    int line() const noexcept {
        return orientation == Orientation::Horizontal ? anchor.y : anchor.x;
    }
    int anchor_along() const noexcept {
        return orientation == Orientation::Horizontal ? anchor.x : anchor.y;
    }
    /// First covered position and the edge-line position just past the last.
    int begin() const noexcept { return anchor_along() - d_neg; }
    int end() const noexcept { return anchor_along() + d_pos + 1; }
    bool truncated() const noexcept { return truncated_neg || truncated_pos; }

    friend bool operator==(const EdgeRun&, const EdgeRun&) = default;
};

inline constexpr int kDefaultSearchCap = 64;

/// Walks the run through `pixel` in both directions, at most `cap` pixels each
/// way. Throws ContractViolation if the pixel carries no edge of that
/// orientation.
EdgeRun search_run(const EdgeMask& mask, Pixel pixel, Orientation orientation,
                   int cap = kDefaultSearchCap);

/// Classifies the linetype. A `Both` end carries no usable slope direction and
/// counts as open.
LineShape classify_shape(CrossingPattern neg, CrossingPattern pos) noexcept;
LineShape classify_shape(const EdgeRun& run) noexcept;

/// Signed offset of the crossing midpoint from the edge line: -0.5 toward the
/// lower side, +0.5 toward the upper side, 0 otherwise.
double crossing_offset(CrossingPattern p) noexcept;

/// Line shift from one step to the next when following a crossing.
int crossing_shift(CrossingPattern p) noexcept;

/// Maximal run of one orientation, stored once per image.
struct RunSpan {
    int line = 0;
    int begin = 0;  // first position
    int end = 0;    // one past the last position
    CrossingPattern pattern_neg = CrossingPattern::None;
    CrossingPattern pattern_pos = CrossingPattern::None;

    int length() const noexcept { return end - begin; }
};

/// All maximal runs of an image, enumerated once; queries then answer in O(1)
/// what search_run answers by walking.
class RunCache {
public:
    explicit RunCache(const EdgeMask& mask);
    RunCache(EdgeMask&&) = delete;

    const EdgeMask& mask() const noexcept { return *mask_; }
    EdgeAxis axis(Orientation o) const noexcept { return EdgeAxis(*mask_, o); }

    const std::vector<RunSpan>& runs(Orientation o) const noexcept {
        return o == Orientation::Horizontal ? horizontal_ : vertical_;
    }

    /// Index into runs(o) of the run covering (along, line), or -1.
    int run_id_at(Orientation o, int along, int line) const noexcept;

    /// Same result as search_run(mask, pixel, o, cap).
    EdgeRun view(Pixel pixel, Orientation o, int cap = kDefaultSearchCap) const;

    /// True iff a run on `line` ends at edge-line position `stop` on the side
    /// given by `direction` (+1: its positive end, -1: its negative end) with
    /// exactly the pattern `expected`.
    bool has_end(Orientation o, int line, int stop, int direction,
                 CrossingPattern expected) const noexcept;

private:
    const EdgeMask* mask_;
    std::vector<RunSpan> horizontal_;
    std::vector<RunSpan> vertical_;
    std::vector<int> horizontal_id_;  // indexed by y * width + x
    std::vector<int> vertical_id_;
};

/// Horizontal or vertical tendency of the edges around a pixel, comparing
/// D_up + D_down with D_left + D_right over the pixel's four borders. Ties go
/// to Horizontal. Throws ContractViolation if no border carries an edge.
Orientation dominant_orientation(const EdgeMask& mask, Pixel pixel,
                                 int cap = kDefaultSearchCap);
Orientation dominant_orientation(const RunCache& cache, Pixel pixel,
                                 int cap = kDefaultSearchCap);

} // namespace slopeaa

#pragma once

#include "slopeaa/edge_search.hpp"

#include <cstdint>
#include <optional>
#include <span>

namespace slopeaa {

/// Open interval of line slopes that can rasterize to a step of a given width.
struct SlopeInterval {
    double lower = 0.0;
    double upper = 0.0;  // +infinity for width 1

    bool contains(double k) const noexcept { return lower < k && k < upper; }
};

/// A step of width L comes from a line with 1/(L+1) < k < 1/(L-1).
SlopeInterval admissible_slope_interval(int width);

/// Exact version of admissible_slope_interval(width).contains(p / q), q > 0.
bool slope_admissible(int width, std::int64_t p, std::int64_t q);

/// True iff some slope admits every width, i.e. the admissible intervals
/// intersect. Throws ContractViolation on an empty sequence or widths < 1.
bool widths_consistent(std::span<const int> widths);

/// Maximum number of search cycles per direction.
class SearchBudget {
public:
    static constexpr int kDefaultCycles = 4;

    constexpr SearchBudget() = default;
    explicit SearchBudget(int cycles);

    int cycles() const noexcept { return cycles_; }

private:
    int cycles_ = kDefaultCycles;
};

/// Counts boundary-pattern fetches. One fetch reads the end pattern at two
/// adjacent positions.
struct ProbeCounter {
    std::int64_t pattern_probes = 0;
};

enum class SearchPhase { Unpinned, Pinned };

/// Step widths admitted while following a line: just L until a neighbouring
/// width L' = L +- 1 has been observed, then exactly {L, L'}.
class StepWidthState {
public:
    explicit StepWidthState(int width);

    int width() const noexcept { return width_; }
    std::optional<int> second_width() const noexcept { return second_; }
    SearchPhase phase() const noexcept {
        return second_ ? SearchPhase::Pinned : SearchPhase::Unpinned;
    }

    /// Fixes L'. Throws ContractViolation unless |L - L'| == 1 and unpinned.
    void pin(int second_width);

private:
    int width_;
    std::optional<int> second_;
};

/// A run end on a given edge line, with the crossing pattern found there.
struct RunEndpoint {
    Orientation orientation = Orientation::Horizontal;
    int line = 0;
    int position = 0;  // edge-line coordinate along the run axis
    CrossingPattern pattern = CrossingPattern::None;

    friend bool operator==(const RunEndpoint&, const RunEndpoint&) = default;
};

struct CorrectedEndpoint {
    int position = 0;
    int line = 0;  // edge line of the last absorbed step
    int steps_absorbed = 0;
    int probes_used = 0;
    std::optional<int> pinned_width;
};

/// One single-position probe: is there a step of width `candidate` past `from`
/// in `direction`, one line over in the crossing's direction, ending with the
/// pattern `expected`? Always counts one probe; out-of-image answers false.
bool probe_step_end(const RunCache& runs, const RunEndpoint& from, int candidate,
                    int direction, CrossingPattern expected, ProbeCounter& counter);

/// Probes two adjacent candidate widths with one fetch. `preferred` wins when
/// both match. Returns the matching width, if any.
std::optional<int> probe_step_pair(const RunCache& runs, const RunEndpoint& from,
                                   int preferred, int alternative, int direction,
                                   CrossingPattern expected, ProbeCounter& counter);

/// Follows the line from `start` across further steps of predicted width.
///
/// Each cycle absorbs at most one step; the budget caps the total number of
/// cycles. While unpinned a cycle tries L, then L-1, then L+1 (L and L-1
/// share a fetch); the first L +- 1 hit pins L'. Once pinned a cycle tries L
/// then L' with a single fetch. The search stops at the first cycle without a
/// hit. Widths below 2 are not predicted and return `start` untouched.
CorrectedEndpoint extend_endpoint(const RunCache& runs, const RunEndpoint& start, int width,
                                  int direction, SearchBudget budget);

} // namespace slopeaa

#include "slopeaa/slope_predict.hpp"

#include "slopeaa/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

namespace slopeaa {

SlopeInterval admissible_slope_interval(int width) {
    if (width < 1) {
        throw ContractViolation("step width must be at least 1");
    }
    const double upper = width == 1 ? std::numeric_limits<double>::infinity()
                                    : 1.0 / (width - 1);
    return {1.0 / (width + 1), upper};
}

bool slope_admissible(int width, std::int64_t p, std::int64_t q) {
    if (width < 1 || q <= 0) {
        throw ContractViolation("slope_admissible needs width >= 1 and q > 0");
    }
    // p/q > 1/(L+1)  <=>  p (L+1) > q
    if (!(p * (width + 1) > q)) return false;
    // p/q < 1/(L-1)  <=>  p (L-1) < q
    return width == 1 || p * (width - 1) < q;
}

bool widths_consistent(std::span<const int> widths) {
    if (widths.empty()) {
        throw ContractViolation("widths_consistent needs at least one width");
    }
    // Intersection of (1/(L+1), 1/(L-1)) over all widths is
    // (1/lower_den, 1/upper_den) with upper_den == 0 meaning +infinity.
    std::int64_t lower_den = std::numeric_limits<std::int64_t>::max();
    std::int64_t upper_den = 0;
    for (int w : widths) {
        if (w < 1) {
            throw ContractViolation("step widths must be at least 1");
        }
        lower_den = std::min<std::int64_t>(lower_den, w + 1);
        upper_den = std::max<std::int64_t>(upper_den, w - 1);
    }
    return upper_den == 0 || upper_den < lower_den;
}

SearchBudget::SearchBudget(int cycles) : cycles_(cycles) {
    if (cycles < 0) {
        throw ContractViolation("search budget must be non-negative");
    }
}

StepWidthState::StepWidthState(int width) : width_(width) {
    if (width < 1) {
        throw ContractViolation("step width must be at least 1");
    }
}

void StepWidthState::pin(int second_width) {
    if (second_ || std::abs(second_width - width_) != 1) {
        throw ContractViolation("second step width must differ from L by exactly 1");
    }
    second_ = second_width;
}

namespace {

bool matches(const RunCache& runs, const RunEndpoint& from, int candidate, int direction,
             CrossingPattern expected) {
    if (candidate < 1) return false;
    const int line = from.line + crossing_shift(from.pattern);
    const int stop = from.position + direction * candidate;
    return runs.has_end(from.orientation, line, stop, direction, expected);
}

} // namespace

bool probe_step_end(const RunCache& runs, const RunEndpoint& from, int candidate,
                    int direction, CrossingPattern expected, ProbeCounter& counter) {
    ++counter.pattern_probes;
    return matches(runs, from, candidate, direction, expected);
}

std::optional<int> probe_step_pair(const RunCache& runs, const RunEndpoint& from,
                                   int preferred, int alternative, int direction,
                                   CrossingPattern expected, ProbeCounter& counter) {
    if (std::abs(preferred - alternative) != 1) {
        throw ContractViolation("paired probe needs adjacent candidate widths");
    }
    ++counter.pattern_probes;
    if (matches(runs, from, preferred, direction, expected)) return preferred;
    if (matches(runs, from, alternative, direction, expected)) return alternative;
    return std::nullopt;
}

CorrectedEndpoint extend_endpoint(const RunCache& runs, const RunEndpoint& start, int width,
                                  int direction, SearchBudget budget) {
    if (direction != 1 && direction != -1) {
        throw ContractViolation("direction must be +1 or -1");
    }
    if (width < 1) {
        throw ContractViolation("step width must be at least 1");
    }

    CorrectedEndpoint result{start.position, start.line, 0, 0, std::nullopt};
    if (width < 2 || budget.cycles() == 0 || crossing_shift(start.pattern) == 0) {
        return result;
    }

    RunEndpoint at = start;
    StepWidthState state(width);
    ProbeCounter counter;
    auto advance = [&](int w) {
        at.position += direction * w;
        at.line += crossing_shift(at.pattern);
        ++result.steps_absorbed;
    };
    auto finish = [&] {
        result.position = at.position;
        result.line = at.line;
        result.probes_used = static_cast<int>(counter.pattern_probes);
        result.pinned_width = state.second_width();
        return result;
    };

    const int L = state.width();
    int cycle = 0;
    while (cycle < budget.cycles() && state.phase() == SearchPhase::Unpinned) {
        ++cycle;
        const auto hit = probe_step_pair(runs, at, L, L - 1, direction, start.pattern, counter);
        if (hit == L) {
            advance(L);
            continue;
        }
        if (hit == L - 1) {
            advance(L - 1);
            state.pin(L - 1);
            break;
        }
        if (probe_step_end(runs, at, L + 1, direction, start.pattern, counter)) {
            advance(L + 1);
            state.pin(L + 1);
            break;
        }
        return finish();
    }

    if (state.phase() == SearchPhase::Pinned) {
        const int second = *state.second_width();
        while (cycle < budget.cycles()) {
            ++cycle;
            const auto hit =
                probe_step_pair(runs, at, L, second, direction, start.pattern, counter);
            if (!hit) break;
            advance(*hit);
        }
    }
    return finish();
}

} // namespace slopeaa

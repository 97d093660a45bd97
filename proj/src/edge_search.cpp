#include "slopeaa/edge_search.hpp"

#include "slopeaa/error.hpp"

#include <algorithm>
#include <optional>
#include <string>

namespace slopeaa {

std::string_view to_string(Orientation o) noexcept {
    return o == Orientation::Horizontal ? "horizontal" : "vertical";
}

std::string_view to_string(CrossingPattern p) noexcept {
    switch (p) {
    case CrossingPattern::None: return "none";
    case CrossingPattern::TowardLower: return "lower";
    case CrossingPattern::TowardUpper: return "upper";
    case CrossingPattern::Both: return "both";
    }
    return "?";
}

std::string_view to_string(LineShape s) noexcept {
    switch (s) {
    case LineShape::None: return "none";
    case LineShape::L: return "L";
    case LineShape::U: return "U";
    case LineShape::Z: return "Z";
    }
    return "?";
}

CrossingPattern EdgeAxis::pattern_at(int stop, int line) const noexcept {
    const bool lower = perpendicular(stop, line - 1);
    const bool upper = perpendicular(stop, line);
    if (lower && upper) return CrossingPattern::Both;
    if (lower) return CrossingPattern::TowardLower;
    if (upper) return CrossingPattern::TowardUpper;
    return CrossingPattern::None;
}

EdgeRun search_run(const EdgeMask& mask, Pixel pixel, Orientation orientation, int cap) {
    if (cap < 0) {
        throw ContractViolation("search cap must be non-negative");
    }
    const EdgeAxis axis(mask, orientation);
    const int along = axis.along_of(pixel);
    const int line = axis.line_of(pixel);
    if (!axis.parallel(along, line)) {
        throw ContractViolation("pixel (" + std::to_string(pixel.x) + "," +
                                std::to_string(pixel.y) + ") has no " +
                                std::string(to_string(orientation)) + " edge");
    }

    EdgeRun run;
    run.orientation = orientation;
    run.anchor = pixel;
    while (run.d_neg < cap && axis.parallel(along - run.d_neg - 1, line)) ++run.d_neg;
    while (run.d_pos < cap && axis.parallel(along + run.d_pos + 1, line)) ++run.d_pos;
    run.truncated_neg = run.d_neg == cap && axis.parallel(along - cap - 1, line);
    run.truncated_pos = run.d_pos == cap && axis.parallel(along + cap + 1, line);
    run.pattern_neg = axis.pattern_at(run.begin(), line);
    run.pattern_pos = axis.pattern_at(run.end(), line);
    return run;
}

LineShape classify_shape(CrossingPattern neg, CrossingPattern pos) noexcept {
    auto single = [](CrossingPattern p) {
        return p == CrossingPattern::TowardLower || p == CrossingPattern::TowardUpper;
    };
    const bool n = single(neg);
    const bool p = single(pos);
    if (n && p) return neg == pos ? LineShape::U : LineShape::Z;
    if (n || p) return LineShape::L;
    return LineShape::None;
}

LineShape classify_shape(const EdgeRun& run) noexcept {
    return classify_shape(run.truncated_neg ? CrossingPattern::None : run.pattern_neg,
                          run.truncated_pos ? CrossingPattern::None : run.pattern_pos);
}

double crossing_offset(CrossingPattern p) noexcept {
    switch (p) {
    case CrossingPattern::TowardLower: return -0.5;
    case CrossingPattern::TowardUpper: return 0.5;
    default: return 0.0;
    }
}

int crossing_shift(CrossingPattern p) noexcept {
    switch (p) {
    case CrossingPattern::TowardLower: return -1;
    case CrossingPattern::TowardUpper: return 1;
    default: return 0;
    }
}

RunCache::RunCache(const EdgeMask& mask)
    : mask_(&mask),
      horizontal_id_(static_cast<std::size_t>(mask.width()) * mask.height(), -1),
      vertical_id_(static_cast<std::size_t>(mask.width()) * mask.height(), -1) {
    for (Orientation o : {Orientation::Horizontal, Orientation::Vertical}) {
        const EdgeAxis ax(mask, o);
        auto& runs = o == Orientation::Horizontal ? horizontal_ : vertical_;
        auto& ids = o == Orientation::Horizontal ? horizontal_id_ : vertical_id_;
        for (int line = 1; line < ax.line_count(); ++line) {
            int along = 0;
            while (along < ax.along_size()) {
                if (!ax.parallel(along, line)) {
                    ++along;
                    continue;
                }
                RunSpan span;
                span.line = line;
                span.begin = along;
                while (along < ax.along_size() && ax.parallel(along, line)) {
                    const Pixel p = ax.to_pixel(along, line);
                    ids[static_cast<std::size_t>(p.y) * mask.width() + p.x] =
                        static_cast<int>(runs.size());
                    ++along;
                }
                span.end = along;
                span.pattern_neg = ax.pattern_at(span.begin, line);
                span.pattern_pos = ax.pattern_at(span.end, line);
                runs.push_back(span);
            }
        }
    }
}

int RunCache::run_id_at(Orientation o, int along, int line) const noexcept {
    const Pixel p = axis(o).to_pixel(along, line);
    if (p.x < 0 || p.y < 0 || p.x >= mask_->width() || p.y >= mask_->height()) return -1;
    const auto& ids = o == Orientation::Horizontal ? horizontal_id_ : vertical_id_;
    return ids[static_cast<std::size_t>(p.y) * mask_->width() + p.x];
}

EdgeRun RunCache::view(Pixel pixel, Orientation o, int cap) const {
    if (cap < 0) {
        throw ContractViolation("search cap must be non-negative");
    }
    const EdgeAxis ax = axis(o);
    const int along = ax.along_of(pixel);
    const int line = ax.line_of(pixel);
    const int id = run_id_at(o, along, line);
    if (id < 0) {
        throw ContractViolation("pixel (" + std::to_string(pixel.x) + "," +
                                std::to_string(pixel.y) + ") has no " +
                                std::string(to_string(o)) + " edge");
    }
    const RunSpan& span = runs(o)[static_cast<std::size_t>(id)];
    EdgeRun run;
    run.orientation = o;
    run.anchor = pixel;
    const int full_neg = along - span.begin;
    const int full_pos = span.end - 1 - along;
    run.d_neg = std::min(full_neg, cap);
    run.d_pos = std::min(full_pos, cap);
    run.truncated_neg = full_neg > cap;
    run.truncated_pos = full_pos > cap;
    run.pattern_neg = run.truncated_neg ? ax.pattern_at(run.begin(), line) : span.pattern_neg;
    run.pattern_pos = run.truncated_pos ? ax.pattern_at(run.end(), line) : span.pattern_pos;
    return run;
}

bool RunCache::has_end(Orientation o, int line, int stop, int direction,
                       CrossingPattern expected) const noexcept {
    const EdgeAxis ax = axis(o);
    if (line < 1 || line >= ax.line_count()) return false;
    const int inside = direction > 0 ? stop - 1 : stop;
    if (inside < 0 || inside >= ax.along_size()) return false;
    const int id = run_id_at(o, inside, line);
    if (id < 0) return false;
    const RunSpan& span = runs(o)[static_cast<std::size_t>(id)];
    if (direction > 0) {
        return span.end == stop && span.pattern_pos == expected;
    }
    return span.begin == stop && span.pattern_neg == expected;
}

namespace {

template <typename RunAt>
Orientation dominant_orientation_impl(const EdgeMask& mask, Pixel p, RunAt run_at) {
    std::optional<int> horizontal;
    std::optional<int> vertical;
    auto consider = [&](std::optional<int>& best, Pixel at, Orientation o) {
        const EdgeRun run = run_at(at, o);
        const int span = run.d_neg + run.d_pos;
        best = best ? std::max(*best, span) : span;
    };
    if (mask.top_edge(p.x, p.y)) consider(horizontal, p, Orientation::Horizontal);
    if (mask.top_edge(p.x, p.y + 1)) {
        consider(horizontal, Pixel{p.x, p.y + 1}, Orientation::Horizontal);
    }
    if (mask.left_edge(p.x, p.y)) consider(vertical, p, Orientation::Vertical);
    if (mask.left_edge(p.x + 1, p.y)) {
        consider(vertical, Pixel{p.x + 1, p.y}, Orientation::Vertical);
    }

    if (!horizontal && !vertical) {
        throw ContractViolation("pixel (" + std::to_string(p.x) + "," + std::to_string(p.y) +
                                ") has no edge on any border");
    }
    if (!vertical) return Orientation::Horizontal;
    if (!horizontal) return Orientation::Vertical;
    return *vertical > *horizontal ? Orientation::Vertical : Orientation::Horizontal;
}

} // namespace

Orientation dominant_orientation(const EdgeMask& mask, Pixel pixel, int cap) {
    return dominant_orientation_impl(mask, pixel, [&](Pixel at, Orientation o) {
        return search_run(mask, at, o, cap);
    });
}

Orientation dominant_orientation(const RunCache& cache, Pixel pixel, int cap) {
    return dominant_orientation_impl(cache.mask(), pixel, [&](Pixel at, Orientation o) {
        return cache.view(at, o, cap);
    });
}

} // namespace slopeaa

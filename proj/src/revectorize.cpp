#include "slopeaa/revectorize.hpp"

#include "slopeaa/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>

namespace slopeaa {

namespace {

constexpr double kMaxArea = 0.5;

// Segment geometry lives on a half-unit grid. Working in doubled integer
// coordinates keeps every area a single rounded division, so mirrored inputs
// produce bit-identical weights.
std::int64_t twice(double v) { return std::llround(2.0 * v); }

struct EndGeometry {
    double position;
    double offset;
    int rise;
};

EndGeometry end_geometry(const EdgeRun& run, CrossingPattern pattern, int local_position,
                         const std::optional<CorrectedEndpoint>& corrected) {
    if (corrected && corrected->steps_absorbed > 0) {
        return {static_cast<double>(corrected->position), crossing_offset(pattern),
                corrected->line - run.line()};
    }
    return {static_cast<double>(local_position), crossing_offset(pattern), 0};
}

CorrectedSegment make_segment(const EdgeRun& run, const EndGeometry& a, const EndGeometry& b) {
    CorrectedSegment s;
    s.orientation = run.orientation;
    s.line = run.line();
    s.start = a.position;
    s.offset_start = a.offset;
    s.rise_start = a.rise;
    s.end = b.position;
    s.offset_end = b.offset;
    s.rise_end = b.rise;
    s.span_begin = run.begin();
    s.span_end = run.end();
    s.source_run = run;
    return s;
}

BlendWeight weight_for(const CorrectedSegment& seg, int along, double area, bool lower_side) {
    BlendWeight w;
    w.area = std::min(area, kMaxArea);
    if (seg.orientation == Orientation::Horizontal) {
        w.pixel = lower_side ? Pixel{along, seg.line - 1} : Pixel{along, seg.line};
        w.neighbor = lower_side ? Neighbor::Below : Neighbor::Above;
    } else {
        w.pixel = lower_side ? Pixel{seg.line - 1, along} : Pixel{seg.line, along};
        w.neighbor = lower_side ? Neighbor::Right : Neighbor::Left;
    }
    return w;
}

} // namespace

double CorrectedSegment::height_at(double along) const noexcept {
    if (end == start) return height_start();
    const double t = (along - start) / (end - start);
    return height_start() + (height_end() - height_start()) * t;
}

std::vector<CorrectedSegment> build_segments(const EdgeRun& run,
                                             const std::optional<CorrectedEndpoint>& corrected_neg,
                                             const std::optional<CorrectedEndpoint>& corrected_pos) {
    if ((corrected_neg && corrected_neg->steps_absorbed > 0 && run.truncated_neg) ||
        (corrected_pos && corrected_pos->steps_absorbed > 0 && run.truncated_pos)) {
        throw ContractViolation("cannot correct a truncated run end");
    }
    const CrossingPattern neg = run.truncated_neg ? CrossingPattern::None : run.pattern_neg;
    const CrossingPattern pos = run.truncated_pos ? CrossingPattern::None : run.pattern_pos;
    const LineShape shape = classify_shape(neg, pos);

    // An end without a usable single crossing stays on the edge line.
    auto usable = [](CrossingPattern p) { return crossing_shift(p) != 0; };
    const EndGeometry a = usable(neg) ? end_geometry(run, neg, run.begin(), corrected_neg)
                                      : EndGeometry{double(run.begin()), 0.0, 0};
    const EndGeometry b = usable(pos) ? end_geometry(run, pos, run.end(), corrected_pos)
                                      : EndGeometry{double(run.end()), 0.0, 0};

    switch (shape) {
    case LineShape::None:
        return {};
    case LineShape::Z:
    case LineShape::L:
        return {make_segment(run, a, b)};
    case LineShape::U: {
        const double mid = 0.5 * (run.begin() + run.end());
        const EndGeometry apex{mid, 0.0, 0};
        return {make_segment(run, a, apex), make_segment(run, apex, b)};
    }
    }
    return {};
}

std::vector<BlendWeight> coverage_areas(const CorrectedSegment& segment) {
    std::vector<BlendWeight> out;
    const std::int64_t s2 = twice(segment.start);
    const std::int64_t e2 = twice(segment.end);
    if (e2 <= s2) return out;
    const std::int64_t hs2 = twice(segment.height_start());
    const std::int64_t he2 = twice(segment.height_end());
    const std::int64_t denom = 2 * (e2 - s2);  // height = numerator / denom
    auto numerator = [&](std::int64_t x2) { return hs2 * (e2 - x2) + he2 * (x2 - s2); };

    const int first = std::max(segment.span_begin, static_cast<int>(std::floor(segment.start)));
    const int last = std::min(segment.span_end, static_cast<int>(std::ceil(segment.end)));
    for (int column = first; column < last; ++column) {
        const std::int64_t u2 = std::max<std::int64_t>(2 * column, s2);
        const std::int64_t v2 = std::min<std::int64_t>(2 * column + 2, e2);
        if (v2 <= u2) continue;
        const std::int64_t nu = numerator(u2);
        const std::int64_t nv = numerator(v2);
        const std::int64_t width2 = v2 - u2;

        if ((nu >= 0 && nv >= 0) || (nu <= 0 && nv <= 0)) {
            const std::int64_t sum = nu + nv;
            if (sum == 0) continue;
            const double area = static_cast<double>(std::abs(sum) * width2) /
                                static_cast<double>(4 * denom);
            out.push_back(weight_for(segment, column, area, sum < 0));
            continue;
        }
        const std::int64_t total = std::abs(nu) + std::abs(nv);
        const double scale = static_cast<double>(4 * denom * total);
        const double area_u = static_cast<double>(nu * nu * width2) / scale;
        const double area_v = static_cast<double>(nv * nv * width2) / scale;
        out.push_back(weight_for(segment, column, area_u, nu < 0));
        out.push_back(weight_for(segment, column, area_v, nv < 0));
    }
    return out;
}

namespace {

struct Slots {
    std::array<double, 4> area{};  // indexed by Neighbor
};

Pixel neighbor_of(Pixel p, Neighbor n) {
    switch (n) {
    case Neighbor::Above: return {p.x, p.y - 1};
    case Neighbor::Below: return {p.x, p.y + 1};
    case Neighbor::Left: return {p.x - 1, p.y};
    case Neighbor::Right: return {p.x + 1, p.y};
    }
    return p;
}

std::uint8_t to_channel(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

} // namespace

ImageBuffer blend(const ImageBuffer& image, const std::vector<BlendWeight>& weights) {
    const int w = image.width();
    const int h = image.height();
    std::vector<Slots> slots(static_cast<std::size_t>(w) * h);
    for (const BlendWeight& bw : weights) {
        const Pixel n = neighbor_of(bw.pixel, bw.neighbor);
        if (!image.contains(bw.pixel.x, bw.pixel.y) || !image.contains(n.x, n.y)) {
            throw ContractViolation("blend weight references a pixel outside the image");
        }
        if (!(bw.area >= 0.0 && bw.area <= kMaxArea)) {
            throw ContractViolation("blend weight area outside [0, 0.5]");
        }
        slots[static_cast<std::size_t>(bw.pixel.y) * w + bw.pixel.x]
            .area[static_cast<std::size_t>(bw.neighbor)] += bw.area;
    }

    for (Slots& s : slots) {
        for (double& a : s.area) a = std::min(a, kMaxArea);
    }

    ImageBuffer out = image;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const Slots& s = slots[static_cast<std::size_t>(y) * w + x];
            const auto& a = s.area;
            if (a[0] == 0.0 && a[1] == 0.0 && a[2] == 0.0 && a[3] == 0.0) continue;

            const Rgba& src = image.at(x, y);
            auto fetch = [&](Neighbor n, int channel) -> double {
                const Pixel q = neighbor_of({x, y}, n);
                if (!image.contains(q.x, q.y)) return 0.0;
                const Rgba& c = image.at(q.x, q.y);
                return channel == 0 ? c.r : channel == 1 ? c.g : c.b;
            };
            std::array<double, 3> result{};
            for (int ch = 0; ch < 3; ++ch) {
                const double c0 = ch == 0 ? src.r : ch == 1 ? src.g : src.b;
                // Two terms per pass, summed before being applied, so the
                // result does not depend on which side a weight came from.
                const double c1 = c0 + (a[0] * (fetch(Neighbor::Above, ch) - c0) +
                                        a[1] * (fetch(Neighbor::Below, ch) - c0));
                const double c2 = c1 + (a[2] * (fetch(Neighbor::Left, ch) - c1) +
                                        a[3] * (fetch(Neighbor::Right, ch) - c1));
                result[static_cast<std::size_t>(ch)] = c2;
            }
            Rgba& dst = out.at(x, y);
            dst.r = to_channel(result[0]);
            dst.g = to_channel(result[1]);
            dst.b = to_channel(result[2]);
        }
    }
    return out;
}

ImageBuffer render_weight_map(int width, int height, const std::vector<BlendWeight>& weights) {
    std::vector<std::array<double, 2>> acc(static_cast<std::size_t>(width) * height);
    for (const BlendWeight& bw : weights) {
        if (bw.pixel.x < 0 || bw.pixel.y < 0 || bw.pixel.x >= width || bw.pixel.y >= height) {
            throw ContractViolation("weight outside the weight map");
        }
        const bool vertical_neighbor =
            bw.neighbor == Neighbor::Above || bw.neighbor == Neighbor::Below;
        acc[static_cast<std::size_t>(bw.pixel.y) * width + bw.pixel.x]
           [vertical_neighbor ? 0 : 1] += bw.area;
    }
    ImageBuffer out(width, height, Rgba{0, 0, 0, 255});
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const auto& v = acc[static_cast<std::size_t>(y) * width + x];
            out.at(x, y).r = to_channel(std::min(v[0], 0.5) * 510.0);
            out.at(x, y).g = to_channel(std::min(v[1], 0.5) * 510.0);
        }
    }
    return out;
}

} // namespace slopeaa

#include "slopeaa/edge_detect.hpp"

#include "slopeaa/error.hpp"

#include <cmath>
#include <string>

namespace slopeaa {

EdgeThreshold::EdgeThreshold(double value) : value_(value) {
    if (!(value > 0.0 && value < 1.0)) {
        throw ContractViolation("edge threshold must lie in (0, 1), got " +
                                std::to_string(value));
    }
}

namespace {

std::size_t checked_area(int width, int height) {
    if (width < 1 || height < 1) {
        throw ContractViolation("edge mask dimensions must be at least 1x1");
    }
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

} // namespace

EdgeMask::EdgeMask(int width, int height)
    : width_(width), height_(height), flags_(checked_area(width, height), 0) {}

void EdgeMask::set_top_edge(int x, int y, bool on) {
    if (!in_range(x, y) || (on && y == 0)) {
        throw ContractViolation("invalid top edge position");
    }
    auto& f = flags_[index(x, y)];
    f = on ? (f | kTop) : (f & ~kTop);
}

void EdgeMask::set_left_edge(int x, int y, bool on) {
    if (!in_range(x, y) || (on && x == 0)) {
        throw ContractViolation("invalid left edge position");
    }
    auto& f = flags_[index(x, y)];
    f = on ? (f | kLeft) : (f & ~kLeft);
}

bool EdgeMask::has_any_edge(int x, int y) const noexcept {
    return top_edge(x, y) || left_edge(x, y) || top_edge(x, y + 1) || left_edge(x + 1, y);
}

EdgeMask detect_edges(const LumaBuffer& luma, EdgeThreshold threshold) {
    const double t = threshold.value();
    EdgeMask mask(luma.width(), luma.height());
    for (int y = 0; y < luma.height(); ++y) {
        for (int x = 0; x < luma.width(); ++x) {
            const double here = luma.at(x, y);
            if (y > 0 && std::abs(here - luma.at(x, y - 1)) > t) {
                mask.set_top_edge(x, y, true);
            }
            if (x > 0 && std::abs(here - luma.at(x - 1, y)) > t) {
                mask.set_left_edge(x, y, true);
            }
        }
    }
    return mask;
}

ImageBuffer render_edge_mask(const EdgeMask& mask) {
    ImageBuffer out(mask.width(), mask.height(), Rgba{0, 0, 0, 255});
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            Rgba& c = out.at(x, y);
            if (mask.top_edge(x, y)) c.r = 255;
            if (mask.left_edge(x, y)) c.g = 255;
        }
    }
    return out;
}

} // namespace slopeaa

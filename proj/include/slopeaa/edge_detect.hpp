#pragma once

#include "slopeaa/image.hpp"

#include <cstdint>
#include <vector>

namespace slopeaa {

/// Luma contrast above which two neighbouring pixels are separated by an edge.
class EdgeThreshold {
public:
    static constexpr double kDefault = 0.1;

    constexpr EdgeThreshold() = default;
    explicit EdgeThreshold(double value);

    double value() const noexcept { return value_; }

private:
    double value_ = kDefault;
};

/// Pixel-level edges. Only the top and left borders of each pixel are stored;
/// the bottom border of (x, y) is top_edge(x, y + 1) and its right border is
/// left_edge(x + 1, y).
class EdgeMask {
public:
    EdgeMask(int width, int height);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    // Out-of-image queries return false so callers can probe past the border.
    bool top_edge(int x, int y) const noexcept {
        return in_range(x, y) && (flags_[index(x, y)] & kTop);
    }
    bool left_edge(int x, int y) const noexcept {
        return in_range(x, y) && (flags_[index(x, y)] & kLeft);
    }

    /// Row 0 cannot carry a top edge and column 0 cannot carry a left edge.
    void set_top_edge(int x, int y, bool on);
    void set_left_edge(int x, int y, bool on);

    bool has_any_edge(int x, int y) const noexcept;

    friend bool operator==(const EdgeMask&, const EdgeMask&) = default;

private:
    static constexpr std::uint8_t kTop = 1;
    static constexpr std::uint8_t kLeft = 2;

    bool in_range(int x, int y) const noexcept {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * width_ + x;
    }

    int width_;
    int height_;
    std::vector<std::uint8_t> flags_;
};

/// Edge wherever |luma difference| strictly exceeds the threshold.
EdgeMask detect_edges(const LumaBuffer& luma, EdgeThreshold threshold);

/// Debug view: red = top edge, green = left edge, yellow = both, black = none.
ImageBuffer render_edge_mask(const EdgeMask& mask);

} // namespace slopeaa

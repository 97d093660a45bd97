#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace slopeaa {

struct Pixel {
    int x = 0;
    int y = 0;

    friend bool operator==(const Pixel&, const Pixel&) = default;
};

struct Rgba {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    std::uint8_t a = 255;

    friend bool operator==(const Rgba&, const Rgba&) = default;
};

/// Row-major RGBA8 raster. Dimensions are fixed at construction.
class ImageBuffer {
public:
    ImageBuffer(int width, int height, Rgba fill = {});
    ImageBuffer(int width, int height, std::vector<Rgba> pixels);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool contains(int x, int y) const noexcept {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }

    const Rgba& at(int x, int y) const { return pixels_[index(x, y)]; }
    Rgba& at(int x, int y) { return pixels_[index(x, y)]; }

    std::span<const Rgba> pixels() const noexcept { return pixels_; }
    std::span<Rgba> pixels() noexcept { return pixels_; }

    friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

private:
    std::size_t index(int x, int y) const;

    int width_;
    int height_;
    std::vector<Rgba> pixels_;
};

/// Per-pixel luma in [0, 1], same layout as the source image.
class LumaBuffer {
public:
    LumaBuffer(int width, int height, std::vector<double> values);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    double at(int x, int y) const {
        return values_[static_cast<std::size_t>(y) * width_ + x];
    }
    std::span<const double> values() const noexcept { return values_; }

private:
    int width_;
    int height_;
    std::vector<double> values_;
};

/// Rec. 709 weights on the stored (gamma-encoded) channels; alpha ignored.
double luma_of(Rgba c) noexcept;
LumaBuffer compute_luma(const ImageBuffer& image);

/// Reads an 8-bit RGB or RGBA PNG. RGB input gets alpha 255.
/// Throws ImageIoError with a distinct kind for missing, unsupported and
/// corrupt files.
ImageBuffer load_image(const std::filesystem::path& path);
void save_image(const ImageBuffer& image, const std::filesystem::path& path);

/// Encodes to an in-memory PNG. Used for byte-level determinism checks.
std::vector<std::uint8_t> encode_png(const ImageBuffer& image);

ImageBuffer mirror_horizontal(const ImageBuffer& image);
ImageBuffer mirror_vertical(const ImageBuffer& image);
ImageBuffer transpose(const ImageBuffer& image);

} // namespace slopeaa

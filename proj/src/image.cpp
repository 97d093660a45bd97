#include "slopeaa/image.hpp"

#include "slopeaa/error.hpp"

#include <png.h>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <string>

namespace slopeaa {

namespace {

constexpr double kLumaR = 0.2126;
constexpr double kLumaG = 0.7152;
constexpr double kLumaB = 0.0722;

void require_dimensions(int width, int height) {
    if (width < 1 || height < 1) {
        throw ContractViolation("image dimensions must be at least 1x1, got " +
                                std::to_string(width) + "x" + std::to_string(height));
    }
}

// png_image owns libpng state until png_image_free; this guard makes sure it
// is released on every exit path.
struct PngImage {
    png_image image{};

    PngImage() {
        image.version = PNG_IMAGE_VERSION;
    }
    ~PngImage() { png_image_free(&image); }
    PngImage(const PngImage&) = delete;
    PngImage& operator=(const PngImage&) = delete;
};

ImageBuffer decode(PngImage& png, const std::string& name) {
    const png_uint_32 fmt = png.image.format;
    if (fmt & PNG_FORMAT_FLAG_LINEAR) {
        throw ImageIoError(ImageIoError::Kind::UnsupportedFormat,
                           name + ": 16-bit PNG is not supported");
    }
    if (fmt & PNG_FORMAT_FLAG_COLORMAP) {
        throw ImageIoError(ImageIoError::Kind::UnsupportedFormat,
                           name + ": palette PNG is not supported");
    }
    if (!(fmt & PNG_FORMAT_FLAG_COLOR)) {
        throw ImageIoError(ImageIoError::Kind::UnsupportedFormat,
                           name + ": grayscale PNG is not supported");
    }
    if (png.image.width > 1u << 15 || png.image.height > 1u << 15) {
        throw ImageIoError(ImageIoError::Kind::UnsupportedFormat,
                           name + ": image too large");
    }

    png.image.format = PNG_FORMAT_RGBA;
    const int width = static_cast<int>(png.image.width);
    const int height = static_cast<int>(png.image.height);
    std::vector<Rgba> pixels(static_cast<std::size_t>(width) * height);
    static_assert(sizeof(Rgba) == 4);
    if (!png_image_finish_read(&png.image, nullptr, pixels.data(), 0, nullptr)) {
        throw ImageIoError(ImageIoError::Kind::CorruptFile,
                           name + ": " + png.image.message);
    }
    return ImageBuffer(width, height, std::move(pixels));
}

} // namespace

ImageBuffer::ImageBuffer(int width, int height, Rgba fill)
    : width_(width), height_(height) {
    require_dimensions(width, height);
    pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

ImageBuffer::ImageBuffer(int width, int height, std::vector<Rgba> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    require_dimensions(width, height);
    if (pixels_.size() != static_cast<std::size_t>(width) * height) {
        throw ContractViolation("pixel count does not match image dimensions");
    }
}

std::size_t ImageBuffer::index(int x, int y) const {
    if (!contains(x, y)) {
        throw ContractViolation("pixel (" + std::to_string(x) + "," + std::to_string(y) +
                                ") outside image");
    }
    return static_cast<std::size_t>(y) * width_ + x;
}

LumaBuffer::LumaBuffer(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
    require_dimensions(width, height);
    if (values_.size() != static_cast<std::size_t>(width) * height) {
        throw ContractViolation("luma count does not match dimensions");
    }
    for (double v : values_) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ContractViolation("luma value outside [0, 1]");
        }
    }
}

double luma_of(Rgba c) noexcept {
    const double y = (kLumaR * c.r + kLumaG * c.g + kLumaB * c.b) / 255.0;
    return std::clamp(y, 0.0, 1.0);
}

LumaBuffer compute_luma(const ImageBuffer& image) {
    std::vector<double> values;
    values.reserve(image.pixels().size());
    for (const Rgba& c : image.pixels()) {
        values.push_back(luma_of(c));
    }
    return LumaBuffer(image.width(), image.height(), std::move(values));
}

ImageBuffer load_image(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw ImageIoError(ImageIoError::Kind::FileNotFound,
                           path.string() + ": no such file");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ImageIoError(ImageIoError::Kind::FileNotFound,
                           path.string() + ": cannot open");
    }
    const std::vector<char> bytes{std::istreambuf_iterator<char>(in),
                                  std::istreambuf_iterator<char>()};

    PngImage png;
    if (!png_image_begin_read_from_memory(&png.image, bytes.data(), bytes.size())) {
        throw ImageIoError(ImageIoError::Kind::CorruptFile,
                           path.string() + ": " + png.image.message);
    }
    return decode(png, path.string());
}

std::vector<std::uint8_t> encode_png(const ImageBuffer& image) {
    PngImage png;
    png.image.width = static_cast<png_uint_32>(image.width());
    png.image.height = static_cast<png_uint_32>(image.height());
    png.image.format = PNG_FORMAT_RGBA;

    png_alloc_size_t size = 0;
    if (!png_image_write_get_memory_size(png.image, size, 0, image.pixels().data(), 0,
                                         nullptr)) {
        throw ImageIoError(ImageIoError::Kind::WriteFailed,
                           std::string("PNG encode failed: ") + png.image.message);
    }
    std::vector<std::uint8_t> out(size);
    if (!png_image_write_to_memory(&png.image, out.data(), &size, 0, image.pixels().data(),
                                   0, nullptr)) {
        throw ImageIoError(ImageIoError::Kind::WriteFailed,
                           std::string("PNG encode failed: ") + png.image.message);
    }
    out.resize(size);
    return out;
}

void save_image(const ImageBuffer& image, const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = encode_png(image);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ImageIoError(ImageIoError::Kind::WriteFailed,
                           path.string() + ": cannot open for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) {
        throw ImageIoError(ImageIoError::Kind::WriteFailed, path.string() + ": write failed");
    }
}

ImageBuffer mirror_horizontal(const ImageBuffer& image) {
    ImageBuffer out(image.width(), image.height());
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            out.at(image.width() - 1 - x, y) = image.at(x, y);
        }
    }
    return out;
}

ImageBuffer mirror_vertical(const ImageBuffer& image) {
    ImageBuffer out(image.width(), image.height());
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            out.at(x, image.height() - 1 - y) = image.at(x, y);
        }
    }
    return out;
}

ImageBuffer transpose(const ImageBuffer& image) {
    ImageBuffer out(image.height(), image.width());
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            out.at(y, x) = image.at(x, y);
        }
    }
    return out;
}

} // namespace slopeaa

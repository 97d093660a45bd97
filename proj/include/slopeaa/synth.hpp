#pragma once

#include "slopeaa/edge_detect.hpp"
#include "slopeaa/image.hpp"
#include "slopeaa/slope_predict.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace slopeaa {

/// Exact fraction with positive denominator, kept in lowest terms.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    /// Accepts "p/q", integers and plain decimals ("0.25", "-3.5").
    static Rational parse(std::string_view text);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string to_string() const;

    friend bool operator==(const Rational&, const Rational&) = default;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// The half-plane y <= k x + b in continuous image coordinates (y grows
/// downward). Pixel (x, y) is sampled at (x + 0.5, y + 0.5); samples exactly on
/// the line count as inside.
struct HalfPlaneScene {
    Rational slope;
    Rational intercept;
    Rgba inside{255, 255, 255, 255};
    Rgba outside{0, 0, 0, 255};
    int width = 64;
    int height = 64;

    /// Throws ContractViolation for bad dimensions or identical colours.
    void validate() const;
};

/// The sweep scene used throughout the quality checks: a line of slope k
/// through the centre of a width x height image.
HalfPlaneScene centered_scene(Rational slope, int width, int height);

ImageBuffer rasterize_halfplane(const HalfPlaneScene& scene);

/// Fraction of each pixel's S x S sub-sample grid inside the half-plane,
/// row-major.
std::vector<double> supersample_coverage(const HalfPlaneScene& scene, int samples);

struct ReferenceImage {
    ImageBuffer image;
    int samples = 0;
};

inline constexpr int kDefaultSupersample = 16;

/// Ground truth: each pixel mixes the two colours by its sub-sample coverage.
/// Requires samples >= 4.
ReferenceImage supersample_reference(const HalfPlaneScene& scene,
                                     int samples = kDefaultSupersample);

/// A column where the rasterized boundary drops by one row: the vertical edge
/// at x = position separates a column whose boundary is on edge line
/// `line_before` from one whose boundary is on `line_after`.
struct StepEndpoint {
    int position = 0;
    int line_before = 0;
    int line_after = 0;

    friend bool operator==(const StepEndpoint&, const StepEndpoint&) = default;
};

/// Drops computed from the line equation, left to right. Requires 0 < k < 1.
std::vector<StepEndpoint> true_step_endpoints(const HalfPlaneScene& scene);

struct BruteForceResult {
    int position = 0;
    int line = 0;
    int steps = 0;
    std::int64_t probes = 0;  // one per two pixels examined
};

/// Reference endpoint search: walks every boundary pixel of each following
/// step, accepting any width, and stops at the first step that does not end
/// with the starting crossing pattern or after `budget` steps.
BruteForceResult brute_force_extend(const EdgeMask& mask, const RunEndpoint& start,
                                    int direction, int budget);

} // namespace slopeaa

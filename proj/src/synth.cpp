#include "slopeaa/synth.hpp"

#include "slopeaa/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>

namespace slopeaa {

namespace {

__extension__ typedef __int128 Wide;

Wide floor_div(Wide a, Wide b) {
    Wide q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t parse_int(std::string_view s) {
    std::int64_t v = 0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || first == last) {
        throw ContractViolation("not a number: '" + std::string(s) + "'");
    }
    return v;
}

// Point (xn / d, yn / d) lies in the half-plane y <= k x + b.
bool inside(const HalfPlaneScene& s, std::int64_t xn, std::int64_t yn, std::int64_t d) {
    const Wide pk = s.slope.num(), qk = s.slope.den();
    const Wide pb = s.intercept.num(), qb = s.intercept.den();
    return Wide(yn) * qk * qb <= pk * xn * qb + pb * qk * d;
}

std::uint8_t mix(std::uint8_t in, std::uint8_t out, double coverage) {
    const double v = coverage * in + (1.0 - coverage) * out;
    return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw ContractViolation("rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / (g == 0 ? 1 : g);
    den_ = den / (g == 0 ? 1 : g);
}

Rational Rational::parse(std::string_view text) {
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    }
    const auto dot = text.find('.');
    if (dot == std::string_view::npos) {
        return Rational(parse_int(text));
    }
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 9 ||
        !std::all_of(frac.begin(), frac.end(), [](char c) { return std::isdigit(c); })) {
        throw ContractViolation("unsupported decimal: '" + std::string(text) + "'");
    }
    std::string_view whole = text.substr(0, dot);
    const bool negative = !whole.empty() && whole.front() == '-';
    if (negative || (!whole.empty() && whole.front() == '+')) whole.remove_prefix(1);
    const std::int64_t w = whole.empty() ? 0 : parse_int(whole);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const std::int64_t magnitude = w * scale + parse_int(frac);
    return Rational(negative ? -magnitude : magnitude, scale);
}

std::string Rational::to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

void HalfPlaneScene::validate() const {
    if (width < 1 || height < 1) {
        throw ContractViolation("scene dimensions must be at least 1x1");
    }
    if (inside == outside) {
        throw ContractViolation("scene colours must differ");
    }
}

HalfPlaneScene centered_scene(Rational slope, int width, int height) {
    HalfPlaneScene s;
    s.slope = slope;
    s.width = width;
    s.height = height;
    // b = H/2 - k W/2
    s.intercept = Rational(height * slope.den() - slope.num() * width, 2 * slope.den());
    return s;
}

ImageBuffer rasterize_halfplane(const HalfPlaneScene& scene) {
    scene.validate();
    ImageBuffer image(scene.width, scene.height, scene.outside);
    for (int y = 0; y < scene.height; ++y) {
        for (int x = 0; x < scene.width; ++x) {
            if (inside(scene, 2 * x + 1, 2 * y + 1, 2)) image.at(x, y) = scene.inside;
        }
    }
    return image;
}

std::vector<double> supersample_coverage(const HalfPlaneScene& scene, int samples) {
    scene.validate();
    if (samples < 1) {
        throw ContractViolation("sample count must be positive");
    }
    const std::int64_t s = samples;
    std::vector<double> coverage(static_cast<std::size_t>(scene.width) * scene.height);
    for (int y = 0; y < scene.height; ++y) {
        for (int x = 0; x < scene.width; ++x) {
            int count = 0;
            for (std::int64_t i = 0; i < s; ++i) {
                for (std::int64_t j = 0; j < s; ++j) {
                    if (inside(scene, 2 * s * x + 2 * i + 1, 2 * s * y + 2 * j + 1, 2 * s)) {
                        ++count;
                    }
                }
            }
            coverage[static_cast<std::size_t>(y) * scene.width + x] =
                static_cast<double>(count) / static_cast<double>(s * s);
        }
    }
    return coverage;
}

ReferenceImage supersample_reference(const HalfPlaneScene& scene, int samples) {
    if (samples < 4) {
        throw ContractViolation("reference supersampling needs at least 4 samples per axis");
    }
    const std::vector<double> coverage = supersample_coverage(scene, samples);
    ImageBuffer image(scene.width, scene.height);
    for (int y = 0; y < scene.height; ++y) {
        for (int x = 0; x < scene.width; ++x) {
            const double c = coverage[static_cast<std::size_t>(y) * scene.width + x];
            Rgba& px = image.at(x, y);
            px.r = mix(scene.inside.r, scene.outside.r, c);
            px.g = mix(scene.inside.g, scene.outside.g, c);
            px.b = mix(scene.inside.b, scene.outside.b, c);
            px.a = mix(scene.inside.a, scene.outside.a, c);
        }
    }
    return {std::move(image), samples};
}

std::vector<StepEndpoint> true_step_endpoints(const HalfPlaneScene& scene) {
    scene.validate();
    const Rational& k = scene.slope;
    if (!(k.num() > 0 && k.num() < k.den())) {
        throw ContractViolation("true_step_endpoints needs 0 < k < 1; mirror or transpose "
                                "the scene for other slopes");
    }
    const Wide pk = k.num(), qk = k.den();
    const Wide pb = scene.intercept.num(), qb = scene.intercept.den();
    // Inside rows of column x: y + 1/2 <= k (x + 1/2) + b, so the column holds
    // floor(k (x + 1/2) + b + 1/2) of them, clamped to the image.
    auto boundary = [&](int x) {
        const Wide num = pk * (2 * x + 1) * qb + 2 * pb * qk + qk * qb;
        const Wide rows = floor_div(num, 2 * qk * qb);
        return static_cast<int>(std::clamp<Wide>(rows, 0, scene.height));
    };

    std::vector<StepEndpoint> drops;
    int previous = boundary(0);
    for (int x = 1; x < scene.width; ++x) {
        const int current = boundary(x);
        if (current > previous) drops.push_back({x, previous, current});
        previous = current;
    }
    return drops;
}

BruteForceResult brute_force_extend(const EdgeMask& mask, const RunEndpoint& start,
                                    int direction, int budget) {
    if (direction != 1 && direction != -1) {
        throw ContractViolation("direction must be +1 or -1");
    }
    if (budget < 0) {
        throw ContractViolation("budget must be non-negative");
    }
    const EdgeAxis axis(mask, start.orientation);
    BruteForceResult result{start.position, start.line, 0, 0};
    const int shift = crossing_shift(start.pattern);
    if (shift == 0) return result;

    for (int step = 0; step < budget; ++step) {
        const int line = result.line + shift;
        if (line < 1 || line >= axis.line_count()) break;

        int examined = 0;
        int length = 0;
        int stop = 0;
        if (direction > 0) {
            int x = result.position;
            while (x < axis.along_size() && axis.parallel(x, line)) {
                ++x;
                ++examined;
            }
            length = x - result.position;
            stop = x;
        } else {
            int x = result.position - 1;
            while (x >= 0 && axis.parallel(x, line)) {
                --x;
                ++examined;
            }
            length = result.position - 1 - x;
            stop = x + 1;
        }
        ++examined;  // the pixel that ended the walk
        result.probes += (examined + 1) / 2;

        if (length == 0 || axis.pattern_at(stop, line) != start.pattern) break;
        result.position = stop;
        result.line = line;
        ++result.steps;
    }
    return result;
}

} // namespace slopeaa

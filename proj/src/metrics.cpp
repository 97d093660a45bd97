#include "slopeaa/metrics.hpp"

#include "slopeaa/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace slopeaa {

double psnr(const ImageBuffer& a, const ImageBuffer& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw ContractViolation("psnr needs images of equal size");
    }
    std::int64_t sum = 0;
    const auto pa = a.pixels();
    const auto pb = b.pixels();
    for (std::size_t i = 0; i < pa.size(); ++i) {
        const int dr = pa[i].r - pb[i].r;
        const int dg = pa[i].g - pb[i].g;
        const int db = pa[i].b - pb[i].b;
        sum += dr * dr + dg * dg + db * db;
    }
    if (sum == 0) return std::numeric_limits<double>::infinity();
    const double mse = static_cast<double>(sum) / (3.0 * static_cast<double>(pa.size()));
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

Deviation endpoint_deviation(std::span<const int> predicted, std::span<const int> truth) {
    if (truth.empty()) {
        throw ContractViolation("endpoint_deviation needs a non-empty truth set");
    }
    if (predicted.size() != truth.size()) {
        throw ContractViolation("endpoint_deviation needs one prediction per true endpoint");
    }
    Deviation d;
    double total = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double e = std::abs(predicted[i] - truth[i]);
        total += e;
        d.max = std::max(d.max, e);
    }
    d.mean = total / static_cast<double>(truth.size());
    return d;
}

} // namespace slopeaa

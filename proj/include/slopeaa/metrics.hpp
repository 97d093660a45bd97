#pragma once

#include "slopeaa/image.hpp"

#include <cstdint>
#include <optional>
#include <span>

namespace slopeaa {

struct MetricsReport {
    std::optional<double> psnr_db;
    std::optional<double> mean_endpoint_deviation;
    std::optional<double> max_endpoint_deviation;
    std::int64_t total_pattern_probes = 0;
    int runs_extended = 0;
};

/// 8-bit PSNR over the RGB channels; +infinity for identical images.
/// Throws ContractViolation on a size mismatch.
double psnr(const ImageBuffer& a, const ImageBuffer& b);

struct Deviation {
    double mean = 0.0;
    double max = 0.0;
};

/// Pairwise |predicted[i] - truth[i]| along the run axis, aggregated.
/// Throws ContractViolation if truth is empty or the lengths differ.
Deviation endpoint_deviation(std::span<const int> predicted, std::span<const int> truth);

} // namespace slopeaa

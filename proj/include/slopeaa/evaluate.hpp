#pragma once

#include "slopeaa/metrics.hpp"
#include "slopeaa/pipeline.hpp"
#include "slopeaa/synth.hpp"

#include <vector>

namespace slopeaa {

/// Compares each endpoint search the pipeline ran (or, in LocalMlaa mode,
/// would have run) on a half-plane scene with the analytic drop the same
/// number of steps away. Horizontal extendable runs only; needs 0 < k < 1.
/// Throws ContractViolation if the scene produced no such run.
Deviation scene_endpoint_deviation(const HalfPlaneScene& scene, const PipelineResult& result,
                                   SearchBudget budget);

/// Rasterizes the scene, runs the pipeline and fills in PSNR against the
/// supersampled reference plus endpoint deviation.
MetricsReport evaluate_scene(const HalfPlaneScene& scene, const PipelineConfig& config,
                             int samples = kDefaultSupersample);

/// The slope set used for the aggregate quality comparison.
std::vector<Rational> quality_sweep_slopes();

} // namespace slopeaa

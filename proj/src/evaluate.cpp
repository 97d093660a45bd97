#include "slopeaa/evaluate.hpp"

#include "slopeaa/error.hpp"

#include <algorithm>

namespace slopeaa {

Deviation scene_endpoint_deviation(const HalfPlaneScene& scene, const PipelineResult& result,
                                   SearchBudget budget) {
    const std::vector<StepEndpoint> drops = true_step_endpoints(scene);
    const int n = budget.cycles();
    std::vector<int> predicted;
    std::vector<int> truth;

    auto find_drop = [&](int position, int line, bool line_is_before) -> int {
        for (std::size_t i = 0; i < drops.size(); ++i) {
            const StepEndpoint& d = drops[i];
            if (d.position == position && (line_is_before ? d.line_before : d.line_after) == line) {
                return static_cast<int>(i);
            }
        }
        throw ContractViolation("run end at " + std::to_string(position) + " on line " +
                                std::to_string(line) + " is not a drop of the scene");
    };

    for (const RunRecord& r : result.runs) {
        if (!r.extendable || r.orientation != Orientation::Horizontal) continue;
        const int last = static_cast<int>(drops.size()) - 1;

        const int at_pos = find_drop(r.span.end, r.span.line, true);
        truth.push_back(drops[static_cast<std::size_t>(std::min(at_pos + n, last))].position);
        predicted.push_back(r.pos ? r.pos->position : r.span.end);

        const int at_neg = find_drop(r.span.begin, r.span.line, false);
        truth.push_back(drops[static_cast<std::size_t>(std::max(at_neg - n, 0))].position);
        predicted.push_back(r.neg ? r.neg->position : r.span.begin);
    }
    return endpoint_deviation(predicted, truth);
}

MetricsReport evaluate_scene(const HalfPlaneScene& scene, const PipelineConfig& config,
                             int samples) {
    const ImageBuffer input = rasterize_halfplane(scene);
    const ReferenceImage reference = supersample_reference(scene, samples);
    const PipelineResult result = run_pipeline(input, config);
    MetricsReport report = result.metrics;
    report.psnr_db = psnr(result.image, reference.image);
    if (config.mode != AaMode::None) {
        const Deviation d = scene_endpoint_deviation(scene, result, config.max_cycles);
        report.mean_endpoint_deviation = d.mean;
        report.max_endpoint_deviation = d.max;
    }
    return report;
}

std::vector<Rational> quality_sweep_slopes() {
    return {Rational(1, 2), Rational(1, 3), Rational(1, 4), Rational(1, 5), Rational(1, 6),
            Rational(1, 7), Rational(1, 8), Rational(2, 7), Rational(3, 8), Rational(2, 5)};
}

} // namespace slopeaa

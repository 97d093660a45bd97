#include "slopeaa/bench.hpp"

#include "slopeaa/error.hpp"
#include "slopeaa/evaluate.hpp"
#include "slopeaa/synth.hpp"

#include <array>
#include <limits>
#include <ostream>

namespace slopeaa {

double BenchRow::mean_slope_probes() const {
    return searches == 0 ? 0.0 : static_cast<double>(slope_probes) / searches;
}

double BenchRow::mean_brute_probes() const {
    return searches == 0 ? 0.0 : static_cast<double>(brute_probes) / searches;
}

double BenchRow::ratio() const {
    if (slope_probes == 0) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(brute_probes) / static_cast<double>(slope_probes);
}

BenchRow bench_scene(const BenchScene& scene, SearchBudget budget, EdgeThreshold threshold,
                     int search_cap) {
    const EdgeMask mask = detect_edges(compute_luma(scene.image), threshold);
    const RunCache cache(mask);
    BenchRow row;
    row.scene = scene.name;
    row.cycles = budget.cycles();

    int run_id = 0;
    for (Orientation o : {Orientation::Horizontal, Orientation::Vertical}) {
        for (const RunSpan& span : cache.runs(o)) {
            const int id = run_id++;
            if (classify_shape(span.pattern_neg, span.pattern_pos) != LineShape::Z) continue;
            if (span.length() < 2 || span.length() - 1 > search_cap) continue;

            const std::array<RunEndpoint, 2> ends{
                RunEndpoint{o, span.line, span.begin, span.pattern_neg},
                RunEndpoint{o, span.line, span.end, span.pattern_pos}};
            for (int k = 0; k < 2; ++k) {
                const int dir = k == 0 ? -1 : 1;
                const RunEndpoint& start = ends[static_cast<std::size_t>(k)];
                const CorrectedEndpoint fast =
                    extend_endpoint(cache, start, span.length(), dir, budget);
                const BruteForceResult slow =
                    brute_force_extend(mask, start, dir, budget.cycles());
                if (fast.probes_used > budget.cycles() + 2) {
                    throw ContractViolation("slope search spent " +
                                            std::to_string(fast.probes_used) +
                                            " probes with N = " +
                                            std::to_string(budget.cycles()));
                }
                BenchSearch s;
                s.run_id = id;
                s.direction = dir;
                s.width = span.length();
                s.slope_probes = fast.probes_used;
                s.brute_probes = slow.probes;
                s.slope_steps = fast.steps_absorbed;
                s.brute_steps = slow.steps;
                s.agree = fast.position == slow.position && fast.line == slow.line;

                ++row.searches;
                row.slope_probes += s.slope_probes;
                row.brute_probes += s.brute_probes;
                row.max_slope_probes = std::max(row.max_slope_probes, s.slope_probes);
                if (s.agree) ++row.agreements;
                row.detail.push_back(s);
            }
        }
    }
    return row;
}

std::vector<BenchScene> builtin_bench_scenes() {
    std::vector<Rational> slopes = quality_sweep_slopes();
    slopes.emplace_back(1, 16);
    std::vector<BenchScene> scenes;
    for (const Rational& k : slopes) {
        const HalfPlaneScene s = centered_scene(k, 128, 128);
        scenes.push_back({"slope_" + std::to_string(k.num()) + "_" + std::to_string(k.den()),
                          rasterize_halfplane(s)});
    }
    return scenes;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "schema_version,scene,cycles,searches,slope_probes,brute_probes,"
           "mean_slope_probes,mean_brute_probes,max_slope_probes,probe_bound,ratio,"
           "agreements\n";
    for (const BenchRow& r : rows) {
        out << kBenchSchemaVersion << ',' << r.scene << ',' << r.cycles << ',' << r.searches
            << ',' << r.slope_probes << ',' << r.brute_probes << ',' << r.mean_slope_probes()
            << ',' << r.mean_brute_probes() << ',' << r.max_slope_probes << ','
            << r.cycles + 2 << ',';
        const double ratio = r.ratio();
        if (ratio == ratio) out << ratio;
        out << ',' << r.agreements << '\n';
    }
}

void write_bench_detail_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "schema_version,scene,cycles,run_id,direction,width,slope_probes,brute_probes,"
           "slope_steps,brute_steps,agree\n";
    for (const BenchRow& r : rows) {
        for (const BenchSearch& s : r.detail) {
            out << kBenchSchemaVersion << ',' << r.scene << ',' << r.cycles << ',' << s.run_id
                << ',' << s.direction << ',' << s.width << ',' << s.slope_probes << ','
                << s.brute_probes << ',' << s.slope_steps << ',' << s.brute_steps << ','
                << (s.agree ? 1 : 0) << '\n';
        }
    }
}

} // namespace slopeaa

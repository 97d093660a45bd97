#include "slopeaa/pipeline.hpp"

#include "parallel.hpp"
#include "slopeaa/error.hpp"

#include <array>
#include <ostream>
#include <string>

namespace slopeaa {

namespace {

constexpr std::array<Orientation, 2> kOrientations{Orientation::Horizontal,
                                                   Orientation::Vertical};

struct RunOutput {
    RunRecord record;
    std::vector<BlendWeight> weights;
    std::int64_t probes = 0;
};

EdgeRun full_run(const EdgeAxis& axis, const RunSpan& span) {
    EdgeRun run;
    run.orientation = axis.orientation();
    run.anchor = axis.to_pixel(span.begin, span.line);
    run.d_neg = 0;
    run.d_pos = span.length() - 1;
    run.pattern_neg = span.pattern_neg;
    run.pattern_pos = span.pattern_pos;
    return run;
}

void append_coverage(const std::vector<CorrectedSegment>& segments,
                     std::vector<BlendWeight>& out) {
    for (const CorrectedSegment& s : segments) {
        const std::vector<BlendWeight> w = coverage_areas(s);
        out.insert(out.end(), w.begin(), w.end());
    }
}

RunOutput process_run(const RunCache& cache, Orientation o, const RunSpan& span,
                      const PipelineConfig& config) {
    const EdgeAxis axis = cache.axis(o);
    const int cap = config.search_cap;
    RunOutput out;
    RunRecord& rec = out.record;
    rec.orientation = o;
    rec.span = span;
    rec.shape = classify_shape(span.pattern_neg, span.pattern_pos);

    const bool fully_visible = span.length() - 1 <= cap;
    rec.extendable = fully_visible && rec.shape == LineShape::Z && span.length() >= 2;

    const EdgeRun run = full_run(axis, span);
    if (fully_visible) {
        // Every pixel of the run sees both of its ends.
        if (rec.extendable && config.mode == AaMode::SlopeMlaa) {
            const RunEndpoint neg{o, span.line, span.begin, span.pattern_neg};
            const RunEndpoint pos{o, span.line, span.end, span.pattern_pos};
            rec.neg = extend_endpoint(cache, neg, span.length(), -1, config.max_cycles);
            rec.pos = extend_endpoint(cache, pos, span.length(), +1, config.max_cycles);
            out.probes = rec.neg->probes_used + rec.pos->probes_used;
        }
        append_coverage(build_segments(run, rec.neg, rec.pos), out.weights);
        return out;
    }

    // Long run: each pixel works from its own capped view.
    const std::vector<CorrectedSegment> whole = build_segments(run);
    std::vector<BlendWeight> whole_weights;
    append_coverage(whole, whole_weights);
    for (int along = span.begin; along < span.end; ++along) {
        const EdgeRun view = cache.view(axis.to_pixel(along, span.line), o, cap);
        std::vector<BlendWeight> local;
        if (view.truncated()) {
            append_coverage(build_segments(view), local);
        } else {
            local = whole_weights;
        }
        for (const BlendWeight& w : local) {
            if (axis.along_of(w.pixel) == along) out.weights.push_back(w);
        }
    }
    return out;
}

Orientation weight_orientation(const BlendWeight& w) {
    return w.neighbor == Neighbor::Above || w.neighbor == Neighbor::Below
               ? Orientation::Horizontal
               : Orientation::Vertical;
}

} // namespace

std::string_view to_string(AaMode mode) noexcept {
    switch (mode) {
    case AaMode::None: return "none";
    case AaMode::LocalMlaa: return "mlaa";
    case AaMode::SlopeMlaa: return "slope";
    }
    return "?";
}

AaMode parse_mode(std::string_view text) {
    if (text == "none") return AaMode::None;
    if (text == "mlaa") return AaMode::LocalMlaa;
    if (text == "slope") return AaMode::SlopeMlaa;
    throw ContractViolation("unknown mode '" + std::string(text) + "'");
}

void PipelineConfig::validate() const {
    if (search_cap < 1) {
        throw ContractViolation("search cap must be at least 1");
    }
    if (threads < 0) {
        throw ContractViolation("thread count must be non-negative");
    }
}

PipelineResult run_pipeline(const ImageBuffer& image, const PipelineConfig& config) {
    config.validate();
    EdgeMask mask = detect_edges(compute_luma(image), config.threshold);
    if (config.mode == AaMode::None) {
        return {image, std::move(mask), {}, {}, {}};
    }

    const RunCache cache(mask);
    std::vector<std::pair<Orientation, std::size_t>> order;
    for (Orientation o : kOrientations) {
        for (std::size_t i = 0; i < cache.runs(o).size(); ++i) order.emplace_back(o, i);
    }

    std::vector<RunOutput> outputs(order.size());
    detail::parallel_for(order.size(), config.threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const auto [o, id] = order[i];
            outputs[i] = process_run(cache, o, cache.runs(o)[id], config);
        }
    });

    // 0: no edge, 1: horizontal, 2: vertical
    const int w = image.width();
    const int h = image.height();
    std::vector<std::uint8_t> dominant(static_cast<std::size_t>(w) * h, 0);
    detail::parallel_for(static_cast<std::size_t>(h), config.threads,
                         [&](std::size_t b, std::size_t e) {
        for (std::size_t y = b; y < e; ++y) {
            for (int x = 0; x < w; ++x) {
                const Pixel p{x, static_cast<int>(y)};
                if (!mask.has_any_edge(p.x, p.y)) continue;
                const Orientation d = dominant_orientation(cache, p, config.search_cap);
                dominant[y * w + x] = d == Orientation::Horizontal ? 1 : 2;
            }
        }
    });

    PipelineResult result{image, std::move(mask), {}, {}, {}};
    result.runs.reserve(outputs.size());
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        RunOutput& out = outputs[i];
        out.record.id = static_cast<int>(i);
        result.metrics.total_pattern_probes += out.probes;
        const bool moved = (out.record.neg && out.record.neg->steps_absorbed > 0) ||
                           (out.record.pos && out.record.pos->steps_absorbed > 0);
        if (moved) ++result.metrics.runs_extended;
        for (const BlendWeight& bw : out.weights) {
            const std::uint8_t d =
                dominant[static_cast<std::size_t>(bw.pixel.y) * w + bw.pixel.x];
            const std::uint8_t want = weight_orientation(bw) == Orientation::Horizontal ? 1 : 2;
            if (d == want) result.weights.push_back(bw);
        }
        result.runs.push_back(std::move(out.record));
    }
    result.image = blend(image, result.weights);
    return result;
}

void write_runs_csv(std::ostream& out, const PipelineResult& result) {
    out << "id,orientation,line,begin,end,length,pattern_neg,pattern_pos,shape,extendable,"
           "neg_position,neg_line,neg_steps,neg_probes,pos_position,pos_line,pos_steps,"
           "pos_probes\n";
    auto endpoint = [&](const std::optional<CorrectedEndpoint>& e) {
        if (!e) {
            out << ",,,";
            return;
        }
        out << e->position << ',' << e->line << ',' << e->steps_absorbed << ','
            << e->probes_used;
    };
    for (const RunRecord& r : result.runs) {
        out << r.id << ',' << to_string(r.orientation) << ',' << r.span.line << ','
            << r.span.begin << ',' << r.span.end << ',' << r.span.length() << ','
            << to_string(r.span.pattern_neg) << ',' << to_string(r.span.pattern_pos) << ','
            << to_string(r.shape) << ',' << (r.extendable ? 1 : 0) << ',';
        endpoint(r.neg);
        out << ',';
        endpoint(r.pos);
        out << '\n';
    }
}

} // namespace slopeaa

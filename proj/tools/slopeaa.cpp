#include "CLI11.hpp"

#include "slopeaa/bench.hpp"
#include "slopeaa/error.hpp"
#include "slopeaa/metrics.hpp"
#include "slopeaa/pipeline.hpp"
#include "slopeaa/synth.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace slopeaa;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kIo = 2, kContract = 3 };

int parse_int(const std::string& text, const char* what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw CLI::ValidationError(what, "not an integer: '" + text + "'");
    }
    return v;
}

// "WxH"
std::pair<int, int> parse_size(const std::string& text) {
    const auto x = text.find_first_of("xX");
    if (x == std::string::npos) {
        throw CLI::ValidationError("--size", "expected WxH, got '" + text + "'");
    }
    return {parse_int(text.substr(0, x), "--size"), parse_int(text.substr(x + 1), "--size")};
}

// RRGGBB or RRGGBBAA, optional leading '#'
Rgba parse_color(std::string text) {
    if (!text.empty() && text.front() == '#') text.erase(0, 1);
    if (text.size() != 6 && text.size() != 8) {
        throw CLI::ValidationError("color", "expected RRGGBB or RRGGBBAA, got '" + text + "'");
    }
    auto byte = [&](std::size_t i) {
        unsigned v = 0;
        auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + i + 2, v, 16);
        if (ec != std::errc{} || ptr != text.data() + i + 2) {
            throw CLI::ValidationError("color", "bad hex digits in '" + text + "'");
        }
        return static_cast<std::uint8_t>(v);
    };
    return {byte(0), byte(2), byte(4), text.size() == 8 ? byte(6) : std::uint8_t{255}};
}

// "a..b", "a,b,c" or a single value
std::vector<int> parse_cycles(const std::string& text) {
    std::vector<int> out;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        const int lo = parse_int(text.substr(0, dots), "--cycles");
        const int hi = parse_int(text.substr(dots + 2), "--cycles");
        if (hi < lo) throw CLI::ValidationError("--cycles", "empty range '" + text + "'");
        for (int n = lo; n <= hi; ++n) out.push_back(n);
        return out;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        out.push_back(parse_int(text.substr(start, comma - start), "--cycles"));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ImageIoError(ImageIoError::Kind::WriteFailed, "cannot write '" + path + "'");
    }
    return out;
}

void print_psnr(const char* label, double db) {
    std::cout << label << '=' << db << '\n';
}

struct ProcessArgs {
    std::string in, out, mode = "slope";
    double threshold = EdgeThreshold::kDefault;
    int max_cycles = SearchBudget::kDefaultCycles;
    int search_cap = kDefaultSearchCap;
    int threads = 1;
    std::string dump_edges, dump_weights, dump_runs;
};

int run_process(const ProcessArgs& a) {
    PipelineConfig config;
    config.threshold = EdgeThreshold(a.threshold);
    config.max_cycles = SearchBudget(a.max_cycles);
    config.search_cap = a.search_cap;
    config.mode = parse_mode(a.mode);
    config.threads = a.threads;

    const ImageBuffer input = load_image(a.in);
    const PipelineResult result = run_pipeline(input, config);
    save_image(result.image, a.out);
    if (!a.dump_edges.empty()) save_image(render_edge_mask(result.mask), a.dump_edges);
    if (!a.dump_weights.empty()) {
        save_image(render_weight_map(input.width(), input.height(), result.weights),
                   a.dump_weights);
    }
    if (!a.dump_runs.empty()) {
        std::ofstream csv = open_output(a.dump_runs);
        write_runs_csv(csv, result);
    }
    std::cout << "runs=" << result.runs.size() << '\n'
              << "runs_extended=" << result.metrics.runs_extended << '\n'
              << "total_pattern_probes=" << result.metrics.total_pattern_probes << '\n';
    return kOk;
}

struct SynthArgs {
    std::string slope, intercept = "0", size = "64x64", out, reference;
    std::string inside = "ffffff", outside = "000000";
    int supersample = kDefaultSupersample;
};

int run_synth(const SynthArgs& a) {
    HalfPlaneScene scene;
    scene.slope = Rational::parse(a.slope);
    scene.intercept = Rational::parse(a.intercept);
    std::tie(scene.width, scene.height) = parse_size(a.size);
    scene.inside = parse_color(a.inside);
    scene.outside = parse_color(a.outside);
    save_image(rasterize_halfplane(scene), a.out);
    if (!a.reference.empty()) {
        save_image(supersample_reference(scene, a.supersample).image, a.reference);
    }
    return kOk;
}

int run_diff(const std::string& a, const std::string& b, const std::string& reference) {
    const ImageBuffer ia = load_image(a);
    const ImageBuffer ib = load_image(b);
    print_psnr("psnr_a_b_db", psnr(ia, ib));
    if (!reference.empty()) {
        const ImageBuffer ref = load_image(reference);
        print_psnr("psnr_a_reference_db", psnr(ia, ref));
        print_psnr("psnr_b_reference_db", psnr(ib, ref));
    }
    return kOk;
}

struct BenchArgs {
    std::string scenes, cycles = "0..8", out, detail;
    double threshold = EdgeThreshold::kDefault;
    int search_cap = kDefaultSearchCap;
};

int run_bench(const BenchArgs& a) {
    std::vector<BenchScene> scenes;
    if (a.scenes.empty()) {
        scenes = builtin_bench_scenes();
    } else {
        if (!fs::is_directory(a.scenes)) {
            throw ImageIoError(ImageIoError::Kind::FileNotFound,
                               "scene directory '" + a.scenes + "' not found");
        }
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(a.scenes)) {
            if (entry.is_regular_file() && entry.path().extension() == ".png") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        for (const fs::path& p : files) {
            scenes.push_back({p.stem().string(), load_image(p.string())});
        }
    }

    std::vector<BenchRow> rows;
    for (const BenchScene& scene : scenes) {
        for (int n : parse_cycles(a.cycles)) {
            rows.push_back(bench_scene(scene, SearchBudget(n), EdgeThreshold(a.threshold),
                                       a.search_cap));
        }
    }
    std::ofstream out = open_output(a.out);
    write_bench_csv(out, rows);
    if (!a.detail.empty()) {
        std::ofstream detail = open_output(a.detail);
        write_bench_detail_csv(detail, rows);
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Slope-predicting morphological anti-aliasing"};
    app.require_subcommand(1);

    ProcessArgs pa;
    auto* process = app.add_subcommand("process", "Anti-alias a PNG image");
    process->add_option("--in", pa.in, "Input PNG")->required();
    process->add_option("--out", pa.out, "Output PNG")->required();
    process->add_option("--mode", pa.mode, "none | mlaa | slope")
        ->check(CLI::IsMember({"none", "mlaa", "slope"}));
    process->add_option("--threshold", pa.threshold, "Luma edge threshold in (0, 1)");
    process->add_option("--max-cycles", pa.max_cycles, "Endpoint search cycles")
        ->check(CLI::NonNegativeNumber);
    process->add_option("--search-cap", pa.search_cap, "Run search distance cap")
        ->check(CLI::PositiveNumber);
    process->add_option("--threads", pa.threads, "Worker threads, 0 = all cores")
        ->check(CLI::NonNegativeNumber);
    process->add_option("--dump-edges", pa.dump_edges, "Write the edge mask as PNG");
    process->add_option("--dump-weights", pa.dump_weights, "Write the blend weights as PNG");
    process->add_option("--dump-runs", pa.dump_runs, "Write the edge runs as CSV");

    SynthArgs sa;
    auto* synth = app.add_subcommand("synth", "Rasterize a half-plane test scene");
    synth->add_option("--slope", sa.slope, "Slope as p/q or decimal")->required();
    synth->add_option("--intercept", sa.intercept, "Intercept in pixels");
    synth->add_option("--size", sa.size, "WxH");
    synth->add_option("--out", sa.out, "Output PNG")->required();
    synth->add_option("--reference", sa.reference, "Also write a supersampled reference");
    synth->add_option("--supersample", sa.supersample, "Samples per axis, at least 4");
    synth->add_option("--inside", sa.inside, "Inside colour, hex");
    synth->add_option("--outside", sa.outside, "Outside colour, hex");

    std::string da, db, dref;
    auto* diff = app.add_subcommand("diff", "PSNR between images");
    diff->add_option("--a", da, "First PNG")->required();
    diff->add_option("--b", db, "Second PNG")->required();
    diff->add_option("--reference", dref, "Reference PNG");

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "Probe counts of slope search vs pixel walk");
    bench->add_option("--scenes", ba.scenes, "Directory of PNG scenes (default: built-in)");
    bench->add_option("--cycles", ba.cycles, "Cycle budgets: a..b or a,b,c");
    bench->add_option("--out", ba.out, "Report CSV")->required();
    bench->add_option("--detail", ba.detail, "Per-search CSV");
    bench->add_option("--threshold", ba.threshold, "Luma edge threshold in (0, 1)");
    bench->add_option("--search-cap", ba.search_cap, "Run search distance cap")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*process) return run_process(pa);
        if (*synth) return run_synth(sa);
        if (*diff) return run_diff(da, db, dref);
        if (*bench) return run_bench(ba);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ImageIoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const ContractViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kContract;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    }
    return kUsage;
}

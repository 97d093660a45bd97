#include "doctest.h"
#include "test_util.hpp"

#include "slopeaa/bench.hpp"
#include "slopeaa/error.hpp"
#include "slopeaa/evaluate.hpp"
#include "slopeaa/pipeline.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace slopeaa;
namespace fs = std::filesystem;

namespace {

PipelineConfig config_for(AaMode mode, int cycles = SearchBudget::kDefaultCycles) {
    PipelineConfig c;
    c.mode = mode;
    c.max_cycles = SearchBudget(cycles);
    return c;
}

ImageBuffer transform(const ImageBuffer& img, int which) {
    switch (which) {
    case 0: return mirror_horizontal(img);
    case 1: return mirror_vertical(img);
    default: return transpose(img);
    }
}

std::vector<ImageBuffer> sample_inputs() {
    std::vector<ImageBuffer> out;
    for (auto [p, q] : {std::pair{1, 3}, {2, 7}, {3, 8}, {1, 6}, {5, 4}}) {
        HalfPlaneScene s = centered_scene(Rational(p, q), 48, 40);
        s.inside = {220, 180, 20, 255};
        s.outside = {10, 40, 90, 200};
        out.push_back(rasterize_halfplane(s));
    }
    std::mt19937 rng(61);
    for (int i = 0; i < 4; ++i) out.push_back(testutil::random_blocks(rng, 37, 29, 2 + i));
    return out;
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "slopeaa_test_pipeline";
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SLOPEAA_CLI_PATH) + " " + args + " > " +
                            (scratch_dir() / "cli_stdout.txt").string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("psnr") {
    const ImageBuffer black(10, 10, testutil::kBlack);
    const ImageBuffer white(10, 10, testutil::kWhite);
    CHECK(std::isinf(psnr(black, black)));
    CHECK(psnr(black, white) == doctest::Approx(0.0));
    ImageBuffer one = black;
    one.at(3, 3).g = 1;
    // MSE = 1 / 300
    CHECK(psnr(black, one) == doctest::Approx(10.0 * std::log10(255.0 * 255.0 * 300.0)));
    // Alpha does not count.
    ImageBuffer alpha = black;
    alpha.at(0, 0).a = 0;
    CHECK(std::isinf(psnr(black, alpha)));
    CHECK_THROWS_AS(psnr(black, ImageBuffer(10, 9)), ContractViolation);
}

TEST_CASE("endpoint deviation") {
    const std::vector<int> truth{3, 7, 12};
    const Deviation perfect = endpoint_deviation(truth, truth);
    CHECK(perfect.mean == 0.0);
    CHECK(perfect.max == 0.0);
    const std::vector<int> off{4, 7, 9};
    const Deviation d = endpoint_deviation(off, truth);
    CHECK(d.mean == doctest::Approx(4.0 / 3));
    CHECK(d.max == 3.0);
    CHECK_THROWS_AS(endpoint_deviation(std::vector<int>{}, std::vector<int>{}),
                    ContractViolation);
    CHECK_THROWS_AS(endpoint_deviation(off, std::vector<int>{1}), ContractViolation);
}

TEST_CASE("mode names") {
    CHECK(parse_mode("none") == AaMode::None);
    CHECK(parse_mode("mlaa") == AaMode::LocalMlaa);
    CHECK(parse_mode("slope") == AaMode::SlopeMlaa);
    CHECK(to_string(AaMode::SlopeMlaa) == "slope");
    CHECK_THROWS_AS(parse_mode("smaa"), ContractViolation);
    PipelineConfig bad;
    bad.search_cap = 0;
    CHECK_THROWS_AS(run_pipeline(ImageBuffer(2, 2), bad), ContractViolation);
}

TEST_CASE("uniform and edge-free images pass through every mode") {
    const std::vector<ImageBuffer> inputs{ImageBuffer(17, 9, Rgba{12, 200, 77, 31}),
                                          ImageBuffer(1, 1, testutil::kWhite)};
    // Luma steps below the threshold are not edges.
    ImageBuffer faint(16, 16, Rgba{100, 100, 100, 255});
    for (int y = 0; y < 16; ++y)
        for (int x = 8; x < 16; ++x) faint.at(x, y) = Rgba{110, 110, 110, 255};
    for (const ImageBuffer& img : {inputs[0], inputs[1], faint}) {
        for (AaMode mode : {AaMode::None, AaMode::LocalMlaa, AaMode::SlopeMlaa}) {
            const PipelineResult r = run_pipeline(img, config_for(mode));
            CHECK(r.image == img);
            CHECK(r.weights.empty());
        }
    }
}

TEST_CASE("mode none returns the input") {
    const HalfPlaneScene s = centered_scene(Rational(1, 3), 64, 64);
    const ImageBuffer img = rasterize_halfplane(s);
    const PipelineResult r = run_pipeline(img, config_for(AaMode::None));
    CHECK(r.image == img);
    const ReferenceImage ref = supersample_reference(s);
    CHECK(*evaluate_scene(s, config_for(AaMode::None)).psnr_db == psnr(img, ref.image));
}

TEST_CASE("anti-aliasing beats the aliased input") {
    for (const Rational& k : quality_sweep_slopes()) {
        const HalfPlaneScene s = centered_scene(k, 64, 64);
        const double none = *evaluate_scene(s, config_for(AaMode::None)).psnr_db;
        CHECK(*evaluate_scene(s, config_for(AaMode::LocalMlaa)).psnr_db > none);
        CHECK(*evaluate_scene(s, config_for(AaMode::SlopeMlaa)).psnr_db > none);
    }
}

TEST_CASE("extension leaves uniform-width lines unchanged") {
    // The crossing midpoints of equal steps are collinear, so the long
    // segment covers each step exactly like the local one.
    for (int q : {2, 3, 5, 8}) {
        const ImageBuffer img = rasterize_halfplane(centered_scene(Rational(1, q), 96, 64));
        const PipelineResult local = run_pipeline(img, config_for(AaMode::LocalMlaa));
        const PipelineResult slope = run_pipeline(img, config_for(AaMode::SlopeMlaa));
        CHECK(slope.metrics.runs_extended > 0);
        CHECK(local.metrics.runs_extended == 0);
        CHECK(local.metrics.total_pattern_probes == 0);
        CHECK(slope.image == local.image);
    }
}

TEST_CASE("extension helps on alternating widths") {
    const HalfPlaneScene s = centered_scene(Rational(2, 7), 128, 128);
    const double local = *evaluate_scene(s, config_for(AaMode::LocalMlaa)).psnr_db;
    const double slope = *evaluate_scene(s, config_for(AaMode::SlopeMlaa)).psnr_db;
    CHECK(slope > local);
}

TEST_CASE("endpoint deviation on sweep scenes") {
    SUBCASE("slope search lands on the true drop") {
        const HalfPlaneScene s = centered_scene(Rational(1, 3), 128, 128);
        for (int n : {4, 16}) {
            const MetricsReport r = evaluate_scene(s, config_for(AaMode::SlopeMlaa, n));
            CHECK(*r.max_endpoint_deviation <= 1.0);
        }
    }
    SUBCASE("local ends fall behind as steps widen") {
        const HalfPlaneScene s = centered_scene(Rational(1, 5), 128, 128);
        const MetricsReport local = evaluate_scene(s, config_for(AaMode::LocalMlaa));
        const MetricsReport slope = evaluate_scene(s, config_for(AaMode::SlopeMlaa));
        CHECK(*local.mean_endpoint_deviation > *slope.mean_endpoint_deviation);
        const MetricsReport wider =
            evaluate_scene(centered_scene(Rational(1, 8), 128, 128), config_for(AaMode::LocalMlaa));
        CHECK(*wider.mean_endpoint_deviation > *local.mean_endpoint_deviation);
    }
}

TEST_CASE("output does not depend on the thread count") {
    for (const ImageBuffer& img : sample_inputs()) {
        PipelineConfig one = config_for(AaMode::SlopeMlaa);
        PipelineConfig many = one;
        many.threads = 5;
        const PipelineResult a = run_pipeline(img, one);
        const PipelineResult b = run_pipeline(img, many);
        CHECK(a.image == b.image);
        CHECK(encode_png(a.image) == encode_png(b.image));
        CHECK(a.weights.size() == b.weights.size());
        CHECK(a.metrics.total_pattern_probes == b.metrics.total_pattern_probes);
        std::ostringstream ca, cb;
        write_runs_csv(ca, a);
        write_runs_csv(cb, b);
        CHECK(ca.str() == cb.str());
    }
}

TEST_CASE("mirroring the input mirrors the output") {
    for (const ImageBuffer& img : sample_inputs()) {
        for (AaMode mode : {AaMode::LocalMlaa, AaMode::SlopeMlaa}) {
            const ImageBuffer out = run_pipeline(img, config_for(mode)).image;
            for (int t = 0; t < 2; ++t) {
                const ImageBuffer flipped = run_pipeline(transform(img, t), config_for(mode)).image;
                CHECK(flipped == transform(out, t));
            }
        }
    }
}

TEST_CASE("transpose commutes except at orientation ties") {
    // A pixel whose horizontal and vertical runs score the same resolves to
    // horizontal in both images, so only those pixels may differ.
    for (const ImageBuffer& img : sample_inputs()) {
        const ImageBuffer t = transpose(img);
        const EdgeMask m = detect_edges(compute_luma(img), EdgeThreshold{});
        const EdgeMask mt = detect_edges(compute_luma(t), EdgeThreshold{});
        const ImageBuffer out = transpose(run_pipeline(img, config_for(AaMode::SlopeMlaa)).image);
        const ImageBuffer flipped = run_pipeline(t, config_for(AaMode::SlopeMlaa)).image;
        for (int y = 0; y < t.height(); ++y) {
            for (int x = 0; x < t.width(); ++x) {
                const bool tie = mt.has_any_edge(x, y) &&
                                 dominant_orientation(mt, {x, y}, 64) == Orientation::Horizontal &&
                                 dominant_orientation(m, {y, x}, 64) == Orientation::Horizontal;
                if (tie) continue;
                CHECK(flipped.at(x, y) == out.at(x, y));
            }
        }
    }
}

TEST_CASE("long runs beyond the search cap") {
    // A shallow line whose steps are longer than the cap.
    const ImageBuffer img = rasterize_halfplane(centered_scene(Rational(1, 40), 160, 16));
    PipelineConfig c = config_for(AaMode::SlopeMlaa);
    c.search_cap = 8;
    const PipelineResult r = run_pipeline(img, c);
    for (const RunRecord& rec : r.runs) {
        if (rec.span.length() - 1 > 8) {
            CHECK_FALSE(rec.extendable);
            CHECK_FALSE(rec.pos);
        }
    }
    CHECK(r.image != img);
    for (const BlendWeight& w : r.weights) CHECK(w.area <= 0.5);
}

TEST_CASE("runs csv") {
    const ImageBuffer img = rasterize_halfplane(centered_scene(Rational(2, 7), 40, 30));
    const PipelineResult r = run_pipeline(img, config_for(AaMode::SlopeMlaa));
    std::ostringstream out;
    write_runs_csv(out, r);
    const std::string csv = out.str();
    CHECK(csv.rfind("id,orientation,line,begin,end", 0) == 0);
    CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == r.runs.size() + 1);
    CHECK(csv.find(",Z,1,") != std::string::npos);
}

TEST_CASE("bench probe counts") {
    SUBCASE("slope 1/8 with four cycles") {
        const BenchScene s{"k8", rasterize_halfplane(centered_scene(Rational(1, 8), 128, 128))};
        const BenchRow row = bench_scene(s, SearchBudget(4));
        REQUIRE(row.searches > 0);
        CHECK(row.max_slope_probes <= 6);
        CHECK(row.agreements == row.searches);
        int full = 0;
        for (const BenchSearch& d : row.detail) {
            if (d.brute_steps < 4) continue;
            ++full;
            // Nine pixels examined per width-8 step, one probe per two.
            CHECK(d.brute_probes == 4 * 5);
            CHECK(d.slope_probes == 4);
        }
        CHECK(full > 0);
        CHECK(row.ratio() > 3.0);
    }
    SUBCASE("zero cycles") {
        const BenchScene s{"k3", rasterize_halfplane(centered_scene(Rational(1, 3), 64, 64))};
        const BenchRow row = bench_scene(s, SearchBudget(0));
        CHECK(row.slope_probes == 0);
        CHECK(row.brute_probes == 0);
        CHECK(std::isnan(row.ratio()));
    }
    SUBCASE("narrow steps gain little") {
        const BenchScene two{"k2", rasterize_halfplane(centered_scene(Rational(1, 2), 128, 128))};
        const BenchScene eight{"k8", rasterize_halfplane(centered_scene(Rational(1, 8), 128, 128))};
        const double r2 = bench_scene(two, SearchBudget(4)).ratio();
        const double r8 = bench_scene(eight, SearchBudget(4)).ratio();
        CHECK(r2 < 2.5);
        CHECK(r2 < r8);
    }
    SUBCASE("csv") {
        std::vector<BenchRow> rows;
        for (int n : {0, 4})
            rows.push_back(bench_scene({"k5", rasterize_halfplane(centered_scene(Rational(1, 5), 64, 64))},
                                       SearchBudget(n)));
        std::ostringstream out, detail;
        write_bench_csv(out, rows);
        write_bench_detail_csv(detail, rows);
        CHECK(out.str().rfind("schema_version,scene,cycles", 0) == 0);
        CHECK(out.str().find("\n1,k5,4,") != std::string::npos);
        CHECK(detail.str().rfind("schema_version,scene,cycles,run_id", 0) == 0);
    }
}

TEST_CASE("cli") {
    const fs::path dir = scratch_dir();
    const std::string scene = (dir / "scene.png").string();
    const std::string ref = (dir / "ref.png").string();
    REQUIRE(run_cli("synth --slope 2/7 --intercept 9.5 --size 60x40 --out " + scene +
                    " --reference " + ref + " --supersample 8") == 0);
    const ImageBuffer img = load_image(scene);
    CHECK(img.width() == 60);
    CHECK(img.height() == 40);
    HalfPlaneScene expect;
    expect.slope = Rational(2, 7);
    expect.intercept = Rational(19, 2);
    expect.width = 60;
    expect.height = 40;
    CHECK(img == rasterize_halfplane(expect));
    CHECK(load_image(ref) == supersample_reference(expect, 8).image);

    const std::string out = (dir / "out.png").string();
    CHECK(run_cli("process --in " + scene + " --out " + out + " --mode slope --dump-edges " +
                  (dir / "e.png").string() + " --dump-weights " + (dir / "w.png").string() +
                  " --dump-runs " + (dir / "runs.csv").string()) == 0);
    CHECK(load_image(out) == run_pipeline(img, config_for(AaMode::SlopeMlaa)).image);
    CHECK(fs::exists(dir / "e.png"));
    CHECK(fs::exists(dir / "w.png"));
    CHECK(read_file(dir / "runs.csv").rfind("id,", 0) == 0);

    CHECK(run_cli("diff --a " + out + " --b " + scene + " --reference " + ref) == 0);
    CHECK(read_file(dir / "cli_stdout.txt").find("psnr_a_reference_db=") != std::string::npos);

    const std::string report = (dir / "bench.csv").string();
    CHECK(run_cli("bench --cycles 0..2 --out " + report) == 0);
    CHECK(read_file(report).rfind("schema_version,", 0) == 0);

    fs::create_directories(dir / "scenes");
    fs::copy_file(scene, dir / "scenes" / "a.png", fs::copy_options::overwrite_existing);
    CHECK(run_cli("bench --scenes " + (dir / "scenes").string() + " --cycles 4 --out " + report +
                  " --detail " + (dir / "detail.csv").string()) == 0);
    CHECK(read_file(report).find(",a,4,") != std::string::npos);

    SUBCASE("exit codes") {
        CHECK(run_cli("") == 1);
        CHECK(run_cli("process --in " + scene) == 1);
        CHECK(run_cli("process --in " + scene + " --out " + out + " --mode fancy") == 1);
        CHECK(run_cli("process --in " + (dir / "missing.png").string() + " --out " + out) == 2);
        CHECK(run_cli("process --in " + scene + " --out " + (dir / "nodir" / "x.png").string()) == 2);
        CHECK(run_cli("process --in " + scene + " --out " + out + " --threshold 1.5") == 3);
        CHECK(run_cli("synth --slope 1/0 --out " + out) == 3);
        CHECK(run_cli("synth --slope 1/3 --size 9 --out " + out) == 1);
        CHECK(run_cli("diff --a " + scene + " --b " + (dir / "w.png").string() + " --reference " + ref) == 0);
    }
}

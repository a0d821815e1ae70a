// oew: reversible grayscale watermarking via odd-even pixel parity.
//
// Subcommands: embed, extract, metrics, bench, gen. Data tables go to stdout
// (tab-separated, one '#'-prefixed header line); diagnostics go to stderr.
// Exit codes: 0 ok, 1 round-trip verification failure (bench), 2 usage or
// I/O or format error, 3 message too large, 4 integrity failure (bad CRC or
// blueprint/image mismatch).

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oew/metrics.hpp"
#include "oew/pnm.hpp"
#include "oew/rng.hpp"
#include "oew/sidecar.hpp"
#include "oew/synth.hpp"
#include "oew/watermark.hpp"

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed on " + path);
    return bytes;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed on " + path);
}

std::string fmt4(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

int exit_code_for(const oew::Error& e) {
    switch (e.code()) {
        case oew::Errc::CrcMismatch:
        case oew::Errc::RangeViolation:
            return 4;
        case oew::Errc::MessageTooLarge:
            return 3;
        default:
            return 2;
    }
}

bool parse_geometry(const std::string& text, Eigen::Index& rows, Eigen::Index& cols) {
    const auto x = text.find('x');
    if (x == std::string::npos || x == 0 || x + 1 >= text.size()) return false;
    try {
        std::size_t used = 0;
        const long r = std::stol(text.substr(0, x), &used);
        if (used != x) return false;
        const long c = std::stol(text.substr(x + 1), &used);
        if (used != text.size() - x - 1) return false;
        if (r < 1 || c < 1) return false;
        rows = r;
        cols = c;
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

// ---------------------------------------------------------------- embed --

struct EmbedOpts {
    std::string cover;
    std::vector<std::string> messages;
    std::string out;
    std::string sidecar;
};

int run_embed(const EmbedOpts& opts) {
    const oew::GrayImage cover = oew::read_graymap(read_file(opts.cover));

    std::vector<oew::BitMatrix> messages;
    messages.reserve(opts.messages.size());
    for (std::size_t k = 0; k < opts.messages.size(); ++k) {
        oew::BitMatrix m = oew::read_bitmap(read_file(opts.messages[k]));
        if (m.rows() > cover.rows() || m.cols() > cover.cols() - 1)
            oew::raise(oew::Errc::MessageTooLarge,
                       "message " + std::to_string(k + 1) + " (" + opts.messages[k] + ") is " +
                           std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                           ", cover " + std::to_string(cover.rows()) + "x" +
                           std::to_string(cover.cols()) + " holds at most " +
                           std::to_string(cover.rows()) + "x" + std::to_string(cover.cols() - 1));
        messages.push_back(std::move(m));
    }

    auto [watermarked, stack] = oew::embed_multilayer(cover, messages);
    write_file(opts.out, oew::write_graymap(watermarked));
    write_file(opts.sidecar, oew::write_sidecar(stack));

    const oew::QualityReport q = oew::quality_report(cover, watermarked);
    std::cout << "# psnr\tmax_abs_diff\tchanged_pixels\n"
              << fmt4(q.psnr) << "\t" << q.max_abs_diff << "\t" << q.changed_pixels << "\n";
    return 0;
}

// -------------------------------------------------------------- extract --

struct ExtractOpts {
    std::string watermarked;
    std::string sidecar;
    std::vector<std::string> out_messages;
    std::string out_cover;
};

int run_extract(const ExtractOpts& opts) {
    const oew::GrayImage watermarked = oew::read_graymap(read_file(opts.watermarked));
    const oew::LayerStack stack = oew::read_sidecar(read_file(opts.sidecar));

    if (opts.out_messages.size() != stack.size()) {
        std::cerr << "oew: sidecar holds " << stack.size() << " layer(s) but "
                  << opts.out_messages.size()
                  << " --out-message path(s) were given; pass one per layer\n";
        return 2;
    }
    if (watermarked.rows() != stack.front().blueprint.rows() ||
        watermarked.cols() != stack.front().blueprint.cols())
        oew::raise(oew::Errc::DimensionMismatch,
                   "watermarked image does not match the sidecar dimensions");

    auto [messages, cover] = oew::extract_multilayer(watermarked, stack);
    for (std::size_t k = 0; k < messages.size(); ++k)
        write_file(opts.out_messages[k], oew::write_bitmap(messages[k]));
    write_file(opts.out_cover, oew::write_graymap(cover));

    std::cout << "# layer\trows\tcols\tbits\n";
    for (std::size_t k = 0; k < messages.size(); ++k)
        std::cout << k + 1 << "\t" << messages[k].rows() << "\t" << messages[k].cols() << "\t"
                  << messages[k].size() << "\n";
    return 0;
}

// -------------------------------------------------------------- metrics --

struct MetricsOpts {
    std::string a;
    std::string b;
    std::string kind = "all";
};

int run_metrics(const MetricsOpts& opts) {
    const auto bytes_a = read_file(opts.a);
    const auto bytes_b = read_file(opts.b);
    const bool gray_a = bytes_a.size() >= 2 && bytes_a[0] == 'P' && bytes_a[1] == '5';
    const bool gray_b = bytes_b.size() >= 2 && bytes_b[0] == 'P' && bytes_b[1] == '5';
    if (gray_a != gray_b) {
        std::cerr << "oew: " << opts.a << " and " << opts.b << " are not the same format\n";
        return 2;
    }

    std::string header;
    std::string row;
    auto add = [&](const std::string& name, const std::string& value) {
        if (!header.empty()) {
            header += "\t";
            row += "\t";
        }
        header += name;
        row += value;
    };

    if (gray_a) {
        const oew::GrayImage a = oew::read_graymap(bytes_a);
        const oew::GrayImage b = oew::read_graymap(bytes_b);
        if (opts.kind == "psnr" || opts.kind == "all") add("psnr", fmt4(oew::psnr(a, b)));
        if (opts.kind == "corr" || opts.kind == "all") add("corr", fmt4(oew::correlation(a, b)));
        if (opts.kind == "diff" || opts.kind == "all") {
            const auto [max_diff, changed] = oew::diff_stats(a, b);
            add("max_abs_diff", std::to_string(max_diff));
            add("changed_pixels", std::to_string(changed));
        }
    } else {
        if (opts.kind == "psnr" || opts.kind == "diff") {
            std::cerr << "oew: --kind " << opts.kind << " needs graymap inputs\n";
            return 2;
        }
        const oew::BitMatrix a = oew::read_bitmap(bytes_a);
        const oew::BitMatrix b = oew::read_bitmap(bytes_b);
        add("corr", fmt4(oew::correlation(a, b)));
    }

    std::cout << "# " << header << "\n" << row << "\n";
    return 0;
}

// ---------------------------------------------------------------- bench --

struct BenchOpts {
    std::string cover_sides = "160,256,512,720,1080";
    std::string message = "160x159";
    int trials = 10;
    std::uint64_t seed = 1;
};

// Reference measurements for a 160x159 payload in the five standard cover
// sizes; printed alongside the analytic expectation when dimensions line up.
const std::map<Eigen::Index, double> kReferencePsnr = {
    {160, 51.1435}, {256, 55.2127}, {512, 61.2482}, {720, 64.2111}, {1080, 67.7214}};

int run_bench(const BenchOpts& opts) {
    Eigen::Index msg_rows = 0;
    Eigen::Index msg_cols = 0;
    if (!parse_geometry(opts.message, msg_rows, msg_cols)) {
        std::cerr << "oew: --message must look like 160x159\n";
        return 2;
    }
    if (opts.trials < 1) {
        std::cerr << "oew: --trials must be >= 1\n";
        return 2;
    }

    std::vector<Eigen::Index> sides;
    std::string token;
    std::istringstream side_stream(opts.cover_sides);
    while (std::getline(side_stream, token, ',')) {
        long side = 0;
        try {
            std::size_t used = 0;
            side = std::stol(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            std::cerr << "oew: bad cover side '" << token << "'\n";
            return 2;
        }
        if (side < 2) {
            std::cerr << "oew: cover side " << side << " is too small\n";
            return 2;
        }
        sides.push_back(side);
    }
    if (sides.empty()) {
        std::cerr << "oew: --cover-sides is empty\n";
        return 2;
    }
    for (const Eigen::Index side : sides)
        if (msg_rows > side || msg_cols > side - 1) {
            std::cerr << "oew: message " << msg_rows << "x" << msg_cols
                      << " does not fit a " << side << "x" << side << " cover\n";
            return 2;
        }

    std::cout << "# cover_side\tmsg_rows\tmsg_cols\ttrials\tmean_psnr\tanalytic_psnr"
                 "\treference_psnr\tcorrelation\n";
    for (const Eigen::Index side : sides) {
        double psnr_sum = 0.0;
        double corr_sum = 0.0;
        for (int trial = 0; trial < opts.trials; ++trial) {
            const std::uint64_t trial_seed =
                oew::mix_seed(oew::mix_seed(opts.seed, static_cast<std::uint64_t>(side)),
                              static_cast<std::uint64_t>(trial));
            const oew::GrayImage cover =
                oew::noise_image(side, side, oew::mix_seed(trial_seed, 0));
            const oew::BitMatrix message =
                oew::random_bits(msg_rows, msg_cols, oew::mix_seed(trial_seed, 1));

            const oew::EmbedResult res = oew::embed(cover, message);
            const oew::BitMatrix extracted =
                oew::extract_message(res.watermarked, msg_rows, msg_cols);
            const oew::GrayImage recovered = oew::recover_cover(res.watermarked, res.blueprint);
            if (!oew::identical(extracted, message) || !oew::identical(recovered, cover)) {
                std::cerr << "oew: round-trip verification failed at side " << side << ", trial "
                          << trial << ", seed " << opts.seed << "\n";
                return 1;
            }
            psnr_sum += oew::psnr(cover, res.watermarked);
            corr_sum += oew::correlation(message, extracted);
        }

        const double analytic = oew::expected_psnr(side, side, msg_rows, msg_cols);
        const auto ref = kReferencePsnr.find(side);
        const bool has_ref = ref != kReferencePsnr.end() && msg_rows == 160 && msg_cols == 159;
        std::cout << side << "\t" << msg_rows << "\t" << msg_cols << "\t" << opts.trials << "\t"
                  << fmt4(psnr_sum / opts.trials) << "\t" << fmt4(analytic) << "\t"
                  << (has_ref ? fmt4(ref->second) : "-") << "\t" << fmt4(corr_sum / opts.trials)
                  << "\n";
    }
    return 0;
}

// ------------------------------------------------------------------ gen --

struct GenOpts {
    std::string kind;
    std::string size;
    std::uint64_t seed = 1;
    std::string out;
};

int run_gen(const GenOpts& opts) {
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    if (!parse_geometry(opts.size, rows, cols)) {
        std::cerr << "oew: --size must look like 160x160\n";
        return 2;
    }
    oew::GrayImage image;
    if (opts.kind == "noise")
        image = oew::noise_image(rows, cols, opts.seed);
    else if (opts.kind == "gradient")
        image = oew::gradient_image(rows, cols);
    else
        image = oew::constant_image(rows, cols);
    write_file(opts.out, oew::write_graymap(image));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reversible odd-even parity watermarking for 8-bit graymaps"};
    app.require_subcommand(1);

    EmbedOpts embed_opts;
    auto* embed = app.add_subcommand(
        "embed", "Embed one bitmap per layer into a cover graymap; writes the watermarked "
                 "graymap plus a sidecar that makes the embedding reversible");
    embed->add_option("--cover", embed_opts.cover, "Cover graymap (P5)")->required();
    embed->add_option("--message", embed_opts.messages,
                      "Message bitmap (P4); repeat for multi-layer, in embed order")
        ->required();
    embed->add_option("--out", embed_opts.out, "Watermarked graymap to write")->required();
    embed->add_option("--sidecar", embed_opts.sidecar, "Sidecar file to write")->required();

    ExtractOpts extract_opts;
    auto* extract = app.add_subcommand(
        "extract", "Recover every layer's message and the original cover from a watermarked "
                   "graymap plus its sidecar");
    extract->add_option("--watermarked", extract_opts.watermarked, "Watermarked graymap (P5)")
        ->required();
    extract->add_option("--sidecar", extract_opts.sidecar, "Sidecar written by embed")->required();
    extract->add_option("--out-message", extract_opts.out_messages,
                        "Output bitmap per layer, in embed order")
        ->required();
    extract->add_option("--out-cover", extract_opts.out_cover, "Recovered cover graymap to write")
        ->required();

    MetricsOpts metrics_opts;
    auto* metrics = app.add_subcommand("metrics", "Compare two graymaps or two bitmaps");
    metrics->add_option("--a", metrics_opts.a, "First file")->required();
    metrics->add_option("--b", metrics_opts.b, "Second file")->required();
    metrics->add_option("--kind", metrics_opts.kind, "Metric to print (default: all)")
        ->check(CLI::IsMember({"psnr", "corr", "diff", "all"}));

    BenchOpts bench_opts;
    auto* bench = app.add_subcommand(
        "bench", "Embed seeded random payloads into seeded random covers, verify every "
                 "round-trip bit-exactly, and report mean PSNR per cover size");
    bench->add_option("--cover-sides", bench_opts.cover_sides, "Comma-separated square sides")
        ->capture_default_str();
    bench->add_option("--message", bench_opts.message, "Payload geometry RxC")
        ->capture_default_str();
    bench->add_option("--trials", bench_opts.trials, "Trials per side")->capture_default_str();
    bench->add_option("--seed", bench_opts.seed, "Base seed (SplitMix64 streams)")
        ->capture_default_str();

    GenOpts gen_opts;
    auto* gen = app.add_subcommand("gen", "Write a deterministic synthetic graymap");
    gen->add_option("--kind", gen_opts.kind, "noise | gradient | constant")
        ->required()
        ->check(CLI::IsMember({"noise", "gradient", "constant"}));
    gen->add_option("--size", gen_opts.size, "Geometry HxW (rows x cols)")->required();
    gen->add_option("--seed", gen_opts.seed, "Seed for noise")->capture_default_str();
    gen->add_option("--out", gen_opts.out, "Output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (embed->parsed()) return run_embed(embed_opts);
        if (extract->parsed()) return run_extract(extract_opts);
        if (metrics->parsed()) return run_metrics(metrics_opts);
        if (bench->parsed()) return run_bench(bench_opts);
        if (gen->parsed()) return run_gen(gen_opts);
    } catch (const oew::Error& e) {
        std::cerr << "oew: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "oew: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

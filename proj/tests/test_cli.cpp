#include <doctest.h>

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oew/pnm.hpp"
#include "oew/sidecar.hpp"
#include "oew/synth.hpp"
#include "oew/watermark.hpp"
#include "subprocess.hpp"

using testutil::run_cli;
using testutil::scratch_dir;

namespace {

std::string path_of(const std::string& name) { return (scratch_dir() / name).string(); }

void dump(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    REQUIRE(out.good());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::uint8_t> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("embed leaves the reference pair byte-identical and reports inf") {
    const auto cover_path = path_of("ref_cover.pgm");
    const auto msg_path = path_of("ref_msg.pbm");
    dump(cover_path, oew::write_graymap(testutil::reference_cover()));
    dump(msg_path, oew::write_bitmap(testutil::reference_message()));

    const auto r = run_cli("embed --cover " + cover_path + " --message " + msg_path + " --out " +
                           path_of("ref_wm.pgm") + " --sidecar " + path_of("ref.oew"));
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == "# psnr\tmax_abs_diff\tchanged_pixels\ninf\t0\t0\n");
    CHECK(slurp(path_of("ref_wm.pgm")) == slurp(cover_path));
}

TEST_CASE("embed then extract round-trips at file level") {
    REQUIRE(run_cli("gen --kind noise --size 24x21 --seed 5 --out " + path_of("c.pgm")).exit_code ==
            0);
    dump(path_of("m1.pbm"), oew::write_bitmap(oew::random_bits(20, 17, 81)));
    dump(path_of("m2.pbm"), oew::write_bitmap(oew::random_bits(24, 20, 82)));

    const auto embed = run_cli("embed --cover " + path_of("c.pgm") + " --message " +
                               path_of("m1.pbm") + " --message " + path_of("m2.pbm") + " --out " +
                               path_of("w.pgm") + " --sidecar " + path_of("s.oew"));
    REQUIRE(embed.exit_code == 0);

    const auto extract = run_cli("extract --watermarked " + path_of("w.pgm") + " --sidecar " +
                                 path_of("s.oew") + " --out-message " + path_of("o1.pbm") +
                                 " --out-message " + path_of("o2.pbm") + " --out-cover " +
                                 path_of("oc.pgm"));
    REQUIRE(extract.exit_code == 0);
    CHECK(extract.out == "# layer\trows\tcols\tbits\n1\t20\t17\t340\n2\t24\t20\t480\n");

    CHECK(slurp(path_of("o1.pbm")) == slurp(path_of("m1.pbm")));
    CHECK(slurp(path_of("o2.pbm")) == slurp(path_of("m2.pbm")));
    CHECK(slurp(path_of("oc.pgm")) == slurp(path_of("c.pgm")));
}

TEST_CASE("embed at full 160x160 capacity prints a psnr near the expected value") {
    REQUIRE(run_cli("gen --kind noise --size 160x160 --seed 11 --out " + path_of("cap.pgm"))
                .exit_code == 0);
    dump(path_of("capm.pbm"), oew::write_bitmap(oew::random_bits(160, 159, 12)));
    const auto r = run_cli("embed --cover " + path_of("cap.pgm") + " --message " +
                           path_of("capm.pbm") + " --out " + path_of("capw.pgm") + " --sidecar " +
                           path_of("caps.oew"));
    REQUIRE(r.exit_code == 0);
    const auto line_end = r.out.find('\n');
    REQUIRE(line_end != std::string::npos);
    const double psnr = std::stod(r.out.substr(line_end + 1));
    CHECK(std::abs(psnr - 51.14) < 0.15);
}

TEST_CASE("embed rejects an oversized message with exit 3") {
    REQUIRE(run_cli("gen --kind constant --size 8x8 --out " + path_of("c8.pgm")).exit_code == 0);
    dump(path_of("m8.pbm"), oew::write_bitmap(oew::random_bits(8, 8, 3)));
    const auto r = run_cli("embed --cover " + path_of("c8.pgm") + " --message " + path_of("m8.pbm") +
                           " --out " + path_of("w8.pgm") + " --sidecar " + path_of("s8.oew"));
    CHECK(r.exit_code == 3);
}

TEST_CASE("extract integrity and usage failures") {
    REQUIRE(run_cli("gen --kind noise --size 12x12 --seed 9 --out " + path_of("ec.pgm")).exit_code ==
            0);
    dump(path_of("em.pbm"), oew::write_bitmap(oew::random_bits(12, 11, 4)));
    REQUIRE(run_cli("embed --cover " + path_of("ec.pgm") + " --message " + path_of("em.pbm") +
                    " --out " + path_of("ew.pgm") + " --sidecar " + path_of("es.oew"))
                .exit_code == 0);

    SUBCASE("corrupted sidecar byte exits 4") {
        auto sidecar = slurp(path_of("es.oew"));
        sidecar[oew::kSidecarHeaderSize + 12] ^= 0x20;
        dump(path_of("es_bad.oew"), sidecar);
        const auto r = run_cli("extract --watermarked " + path_of("ew.pgm") + " --sidecar " +
                               path_of("es_bad.oew") + " --out-message " + path_of("eo.pbm") +
                               " --out-cover " + path_of("eoc.pgm"));
        CHECK(r.exit_code == 4);
    }
    SUBCASE("wrong --out-message count exits 2") {
        const auto r = run_cli("extract --watermarked " + path_of("ew.pgm") + " --sidecar " +
                               path_of("es.oew") + " --out-message " + path_of("x1.pbm") +
                               " --out-message " + path_of("x2.pbm") + " --out-cover " +
                               path_of("eoc.pgm"));
        CHECK(r.exit_code == 2);
    }
    SUBCASE("missing input exits 2") {
        const auto r = run_cli("extract --watermarked " + path_of("nonexistent.pgm") +
                               " --sidecar " + path_of("es.oew") + " --out-message " +
                               path_of("x1.pbm") + " --out-cover " + path_of("eoc.pgm"));
        CHECK(r.exit_code == 2);
    }
    SUBCASE("image/sidecar dimension mismatch exits 2") {
        REQUIRE(run_cli("gen --kind constant --size 10x10 --out " + path_of("small.pgm"))
                    .exit_code == 0);
        const auto r = run_cli("extract --watermarked " + path_of("small.pgm") + " --sidecar " +
                               path_of("es.oew") + " --out-message " + path_of("x1.pbm") +
                               " --out-cover " + path_of("eoc.pgm"));
        CHECK(r.exit_code == 2);
    }
    SUBCASE("well-formed sidecar from a different image trips the range check, exit 4") {
        // all-255 anchors push every add-key magnitude past the top of the range
        dump(path_of("white.pgm"), oew::write_graymap(oew::constant_image(12, 12, 255)));
        const auto r = run_cli("extract --watermarked " + path_of("white.pgm") + " --sidecar " +
                               path_of("es.oew") + " --out-message " + path_of("x1.pbm") +
                               " --out-cover " + path_of("eoc.pgm"));
        CHECK(r.exit_code == 4);
    }
}

TEST_CASE("metrics subcommand") {
    REQUIRE(run_cli("gen --kind noise --size 10x10 --seed 2 --out " + path_of("ma.pgm")).exit_code ==
            0);
    dump(path_of("mb.pbm"), oew::write_bitmap(oew::random_bits(6, 6, 8)));
    dump(path_of("mconst.pbm"), oew::write_bitmap(oew::BitMatrix::Constant(6, 6, true)));

    SUBCASE("identical graymaps have infinite psnr") {
        const auto r =
            run_cli("metrics --a " + path_of("ma.pgm") + " --b " + path_of("ma.pgm") + " --kind psnr");
        REQUIRE(r.exit_code == 0);
        CHECK(r.out == "# psnr\ninf\n");
    }
    SUBCASE("identical bitmaps have correlation 1.0000") {
        const auto r =
            run_cli("metrics --a " + path_of("mb.pbm") + " --b " + path_of("mb.pbm") + " --kind corr");
        REQUIRE(r.exit_code == 0);
        CHECK(r.out == "# corr\n1.0000\n");
    }
    SUBCASE("constant bitmap is a usage error") {
        const auto r = run_cli("metrics --a " + path_of("mconst.pbm") + " --b " + path_of("mb.pbm") +
                               " --kind corr");
        CHECK(r.exit_code == 2);
    }
    SUBCASE("mixed formats are a usage error") {
        const auto r = run_cli("metrics --a " + path_of("ma.pgm") + " --b " + path_of("mb.pbm"));
        CHECK(r.exit_code == 2);
    }
    SUBCASE("diff on graymaps") {
        const auto r = run_cli("metrics --a " + path_of("ma.pgm") + " --b " + path_of("ma.pgm") +
                               " --kind diff");
        REQUIRE(r.exit_code == 0);
        CHECK(r.out == "# max_abs_diff\tchanged_pixels\n0\t0\n");
    }
}

TEST_CASE("gen produces pinned bytes") {
    SUBCASE("gradient") {
        REQUIRE(run_cli("gen --kind gradient --size 2x2 --out " + path_of("g.pgm")).exit_code == 0);
        const auto bytes = slurp(path_of("g.pgm"));
        const std::vector<std::uint8_t> expected = {'P', '5', '\n', '2', ' ', '2',  '\n',
                                                    '2', '5', '5',  '\n', 0,  1, 1, 2};
        CHECK(bytes == expected);
    }
    SUBCASE("constant") {
        REQUIRE(run_cli("gen --kind constant --size 4x4 --out " + path_of("k.pgm")).exit_code == 0);
        const auto bytes = slurp(path_of("k.pgm"));
        REQUIRE(bytes.size() == 11 + 16);
        for (std::size_t i = 11; i < bytes.size(); ++i) CHECK(bytes[i] == 0x80);
    }
    SUBCASE("noise is reproducible") {
        REQUIRE(run_cli("gen --kind noise --size 9x9 --seed 77 --out " + path_of("n1.pgm"))
                    .exit_code == 0);
        REQUIRE(run_cli("gen --kind noise --size 9x9 --seed 77 --out " + path_of("n2.pgm"))
                    .exit_code == 0);
        CHECK(slurp(path_of("n1.pgm")) == slurp(path_of("n2.pgm")));
        REQUIRE(run_cli("gen --kind noise --size 9x9 --seed 78 --out " + path_of("n3.pgm"))
                    .exit_code == 0);
        CHECK(slurp(path_of("n1.pgm")) != slurp(path_of("n3.pgm")));
    }
    SUBCASE("unwritable output exits 2") {
        CHECK(run_cli("gen --kind constant --size 4x4 --out /nonexistent_dir/x.pgm").exit_code == 2);
    }
}

TEST_CASE("bench output is deterministic and validated") {
    SUBCASE("same flags, same bytes") {
        const std::string flags = "bench --cover-sides 32,48 --message 16x15 --trials 1 --seed 42";
        const auto first = run_cli(flags);
        const auto second = run_cli(flags);
        REQUIRE(first.exit_code == 0);
        CHECK(first.out == second.out);
        CHECK(first.out.find("# cover_side") == 0);
    }
    SUBCASE("cover too small for the payload exits 2 before any trial") {
        const auto r = run_cli("bench --cover-sides 128 --message 160x159 --trials 1 --seed 1");
        CHECK(r.exit_code == 2);
    }
    SUBCASE("bad geometry flag exits 2") {
        CHECK(run_cli("bench --message banana").exit_code == 2);
    }
}

TEST_CASE("unknown flags and subcommands exit 2") {
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("embed --no-such-flag x").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
}

#include <gtest/gtest.h>

#include <random>
#include <string>

#include "discont/contour_io.hpp"
#include "discont/netpbm.hpp"
#include "oracles.hpp"

namespace discont {
namespace {

Bytes bytes_of(const std::string& s) { return Bytes(s.begin(), s.end()); }

std::size_t offset_of(const std::string& s, Channel ch = Channel::Gray) {
    try {
        decode_image(bytes_of(s), ch);
    } catch (const FormatError& e) {
        return e.offset();
    }
    ADD_FAILURE() << "no FormatError for: " << s;
    return 0;
}

TEST(Pgm, RoundTripsBinaryAndPlain) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const int maxval = trial % 4 == 0 ? 65535 : (trial % 4 == 1 ? 1000 : 255);
        const auto g = oracle::random_grid(rng, 13, 9, maxval);
        for (bool binary : {true, false}) EXPECT_EQ(decode_image(encode_pgm(g, binary)), g);
    }
}

TEST(Pgm, SixteenBitSamplesAreBigEndian) {
    const std::vector<Intensity> v{0x1234, 7};
    const auto bytes = encode_pgm(IntensityGrid(2, 1, 0x2000, v));
    const std::string header = "P5\n2 1\n8192\n";
    ASSERT_EQ(bytes.size(), header.size() + 4);
    EXPECT_EQ(bytes[header.size()], 0x12);
    EXPECT_EQ(bytes[header.size() + 1], 0x34);
}

TEST(Pgm, HeaderCommentsAreSkipped) {
    const auto g = decode_image(bytes_of("P2\n# made by hand\n3 1 # width height\n9\n1 2 # tail\n9\n"));
    EXPECT_EQ(g, IntensityGrid(3, 1, 9, std::vector<Intensity>{1, 2, 9}));
}

TEST(Pgm, RejectsMultiFrameGrids) {
    const std::vector<IntensityGrid> f{IntensityGrid::constant(2, 2, 9, 1), IntensityGrid::constant(2, 2, 9, 1)};
    EXPECT_THROW(encode_pgm(frame_stack(f)), InputError);
}

TEST(Ppm, ChannelsAndLuma) {
    const std::string ppm = "P3 2 1 255  10 20 30  255 255 255\n";
    EXPECT_EQ(decode_image(bytes_of(ppm), Channel::Red), IntensityGrid(2, 1, 255, std::vector<Intensity>{10, 255}));
    EXPECT_EQ(decode_image(bytes_of(ppm), Channel::Green), IntensityGrid(2, 1, 255, std::vector<Intensity>{20, 255}));
    EXPECT_EQ(decode_image(bytes_of(ppm), Channel::Blue), IntensityGrid(2, 1, 255, std::vector<Intensity>{30, 255}));
    const int luma = (77 * 10 + 150 * 20 + 29 * 30) >> 8;
    EXPECT_EQ(decode_image(bytes_of(ppm)), IntensityGrid(2, 1, 255, std::vector<Intensity>{luma, 255}));

    std::string p6 = "P6\n1 1\n255\n";
    p6 += std::string{char(200), char(100), char(0)};
    EXPECT_EQ(decode_image(bytes_of(p6), Channel::Red)[0], 200);
    EXPECT_EQ(decode_image(bytes_of(p6), Channel::Green)[0], 100);
}

TEST(Netpbm, FormatErrorsCarryTheOffset) {
    EXPECT_EQ(offset_of("hello"), 0u);
    EXPECT_EQ(offset_of("P7\n1 1\n1\n"), 2u);
    EXPECT_EQ(offset_of("P2\n2 1\n9\n1 12\n"), 11u);
    EXPECT_EQ(offset_of("P2\n2 1\n9\n1"), 10u);
    EXPECT_EQ(offset_of("P2\nx 1\n9\n"), 3u);
    EXPECT_EQ(offset_of("P5\n2 2\n255\nab"), 13u);
    EXPECT_EQ(offset_of("P2\n1 1\n9\n1\n", Channel::Red), 2u);
    EXPECT_EQ(offset_of("P2\n0 1\n9\n"), 8u);
    EXPECT_EQ(offset_of("P2\n1 1\n0\n"), 8u);
    EXPECT_EQ(offset_of("P5\n1 1\n70000\n"), 11u);
}

TEST(Pbm, RoundTripsAcrossWidthsAndPacking) {
    std::mt19937 rng(9);
    std::bernoulli_distribution bit(0.4);
    for (int w = 1; w <= 19; ++w) {
        Mask m(GridShape{w, 3, 1}, false);
        for (Eigen::Index i = 0; i < m.shape().pixel_count(); ++i) m[i] = bit(rng);
        for (bool binary : {true, false}) EXPECT_EQ(decode_pbm(encode_pbm(m, binary)), m);
        // Packed rows are padded to whole bytes.
        const auto header = "P4\n" + std::to_string(w) + " 3\n";
        EXPECT_EQ(encode_pbm(m).size(), header.size() + 3 * std::size_t((w + 7) / 8));
    }
}

TEST(Pbm, PlainBitsMayRunTogether) {
    const auto m = decode_pbm(bytes_of("P1 3 2\n101\n0 1 0\n"));
    EXPECT_TRUE(m({0, 0}));
    EXPECT_FALSE(m({1, 0}));
    EXPECT_TRUE(m({1, 1}));
    EXPECT_THROW(decode_pbm(bytes_of("P2 1 1 1 0")), FormatError);
    EXPECT_THROW(decode_pbm(bytes_of("P1 2 1 1 2")), FormatError);
}

TEST(ContourText, RoundTrip) {
    const std::vector<Contour> cs{{{{1, 2}, {2, 2}, {2, 3}}, true}, {{{0, 0}}, false}};
    const auto text = contours_to_text(cs);
    EXPECT_EQ(text, "closed 1,2 2,2 2,3\nopen 0,0\n");
    const auto back = contours_from_text(text);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].pixels, cs[0].pixels);
    EXPECT_TRUE(back[0].closed);
    EXPECT_FALSE(back[1].closed);
}

TEST(ContourText, RejectsMalformedLines) {
    EXPECT_THROW(contours_from_text("shut 1,2\n"), InputError);
    EXPECT_THROW(contours_from_text("open 12\n"), InputError);
    EXPECT_THROW(contours_from_text("open 1,x\n"), InputError);
}

TEST(ContourSvg, PolygonsAndPolylines) {
    const std::vector<Contour> cs{{{{1, 2}, {2, 2}, {2, 3}}, true}, {{{0, 0}, {1, 0}}, false}};
    const auto svg = contours_to_svg(cs, 4, 5);
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find("<polygon"), std::string::npos);
    EXPECT_NE(svg.find("<polyline"), std::string::npos);
    EXPECT_NE(svg.find("1.5,2.5 2.5,2.5 2.5,3.5"), std::string::npos);
}

}  // namespace
}  // namespace discont

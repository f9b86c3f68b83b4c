#include "discont/netpbm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

namespace discont {

namespace {

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::size_t offset() const { return pos_; }
    bool at_end() const { return pos_ >= bytes_.size(); }

    [[noreturn]] void fail(const std::string& what) const { throw FormatError(what, pos_); }

    char magic() {
        if (bytes_.size() < 2 || bytes_[0] != 'P') fail("not a Netpbm file");
        pos_ = 2;
        return char(bytes_[1]);
    }

    // Skips whitespace and '#' comments between header tokens.
    void skip_space() {
        while (!at_end()) {
            const auto c = bytes_[pos_];
            if (c == '#') {
                while (!at_end() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else if (std::isspace(c)) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    long number(long max) {
        skip_space();
        if (at_end()) fail("unexpected end of data");
        if (!std::isdigit(bytes_[pos_])) fail("expected a decimal number");
        long v = 0;
        while (!at_end() && std::isdigit(bytes_[pos_])) {
            v = v * 10 + (bytes_[pos_] - '0');
            if (v > max) fail("number out of range");
            ++pos_;
        }
        return v;
    }

    // Single whitespace byte that ends a binary header.
    void raster_separator() {
        if (at_end() || !std::isspace(bytes_[pos_])) fail("missing whitespace before raster");
        ++pos_;
    }

    std::uint8_t byte() {
        if (at_end()) fail("unexpected end of raster data");
        return bytes_[pos_++];
    }

    // Plain PBM bits may run together without separators.
    int bit() {
        skip_space();
        if (at_end()) fail("unexpected end of raster data");
        const auto c = bytes_[pos_];
        if (c != '0' && c != '1') fail("expected 0 or 1");
        ++pos_;
        return c - '0';
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

constexpr long kMaxDimension = 1L << 20;

long sample(Reader& in, bool binary, long maxval) {
    if (!binary) {
        in.skip_space();
        const auto at = in.offset();
        const long v = in.number(1L << 30);
        if (v > maxval) throw FormatError("sample exceeds maxval", at);
        return v;
    }
    const auto at = in.offset();
    long v = in.byte();
    if (maxval > 255) v = (v << 8) | in.byte();
    if (v > maxval) throw FormatError("sample exceeds maxval", at);
    return v;
}

void append(Bytes& out, const std::string& s) { out.insert(out.end(), s.begin(), s.end()); }

}  // namespace

IntensityGrid decode_image(std::span<const std::uint8_t> bytes, Channel channel) {
    Reader in(bytes);
    const char kind = in.magic();
    const bool gray = kind == '2' || kind == '5';
    const bool color = kind == '3' || kind == '6';
    if (!gray && !color) in.fail(std::string("unsupported Netpbm type P") + kind);
    if (gray && channel != Channel::Gray) in.fail("channel extraction needs a color (PPM) image");
    const bool binary = kind == '5' || kind == '6';

    const long width = in.number(kMaxDimension);
    const long height = in.number(kMaxDimension);
    const long maxval = in.number(65535);
    if (width < 1 || height < 1) in.fail("image dimensions must be positive");
    if (maxval < 1) in.fail("maxval must be at least 1");
    if (binary) in.raster_separator();

    PixelGrid<Intensity> values(GridShape{int(width), int(height), 1});
    for (Eigen::Index i = 0; i < values.shape().pixel_count(); ++i) {
        if (gray) {
            values[i] = Intensity(sample(in, binary, maxval));
            continue;
        }
        const long r = sample(in, binary, maxval);
        const long g = sample(in, binary, maxval);
        const long b = sample(in, binary, maxval);
        switch (channel) {
            case Channel::Gray: values[i] = Intensity((77 * r + 150 * g + 29 * b) >> 8); break;
            case Channel::Red: values[i] = Intensity(r); break;
            case Channel::Green: values[i] = Intensity(g); break;
            case Channel::Blue: values[i] = Intensity(b); break;
        }
    }
    return IntensityGrid(std::move(values), Intensity(maxval));
}

Bytes encode_pgm(const IntensityGrid& grid, bool binary) {
    if (grid.frames() != 1) throw InputError("PGM output needs a single-frame grid");
    const auto maxval = grid.max_value();
    if (maxval < 1 || maxval > 65535) throw InputError("PGM maxval must lie in [1, 65535]");
    Bytes out;
    append(out, std::string(binary ? "P5\n" : "P2\n") + std::to_string(grid.width()) + " " +
                    std::to_string(grid.height()) + "\n" + std::to_string(maxval) + "\n");
    const auto n = grid.shape().pixel_count();
    if (binary) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto v = grid[i];
            if (maxval > 255) out.push_back(std::uint8_t(v >> 8));
            out.push_back(std::uint8_t(v & 0xff));
        }
        return out;
    }
    for (int y = 0; y < grid.height(); ++y) {
        for (int x = 0; x < grid.width(); ++x) {
            if (x > 0) out.push_back(' ');
            append(out, std::to_string(grid({x, y})));
        }
        out.push_back('\n');
    }
    return out;
}

Bytes encode_pbm(const Mask& mask, bool binary) {
    if (mask.frames() != 1) throw InputError("PBM output needs a single-frame mask");
    Bytes out;
    append(out, std::string(binary ? "P4\n" : "P1\n") + std::to_string(mask.width()) + " " +
                    std::to_string(mask.height()) + "\n");
    for (int y = 0; y < mask.height(); ++y) {
        if (binary) {
            std::uint8_t acc = 0;
            for (int x = 0; x < mask.width(); ++x) {
                if (mask({x, y})) acc |= std::uint8_t(0x80 >> (x % 8));
                if (x % 8 == 7 || x == mask.width() - 1) {
                    out.push_back(acc);
                    acc = 0;
                }
            }
        } else {
            for (int x = 0; x < mask.width(); ++x) {
                if (x > 0) out.push_back(' ');
                out.push_back(mask({x, y}) ? '1' : '0');
            }
            out.push_back('\n');
        }
    }
    return out;
}

Mask decode_pbm(std::span<const std::uint8_t> bytes) {
    Reader in(bytes);
    const char kind = in.magic();
    if (kind != '1' && kind != '4') in.fail(std::string("expected PBM (P1/P4), got P") + kind);
    const long width = in.number(kMaxDimension);
    const long height = in.number(kMaxDimension);
    if (width < 1 || height < 1) in.fail("image dimensions must be positive");
    Mask mask(GridShape{int(width), int(height), 1}, false);
    if (kind == '1') {
        for (Eigen::Index i = 0; i < mask.shape().pixel_count(); ++i) mask[i] = in.bit() == 1;
        return mask;
    }
    in.raster_separator();
    for (int y = 0; y < height; ++y) {
        std::uint8_t acc = 0;
        for (int x = 0; x < width; ++x) {
            if (x % 8 == 0) acc = in.byte();
            mask({x, y}) = (acc & (0x80 >> (x % 8))) != 0;
        }
    }
    return mask;
}

Bytes read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open " + path.string());
    return Bytes(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot write " + path.string());
    f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!f) throw InputError("write failed for " + path.string());
}

}  // namespace discont

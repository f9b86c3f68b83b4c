#include "discont/contour_io.hpp"

#include <charconv>
#include <sstream>

namespace discont {

std::string contours_to_text(const std::vector<Contour>& contours) {
    std::string out;
    for (const auto& c : contours) {
        out += c.closed ? "closed" : "open";
        for (const auto& p : c.pixels) out += ' ' + std::to_string(p.x) + ',' + std::to_string(p.y);
        out += '\n';
    }
    return out;
}

std::vector<Contour> contours_from_text(std::string_view text) {
    std::vector<Contour> out;
    std::istringstream lines{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream words(line);
        std::string word;
        words >> word;
        Contour c;
        if (word == "closed") c.closed = true;
        else if (word != "open")
            throw InputError("contour line " + std::to_string(line_no) + ": expected open/closed");
        while (words >> word) {
            const auto bad = [&] {
                const auto comma = word.find(',');
                if (comma == std::string::npos) return true;
                PixelCoord p;
                const char* mid = word.data() + comma;
                const char* end = word.data() + word.size();
                const auto rx = std::from_chars(word.data(), mid, p.x);
                const auto ry = std::from_chars(mid + 1, end, p.y);
                if (rx.ec != std::errc{} || ry.ec != std::errc{} || rx.ptr != mid || ry.ptr != end)
                    return true;
                c.pixels.push_back(p);
                return false;
            }();
            if (bad)
                throw InputError("contour line " + std::to_string(line_no) + ": bad point '" +
                                 word + "'");
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::string contours_to_svg(const std::vector<Contour>& contours, int width, int height) {
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    for (const auto& c : contours) {
        svg << "  <" << (c.closed ? "polygon" : "polyline") << " points=\"";
        for (std::size_t i = 0; i < c.pixels.size(); ++i) {
            if (i > 0) svg << ' ';
            svg << c.pixels[i].x << ".5," << c.pixels[i].y << ".5";
        }
        svg << "\" fill=\"none\" stroke=\"red\" stroke-width=\"0.5\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace discont

#include "qw/render.hpp"

#include <sstream>

namespace qw {

std::string render_svg(const BoardGrid& board, const Placement* placement) {
    const int cell = 24;
    const int w = board.width() * cell, h = board.height() * cell;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    for (int y = 0; y < board.height(); ++y) {
        for (int x = 0; x < board.width(); ++x) {
            const bool white = board.white({x, y});
            out << "  <rect x=\"" << x * cell << "\" y=\"" << y * cell << "\" width=\"" << cell
                << "\" height=\"" << cell << "\" fill=\"" << (white ? "#f5f2e8" : "#1c1c1c")
                << "\" stroke=\"#555\" stroke-width=\"1\"/>\n";
        }
    }
    if (placement) {
        for (const Coord& c : *placement) {
            out << "  <circle cx=\"" << c.x * cell + cell / 2 << "\" cy=\""
                << c.y * cell + cell / 2 << "\" r=\"" << cell / 3
                << "\" fill=\"#a03020\" stroke=\"#401008\" stroke-width=\"2\"/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_ascii(const BoardGrid& board, const Placement* placement) {
    return emit_board(board, placement);
}

}  // namespace qw

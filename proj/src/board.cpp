#include "qw/board.hpp"

#include <algorithm>
#include <sstream>

namespace qw {

namespace {

constexpr int kDirCount = 8;
// Paired so that dir k and dir k+4 are opposite rays.
constexpr int kDx[kDirCount] = {1, 0, 1, 1, -1, 0, -1, -1};
constexpr int kDy[kDirCount] = {0, 1, 1, -1, 0, -1, -1, 1};

}  // namespace

BoardGrid::BoardGrid(int width, int height, Cell fill) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) throw BoardError("board dimensions must be positive");
    cells_.assign(static_cast<size_t>(width) * height, fill);
}

int BoardGrid::white_count() const {
    return static_cast<int>(std::count(cells_.begin(), cells_.end(), Cell::White));
}

std::vector<Coord> BoardGrid::white_cells() const {
    std::vector<Coord> out;
    for (int y = 0; y < height_; ++y)
        for (int x = 0; x < width_; ++x)
            if (at({x, y}) == Cell::White) out.push_back({x, y});
    return out;
}

ParsedBoard parse_board(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> rows;
    PieceRules rules = PieceRules::queen();
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (first && line.rfind("range:", 0) == 0) {
            std::string v = line.substr(6);
            v.erase(0, v.find_first_not_of(" \t"));
            if (v == "inf") {
                rules = PieceRules::queen();
            } else {
                try {
                    size_t pos = 0;
                    int r = std::stoi(v, &pos);
                    if (pos != v.size() || r <= 0) throw std::invalid_argument(v);
                    rules = PieceRules::ranged(r);
                } catch (const std::exception&) {
                    throw BoardError("bad range header: '" + v + "'");
                }
            }
            first = false;
            continue;
        }
        first = false;
        if (line.empty()) continue;
        rows.push_back(line);
    }
    if (rows.empty()) throw BoardError("empty board");
    const size_t width = rows[0].size();
    for (size_t i = 1; i < rows.size(); ++i)
        if (rows[i].size() != width)
            throw BoardError("ragged rows: row " + std::to_string(i + 1) + " has " +
                             std::to_string(rows[i].size()) + " cells, expected " +
                             std::to_string(width));

    BoardGrid grid(static_cast<int>(width), static_cast<int>(rows.size()));
    Placement placement;
    bool any_piece = false;
    for (int y = 0; y < grid.height(); ++y) {
        for (int x = 0; x < grid.width(); ++x) {
            switch (rows[y][x]) {
                case '#': grid.set({x, y}, Cell::Black); break;
                case '.': grid.set({x, y}, Cell::White); break;
                case 'Q':
                    grid.set({x, y}, Cell::White);
                    placement.insert({x, y});
                    any_piece = true;
                    break;
                default:
                    throw BoardError(std::string("illegal character '") + rows[y][x] +
                                     "' at " + std::to_string(x) + "," + std::to_string(y));
            }
        }
    }
    ParsedBoard out{std::move(grid), std::nullopt, rules};
    if (any_piece) out.placement = std::move(placement);
    return out;
}

std::string emit_board(const BoardGrid& grid, const Placement* placement,
                       std::optional<PieceRules> header_rules) {
    std::ostringstream out;
    if (header_rules) {
        if (header_rules->unbounded())
            out << "range: inf\n";
        else
            out << "range: " << header_rules->range << "\n";
    }
    for (int y = 0; y < grid.height(); ++y) {
        for (int x = 0; x < grid.width(); ++x) {
            Coord c{x, y};
            if (placement && placement->count(c)) {
                out << 'Q';
            } else {
                out << (grid.at(c) == Cell::White ? '.' : '#');
            }
        }
        out << '\n';
    }
    return out.str();
}

bool attacks(const BoardGrid& board, PieceRules rules, Coord a, Coord b) {
    if (!board.in_bounds(a) || !board.in_bounds(b)) throw BoardError("attacks: coordinate off board");
    if (board.at(a) != Cell::White || board.at(b) != Cell::White)
        throw BoardError("attacks: coordinate on black cell");
    if (a == b) throw BoardError("attacks: coordinates coincide");
    const int dx = b.x - a.x, dy = b.y - a.y;
    int sx = (dx > 0) - (dx < 0), sy = (dy > 0) - (dy < 0);
    if (dx != 0 && dy != 0 && std::abs(dx) != std::abs(dy)) return false;
    const int dist = std::max(std::abs(dx), std::abs(dy));
    if (!rules.unbounded() && dist > rules.range) return false;
    Coord c = a;
    for (int step = 1; step < dist; ++step) {
        c.x += sx;
        c.y += sy;
        if (board.at(c) != Cell::White) return false;
    }
    return true;
}

bool is_legitimate(const BoardGrid& board, PieceRules rules, const Placement& p) {
    for (const Coord& c : p) {
        if (!board.in_bounds(c)) throw BoardError("placement coordinate off board");
        if (board.at(c) != Cell::White) throw BoardError("piece on black cell");
    }
    for (auto it = p.begin(); it != p.end(); ++it) {
        auto jt = it;
        for (++jt; jt != p.end(); ++jt)
            if (attacks(board, rules, *it, *jt)) return false;
    }
    return true;
}

std::vector<Segment> segments(const BoardGrid& board, Direction dir) {
    std::vector<Segment> out;
    const int w = board.width(), h = board.height();
    auto scan = [&](Coord start, int dx, int dy) {
        Segment cur{dir, {}};
        for (Coord c = start; board.in_bounds(c); c.x += dx, c.y += dy) {
            if (board.at(c) == Cell::White) {
                cur.cells.push_back(c);
            } else if (!cur.cells.empty()) {
                out.push_back(std::move(cur));
                cur = Segment{dir, {}};
            }
        }
        if (!cur.cells.empty()) out.push_back(std::move(cur));
    };
    switch (dir) {
        case Direction::Row:
            for (int y = 0; y < h; ++y) scan({0, y}, 1, 0);
            break;
        case Direction::Col:
            for (int x = 0; x < w; ++x) scan({x, 0}, 0, 1);
            break;
        case Direction::Diag:  // dx=1, dy=1; starts on top row and left column
            for (int x = w - 1; x > 0; --x) scan({x, 0}, 1, 1);
            for (int y = 0; y < h; ++y) scan({0, y}, 1, 1);
            break;
        case Direction::AntiDiag:  // dx=1, dy=-1; starts on left column and bottom row
            for (int y = 0; y < h; ++y) scan({0, y}, 1, -1);
            for (int x = 1; x < w; ++x) scan({x, h - 1}, 1, -1);
            break;
    }
    return out;
}

SegmentTables::SegmentTables(const BoardGrid& board)
    : width_(board.width()), height_(board.height()) {
    for (int d = 0; d < 4; ++d) {
        segs_[d] = segments(board, static_cast<Direction>(d));
        seg_of_[d].assign(static_cast<size_t>(width_) * height_, -1);
        off_of_[d].assign(static_cast<size_t>(width_) * height_, -1);
        for (size_t s = 0; s < segs_[d].size(); ++s) {
            const auto& cells = segs_[d][s].cells;
            for (size_t i = 0; i < cells.size(); ++i) {
                const size_t idx = static_cast<size_t>(cells[i].y) * width_ + cells[i].x;
                seg_of_[d][idx] = static_cast<int>(s);
                off_of_[d][idx] = static_cast<int>(i);
            }
        }
    }
}

int SegmentTables::segment_of(Direction dir, Coord c) const {
    return seg_of_[static_cast<int>(dir)][static_cast<size_t>(c.y) * width_ + c.x];
}

int SegmentTables::offset_in_segment(Direction dir, Coord c) const {
    return off_of_[static_cast<int>(dir)][static_cast<size_t>(c.y) * width_ + c.x];
}

bool conflicts(const SegmentTables& tables, PieceRules rules, Coord a, Coord b) {
    for (int d = 0; d < 4; ++d) {
        const Direction dir = static_cast<Direction>(d);
        const int sa = tables.segment_of(dir, a);
        if (sa < 0 || sa != tables.segment_of(dir, b)) continue;
        const int dist = std::abs(tables.offset_in_segment(dir, a) -
                                  tables.offset_in_segment(dir, b));
        if (dist == 0) continue;
        if (rules.unbounded() || dist <= rules.range) return true;
    }
    return false;
}

}  // namespace qw

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Board representation for the queens-with-walls puzzle: a rectangular grid
// of black (wall) and white cells, pieces that slide up to `range` steps
// along the eight queen directions, and the segment decomposition that the
// solver and the gadget verifiers share.
namespace qw {

enum class Cell : std::uint8_t { Black, White };

struct Coord {
    int x = 0;  // column, growing right
    int y = 0;  // row, growing down

    bool operator==(const Coord&) const = default;
    auto operator<=>(const Coord&) const = default;
};

using Placement = std::set<Coord>;

// Move range: 1 = king, 2 = short queen, unbounded = queen.
struct PieceRules {
    static constexpr int kUnbounded = -1;
    int range = kUnbounded;

    static PieceRules queen() { return PieceRules{kUnbounded}; }
    static PieceRules king() { return PieceRules{1}; }
    static PieceRules ranged(int r) { return PieceRules{r}; }
    bool unbounded() const { return range == kUnbounded; }
    bool operator==(const PieceRules&) const = default;
};

class BoardError : public std::runtime_error {
  public:
    explicit BoardError(const std::string& what) : std::runtime_error(what) {}
};

enum class Direction : std::uint8_t { Row, Col, Diag, AntiDiag };

// A maximal run of contiguous white cells along one direction. Cells are
// ordered by the scan (left-to-right / top-to-bottom).
struct Segment {
    Direction dir;
    std::vector<Coord> cells;
};

class BoardGrid {
  public:
    BoardGrid(int width, int height, Cell fill = Cell::Black);

    int width() const { return width_; }
    int height() const { return height_; }

    bool in_bounds(Coord c) const {
        return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
    }
    Cell at(Coord c) const { return cells_[index(c)]; }
    void set(Coord c, Cell v) { cells_[index(c)] = v; }
    bool white(Coord c) const { return in_bounds(c) && at(c) == Cell::White; }

    int white_count() const;
    std::vector<Coord> white_cells() const;

    bool operator==(const BoardGrid&) const = default;

  private:
    int index(Coord c) const {
        if (!in_bounds(c)) throw BoardError("coordinate off board");
        return c.y * width_ + c.x;
    }

    int width_;
    int height_;
    std::vector<Cell> cells_;
};

// Result of parsing a board file: the grid, an optional placement marked
// with 'Q', and the range from the optional header (queen when absent).
struct ParsedBoard {
    BoardGrid grid;
    std::optional<Placement> placement;
    PieceRules rules;
};

ParsedBoard parse_board(const std::string& text);
std::string emit_board(const BoardGrid& grid, const Placement* placement = nullptr,
                       std::optional<PieceRules> header_rules = std::nullopt);

// True iff a piece on `a` threatens `b`: same row/column/diagonal, all
// intermediate cells white, and within `rules.range` steps. Walls block;
// other pieces do not enter into it. Throws if either coordinate is
// off-board or black.
bool attacks(const BoardGrid& board, PieceRules rules, Coord a, Coord b);

// True iff no pair of placed pieces attacks. Throws BoardError if any piece
// sits on a black cell (distinct from returning false).
bool is_legitimate(const BoardGrid& board, PieceRules rules, const Placement& p);

// Partition of the white cells into maximal runs along `dir`, in scanline
// order.
std::vector<Segment> segments(const BoardGrid& board, Direction dir);

// Segment tables for all four directions plus a cell -> segment index map,
// computed once per board and shared by the solver and the verifiers.
class SegmentTables {
  public:
    explicit SegmentTables(const BoardGrid& board);

    const std::vector<Segment>& of(Direction dir) const {
        return segs_[static_cast<int>(dir)];
    }
    // Index of the segment containing a white cell, or -1 for black cells.
    int segment_of(Direction dir, Coord c) const;
    // Position of the cell inside its segment (offset along the run).
    int offset_in_segment(Direction dir, Coord c) const;

  private:
    int width_, height_;
    std::vector<Segment> segs_[4];
    std::vector<int> seg_of_[4];
    std::vector<int> off_of_[4];
};

// Two pieces on `a` and `b` conflict iff attacks(a, b). For finite range
// this is equivalent to sharing a segment within `range` offsets.
bool conflicts(const SegmentTables& tables, PieceRules rules, Coord a, Coord b);

}  // namespace qw

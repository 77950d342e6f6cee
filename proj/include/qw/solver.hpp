#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qw/board.hpp"

// Exact search for maximum non-attacking placements: branch-and-bound over
// row segments with per-direction occupancy tracking, an exhaustive subset
// oracle for small boards, and full max-placement enumeration for gadget
// verification.
namespace qw {

enum class SolveStatus : std::uint8_t { Exact, Inconclusive };

struct SolveResult {
    SolveStatus status = SolveStatus::Exact;
    int max_count = 0;
    Placement witness;
    std::uint64_t node_count = 0;
};

struct DecideResult {
    SolveStatus status = SolveStatus::Exact;
    std::optional<Placement> placement;  // meaningful only when Exact
    std::uint64_t node_count = 0;
};

struct EnumerateResult {
    SolveStatus status = SolveStatus::Exact;
    int max_count = 0;
    std::vector<Placement> placements;  // lexicographic on sorted coordinates
    bool overflowed = false;            // true when truncated at the cap
    std::uint64_t node_count = 0;
};

// Cells that search must include / exclude. Used by the clause verifier to
// clamp port readouts and by the tile-aware end-to-end solver.
struct Clamps {
    std::vector<Coord> required;
    std::vector<Coord> forbidden;
};

inline constexpr std::uint64_t kDefaultBudget = 200'000'000;

// True maximum count plus one witness. Deterministic: segments are explored
// top-to-bottom, cells left-to-right, and the first witness found at the
// final count is reported.
SolveResult max_placement(const BoardGrid& board, PieceRules rules,
                          std::uint64_t budget = kDefaultBudget,
                          const Clamps* clamps = nullptr);

// A legitimate placement of exactly m pieces, or proof of impossibility
// (exhausted search). Budget exhaustion is reported as Inconclusive, never
// as "no".
DecideResult decide(const BoardGrid& board, PieceRules rules, int m,
                    std::uint64_t budget = kDefaultBudget,
                    const Clamps* clamps = nullptr);

// All distinct placements of maximum size, truncated at `cap`.
EnumerateResult enumerate_max(const BoardGrid& board, PieceRules rules, int cap,
                              std::uint64_t budget = kDefaultBudget,
                              const Clamps* clamps = nullptr);

// Exhaustive include/exclude scan over white cells; the test oracle.
// Requires white_count <= 30.
SolveResult brute_force_max(const BoardGrid& board, PieceRules rules);

}  // namespace qw

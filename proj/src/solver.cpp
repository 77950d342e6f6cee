#include "qw/solver.hpp"

#include <algorithm>
#include <cassert>

namespace qw {

namespace {

// Shared DFS over white cells in scanline order. Unbounded pieces allow at
// most one per row segment, so after placing we jump to the next segment;
// finite ranges can pack several pieces per segment and step cell by cell.
class Searcher {
  public:
    Searcher(const BoardGrid& board, PieceRules rules, const Clamps* clamps)
        : board_(board), rules_(rules), tables_(board) {
        const auto& rows = tables_.of(Direction::Row);
        for (const auto& seg : rows)
            for (const Coord& c : seg.cells) cells_.push_back(c);
        n_ = static_cast<int>(cells_.size());
        cell_flags_.assign(n_, 0);
        if (clamps) {
            for (const Coord& c : clamps->forbidden) mark(c, kForbidden);
            for (const Coord& c : clamps->required) {
                if (!board_.white(c)) infeasible_ = true;
                else mark(c, kRequired);
            }
        }
        for (int d = 0; d < 4; ++d)
            occupied_[d].assign(tables_.of(static_cast<Direction>(d)).size(), {});
        // Suffix capacity: upper bound on pieces placeable from cell i on,
        // counting row segments only.
        suffix_cap_.assign(n_ + 1, 0);
        int seg_start = 0;
        while (seg_start < n_) {
            const int seg = tables_.segment_of(Direction::Row, cells_[seg_start]);
            int seg_end = seg_start + 1;
            while (seg_end < n_ && tables_.segment_of(Direction::Row, cells_[seg_end]) == seg)
                ++seg_end;
            seg_bounds_.push_back({seg_start, seg_end});
            seg_start = seg_end;
        }
        for (auto it = seg_bounds_.rbegin(); it != seg_bounds_.rend(); ++it) {
            const auto [lo, hi] = *it;
            for (int k = lo; k < hi; ++k) {
                const int rest = hi - k;
                const int cap =
                    rules_.unbounded() ? 1 : (rest + rules_.range) / (rules_.range + 1);
                suffix_cap_[k] = cap + suffix_cap_[hi];
            }
        }
    }

    bool infeasible() const { return infeasible_; }
    std::uint64_t nodes() const { return nodes_; }

    // mode: find maximum. Returns false on budget exhaustion.
    bool solve_max(std::uint64_t budget, int& best, Placement& witness) {
        if (infeasible_) {
            best = -1;
            witness.clear();
            return true;
        }
        budget_left_ = budget;
        best_ = -1;
        target_ = -1;
        collect_ = nullptr;
        stop_at_first_target_ = false;
        bool ok = dfs(0);
        best = best_;
        witness = best_witness_;
        return ok;
    }

    // mode: find any placement of exactly `target`.
    bool solve_decide(std::uint64_t budget, int target, std::optional<Placement>& out) {
        out.reset();
        if (infeasible_) return true;
        budget_left_ = budget;
        best_ = -1;
        target_ = target;
        collect_ = nullptr;
        stop_at_first_target_ = true;
        found_target_.reset();
        bool ok = dfs(0);
        out = found_target_;
        return ok;
    }

    // mode: collect every placement of exactly `target` (the known maximum).
    bool solve_enumerate(std::uint64_t budget, int target, int cap,
                         std::vector<Placement>& out, bool& overflow) {
        out.clear();
        overflow = false;
        if (infeasible_) return true;
        budget_left_ = budget;
        best_ = -1;
        target_ = target;
        cap_ = cap;
        collect_ = &out;
        overflow_ = &overflow;
        stop_at_first_target_ = false;
        bool ok = dfs(0);
        return ok;
    }

  private:
    static constexpr std::uint8_t kForbidden = 1;
    static constexpr std::uint8_t kRequired = 2;

    void mark(Coord c, std::uint8_t flag) {
        for (int i = 0; i < n_; ++i)
            if (cells_[i] == c) {
                if ((cell_flags_[i] & (kForbidden | kRequired)) &&
                    cell_flags_[i] != flag)
                    infeasible_ = true;
                cell_flags_[i] |= flag;
                return;
            }
        infeasible_ = true;  // clamp on a black / off-board cell
    }

    bool conflicts_placed(Coord c) const {
        for (int d = 0; d < 4; ++d) {
            const Direction dir = static_cast<Direction>(d);
            const int seg = tables_.segment_of(dir, c);
            const auto& occ = occupied_[d][seg];
            if (occ.empty()) continue;
            if (rules_.unbounded()) return true;
            const int off = tables_.offset_in_segment(dir, c);
            for (int o : occ)
                if (std::abs(o - off) <= rules_.range) return true;
        }
        return false;
    }

    void place(Coord c) {
        for (int d = 0; d < 4; ++d) {
            const Direction dir = static_cast<Direction>(d);
            occupied_[d][tables_.segment_of(dir, c)].push_back(
                tables_.offset_in_segment(dir, c));
        }
        placed_.push_back(c);
    }

    void unplace(Coord c) {
        for (int d = 0; d < 4; ++d) {
            const Direction dir = static_cast<Direction>(d);
            occupied_[d][tables_.segment_of(dir, c)].pop_back();
        }
        placed_.pop_back();
    }

    // Returns false on budget exhaustion; true when the subtree is done.
    bool dfs(int i) {
        if (budget_left_ == 0) return false;
        --budget_left_;
        ++nodes_;
        const int count = static_cast<int>(placed_.size());
        if (target_ >= 0) {
            if (count == target_) {
                if (stop_at_first_target_) {
                    found_target_ = Placement(placed_.begin(), placed_.end());
                    return true;
                }
                if (collect_) {
                    if (static_cast<int>(collect_->size()) >= cap_) {
                        *overflow_ = true;
                        return true;
                    }
                    collect_->push_back(Placement(placed_.begin(), placed_.end()));
                }
                return true;
            }
            if (count + suffix_cap_[i] < target_) return true;
        } else {
            if (count > best_) {
                best_ = count;
                best_witness_ = Placement(placed_.begin(), placed_.end());
            }
            if (count + suffix_cap_[i] <= best_) return true;
        }
        if (i == n_) return true;

        const Coord c = cells_[i];
        const bool forbidden = cell_flags_[i] & kForbidden;
        const bool required = cell_flags_[i] & kRequired;

        if (!forbidden && !conflicts_placed(c)) {
            place(c);
            int next = i + 1;
            if (rules_.unbounded()) {
                // at most one per row segment: skip the rest of this run
                const int seg = tables_.segment_of(Direction::Row, c);
                while (next < n_ && tables_.segment_of(Direction::Row, cells_[next]) == seg)
                    ++next;
            }
            bool ok = dfs(next);
            unplace(c);
            if (!ok) return false;
            if (stop_at_first_target_ && found_target_) return true;
        } else if (required) {
            return true;  // cannot satisfy the clamp on this branch
        }
        if (required) return true;  // no skip branch for required cells
        return dfs(i + 1);
    }

    const BoardGrid& board_;
    PieceRules rules_;
    SegmentTables tables_;
    std::vector<Coord> cells_;
    int n_ = 0;
    std::vector<std::pair<int, int>> seg_bounds_;
    std::vector<std::uint8_t> cell_flags_;
    std::vector<std::vector<int>> occupied_[4];
    std::vector<int> suffix_cap_;
    std::vector<Coord> placed_;

    bool infeasible_ = false;
    std::uint64_t nodes_ = 0;
    std::uint64_t budget_left_ = 0;
    int best_ = -1;
    Placement best_witness_;
    int target_ = -1;
    int cap_ = 0;
    bool stop_at_first_target_ = false;
    std::optional<Placement> found_target_;
    std::vector<Placement>* collect_ = nullptr;
    bool* overflow_ = nullptr;
};

void assert_segment_bound(const BoardGrid& board, PieceRules rules, int max_count) {
    if (max_count <= 0) return;
    SegmentTables tables(board);
    size_t bound = std::min(tables.of(Direction::Row).size(), tables.of(Direction::Col).size());
    if (rules.unbounded())
        bound = std::min({bound, tables.of(Direction::Diag).size(),
                          tables.of(Direction::AntiDiag).size()});
    assert(static_cast<size_t>(max_count) <= bound);
    (void)bound;
}

}  // namespace

SolveResult max_placement(const BoardGrid& board, PieceRules rules, std::uint64_t budget,
                          const Clamps* clamps) {
    Searcher s(board, rules, clamps);
    SolveResult out;
    int best = 0;
    bool ok = s.solve_max(budget, best, out.witness);
    out.node_count = s.nodes();
    if (!ok) {
        out.status = SolveStatus::Inconclusive;
        out.max_count = 0;
        out.witness.clear();
        return out;
    }
    out.max_count = best;
    if (!clamps) assert_segment_bound(board, rules, best);
    return out;
}

DecideResult decide(const BoardGrid& board, PieceRules rules, int m, std::uint64_t budget,
                    const Clamps* clamps) {
    if (m < 0) throw BoardError("decide: tariff must be non-negative");
    DecideResult out;
    if (m == 0) {
        bool feasible = true;
        if (clamps && !clamps->required.empty()) feasible = false;
        out.placement = feasible ? std::optional<Placement>(Placement{}) : std::nullopt;
        return out;
    }
    Searcher s(board, rules, clamps);
    bool ok = s.solve_decide(budget, m, out.placement);
    out.node_count = s.nodes();
    if (!ok) {
        out.status = SolveStatus::Inconclusive;
        out.placement.reset();
    }
    return out;
}

EnumerateResult enumerate_max(const BoardGrid& board, PieceRules rules, int cap,
                              std::uint64_t budget, const Clamps* clamps) {
    if (cap < 1) throw BoardError("enumerate_max: cap must be at least 1");
    EnumerateResult out;
    SolveResult mx = max_placement(board, rules, budget, clamps);
    out.node_count = mx.node_count;
    if (mx.status == SolveStatus::Inconclusive) {
        out.status = SolveStatus::Inconclusive;
        return out;
    }
    out.max_count = mx.max_count;
    if (mx.max_count <= 0) {
        if (mx.max_count == 0) out.placements.push_back({});
        return out;
    }
    Searcher s(board, rules, clamps);
    bool ok = s.solve_enumerate(budget, mx.max_count, cap, out.placements, out.overflowed);
    out.node_count += s.nodes();
    if (!ok) {
        out.status = SolveStatus::Inconclusive;
        return out;
    }
    std::sort(out.placements.begin(), out.placements.end());
    return out;
}

SolveResult brute_force_max(const BoardGrid& board, PieceRules rules) {
    const auto whites = board.white_cells();
    if (whites.size() > 30)
        throw BoardError("brute_force_max: board has more than 30 white cells");
    SegmentTables tables(board);
    SolveResult out;
    std::vector<Coord> chosen;
    Placement best;

    // include/exclude over white cells; conflict check prunes illegal branches
    auto rec = [&](auto&& self, size_t i) -> void {
        ++out.node_count;
        if (chosen.size() > best.size()) best = Placement(chosen.begin(), chosen.end());
        if (i == whites.size()) return;
        const Coord c = whites[i];
        bool clash = false;
        for (const Coord& p : chosen)
            if (conflicts(tables, rules, p, c)) {
                clash = true;
                break;
            }
        if (!clash) {
            chosen.push_back(c);
            self(self, i + 1);
            chosen.pop_back();
        }
        self(self, i + 1);
    };
    rec(rec, 0);
    out.max_count = static_cast<int>(best.size());
    out.witness = std::move(best);
    return out;
}

}  // namespace qw

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "qw/gadgets.hpp"

// Construction of the shipped gadget layouts.
//
// Two-state tiles are one induced even cycle in the conflict graph: white
// cells where consecutive cells are adjacent (king step) and nothing else
// conflicts with anything. The maximal placements of such a board are
// exactly the two alternating halves of the cycle. Ports are 4-cell
// "hooks" on the cycle (lane cell, two interior cells, lane cell), which
// puts the two lane cells of every port in opposite halves.
//
// Because every white run has length <= 2, the conflict graph is the same
// for range 1, 2 and unbounded, so the same layouts serve queens and
// kings.
//
// Clause tiles use one small cycle per port, a "collector" cycle and three
// station cells. A station is placeable only when its port loop sits in
// the T state and the collector phase enables it; the collector enables
// the solo station in one phase and the mutually exclusive pair in the
// other, so the board gains exactly one extra piece iff some port reads T.
namespace qw {

namespace {

const int kDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
const int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};

int dir_of(Coord from, Coord to) {
    for (int d = 0; d < 8; ++d)
        if (from.x + kDx[d] == to.x && from.y + kDy[d] == to.y) return d;
    throw GadgetError("cells are not adjacent");
}

bool adjacent(Coord a, Coord b) {
    return a != b && std::abs(a.x - b.x) <= 1 && std::abs(a.y - b.y) <= 1;
}

// Incremental layout enforcing the construction discipline: a new cell may
// touch already-placed cells only where declared, and no three white cells
// may ever be collinear and contiguous (run discipline).
class Layout {
  public:
    explicit Layout(int size) : size_(size) {}

    int size() const { return size_; }
    bool placed(Coord c) const { return cells_.count(c) > 0; }
    const std::set<Coord>& cells() const { return cells_; }

    bool on_board(Coord c) const {
        return c.x >= 0 && c.x < size_ && c.y >= 0 && c.y < size_;
    }
    bool in_interior(Coord c) const {
        return c.x >= 1 && c.x < size_ - 1 && c.y >= 1 && c.y < size_ - 1;
    }

    bool can_place(Coord c, const std::vector<Coord>& allowed) const {
        if (!on_board(c) || placed(c)) return false;
        for (int d = 0; d < 8; ++d) {
            Coord n{c.x + kDx[d], c.y + kDy[d]};
            if (!placed(n)) continue;
            if (std::find(allowed.begin(), allowed.end(), n) == allowed.end()) return false;
            Coord nn{c.x + 2 * kDx[d], c.y + 2 * kDy[d]};
            if (placed(nn)) return false;  // would extend a run to length 3
        }
        for (int d = 0; d < 4; ++d) {  // one direction per axis
            Coord n{c.x + kDx[d], c.y + kDy[d]};
            Coord o{c.x - kDx[d], c.y - kDy[d]};
            if (placed(n) && placed(o)) return false;  // would bridge a run
        }
        // diagonal axes
        for (int d : {4, 5}) {
            Coord n{c.x + kDx[d], c.y + kDy[d]};
            Coord o{c.x - kDx[d], c.y - kDy[d]};
            if (placed(n) && placed(o)) return false;
        }
        return true;
    }

    void place(Coord c) {
        if (placed(c)) throw GadgetError("cell placed twice");
        cells_.insert(c);
    }
    void unplace(Coord c) { cells_.erase(c); }

    BoardGrid to_board() const {
        BoardGrid b(size_, size_, Cell::Black);
        for (const Coord& c : cells_) b.set(c, Cell::White);
        return b;
    }

  private:
    int size_;
    std::set<Coord> cells_;
};

// Depth-first router for one cycle arm between two already-placed anchor
// cells. The arm is the list of cells strictly between the anchors; it may
// be required to pass through already-placed waypoint cells (pins) at a
// given index parity. Deterministic move order biased toward the target.
class ArmRouter {
  public:
    struct Waypoint {
        Coord cell;       // already placed
        int index_parity; // required arm-index parity, -1 for free
    };

    ArmRouter(Layout& layout) : layout_(layout) {}

    // parity: required arm length mod 2, or -1.
    std::vector<Coord> route(Coord from, Coord to, int parity,
                             std::vector<Waypoint> waypoints = {}, int max_len = 72) {
        from_ = from;
        to_ = to;
        waypoints_ = std::move(waypoints);
        // iterative deepening on the exact arm length
        int base = lower_bound(from, 0);
        if (base < 1) base = 1;
        for (int len = base; len <= max_len; ++len) {
            if (parity >= 0 && (len & 1) != parity) continue;
            target_len_ = len;
            nodes_ = 0;
            path_.clear();
            std::vector<Coord> out;
            if (search(from, -1, 0, out)) return out;
        }
        throw GadgetError("arm routing failed from " + pos(from) + " to " + pos(to));
    }

  private:
    static std::string pos(Coord c) {
        return std::to_string(c.x) + "," + std::to_string(c.y);
    }

    static int cheb(Coord a, Coord b) {
        return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
    }

    // Minimum path cells still needed from `at` through the remaining
    // waypoints to a cell adjacent to the target.
    int lower_bound(Coord at, size_t wp_done) const {
        int bound = 0;
        Coord cur = at;
        for (size_t i = wp_done; i < waypoints_.size(); ++i) {
            bound += cheb(cur, waypoints_[i].cell);
            cur = waypoints_[i].cell;
        }
        return bound + cheb(cur, to_) - 1;
    }

    // `at` is the last committed cell (anchor or path cell); try to finish
    // or extend. `came_dir` is the direction of the step that reached `at`.
    bool search(Coord at, int came_dir, size_t wp_done, std::vector<Coord>& out) {
        if (++nodes_ > 2'000'000) throw GadgetError("arm routing budget exhausted");
        // try to close onto the target
        if (!path_.empty() && wp_done == waypoints_.size() &&
            static_cast<int>(path_.size()) == target_len_ && adjacent(at, to_)) {
            const int d = dir_of(at, to_);
            if (d != came_dir && no_run_through(at, to_)) {
                out = path_;
                return true;
            }
        }
        if (static_cast<int>(path_.size()) + lower_bound(at, wp_done) > target_len_)
            return false;

        int order[8] = {0, 1, 2, 3, 4, 5, 6, 7};
        std::sort(order, order + 8, [&](int a, int b) {
            auto dist = [&](int d) {
                const Coord goal = wp_done < waypoints_.size() ? waypoints_[wp_done].cell : to_;
                return std::max(std::abs(at.x + kDx[d] - goal.x),
                                std::abs(at.y + kDy[d] - goal.y));
            };
            const int da = dist(a), db = dist(b);
            if (da != db) return da < db;
            return a < b;
        });
        for (int i = 0; i < 8; ++i) {
            const int d = order[i];
            if (d == came_dir) continue;  // straight run of three
            Coord n{at.x + kDx[d], at.y + kDy[d]};
            if (n == to_ || n == from_) continue;
            // pass through the next waypoint without placing
            if (wp_done < waypoints_.size() && n == waypoints_[wp_done].cell) {
                if (waypoints_[wp_done].index_parity >= 0 &&
                    static_cast<int>(path_.size() & 1) != waypoints_[wp_done].index_parity)
                    continue;
                if (!no_run_through(at, n)) continue;
                path_.push_back(n);
                if (search(n, d, wp_done + 1, out)) return true;
                path_.pop_back();
                continue;
            }
            if (layout_.placed(n)) continue;
            if (!layout_.in_interior(n)) continue;
            std::vector<Coord> allowed = {at};
            if (adjacent(n, to_)) allowed.push_back(to_);
            if (wp_done < waypoints_.size() && adjacent(n, waypoints_[wp_done].cell))
                allowed.push_back(waypoints_[wp_done].cell);
            if (!layout_.can_place(n, allowed)) continue;
            layout_.place(n);
            path_.push_back(n);
            if (search(n, d, wp_done, out)) return true;
            path_.pop_back();
            layout_.unplace(n);
        }
        return false;
    }

    // Stepping at -> b: reject if the cell beyond b (same direction) is
    // white, which would make a run of three through b.
    bool no_run_through(Coord at, Coord b) const {
        const int d = dir_of(at, b);
        Coord beyond{b.x + kDx[d], b.y + kDy[d]};
        return !layout_.placed(beyond);
    }

    Layout& layout_;
    Coord from_, to_;
    int target_len_ = 0;
    std::vector<Coord> path_;
    std::vector<Waypoint> waypoints_;
    std::uint64_t nodes_ = 0;
};

// A port hook: the four cycle cells of a port, in cycle order o1,i1,i2,o2,
// where o1 is the anchor-lane border cell and o2 the mirror-lane one.
struct Hook {
    PortSpec spec;
    Coord o1, i1, i2, o2;
};

Hook make_hook(int size, Edge e, Gender g) {
    const int la = GadgetManifest::lane_a(size);
    const int lb = GadgetManifest::lane_b(size);
    Hook h;
    h.spec = PortSpec{e, la, g, Role::T, Role::F};
    switch (e) {
        case Edge::W:
            h.o1 = {0, la}; h.i1 = {1, la + 1}; h.i2 = {1, la + 2}; h.o2 = {0, lb};
            break;
        case Edge::E:
            h.o1 = {size - 1, la}; h.i1 = {size - 2, la + 1}; h.i2 = {size - 2, la + 2};
            h.o2 = {size - 1, lb};
            break;
        case Edge::N:
            h.o1 = {la, 0}; h.i1 = {la + 1, 1}; h.i2 = {la + 2, 1}; h.o2 = {lb, 0};
            break;
        case Edge::S:
            h.o1 = {la, size - 1}; h.i1 = {la + 1, size - 2}; h.i2 = {la + 2, size - 2};
            h.o2 = {lb, size - 1};
            break;
    }
    return h;
}

void place_hook(Layout& layout, const Hook& h) {
    layout.place(h.o1);
    if (!layout.can_place(h.i1, {h.o1})) throw GadgetError("hook blocked");
    layout.place(h.i1);
    if (!layout.can_place(h.i2, {h.i1})) throw GadgetError("hook blocked");
    layout.place(h.i2);
    if (!layout.can_place(h.o2, {h.i2})) throw GadgetError("hook blocked");
    layout.place(h.o2);
}

// After construction: check that the conflict graph of the board equals
// the declared edge set, for queens and for kings alike.
void check_declared_conflicts(const BoardGrid& board,
                              const std::set<std::pair<Coord, Coord>>& declared) {
    SegmentTables tables(board);
    auto whites = board.white_cells();
    auto canon = [](Coord a, Coord b) {
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    };
    for (size_t i = 0; i < whites.size(); ++i) {
        for (size_t j = i + 1; j < whites.size(); ++j) {
            const bool queen_conflict = conflicts(tables, PieceRules::queen(), whites[i], whites[j]);
            const bool king_conflict = conflicts(tables, PieceRules::king(), whites[i], whites[j]);
            if (queen_conflict != king_conflict)
                throw GadgetError("range-dependent conflict between " +
                                  std::to_string(whites[i].x) + "," + std::to_string(whites[i].y) +
                                  " and " + std::to_string(whites[j].x) + "," +
                                  std::to_string(whites[j].y));
            const bool want = declared.count(canon(whites[i], whites[j])) > 0;
            if (queen_conflict != want)
                throw GadgetError(std::string(want ? "missing" : "undeclared") + " conflict " +
                                  std::to_string(whites[i].x) + "," + std::to_string(whites[i].y) +
                                  " - " + std::to_string(whites[j].x) + "," +
                                  std::to_string(whites[j].y));
        }
    }
}

std::set<std::pair<Coord, Coord>> cycle_edges(const std::vector<Coord>& cycle) {
    std::set<std::pair<Coord, Coord>> out;
    for (size_t i = 0; i < cycle.size(); ++i) {
        Coord a = cycle[i], b = cycle[(i + 1) % cycle.size()];
        out.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
    }
    return out;
}

// Build a two-state tile: one cycle through the given hooks. Hook i is
// entered at o1 and left at o2 when `forward[i]`, else the reverse. Arm i
// runs from hook i's exit to hook i+1's entry; `arm_parity[i]` constrains
// its length mod 2 (-1 free). The last arm is always adjusted to make the
// cycle even.
GadgetManifest build_cycle_tile(const std::string& name, int size,
                                const std::vector<Hook>& hooks,
                                const std::vector<bool>& forward,
                                std::vector<int> arm_parity) {
    Layout layout(size);
    for (const auto& h : hooks) place_hook(layout, h);

    const size_t k = hooks.size();
    auto exit_port = [&](size_t i) { return forward[i] ? hooks[i].o2 : hooks[i].o1; };
    auto enter_port = [&](size_t i) { return forward[i] ? hooks[i].o1 : hooks[i].o2; };

    std::vector<std::vector<Coord>> arms(k);
    int placed_arm_cells = 0;
    for (size_t i = 0; i < k; ++i) {
        int parity = arm_parity[i];
        if (i == k - 1) parity = placed_arm_cells & 1;  // make the cycle even
        ArmRouter router(layout);
        arms[i] = router.route(exit_port(i), enter_port((i + 1) % k), parity);
        placed_arm_cells += static_cast<int>(arms[i].size());
    }

    std::vector<Coord> cycle;
    for (size_t i = 0; i < k; ++i) {
        const Hook& h = hooks[i];
        if (forward[i]) {
            cycle.insert(cycle.end(), {h.o1, h.i1, h.i2, h.o2});
        } else {
            cycle.insert(cycle.end(), {h.o2, h.i2, h.i1, h.o1});
        }
        cycle.insert(cycle.end(), arms[i].begin(), arms[i].end());
    }
    if (cycle.size() % 2 != 0) throw GadgetError(name + ": odd cycle");

    GadgetManifest g;
    g.name = name;
    g.kind = GadgetKind::TwoState;
    g.size = size;
    g.body = layout.to_board();
    g.tariff = static_cast<int>(cycle.size() / 2);
    Placement even, odd;
    for (size_t i = 0; i < cycle.size(); ++i) (i % 2 ? odd : even).insert(cycle[i]);
    g.states = {even, odd};
    for (const auto& h : hooks) g.ports.push_back(h.spec);

    check_declared_conflicts(g.body, cycle_edges(cycle));
    return g;
}

GadgetManifest build_blank(int size) {
    GadgetManifest g;
    g.name = "blank";
    g.kind = GadgetKind::Blank;
    g.size = size;
    g.tariff = 0;
    g.body = BoardGrid(size, size, Cell::Black);
    return g;
}

// Clause tile. Port loops read W, N, E; their F-flag cells f sit next to
// the stations. The collector cycle's contact cells k block the stations
// of the idle phase. Station s1 is enabled in one collector phase, the
// adjacent pair s2/s3 in the other.
GadgetManifest build_clause(const std::string& name, int size) {
    if (size != 16)
        throw GadgetError("clause layout is built for size 16");
    Layout layout(size);

    const Coord s2{7, 7}, s3{8, 7}, s1{3, 10};
    const Coord f_n{6, 6}, k2{6, 8};   // station s2 contacts
    const Coord f_e{9, 6}, k3{9, 8};   // station s3 contacts
    const Coord f_w{2, 11}, k1{4, 10}; // station s1 contacts

    std::set<std::pair<Coord, Coord>> declared;
    auto declare = [&](Coord a, Coord b) {
        declared.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
    };

    layout.place(s2);
    if (!layout.can_place(s3, {s2})) throw GadgetError("station pair blocked");
    layout.place(s3);
    layout.place(s1);
    declare(s2, s3);

    struct Pin {
        Coord cell, station;
    };
    for (const Pin& p : {Pin{f_n, s2}, Pin{k2, s2}, Pin{f_e, s3}, Pin{k3, s3},
                         Pin{f_w, s1}, Pin{k1, s1}}) {
        if (!layout.can_place(p.cell, {p.station}))
            throw GadgetError("clause pin blocked at " + std::to_string(p.cell.x) + "," +
                              std::to_string(p.cell.y));
        layout.place(p.cell);
        declare(p.cell, p.station);
    }

    // Collector cycle through k1 (one phase) and k2, k3 (the other).
    std::vector<Coord> collector;
    {
        ArmRouter r1(layout);
        auto a = r1.route(k1, k2, 0);  // even: k1 and k2 in opposite phases
        ArmRouter r2(layout);
        auto b = r2.route(k2, k3, 1);  // odd: k2 and k3 in the same phase
        ArmRouter r3(layout);
        auto c = r3.route(k3, k1, 0);
        collector.push_back(k1);
        collector.insert(collector.end(), a.begin(), a.end());
        collector.push_back(k2);
        collector.insert(collector.end(), b.begin(), b.end());
        collector.push_back(k3);
        collector.insert(collector.end(), c.begin(), c.end());
    }
    if (collector.size() % 2 != 0) throw GadgetError("odd collector cycle");
    for (const auto& e : cycle_edges(collector)) declared.insert(e);

    // Port loops: hook plus a return arm through the loop's F-flag pin.
    // The pin must land in the same cycle class as the hook's o2 cell,
    // which is the class clamped by a port reading F: arm index odd.
    struct LoopSpec {
        Edge edge;
        Coord pin;
    };
    std::vector<Hook> hooks;
    std::vector<std::vector<Coord>> loops;
    for (const LoopSpec& ls : {LoopSpec{Edge::W, f_w}, LoopSpec{Edge::N, f_n},
                               LoopSpec{Edge::E, f_e}}) {
        Hook h = make_hook(size, ls.edge, Gender::Female);
        place_hook(layout, h);
        hooks.push_back(h);
        ArmRouter router(layout);
        auto arm = router.route(h.o2, h.o1, 0, {{ls.pin, 1}});
        std::vector<Coord> loop = {h.o1, h.i1, h.i2, h.o2};
        loop.insert(loop.end(), arm.begin(), arm.end());
        if (loop.size() % 2 != 0) throw GadgetError("odd port loop");
        loops.push_back(loop);
        for (const auto& e : cycle_edges(loop)) declared.insert(e);
    }

    GadgetManifest g;
    g.name = name;
    g.kind = GadgetKind::Clause;
    g.size = size;
    g.body = layout.to_board();
    for (const auto& h : hooks) g.ports.push_back(h.spec);
    int base = static_cast<int>(collector.size() / 2);
    for (const auto& l : loops) base += static_cast<int>(l.size() / 2);
    g.tariff = base + 1;

    check_declared_conflicts(g.body, declared);

    // One witness per satisfiable pattern, computed exactly.
    for (PortPattern pat = 0; pat < 7; ++pat) {
        Clamps clamps;
        for (int i = 0; i < 3; ++i)
            clamp_port(g, g.ports[i], (pat >> i) & 1 ? Role::F : Role::T, clamps);
        SolveResult res = max_placement(g.body, PieceRules::queen(), kDefaultBudget, &clamps);
        if (res.status != SolveStatus::Exact || res.max_count != g.tariff)
            throw GadgetError(name + ": pattern " + std::to_string(pat) + " reaches " +
                              std::to_string(res.max_count) + ", want " +
                              std::to_string(g.tariff));
        g.states.push_back(res.witness);
    }
    return g;
}

}  // namespace

TileSet build_tile_set(int size) {
    TileSet t;
    t.blank = build_blank(size);

    auto join = [&](const std::string& name, Gender west, Gender east, int parity) {
        std::vector<Hook> hooks = {make_hook(size, Edge::W, west),
                                   make_hook(size, Edge::E, east)};
        GadgetManifest g = build_cycle_tile(name, size, hooks, {true, false}, {parity, -1});
        return g;
    };
    // Odd first-arm length keeps the two anchor-lane cells in the same
    // state; even swaps them. The two male-male joins differ exactly in
    // this lane parity, which is what makes one of them the polarity
    // switch.
    t.join_fm = join("join_fm", Gender::Female, Gender::Male, 1);
    t.join_mm = join("join_mm", Gender::Male, Gender::Male, 1);
    t.join_switch_mm = join("join_switch_mm", Gender::Male, Gender::Male, 0);

    t.turn = build_cycle_tile("turn", size,
                              {make_hook(size, Edge::W, Gender::Female),
                               make_hook(size, Edge::S, Gender::Female)},
                              {true, false}, {-1, -1});
    t.variable = build_cycle_tile("variable", size,
                                  {make_hook(size, Edge::W, Gender::Female),
                                   make_hook(size, Edge::E, Gender::Female),
                                   make_hook(size, Edge::N, Gender::Female)},
                                  {true, false, false}, {-1, -1, -1});
    t.clause = build_clause("clause", size);
    t.clause_kings = t.clause;
    t.clause_kings.name = "clause_kings";
    return t;
}

std::vector<const GadgetManifest*> TileSet::all() const {
    return {&blank, &variable, &turn, &join_fm, &join_mm, &join_switch_mm, &clause,
            &clause_kings};
}

const GadgetManifest& TileSet::by_name(const std::string& name) const {
    for (const GadgetManifest* g : all())
        if (g->name == name) return *g;
    throw GadgetError("no gadget named " + name);
}

// ---- synthesis -----------------------------------------------------------

GadgetManifest synthesize_gadget(const ContractSpec& contract, int size,
                                 const std::vector<PortSpec>& ports, std::uint64_t budget) {
    if (contract.kind == GadgetKind::Blank) {
        if (!ports.empty()) throw GadgetError("blank gadgets have no ports");
        return build_blank(size);
    }
    if (size < 8) throw GadgetError("synthesis needs size >= 8");
    if (contract.kind == GadgetKind::Clause) {
        if (ports.size() != 3) throw GadgetError("clause synthesis needs 3 ports");
        GadgetManifest g = build_clause("synthesized_clause", size);
        for (size_t i = 0; i < ports.size(); ++i) g.ports[i].gender = ports[i].gender;
        VerifyReport rep = verify_manifest(g, PieceRules::queen(), budget);
        if (!rep.ok) throw GadgetError("synthesized clause failed verification");
        return g;
    }
    // TwoState: hooks at the requested edges, in clockwise order from W.
    if (ports.empty() || ports.size() > 3) throw GadgetError("need 1..3 ports");
    std::vector<Hook> hooks;
    std::vector<bool> forward;
    std::vector<int> parities;
    std::set<Edge> seen;
    for (const auto& p : ports) {
        if (seen.count(p.edge)) throw GadgetError("ports must sit on distinct edges");
        seen.insert(p.edge);
        hooks.push_back(make_hook(size, p.edge, p.gender));
        forward.push_back(hooks.size() == 1);
        parities.push_back(-1);
    }
    // The router is the search; the verifier is the oracle.
    GadgetManifest g = build_cycle_tile("synthesized", size, hooks, forward, parities);
    VerifyReport rep = verify_manifest(g, PieceRules::queen(), budget);
    if (!rep.ok) {
        std::string why;
        for (const auto& n : rep.notes) why += n + "; ";
        throw GadgetError("synthesized gadget failed verification: " + why);
    }
    if (contract.claimed_max && g.tariff != *contract.claimed_max)
        throw GadgetError("synthesized tariff " + std::to_string(g.tariff) +
                          " differs from the contract's claimed max");
    return g;
}

// ---- study gadgets -------------------------------------------------------

namespace {

StudyBoard from_cycles(const std::string& name, int w, int h,
                       const std::vector<std::vector<Coord>>& cycles,
                       const std::set<std::pair<Coord, Coord>>& extra_edges,
                       int expected_max, int expected_states) {
    BoardGrid board(w, h, Cell::Black);
    std::set<std::pair<Coord, Coord>> declared = extra_edges;
    for (const auto& cyc : cycles) {
        for (const Coord& c : cyc)
            board.set(c, Cell::White);
        for (const auto& e : cycle_edges(cyc)) declared.insert(e);
    }
    check_declared_conflicts(board, declared);
    return StudyBoard{name, board, expected_max, expected_states};
}

// Shared ring shapes. Validity (no chords, runs <= 2) is checked by
// check_declared_conflicts on every use.
const std::vector<Coord> kRing6 = {{2, 1}, {3, 2}, {3, 3}, {2, 4}, {1, 3}, {1, 2}};
const std::vector<Coord> kRing8 = {{2, 1}, {3, 2}, {3, 3}, {2, 4}, {1, 4},
                                   {0, 3}, {0, 2}, {1, 1}};
const std::vector<Coord> kRing10 = {{3, 1}, {4, 2}, {4, 3}, {3, 4}, {2, 4},
                                    {1, 3}, {1, 2}, {0, 1}, {1, 0}, {2, 1}};

std::vector<Coord> shifted(const std::vector<Coord>& ring, int dx, int dy) {
    std::vector<Coord> out;
    for (const Coord& c : ring) out.push_back({c.x + dx, c.y + dy});
    return out;
}

}  // namespace

StudyBoard simple_join() { return from_cycles("simple_join", 5, 6, {kRing6}, {}, 3, 2); }
StudyBoard twisted_join() { return from_cycles("twisted_join", 4, 6, {kRing8}, {}, 4, 2); }
StudyBoard mixed_join() { return from_cycles("mixed_join", 5, 5, {kRing10}, {}, 5, 2); }

// Two twisted joins coupled by two seam contacts that forbid the two
// aligned state pairs: 4+4 pieces in exactly two ways.
StudyBoard marriage_twisted_twisted() {
    // Search a horizontal offset producing exactly two contacts whose
    // class pattern kills complementary pairings.
    const auto base = kRing8;
    for (int dx = 3; dx <= 10; ++dx) {
        for (int dy = -3; dy <= 3; ++dy) {
            auto other = shifted(base, dx, dy);
            bool overlap = false;
            std::vector<std::pair<int, int>> contacts;  // (class in ring1, class in ring2)
            std::set<std::pair<Coord, Coord>> extra;
            for (size_t i = 0; i < base.size() && !overlap; ++i) {
                for (size_t j = 0; j < other.size(); ++j) {
                    if (base[i] == other[j]) { overlap = true; break; }
                    if (adjacent(base[i], other[j])) {
                        contacts.push_back({static_cast<int>(i % 2), static_cast<int>(j % 2)});
                        extra.insert(base[i] < other[j] ? std::make_pair(base[i], other[j])
                                                        : std::make_pair(other[j], base[i]));
                    }
                }
            }
            if (overlap || contacts.size() != 2) continue;
            // complementary kills leave exactly two joint states
            if (contacts[0].first == contacts[1].first ||
                contacts[0].second == contacts[1].second)
                continue;
            int w = 0, h = 0;
            for (const auto& c : base) { w = std::max(w, c.x); h = std::max(h, c.y); }
            for (const auto& c : other) { w = std::max(w, c.x); h = std::max(h, c.y); }
            try {
                return from_cycles("marriage_twisted_twisted", w + 2, h + 2,
                                   {base, other}, extra, 8, 2);
            } catch (const GadgetError&) {
                continue;  // incidental long-line conflict; keep searching
            }
        }
    }
    throw GadgetError("no twisted-twisted coupling found");
}

namespace {

// Search a 6-cycle completion through shared ring cells: two fresh 2-cell
// arcs between v and w. Returns the full 6-cycle or empty.
std::vector<Coord> complete_c6(const std::vector<Coord>& ring, Coord v, Coord w,
                               int board_size) {
    Layout layout(board_size);
    for (const Coord& c : ring) layout.place(c);
    auto neighbours = [&](Coord c) {
        std::vector<Coord> out;
        for (int d = 0; d < 8; ++d) {
            Coord n{c.x + kDx[d], c.y + kDy[d]};
            if (n.x >= 0 && n.y >= 0 && n.x < board_size && n.y < board_size)
                out.push_back(n);
        }
        return out;
    };
    for (Coord x1 : neighbours(v)) {
        if (!layout.can_place(x1, {v})) continue;
        layout.place(x1);
        for (Coord x2 : neighbours(w)) {
            if (!adjacent(x1, x2) || !layout.can_place(x2, {x1, w})) continue;
            layout.place(x2);
            for (Coord y1 : neighbours(w)) {
                if (!layout.can_place(y1, {w})) continue;
                layout.place(y1);
                for (Coord y2 : neighbours(v)) {
                    if (!adjacent(y1, y2) || !layout.can_place(y2, {y1, v})) continue;
                    return {v, x1, x2, w, y1, y2};
                }
                layout.unplace(y1);
            }
            layout.unplace(x2);
        }
        layout.unplace(x1);
    }
    return {};
}

}  // namespace

// A mixed join and a simple join sharing two cells, one per state: 5+3-1
// pieces in exactly two ways. The shared cells sit at odd cycle distance
// in both rings, so all four arcs between them are odd and each maximal
// placement is pinned to one of the two aligned states.
StudyBoard marriage_mixed_simple() {
    const int board = 12;
    const auto ring = shifted(kRing10, 3, 3);
    for (size_t iv = 0; iv < ring.size(); ++iv) {
        for (size_t iw = 0; iw < ring.size(); ++iw) {
            if (((iv + iw) & 1) == 0) continue;  // need opposite ring classes
            const Coord v = ring[iv], w = ring[iw];
            if (adjacent(v, w)) continue;
            auto c6 = complete_c6(ring, v, w, board);
            if (c6.empty()) continue;
            try {
                return from_cycles("marriage_mixed_simple", board, board, {ring, c6}, {},
                                   7, 2);
            } catch (const GadgetError&) {
                continue;
            }
        }
    }
    throw GadgetError("no mixed-simple marriage found");
}

// The composition that does not work: a twisted join and a simple join
// glued at a single cell. The aligned states overlap in the shared cell
// but the opposite states do not, so the figure exceeds 4+3-1 instead of
// holding it in two ways. Recorded as a negative example; the test only
// asserts that the intended two-state contract fails.
StudyBoard hybrid_bad_marriage() {
    const int board = 12;
    const auto ring = shifted(kRing8, 3, 3);
    for (size_t iv = 0; iv < ring.size(); ++iv) {
        const Coord v = ring[iv];
        Layout layout(board);
        for (const Coord& c : ring) layout.place(c);
        auto nb = [&](Coord c) {
            std::vector<Coord> out;
            for (int d = 0; d < 8; ++d) out.push_back({c.x + kDx[d], c.y + kDy[d]});
            return out;
        };
        // a 5-cell fresh path from v back to v
        std::vector<Coord> path;
        std::function<bool(Coord)> grow = [&](Coord at) -> bool {
            if (path.size() == 5) {
                if (!adjacent(path.back(), v)) return false;
                return true;
            }
            for (Coord n : nb(at)) {
                std::vector<Coord> allowed = {at};
                if (path.size() == 4 && adjacent(n, v)) allowed.push_back(v);
                if (!layout.can_place(n, allowed)) continue;
                layout.place(n);
                path.push_back(n);
                if (grow(n)) return true;
                path.pop_back();
                layout.unplace(n);
            }
            return false;
        };
        if (!grow(v)) continue;
        std::vector<Coord> c6 = {v};
        c6.insert(c6.end(), path.begin(), path.end());
        try {
            return from_cycles("hybrid_bad_marriage", board, board, {ring, c6}, {}, 0, 0);
        } catch (const GadgetError&) {
            continue;
        }
    }
    throw GadgetError("no hybrid figure found");
}

}  // namespace qw

#include "qw/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <ostream>
#include <random>
#include <sstream>

#include "qw/board.hpp"
#include "qw/gadgets.hpp"
#include "qw/reduce.hpp"
#include "qw/solver.hpp"

namespace qw {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion {
    std::ostream& out;
    int number;
    bool ok = true;
    std::ostringstream detail;

    Criterion(std::ostream& o, int n, const std::string& title) : out(o), number(n) {
        out << "criterion " << n << " (" << title << "): " << std::flush;
    }
    void fail(const std::string& why) {
        ok = false;
        if (detail.tellp() > 0) detail << "; ";
        detail << why;
    }
    bool finish(double secs) {
        out << (ok ? "PASS" : "FAIL");
        if (detail.tellp() > 0) out << " [" << detail.str() << "]";
        out << "  (" << secs << "s)\n";
        return ok;
    }
};

BoardGrid empty_board(int n) { return BoardGrid(n, n, Cell::White); }

BoardGrid random_board(std::mt19937& rng, int max_side) {
    std::uniform_int_distribution<int> side(1, max_side);
    const int w = side(rng), h = side(rng);
    BoardGrid b(w, h, Cell::Black);
    std::uniform_int_distribution<int> bit(0, 2);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (bit(rng) > 0) b.set({x, y}, Cell::White);
    return b;
}

std::vector<Formula> corpus() {
    auto F = [](int vars, std::vector<std::vector<int>> cls) {
        Formula f;
        f.variable_count = vars;
        f.clauses = std::move(cls);
        return f;
    };
    return {
        F(1, {{1}}),                      // (x)
        F(1, {{-1}}),                     // (not x)
        F(1, {{1}, {-1}}),                // unsat pair
        F(1, {{1}, {1}}),
        F(1, {{1}, {1}, {1}}),
        F(1, {{1}, {1}, {-1}}),           // unsat
        F(2, {{1, 2}}),
        F(2, {{-1, -2}}),
        F(2, {{1, -2}}),
        F(2, {{1, 2}, {-1, -2}}),         // x != y
        F(2, {{1, 2}, {-1, 2}}),
        F(2, {{1}, {-2}}),
        F(2, {{1}, {2}}),
        F(2, {{-1}, {1, -2}}),            // the paper's instance, first two clauses
        F(2, {{1, 2}, {1, -2}}),
        F(2, {{-1, 2}, {1, -2}}),
        F(3, {{1, 2, 3}}),
        F(3, {{-1, -2, -3}}),
        F(3, {{1, -2, 3}}),
        F(2, {{-1, -2}, {1, 2}}),
        F(1, {{-1}, {-1}}),
        F(2, {{2}, {-1, -2}}),
    };
}

}  // namespace

bool run_acceptance(std::ostream& out, int jobs) {
    bool all_ok = true;
    const TileSet tiles = build_tile_set(16);

    {  // 1: tariff arithmetic with the published sub-board counts
        auto t0 = Clock::now();
        Criterion c(out, 1, "tariff arithmetic");
        TileSet priced = tiles;
        priced.clause.tariff = 21;
        priced.variable.tariff = 20;
        priced.turn.tariff = 12;
        priced.join_fm.tariff = 16;
        priced.join_mm.tariff = 17;
        priced.join_switch_mm.tariff = 16;
        TilePlan plan;
        plan.width = 63;
        plan.height = 1;
        plan.tile_size = 16;
        plan.slots.assign(63, Slot{});
        int i = 0;
        auto fill = [&](SlotKind k, int count) {
            for (int j = 0; j < count; ++j) plan.slots[i++].kind = k;
        };
        fill(SlotKind::Clause, 5);
        fill(SlotKind::Variable, 6);
        fill(SlotKind::Turn, 8);
        fill(SlotKind::JoinFM, 22);
        fill(SlotKind::JoinMM, 12);
        fill(SlotKind::JoinSwitchMM, 10);
        const int m = tariff(plan, priced);
        if (m != 1037) c.fail("tariff " + std::to_string(m) + " != 1037");
        all_ok &= c.finish(seconds_since(t0));
    }

    {  // 2: classical n-queens maxima
        auto t0 = Clock::now();
        Criterion c(out, 2, "classical maxima");
        for (int n : {1, 4, 5, 6, 7, 8}) {
            SolveResult r = max_placement(empty_board(n), PieceRules::queen());
            if (r.status != SolveStatus::Exact || r.max_count != n)
                c.fail("n=" + std::to_string(n) + " gave " + std::to_string(r.max_count));
        }
        if (max_placement(empty_board(2), PieceRules::queen()).max_count != 1)
            c.fail("n=2 max is not 1");
        SolveResult three = max_placement(empty_board(3), PieceRules::queen());
        SolveResult oracle3 = brute_force_max(empty_board(3), PieceRules::queen());
        if (three.max_count != 2 || oracle3.max_count != 2)
            c.fail("n=3 max is not 2 (solver " + std::to_string(three.max_count) +
                   ", oracle " + std::to_string(oracle3.max_count) + ")");
        const double secs = seconds_since(t0);
        if (secs > 5.0) c.fail("exceeded 5s");
        all_ok &= c.finish(secs);
    }

    {  // 3: oracle agreement on random boards
        auto t0 = Clock::now();
        Criterion c(out, 3, "oracle agreement");
        std::mt19937 rng(20260809);
        for (int trial = 0; trial < 200; ++trial) {
            BoardGrid b = random_board(rng, 5);
            for (PieceRules rules : {PieceRules::king(), PieceRules::ranged(2),
                                     PieceRules::queen()}) {
                SolveResult fast = max_placement(b, rules);
                SolveResult slow = brute_force_max(b, rules);
                if (fast.status != SolveStatus::Exact || fast.max_count != slow.max_count) {
                    c.fail("disagreement on trial " + std::to_string(trial));
                    break;
                }
            }
            if (!c.ok) break;
        }
        const double secs = seconds_since(t0);
        if (secs > 60.0) c.fail("exceeded 60s");
        all_ok &= c.finish(secs);
    }

    {  // 4: full gadget suite
        auto t0 = Clock::now();
        Criterion c(out, 4, "gadget suite");
        auto verify_one = [&](const GadgetManifest* g) {
            VerifyReport rep = verify_manifest(*g, PieceRules::queen());
            return std::make_pair(g->name, rep);
        };
        std::vector<std::future<std::pair<std::string, VerifyReport>>> futs;
        std::vector<std::pair<std::string, VerifyReport>> reports;
        for (const GadgetManifest* g : tiles.all()) {
            if (jobs > 1)
                futs.push_back(std::async(std::launch::async, verify_one, g));
            else
                reports.push_back(verify_one(g));
        }
        for (auto& f : futs) reports.push_back(f.get());
        for (const auto& [name, rep] : reports) {
            if (!rep.ok)
                c.fail(name + ": " + (rep.notes.empty() ? "failed" : rep.notes.front()));
        }
        all_ok &= c.finish(seconds_since(t0));
    }

    {  // 5: composition checks on the join marriages
        auto t0 = Clock::now();
        Criterion c(out, 5, "join marriages");
        for (const StudyBoard& sb :
             {marriage_mixed_simple(), marriage_twisted_twisted()}) {
            EnumerateResult en = enumerate_max(sb.board, PieceRules::queen(), 8);
            if (en.status != SolveStatus::Exact)
                c.fail(sb.name + ": inconclusive");
            else if (en.max_count != sb.expected_max)
                c.fail(sb.name + ": max " + std::to_string(en.max_count) + " != " +
                       std::to_string(sb.expected_max));
            else if (en.placements.size() != 2)
                c.fail(sb.name + ": " + std::to_string(en.placements.size()) +
                       " maximal placements, expected 2");
        }
        all_ok &= c.finish(seconds_since(t0));
    }

    {  // 6: end-to-end soundness and completeness
        auto t0 = Clock::now();
        Criterion c(out, 6, "end-to-end equivalence");
        int checked = 0;
        for (const Formula& f : corpus()) {
            ReductionOutput red = reduce(f, tiles);
            const bool expected = sat_oracle(f);
            auto got = solve_tiled(red, tiles);
            if (got.has_value() != expected) {
                c.fail("formula " + std::to_string(checked) + " decide mismatch");
            } else if (got) {
                if (!is_legitimate(red.board, PieceRules::queen(), *got))
                    c.fail("formula " + std::to_string(checked) + " witness illegitimate");
                std::vector<bool> model = decode(*got, red);
                model.resize(f.variable_count, false);
                if (!evaluate(f, model))
                    c.fail("formula " + std::to_string(checked) + " decoded model fails");
            }
            ++checked;
        }
        if (checked < 20) c.fail("corpus too small");
        const double secs = seconds_since(t0);
        if (secs > 1800.0) c.fail("exceeded 30min");
        all_ok &= c.finish(secs);
    }

    {  // 7: kings and range-2 variants
        auto t0 = Clock::now();
        Criterion c(out, 7, "kings variant");
        VerifyReport kc = verify_clause(tiles.clause_kings, PieceRules::king());
        if (!kc.ok) c.fail("kings clause: " + (kc.notes.empty() ? "failed" : kc.notes[0]));
        for (const GadgetManifest* g : tiles.all()) {
            if (g->kind != GadgetKind::TwoState) continue;
            VerifyReport rep = verify_two_state(*g, PieceRules::king());
            if (!rep.ok) c.fail(g->name + " fails at range 1");
        }
        // one satisfiable end-to-end formula at range 1 and one at range 2
        Formula fx;
        fx.variable_count = 2;
        fx.clauses = {{1, 2}};
        ReductionOutput red = reduce(fx, tiles);
        auto got = solve_tiled(red, tiles, PieceRules::king());
        if (!got || !is_legitimate(red.board, PieceRules::king(), *got))
            c.fail("range-1 end-to-end failed");
        Formula funsat;
        funsat.variable_count = 1;
        funsat.clauses = {{1}, {-1}};
        ReductionOutput red2 = reduce(funsat, tiles);
        auto got2 = solve_tiled(red2, tiles, PieceRules::ranged(2));
        if (got2) c.fail("range-2 end-to-end claims an unsatisfiable formula");
        auto got3 = solve_tiled(red, tiles, PieceRules::ranged(2));
        if (!got3 || !is_legitimate(red.board, PieceRules::ranged(2), *got3))
            c.fail("range-2 end-to-end failed");
        all_ok &= c.finish(seconds_since(t0));
    }

    {  // 8: stated non-goals, dimension formula, determinism, growth
        auto t0 = Clock::now();
        Criterion c(out, 8, "scale statement");
        out << "\n  note: the published example board (17x16 by 9x16) and the exact\n"
               "  per-gadget tariffs depend on figure-only layouts and embedding\n"
               "  choices that are not reproducible here; this build asserts the\n"
               "  dimension formula, pipeline determinism and measured growth.\n  ";
        Formula f;
        f.variable_count = 2;
        f.clauses = {{1, 2}, {-1, -2}};
        ReductionOutput a = reduce(f, tiles);
        ReductionOutput b = reduce(f, tiles);
        if (emit_board(a.board) != emit_board(b.board) ||
            save_sidecar(a) != save_sidecar(b))
            c.fail("reduce is not deterministic");
        if (a.board.width() != a.plan.width * a.plan.tile_size ||
            a.board.height() != a.plan.height * a.plan.tile_size)
            c.fail("board dimensions violate the plan formula");
        // measured growth of board area in the formula size
        double max_ratio = 0;
        for (const Formula& g : corpus()) {
            ReductionOutput r = reduce(g, tiles);
            const double n = g.variable_count + g.clauses.size();
            const double area = static_cast<double>(r.board.width()) * r.board.height();
            max_ratio = std::max(max_ratio, std::log(area) / std::log(n + 1));
        }
        out << "measured area growth exponent bound: " << max_ratio << "\n  ";
        all_ok &= c.finish(seconds_since(t0));
    }

    out << (all_ok ? "all acceptance criteria passed\n"
                   : "ACCEPTANCE FAILURES PRESENT\n");
    return all_ok;
}

}  // namespace qw

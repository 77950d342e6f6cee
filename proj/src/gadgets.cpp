#include "qw/gadgets.hpp"

#include <algorithm>
#include <sstream>

namespace qw {

const char* to_string(Edge e) {
    switch (e) {
        case Edge::N: return "N";
        case Edge::E: return "E";
        case Edge::S: return "S";
        case Edge::W: return "W";
    }
    return "?";
}
const char* to_string(Gender g) { return g == Gender::Male ? "M" : "F"; }
const char* to_string(Role r) { return r == Role::T ? "T" : "F"; }
const char* to_string(GadgetKind k) {
    switch (k) {
        case GadgetKind::TwoState: return "TwoState";
        case GadgetKind::Clause: return "Clause";
        case GadgetKind::Blank: return "Blank";
    }
    return "?";
}

namespace {

Coord edge_cell(Edge e, int offset, int size) {
    switch (e) {
        case Edge::N: return {offset, 0};
        case Edge::S: return {offset, size - 1};
        case Edge::W: return {0, offset};
        case Edge::E: return {size - 1, offset};
    }
    throw GadgetError("bad edge");
}

}  // namespace

Coord GadgetManifest::port_cell(const PortSpec& port, bool anchor_lane) const {
    const int off = anchor_lane ? port.offset : size - 1 - port.offset;
    return edge_cell(port.edge, off, size);
}

Coord GadgetManifest::port_cell_for_role(const PortSpec& port, Role r) const {
    if (port.role0 == r) return port_cell(port, true);
    if (port.role1 == r) return port_cell(port, false);
    throw GadgetError("port has no cell for role");
}

std::optional<int> GadgetManifest::occupied_lane(const PortSpec& port,
                                                 const Placement& p) const {
    const bool a = p.count(port_cell(port, true)) > 0;
    const bool b = p.count(port_cell(port, false)) > 0;
    if (a && b) return std::nullopt;  // malformed; caller reports
    if (a) return 0;
    if (b) return 1;
    return std::nullopt;
}

// ---- verification -------------------------------------------------------

VerifyReport verify_isolation(const GadgetManifest& g) {
    VerifyReport rep;
    rep.ok = true;
    const int s = g.size;
    if (g.body.width() != s || g.body.height() != s) {
        rep.fail("body dimensions do not match declared size");
        return rep;
    }
    std::vector<Coord> port_cells;
    for (const auto& p : g.ports) {
        port_cells.push_back(g.port_cell(p, true));
        port_cells.push_back(g.port_cell(p, false));
    }
    auto is_port_cell = [&](Coord c) {
        return std::find(port_cells.begin(), port_cells.end(), c) != port_cells.end();
    };

    for (int y = 0; y < s; ++y) {
        for (int x = 0; x < s; ++x) {
            Coord c{x, y};
            const bool border = x == 0 || y == 0 || x == s - 1 || y == s - 1;
            const bool corner = (x == 0 || x == s - 1) && (y == 0 || y == s - 1);
            if (!border || g.body.at(c) == Cell::Black) continue;
            if (corner) rep.fail("white corner cell at " + std::to_string(x) + "," + std::to_string(y));
            else if (!is_port_cell(c))
                rep.fail("white border cell outside a port at " + std::to_string(x) + "," +
                         std::to_string(y));
        }
    }

    // Run discipline: no three consecutive white cells in any direction.
    // This both keeps every ray short (isolation) and makes the conflict
    // graph independent of the piece range.
    static const int dx[4] = {1, 0, 1, 1};
    static const int dy[4] = {0, 1, 1, -1};
    for (int y = 0; y < s; ++y) {
        for (int x = 0; x < s; ++x) {
            for (int d = 0; d < 4; ++d) {
                Coord a{x, y}, b{x + dx[d], y + dy[d]}, c{x + 2 * dx[d], y + 2 * dy[d]};
                if (!g.body.in_bounds(c)) continue;
                if (g.body.white(a) && g.body.white(b) && g.body.white(c)) {
                    rep.fail("white run of length 3 at " + std::to_string(x) + "," +
                             std::to_string(y) + " dir " + std::to_string(d));
                }
            }
        }
    }

    // Every ray from a white cell must end inside the body or leave it at a
    // port cell.
    static const int rdx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    static const int rdy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
    for (int y = 0; y < s; ++y) {
        for (int x = 0; x < s; ++x) {
            if (!g.body.white({x, y})) continue;
            for (int d = 0; d < 8; ++d) {
                Coord c{x, y};
                Coord last = c;
                while (true) {
                    Coord n{c.x + rdx[d], c.y + rdy[d]};
                    if (!g.body.in_bounds(n)) {
                        if (!is_port_cell(last))
                            rep.fail("ray from " + std::to_string(x) + "," + std::to_string(y) +
                                     " exits outside a port at " + std::to_string(last.x) + "," +
                                     std::to_string(last.y));
                        break;
                    }
                    if (g.body.at(n) == Cell::Black) break;
                    last = n;
                    c = n;
                }
            }
        }
    }
    return rep;
}

namespace {

VerifyReport shared_manifest_checks(const GadgetManifest& g) {
    VerifyReport rep;
    rep.ok = true;
    for (const auto& st : g.states) {
        if (static_cast<int>(st.size()) != g.tariff)
            rep.fail("declared state size " + std::to_string(st.size()) +
                     " != tariff " + std::to_string(g.tariff));
        for (const Coord& c : st)
            if (!g.body.white(c)) rep.fail("declared state uses a non-white cell");
    }
    if (g.ports.size() > 3) rep.fail("more than 3 ports");
    for (const auto& p : g.ports) {
        if (p.offset != GadgetManifest::lane_a(g.size))
            rep.fail("port anchor offset must be size/2-2");
        if (p.role0 == p.role1) rep.fail("port role entries must differ");
    }
    return rep;
}

}  // namespace

VerifyReport verify_two_state(const GadgetManifest& g, PieceRules rules,
                              std::uint64_t budget) {
    VerifyReport rep = shared_manifest_checks(g);
    if (g.kind != GadgetKind::TwoState) {
        rep.fail("kind is not TwoState");
        return rep;
    }
    if (g.states.size() != 2) {
        rep.fail("TwoState manifest must declare exactly 2 states");
        return rep;
    }
    EnumerateResult en = enumerate_max(g.body, rules, /*cap=*/8, budget);
    if (en.status == SolveStatus::Inconclusive) {
        rep.ok = false;
        rep.inconclusive = true;
        rep.notes.push_back("solver budget exhausted");
        return rep;
    }
    if (en.max_count != g.tariff)
        rep.fail("enumerated max " + std::to_string(en.max_count) + " != tariff " +
                 std::to_string(g.tariff));
    if (en.overflowed || en.placements.size() != 2) {
        rep.fail("expected exactly 2 maximal placements, found " +
                 std::string(en.overflowed ? ">=9" : std::to_string(en.placements.size())));
        return rep;
    }
    std::vector<Placement> declared = g.states;
    std::sort(declared.begin(), declared.end());
    if (declared != en.placements) rep.fail("declared states differ from enumerated maxima");

    for (size_t i = 0; i < g.ports.size(); ++i) {
        const auto& port = g.ports[i];
        auto l0 = g.occupied_lane(port, g.states[0]);
        auto l1 = g.occupied_lane(port, g.states[1]);
        if (!l0 || !l1)
            rep.fail("port " + std::to_string(i) + " does not occupy exactly one lane per state");
        else if (*l0 == *l1)
            rep.fail("port " + std::to_string(i) + " occupancy does not flip between states");
    }
    return rep;
}

void clamp_port(const GadgetManifest& g, const PortSpec& port, Role r, Clamps& clamps) {
    clamps.required.push_back(g.port_cell_for_role(port, r));
    clamps.forbidden.push_back(g.port_cell_for_role(port, r == Role::T ? Role::F : Role::T));
}

VerifyReport verify_clause(const GadgetManifest& g, PieceRules rules, std::uint64_t budget) {
    VerifyReport rep = shared_manifest_checks(g);
    if (g.kind != GadgetKind::Clause) {
        rep.fail("kind is not Clause");
        return rep;
    }
    if (g.ports.size() != 3) {
        rep.fail("clause gadget must have exactly 3 ports");
        return rep;
    }
    const unsigned all_false = 7;
    if (g.states.size() != 7) rep.fail("clause manifest must declare 7 pattern witnesses");

    for (PortPattern pat = 0; pat <= all_false; ++pat) {
        Clamps clamps;
        for (int i = 0; i < 3; ++i)
            clamp_port(g, g.ports[i], (pat >> i) & 1 ? Role::F : Role::T, clamps);
        SolveResult res = max_placement(g.body, rules, budget, &clamps);
        if (res.status == SolveStatus::Inconclusive) {
            rep.ok = false;
            rep.inconclusive = true;
            rep.notes.push_back("solver budget exhausted on pattern " + std::to_string(pat));
            return rep;
        }
        const int want = pat == all_false ? g.tariff - 1 : g.tariff;
        if (res.max_count != want)
            rep.fail("pattern " + std::to_string(pat) + ": max " +
                     std::to_string(res.max_count) + " != expected " + std::to_string(want));
    }

    // Declared witnesses must be legitimate and realize their pattern.
    for (size_t w = 0; w < g.states.size() && w < 7; ++w) {
        const Placement& st = g.states[w];
        if (!is_legitimate(g.body, rules, st)) {
            rep.fail("witness " + std::to_string(w) + " is not legitimate");
            continue;
        }
        for (int i = 0; i < 3; ++i) {
            const Role want = (w >> i) & 1 ? Role::F : Role::T;
            if (!st.count(g.port_cell_for_role(g.ports[i], want)))
                rep.fail("witness " + std::to_string(w) + " does not realize its pattern at port " +
                         std::to_string(i));
        }
    }
    return rep;
}

VerifyReport verify_manifest(const GadgetManifest& g, PieceRules rules, std::uint64_t budget) {
    VerifyReport rep = verify_isolation(g);
    if (!rep.ok) return rep;
    switch (g.kind) {
        case GadgetKind::Blank: {
            VerifyReport b;
            b.ok = true;
            if (g.tariff != 0) b.fail("blank tariff must be 0");
            if (g.body.white_count() != 0) b.fail("blank must have no white cells");
            if (!g.ports.empty()) b.fail("blank must have no ports");
            return b;
        }
        case GadgetKind::TwoState: return verify_two_state(g, rules, budget);
        case GadgetKind::Clause: return verify_clause(g, rules, budget);
    }
    throw GadgetError("unknown gadget kind");
}

// ---- serialization ------------------------------------------------------

std::string save_manifest(const GadgetManifest& g) {
    std::ostringstream out;
    out << "gadget " << g.name << "\n";
    out << "kind " << to_string(g.kind) << "\n";
    out << "size " << g.size << "\n";
    out << "tariff " << g.tariff << "\n";
    for (const auto& p : g.ports)
        out << "port " << to_string(p.edge) << " " << p.offset << " " << to_string(p.gender)
            << " " << to_string(p.role0) << "/" << to_string(p.role1) << "\n";
    out << "body\n" << emit_board(g.body);
    for (const auto& st : g.states) out << "state\n" << emit_board(g.body, &st);
    out << "end\n";
    return out.str();
}

namespace {

Edge parse_edge(const std::string& s) {
    if (s == "N") return Edge::N;
    if (s == "E") return Edge::E;
    if (s == "S") return Edge::S;
    if (s == "W") return Edge::W;
    throw GadgetError("bad edge '" + s + "'");
}

Role parse_role(char c) {
    if (c == 'T') return Role::T;
    if (c == 'F') return Role::F;
    throw GadgetError(std::string("bad role '") + c + "'");
}

}  // namespace

GadgetManifest load_manifest(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    GadgetManifest g;
    bool have_name = false, have_body = false;
    auto read_grid = [&]() {
        std::vector<std::string> rows;
        for (int i = 0; i < g.size; ++i) {
            if (!std::getline(in, line)) throw GadgetError("truncated grid");
            rows.push_back(line);
        }
        std::string joined;
        for (auto& r : rows) joined += r + "\n";
        return parse_board(joined);
    };
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "gadget") {
            ls >> g.name;
            have_name = true;
        } else if (tok == "kind") {
            std::string k;
            ls >> k;
            if (k == "TwoState") g.kind = GadgetKind::TwoState;
            else if (k == "Clause") g.kind = GadgetKind::Clause;
            else if (k == "Blank") g.kind = GadgetKind::Blank;
            else throw GadgetError("bad kind '" + k + "'");
        } else if (tok == "size") {
            ls >> g.size;
            if (g.size < 6) throw GadgetError("size too small");
        } else if (tok == "tariff") {
            ls >> g.tariff;
            if (g.tariff < 0) throw GadgetError("negative tariff");
        } else if (tok == "port") {
            std::string e, gen, roles;
            int off;
            ls >> e >> off >> gen >> roles;
            if (roles.size() != 3 || roles[1] != '/') throw GadgetError("bad port roles");
            PortSpec p;
            p.edge = parse_edge(e);
            p.offset = off;
            if (gen == "M") p.gender = Gender::Male;
            else if (gen == "F") p.gender = Gender::Female;
            else throw GadgetError("bad gender '" + gen + "'");
            p.role0 = parse_role(roles[0]);
            p.role1 = parse_role(roles[2]);
            g.ports.push_back(p);
        } else if (tok == "body") {
            g.body = read_grid().grid;
            have_body = true;
        } else if (tok == "state") {
            ParsedBoard pb = read_grid();
            if (pb.grid != g.body) throw GadgetError("state grid walls differ from body");
            g.states.push_back(pb.placement.value_or(Placement{}));
        } else if (tok == "end") {
            break;
        } else {
            throw GadgetError("unknown manifest line: " + line);
        }
    }
    if (!have_name || !have_body) throw GadgetError("manifest missing name or body");
    for (const auto& st : g.states)
        if (static_cast<int>(st.size()) != g.tariff)
            throw GadgetError("state size inconsistent with tariff");
    return g;
}

// ---- rotation -----------------------------------------------------------

namespace {

Coord rotate_cell_cw(Coord c, int size) { return {size - 1 - c.y, c.x}; }

Edge rotate_edge_cw(Edge e) {
    switch (e) {
        case Edge::N: return Edge::E;
        case Edge::E: return Edge::S;
        case Edge::S: return Edge::W;
        case Edge::W: return Edge::N;
    }
    throw GadgetError("bad edge");
}

GadgetManifest rotate_once(const GadgetManifest& g) {
    GadgetManifest out = g;
    out.body = BoardGrid(g.size, g.size, Cell::Black);
    for (int y = 0; y < g.size; ++y)
        for (int x = 0; x < g.size; ++x)
            if (g.body.white({x, y})) out.body.set(rotate_cell_cw({x, y}, g.size), Cell::White);
    out.states.clear();
    for (const auto& st : g.states) {
        Placement np;
        for (const Coord& c : st) np.insert(rotate_cell_cw(c, g.size));
        out.states.push_back(std::move(np));
    }
    out.ports.clear();
    for (const auto& p : g.ports) {
        PortSpec np = p;
        np.edge = rotate_edge_cw(p.edge);
        np.offset = GadgetManifest::lane_a(g.size);
        // Keep role/cell bindings: find where the old anchor cell landed.
        const Coord old_anchor = g.port_cell(p, true);
        const Coord landed = rotate_cell_cw(old_anchor, g.size);
        if (landed == out.port_cell(np, true)) {
            np.role0 = p.role0;
            np.role1 = p.role1;
        } else {
            np.role0 = p.role1;
            np.role1 = p.role0;
        }
        out.ports.push_back(np);
    }
    return out;
}

}  // namespace

GadgetManifest rotated(const GadgetManifest& g, int quarter_turns) {
    GadgetManifest out = g;
    for (int i = 0; i < ((quarter_turns % 4) + 4) % 4; ++i) out = rotate_once(out);
    return out;
}

}  // namespace qw

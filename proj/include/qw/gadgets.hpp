#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qw/board.hpp"
#include "qw/solver.hpp"

// Gadget tiles: fixed-size sub-boards with port contracts, the exhaustive
// verifiers for them, manifest serialization, and synthesis from contracts.
//
// Port geometry. Every port sits at the middle of an edge and spans two
// "lanes": border cells at offsets size/2-2 and size/2+1 along the edge.
// The two offsets sum to size-1, so the lane pair maps onto itself under
// rotation. A two-state tile occupies exactly one lane cell per port in
// each of its two states, on opposite lanes, which is what couples
// neighbouring tiles: facing lane cells are adjacent across the seam, so at
// most one side of each lane can be occupied, and the only consistent
// joint states pair opposite lanes.
//
// The cell at the port's anchor offset (size/2-2) reads `role0` when
// occupied; the mirror cell reads `role1`. Male and female ports have the
// same local geometry; the gender governs seam bookkeeping during assembly
// (a male port's lane cells act as the protuberances that fill the facing
// female opening's corridor).
namespace qw {

enum class Edge : std::uint8_t { N, E, S, W };
enum class Gender : std::uint8_t { Male, Female };
enum class Role : std::uint8_t { T, F };
enum class GadgetKind : std::uint8_t { TwoState, Clause, Blank };

const char* to_string(Edge e);
const char* to_string(Gender g);
const char* to_string(Role r);
const char* to_string(GadgetKind k);

struct PortSpec {
    Edge edge = Edge::W;
    int offset = 0;  // anchor lane offset along the edge (= size/2 - 2)
    Gender gender = Gender::Female;
    Role role0 = Role::T;  // truth read when the anchor-lane cell is occupied
    Role role1 = Role::F;  // truth read when the mirror-lane cell is occupied

    bool operator==(const PortSpec&) const = default;
};

class GadgetError : public std::runtime_error {
  public:
    explicit GadgetError(const std::string& what) : std::runtime_error(what) {}
};

struct GadgetManifest {
    std::string name;
    GadgetKind kind = GadgetKind::Blank;
    int size = 16;
    int tariff = 0;
    BoardGrid body{1, 1};
    std::vector<PortSpec> ports;
    // TwoState: exactly the two maximal placements. Clause: one witness per
    // satisfiable port pattern, ordered by pattern index (bit i set = port i
    // reads F; pattern 2^ports-1, all false, is unsatisfiable and absent).
    std::vector<Placement> states;

    static int lane_a(int size) { return size / 2 - 2; }
    static int lane_b(int size) { return size / 2 + 1; }

    // Border cell of `port` on the given lane (anchor = lane_a).
    Coord port_cell(const PortSpec& port, bool anchor_lane) const;
    Coord port_cell_for_role(const PortSpec& port, Role r) const;
    // Which lane cell (if any) a placement occupies: 0 = anchor, 1 = mirror.
    std::optional<int> occupied_lane(const PortSpec& port, const Placement& p) const;
};

// Truth pattern over a gadget's ports; bit i set means port i reads F.
using PortPattern = unsigned;

struct VerifyReport {
    bool ok = false;
    bool inconclusive = false;  // solver budget exhausted; not a pass
    std::vector<std::string> notes;

    void fail(std::string note) {
        ok = false;
        notes.push_back(std::move(note));
    }
};

// Structural isolation: border black except declared port lane cells,
// corners black, and no white cell's queen ray leaves the body except
// through a port cell. Also enforces the run discipline (no white run
// longer than 2 in any direction) that keeps the tiles' conflict structure
// identical for every range, which the kings variant relies on.
VerifyReport verify_isolation(const GadgetManifest& g);

// Exhaustive two-state check: maximum equals the tariff, exactly two
// maximal placements exist and equal the declared states, and every port
// occupies exactly one lane cell per state, on opposite lanes.
VerifyReport verify_two_state(const GadgetManifest& g, PieceRules rules,
                              std::uint64_t budget = kDefaultBudget);

// Exhaustive clause check: for each of the 8 port patterns (port cells
// clamped to the pattern), the achievable maximum equals the tariff except
// for the all-false pattern, which reaches exactly tariff - 1.
VerifyReport verify_clause(const GadgetManifest& g, PieceRules rules,
                           std::uint64_t budget = kDefaultBudget);

// Kind-appropriate verification (isolation plus the checks above).
VerifyReport verify_manifest(const GadgetManifest& g, PieceRules rules,
                             std::uint64_t budget = kDefaultBudget);

// Clamps that force `port` to read `r` (require the matching lane cell,
// forbid the other).
void clamp_port(const GadgetManifest& g, const PortSpec& port, Role r, Clamps& clamps);

GadgetManifest load_manifest(const std::string& text);
std::string save_manifest(const GadgetManifest& g);

// Quarter-turns clockwise; body, ports, states and role/cell bindings all
// rotate together.
GadgetManifest rotated(const GadgetManifest& g, int quarter_turns);

// What a contract demands of a synthesized gadget.
struct ContractSpec {
    GadgetKind kind = GadgetKind::Blank;
    int claimed_state_count = 2;           // TwoState only
    std::optional<int> claimed_max;        // nullopt: accept whatever verifies
};

// Template-driven synthesis: builds a candidate layout for the contract
// (port hooks joined by staircase loops), then searches small routing
// variations until the kind verifier accepts. The verifier is the oracle;
// the returned manifest has passed it.
GadgetManifest synthesize_gadget(const ContractSpec& contract, int size,
                                 const std::vector<PortSpec>& ports,
                                 std::uint64_t budget = kDefaultBudget);

// ---- Tile library ------------------------------------------------------
// The named gadget set used by the reduction, built at a given tile size.
// Every manifest here passes its verifier; tests and the acceptance suite
// re-run the verification.

struct TileSet {
    GadgetManifest blank;
    GadgetManifest variable;        // female ports W, N, E
    GadgetManifest turn;            // female ports W, S
    GadgetManifest join_fm;         // female W, male E
    GadgetManifest join_mm;         // male W, male E
    GadgetManifest join_switch_mm;  // male W, male E, opposite lane parity
    GadgetManifest clause;          // female ports W, N, E
    GadgetManifest clause_kings;    // same contract, shipped for range 1

    std::vector<const GadgetManifest*> all() const;
    const GadgetManifest& by_name(const std::string& name) const;
};

// Only size 16 layouts ship; the builder asserts the internal structure
// (cycle adjacency, run discipline) as it goes.
TileSet build_tile_set(int size = 16);

// ---- Small study gadgets -----------------------------------------------
// Free-form boards for the join-marriage composition checks: the simple,
// twisted and mixed joins and their pairings.

struct StudyBoard {
    std::string name;
    BoardGrid board;
    int expected_max = 0;
    int expected_state_count = 0;  // 0: no claim
};

StudyBoard simple_join();    // max 3 in exactly two ways
StudyBoard twisted_join();   // max 4 in exactly two ways
StudyBoard mixed_join();     // max 5 in exactly two ways
StudyBoard marriage_mixed_simple();    // overlap by one cell per state: 5+3-1
StudyBoard marriage_twisted_twisted(); // side by side: 4+4
StudyBoard hybrid_bad_marriage();      // the composition that does not work

}  // namespace qw

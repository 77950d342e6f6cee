#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qw/board.hpp"
#include "qw/gadgets.hpp"
#include "qw/solver.hpp"

// The reduction compiler: planar 3-SAT formula -> incidence graph -> planar
// embedding -> degree-3 splitting -> orthogonal grid layout -> doubled grid
// -> tile plan -> board and tariff, with provenance for decoding winning
// placements back into truth assignments.
namespace qw {

class ReduceError : public std::runtime_error {
  public:
    explicit ReduceError(const std::string& what) : std::runtime_error(what) {}
};

class NonPlanarError : public ReduceError {
  public:
    explicit NonPlanarError(const std::string& what) : ReduceError(what) {}
};

struct Formula {
    int variable_count = 0;
    std::vector<std::vector<int>> clauses;  // non-zero literals, 1-based
};

Formula parse_dimacs(const std::string& text);
std::string emit_dimacs(const Formula& f);

// Exhaustive satisfiability check; the end-to-end test oracle. Guarded to
// 20 variables.
bool sat_oracle(const Formula& f, std::vector<bool>* model = nullptr);

bool evaluate(const Formula& f, const std::vector<bool>& assignment);

// Vertices 0..variable_count-1 are variables, the rest clauses.
struct IncidenceGraph {
    int variable_count = 0;
    int clause_count = 0;
    struct Edge {
        int var;      // 0-based variable index
        int clause;   // 0-based clause index
        bool negative;
    };
    std::vector<Edge> edges;

    int vertex_count() const { return variable_count + clause_count; }
    int clause_vertex(int clause) const { return variable_count + clause; }
};

IncidenceGraph incidence_graph(const Formula& f);

// Rotation system of a planar embedding: for each vertex, the cyclic
// order of its neighbours. Face 0 is the designated outer face of the
// face list traced from the rotation system.
struct PlanarEmbedding {
    int vertex_count = 0;
    std::vector<std::vector<int>> rotation;
    int outer_face = 0;

    std::vector<std::vector<int>> trace_faces() const;  // directed-edge faces
};

// Embeds an arbitrary (simple) graph given as an adjacency structure.
PlanarEmbedding planar_embed_graph(int vertex_count,
                                   const std::vector<std::pair<int, int>>& edges);
PlanarEmbedding planar_embed(const IncidenceGraph& g);

// The degree-reduced graph: variables of degree d > 3 become chains of
// d-2 subvariable vertices.
struct SplitGraph {
    PlanarEmbedding embedding;
    // per vertex of the new graph
    struct VertexInfo {
        bool is_clause = false;
        int original = 0;     // variable or clause index
        int chain_pos = 0;    // position within the subvariable chain
    };
    std::vector<VertexInfo> vertices;
    struct EdgeInfo {
        bool chain_link = false;  // consistency edge between subvariables
        bool negative = false;    // literal sign for variable-clause edges
    };
    std::map<std::pair<int, int>, EdgeInfo> edge_info;  // key: ordered pair
};

SplitGraph split_high_degree(const PlanarEmbedding& e, const IncidenceGraph& g);

struct OrthoLayout {
    int width = 0, height = 0;
    std::vector<Coord> vertex_pos;
    // Each path is the full sequence of grid points from one endpoint
    // vertex to the other, unit steps, axis-aligned.
    struct Path {
        int from = 0, to = 0;
        std::vector<Coord> points;
    };
    std::vector<Path> paths;
};

OrthoLayout ortho_layout(const SplitGraph& g);
// Validity: paths are unit-step rectilinear, node-disjoint except at
// endpoints, and avoid all vertices except their own endpoints.
void check_layout(const OrthoLayout& l, const SplitGraph& g);

OrthoLayout double_coords(const OrthoLayout& l);

enum class SlotKind : std::uint8_t {
    Blank, Variable, Clause, Turn, JoinFM, JoinMM, JoinSwitchMM
};
const char* to_string(SlotKind k);

struct Slot {
    SlotKind kind = SlotKind::Blank;
    int rotation = 0;  // quarter turns clockwise applied to the base manifest
    // provenance
    int vertex = -1;     // split-graph vertex for device slots
    int path = -1;       // layout path index for join/turn slots
    std::vector<Edge> capped_ports;  // clause ports facing blank (tile edges)
};

struct TilePlan {
    int width = 0, height = 0;  // in tiles
    int tile_size = 16;
    std::vector<Slot> slots;

    Slot& at(int x, int y) { return slots[y * width + x]; }
    const Slot& at(int x, int y) const { return slots[y * width + x]; }
};

TilePlan plan_tiles(const OrthoLayout& l, const SplitGraph& g, const TileSet& roster);

int tariff(const TilePlan& p, const TileSet& roster);

struct DecoderEntry {
    int variable = 0;       // 1-based original variable
    Coord cell_true;        // occupied exactly when the variable is true
    Coord cell_false;
};

struct ReductionOutput {
    BoardGrid board{1, 1};
    int tariff = 0;
    TilePlan plan;
    std::vector<DecoderEntry> decoder;  // one entry per subvariable tile
};

ReductionOutput assemble(const TilePlan& p, const SplitGraph& g, const TileSet& roster);

ReductionOutput reduce(const Formula& f, const TileSet& roster);

// Reads a legitimate placement of exactly `tariff` pieces back into a
// truth assignment (1-based variables). Inconsistent subvariable readouts
// are a reduction bug and throw.
std::vector<bool> decode(const Placement& p, const ReductionOutput& out);

// Exact decision for assembled boards, tile by tile: every placement of
// size tariff restricts to a maximal placement on every tile, so searching
// over per-tile states with seam compatibility is complete.
std::optional<Placement> solve_tiled(const ReductionOutput& out, const TileSet& roster,
                                     PieceRules rules = PieceRules::queen());

// Sidecar provenance file: tariff, slot grid, decoder cells.
std::string save_sidecar(const ReductionOutput& out);
// Restores plan/tariff/decoder; the board is re-assembled from the plan.
ReductionOutput load_sidecar(const std::string& text, const TileSet& roster);

}  // namespace qw

#include "qw/reduce.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <queue>
#include <set>
#include <sstream>

namespace qw {

// ---- formulas ------------------------------------------------------------

Formula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Formula f;
    bool have_header = false;
    int declared_clauses = -1;
    std::vector<int> current;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, cnf;
            ls >> p >> cnf >> f.variable_count >> declared_clauses;
            if (cnf != "cnf" || f.variable_count < 0)
                throw ReduceError("line " + std::to_string(line_no) + ": bad DIMACS header");
            have_header = true;
            continue;
        }
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                if (current.empty())
                    throw ReduceError("line " + std::to_string(line_no) + ": empty clause");
                if (current.size() > 3)
                    throw ReduceError("line " + std::to_string(line_no) + ": clause with " +
                                      std::to_string(current.size()) +
                                      " literals; at most 3 allowed");
                f.clauses.push_back(current);
                current.clear();
            } else {
                const int v = std::abs(lit);
                if (!have_header || v > f.variable_count)
                    throw ReduceError("line " + std::to_string(line_no) +
                                      ": literal outside declared variables");
                for (int other : current) {
                    if (other == lit)
                        throw ReduceError("line " + std::to_string(line_no) +
                                          ": duplicate literal in clause");
                    if (other == -lit)
                        throw ReduceError("line " + std::to_string(line_no) +
                                          ": clause contains a variable and its negation");
                }
                current.push_back(lit);
            }
        }
    }
    if (!current.empty()) {
        if (current.size() > 3) throw ReduceError("final clause has more than 3 literals");
        f.clauses.push_back(current);
    }
    if (!have_header) throw ReduceError("missing DIMACS header");
    return f;
}

std::string emit_dimacs(const Formula& f) {
    std::ostringstream out;
    out << "p cnf " << f.variable_count << " " << f.clauses.size() << "\n";
    for (const auto& cl : f.clauses) {
        for (int lit : cl) out << lit << " ";
        out << "0\n";
    }
    return out.str();
}

bool evaluate(const Formula& f, const std::vector<bool>& assignment) {
    for (const auto& cl : f.clauses) {
        bool sat = false;
        for (int lit : cl) {
            const bool v = assignment[std::abs(lit) - 1];
            if (lit > 0 ? v : !v) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

bool sat_oracle(const Formula& f, std::vector<bool>* model) {
    if (f.variable_count > 20) throw ReduceError("sat_oracle: too many variables");
    std::vector<bool> a(f.variable_count, false);
    for (std::uint64_t mask = 0; mask < (1ull << f.variable_count); ++mask) {
        for (int i = 0; i < f.variable_count; ++i) a[i] = (mask >> i) & 1;
        if (evaluate(f, a)) {
            if (model) *model = a;
            return true;
        }
    }
    return false;
}

IncidenceGraph incidence_graph(const Formula& f) {
    IncidenceGraph g;
    g.variable_count = f.variable_count;
    g.clause_count = static_cast<int>(f.clauses.size());
    for (int c = 0; c < g.clause_count; ++c)
        for (int lit : f.clauses[c])
            g.edges.push_back({std::abs(lit) - 1, c, lit < 0});
    return g;
}

// ---- planarity and embedding ----------------------------------------------

namespace {

using VertexList = std::vector<int>;

// Demoucron-Malgrange-Pertuiset planar embedding of one biconnected graph,
// maintained as a list of faces (simple vertex cycles).
class Demoucron {
  public:
    Demoucron(int n, const std::set<std::pair<int, int>>& edges) : n_(n), edges_(edges) {
        adj_.assign(n, {});
        for (auto [u, v] : edges) {
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

    // Returns faces of an embedding, or throws NonPlanarError.
    std::vector<VertexList> run() {
        VertexList cycle = find_cycle();
        faces_ = {cycle, VertexList(cycle.rbegin(), cycle.rend())};
        for (size_t i = 0; i < cycle.size(); ++i) {
            in_h_.insert(cycle[i]);
            mark_embedded(cycle[i], cycle[(i + 1) % cycle.size()]);
        }
        while (embedded_.size() < edges_.size()) embed_one_fragment();
        return faces_;
    }

  private:
    struct Fragment {
        std::set<int> attachments;
        VertexList path;  // attachment, interior..., attachment
    };

    void mark_embedded(int u, int v) {
        embedded_.insert(u < v ? std::make_pair(u, v) : std::make_pair(v, u));
    }
    bool is_embedded(int u, int v) const {
        return embedded_.count(u < v ? std::make_pair(u, v) : std::make_pair(v, u)) > 0;
    }

    VertexList find_cycle() const {
        // DFS from the smallest vertex with adjacency in sorted order.
        std::vector<int> parent(n_, -2);
        std::vector<int> order;
        std::function<VertexList(int)> dfs = [&](int u) -> VertexList {
            for (int v : adj_[u]) {
                if (v == parent[u]) continue;
                if (parent[v] != -2) {
                    // back edge u-v: walk up from u to v
                    VertexList cyc = {u};
                    int w = u;
                    while (w != v) {
                        w = parent[w];
                        cyc.push_back(w);
                    }
                    return cyc;
                }
                parent[v] = u;
                VertexList r = dfs(v);
                if (!r.empty()) return r;
            }
            return {};
        };
        for (int s = 0; s < n_; ++s) {
            if (adj_[s].empty() || parent[s] != -2) continue;
            parent[s] = -1;
            VertexList r = dfs(s);
            if (!r.empty()) return r;
        }
        throw ReduceError("biconnected block without a cycle");
    }

    // All fragments of G relative to the embedded subgraph.
    std::vector<Fragment> fragments() const {
        std::vector<Fragment> out;
        // chords between embedded vertices
        for (const auto& [u, v] : edges_) {
            if (is_embedded(u, v)) continue;
            if (in_h_.count(u) && in_h_.count(v)) {
                Fragment fr;
                fr.attachments = {u, v};
                fr.path = {u, v};
                out.push_back(std::move(fr));
            }
        }
        // components of G minus embedded vertices
        std::set<int> seen;
        for (int s = 0; s < n_; ++s) {
            if (in_h_.count(s) || seen.count(s) || adj_[s].empty()) continue;
            // BFS the component
            std::vector<int> comp = {s};
            seen.insert(s);
            std::set<int> attach;
            for (size_t i = 0; i < comp.size(); ++i) {
                for (int v : adj_[comp[i]]) {
                    if (in_h_.count(v)) {
                        attach.insert(v);
                    } else if (!seen.count(v)) {
                        seen.insert(v);
                        comp.push_back(v);
                    }
                }
            }
            Fragment fr;
            fr.attachments = attach;
            fr.path = component_path(comp, attach);
            out.push_back(std::move(fr));
        }
        return out;
    }

    // A path through the component between two distinct attachments.
    VertexList component_path(const std::vector<int>& comp, const std::set<int>& attach) const {
        if (attach.size() < 2) throw ReduceError("fragment with fewer than 2 attachments");
        const int a0 = *attach.begin();
        std::set<int> comp_set(comp.begin(), comp.end());
        // BFS through component vertices only, seeded at a0
        std::map<int, int> parent;
        std::queue<int> q;
        for (int v : adj_[a0])
            if (comp_set.count(v) && !parent.count(v)) {
                parent[v] = a0;
                q.push(v);
            }
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj_[u]) {
                if (v == a0 || parent.count(v)) continue;
                if (attach.count(v)) {
                    VertexList path = {v};
                    for (int w = u; w != a0; w = parent.at(w)) path.push_back(w);
                    path.push_back(a0);
                    std::reverse(path.begin(), path.end());
                    return path;
                }
                if (comp_set.count(v)) {
                    parent[v] = u;
                    q.push(v);
                }
            }
        }
        throw ReduceError("no path through fragment");
    }

    void embed_one_fragment() {
        auto frs = fragments();
        if (frs.empty()) throw ReduceError("edges left but no fragments");
        // admissible faces per fragment
        int chosen = -1;
        std::vector<std::vector<int>> admissible(frs.size());
        for (size_t i = 0; i < frs.size(); ++i) {
            for (size_t fi = 0; fi < faces_.size(); ++fi) {
                std::set<int> fv(faces_[fi].begin(), faces_[fi].end());
                bool ok = true;
                for (int a : frs[i].attachments)
                    if (!fv.count(a)) {
                        ok = false;
                        break;
                    }
                if (ok) admissible[i].push_back(static_cast<int>(fi));
            }
            if (admissible[i].empty())
                throw NonPlanarError("fragment with no admissible face");
            if (admissible[i].size() == 1 && chosen < 0) chosen = static_cast<int>(i);
        }
        if (chosen < 0) chosen = 0;
        const Fragment& fr = frs[chosen];
        const VertexList& path = fr.path;
        const int face_id = admissible[chosen][0];
        VertexList face = faces_[face_id];

        // split the face along the path
        auto pos = [&](int v) {
            return static_cast<int>(std::find(face.begin(), face.end(), v) - face.begin());
        };
        const int p0 = pos(path.front()), p1 = pos(path.back());
        const int fn = static_cast<int>(face.size());
        VertexList arc1, arc2;
        for (int i = p0; ; i = (i + 1) % fn) {
            arc1.push_back(face[i]);
            if (i == p1) break;
        }
        for (int i = p1; ; i = (i + 1) % fn) {
            arc2.push_back(face[i]);
            if (i == p0) break;
        }
        VertexList interior(path.begin() + 1, path.end() - 1);
        VertexList f1 = arc1;
        f1.insert(f1.end(), interior.rbegin(), interior.rend());
        VertexList f2 = arc2;
        f2.insert(f2.end(), interior.begin(), interior.end());
        faces_[face_id] = f1;
        faces_.push_back(f2);

        for (size_t i = 0; i + 1 < path.size(); ++i) mark_embedded(path[i], path[i + 1]);
        for (int v : interior) in_h_.insert(v);
    }

    int n_;
    std::set<std::pair<int, int>> edges_;
    std::vector<VertexList> adj_;
    std::set<int> in_h_;
    std::set<std::pair<int, int>> embedded_;
    std::vector<VertexList> faces_;
};

// Rotation system from a face list: around v, after neighbour u comes the
// face successor of the directed edge (u, v).
void faces_to_rotation(const std::vector<VertexList>& faces,
                       std::vector<std::vector<int>>& rotation) {
    std::map<std::pair<int, int>, int> next_at;  // (v, u) -> w
    for (const auto& face : faces) {
        const int k = static_cast<int>(face.size());
        for (int i = 0; i < k; ++i) {
            const int u = face[i], v = face[(i + 1) % k], w = face[(i + 2) % k];
            next_at[{v, u}] = w;
        }
    }
    std::map<int, std::vector<int>> nbrs;
    for (const auto& [key, w] : next_at) nbrs[key.first].push_back(key.second);
    for (auto& [v, us] : nbrs) {
        std::sort(us.begin(), us.end());
        us.erase(std::unique(us.begin(), us.end()), us.end());
        std::vector<int> order;
        int u = us[0];
        do {
            order.push_back(u);
            u = next_at.at({v, u});
        } while (u != us[0] && order.size() <= us.size());
        if (order.size() != us.size())
            throw ReduceError("inconsistent rotation around vertex " + std::to_string(v));
        rotation[v] = order;
    }
}

// Biconnected components (blocks) as edge sets, Hopcroft-Tarjan.
std::vector<std::set<std::pair<int, int>>> blocks_of(
    int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());

    std::vector<int> num(n, -1), low(n, 0);
    std::vector<std::pair<int, int>> stack;
    std::vector<std::set<std::pair<int, int>>> blocks;
    int counter = 0;

    std::function<void(int, int)> dfs = [&](int u, int parent) {
        num[u] = low[u] = counter++;
        for (int v : adj[u]) {
            if (v == parent) {
                parent = -2;  // skip the tree edge to the parent exactly once
                continue;
            }
            if (num[v] < 0) {
                stack.push_back({u, v});
                dfs(v, u);
                low[u] = std::min(low[u], low[v]);
                if (low[v] >= num[u]) {
                    std::set<std::pair<int, int>> block;
                    while (true) {
                        auto e = stack.back();
                        stack.pop_back();
                        block.insert(e.first < e.second ? e
                                                        : std::make_pair(e.second, e.first));
                        if (e == std::make_pair(u, v)) break;
                    }
                    blocks.push_back(std::move(block));
                }
            } else if (num[v] < num[u]) {
                stack.push_back({u, v});
                low[u] = std::min(low[u], num[v]);
            }
        }
    };
    for (int s = 0; s < n; ++s)
        if (num[s] < 0 && !adj[s].empty()) dfs(s, -1);
    return blocks;
}

}  // namespace

std::vector<std::vector<int>> PlanarEmbedding::trace_faces() const {
    // next directed edge after (u, v): (v, w) with w following u in the
    // rotation at v
    std::set<std::pair<int, int>> seen;
    std::vector<std::vector<int>> faces;
    for (int u = 0; u < vertex_count; ++u) {
        for (int v : rotation[u]) {
            if (seen.count({u, v})) continue;
            std::vector<int> face;
            int a = u, b = v;
            while (!seen.count({a, b})) {
                seen.insert({a, b});
                face.push_back(a);
                const auto& rot = rotation[b];
                auto it = std::find(rot.begin(), rot.end(), a);
                if (it == rot.end()) throw ReduceError("broken rotation system");
                const int idx = static_cast<int>(it - rot.begin());
                const int w = rot[(idx + 1) % rot.size()];
                a = b;
                b = w;
            }
            faces.push_back(std::move(face));
        }
    }
    return faces;
}

PlanarEmbedding planar_embed_graph(int vertex_count,
                                   const std::vector<std::pair<int, int>>& edges) {
    for (auto [u, v] : edges)
        if (u == v || u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
            throw ReduceError("bad edge");
    PlanarEmbedding emb;
    emb.vertex_count = vertex_count;
    emb.rotation.assign(vertex_count, {});

    auto blocks = blocks_of(vertex_count, edges);
    for (const auto& block : blocks) {
        std::vector<std::vector<int>> rot(vertex_count);
        if (block.size() == 1) {
            auto [u, v] = *block.begin();
            rot[u] = {v};
            rot[v] = {u};
        } else {
            Demoucron dm(vertex_count, block);
            auto faces = dm.run();
            faces_to_rotation(faces, rot);
        }
        // merge: concatenate each vertex's rotation pieces
        for (int v = 0; v < vertex_count; ++v)
            emb.rotation[v].insert(emb.rotation[v].end(), rot[v].begin(), rot[v].end());
    }
    emb.outer_face = 0;
    return emb;
}

PlanarEmbedding planar_embed(const IncidenceGraph& g) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : g.edges) edges.push_back({e.var, g.clause_vertex(e.clause)});
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (edges.size() != g.edges.size())
        throw ReduceError("incidence graph has parallel edges");
    return planar_embed_graph(g.vertex_count(), edges);
}


// ---- degree splitting ------------------------------------------------------

SplitGraph split_high_degree(const PlanarEmbedding& e, const IncidenceGraph& g) {
    SplitGraph out;
    std::vector<std::vector<int>> chain_ids(e.vertex_count);
    for (int v = 0; v < e.vertex_count; ++v) {
        const bool is_clause = v >= g.variable_count;
        const int d = static_cast<int>(e.rotation[v].size());
        const int copies = (!is_clause && d > 3) ? d - 2 : 1;
        for (int i = 0; i < copies; ++i) {
            chain_ids[v].push_back(static_cast<int>(out.vertices.size()));
            out.vertices.push_back({is_clause, is_clause ? v - g.variable_count : v, i});
        }
    }
    std::map<std::pair<int, int>, bool> negative;
    for (const auto& ed : g.edges)
        negative[{ed.var, g.clause_vertex(ed.clause)}] = ed.negative;

    // For the old edge (u, v), the new endpoint on u's side.
    auto endpoint = [&](int u, int v) {
        const auto& rot = e.rotation[u];
        const int d = static_cast<int>(rot.size());
        const int m = static_cast<int>(chain_ids[u].size());
        if (m == 1) return chain_ids[u][0];
        const int idx = static_cast<int>(std::find(rot.begin(), rot.end(), v) - rot.begin());
        int slot;
        if (idx <= 1) slot = 0;
        else if (idx >= d - 2) slot = m - 1;
        else slot = idx - 1;
        return chain_ids[u][slot];
    };

    out.embedding.vertex_count = static_cast<int>(out.vertices.size());
    out.embedding.rotation.assign(out.embedding.vertex_count, {});
    for (int v = 0; v < e.vertex_count; ++v) {
        const auto& rot = e.rotation[v];
        const int d = static_cast<int>(rot.size());
        const auto& ids = chain_ids[v];
        const int m = static_cast<int>(ids.size());
        auto other_end = [&](int idx) { return endpoint(rot[idx], v); };
        if (m == 1) {
            for (int i = 0; i < d; ++i) out.embedding.rotation[ids[0]].push_back(other_end(i));
        } else {
            out.embedding.rotation[ids[0]] = {other_end(0), other_end(1), ids[1]};
            for (int i = 1; i < m - 1; ++i)
                out.embedding.rotation[ids[i]] = {ids[i - 1], other_end(i + 1), ids[i + 1]};
            out.embedding.rotation[ids[m - 1]] = {ids[m - 2], other_end(d - 2), other_end(d - 1)};
            for (int i = 0; i + 1 < m; ++i)
                out.edge_info[{std::min(ids[i], ids[i + 1]), std::max(ids[i], ids[i + 1])}] =
                    {true, false};
        }
    }
    // literal edges
    for (const auto& ed : g.edges) {
        const int cv = g.clause_vertex(ed.clause);
        const int a = endpoint(ed.var, cv);
        const int b = chain_ids[cv][0];
        out.edge_info[{std::min(a, b), std::max(a, b)}] = {false, ed.negative};
    }
    return out;
}

// ---- orthogonal layout -----------------------------------------------------

namespace {

std::vector<std::pair<int, int>> split_edges(const SplitGraph& g) {
    std::vector<std::pair<int, int>> out;
    for (const auto& [key, info] : g.edge_info) out.push_back(key);
    return out;
}

OrthoLayout layout_attempt(const SplitGraph& g, int grid, int spacing) {
    const int n = g.embedding.vertex_count;
    OrthoLayout l;
    l.vertex_pos.assign(n, {-1, -1});
    std::set<Coord> vertex_at;

    // deterministic BFS placement
    std::vector<int> order;
    std::vector<bool> seen(n, false);
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::queue<int> q;
        q.push(s);
        seen[s] = true;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            order.push_back(u);
            for (int v : g.embedding.rotation[u])
                if (!seen[v]) {
                    seen[v] = true;
                    q.push(v);
                }
        }
    }
    for (int u : order) {
        std::vector<Coord> anchors;
        for (int v : g.embedding.rotation[u])
            if (l.vertex_pos[v].x >= 0) anchors.push_back(l.vertex_pos[v]);
        Coord target{grid / 2, grid / 2};
        if (!anchors.empty()) {
            long sx = 0, sy = 0;
            for (const Coord& a : anchors) {
                sx += a.x;
                sy += a.y;
            }
            target = {static_cast<int>(sx / anchors.size()),
                      static_cast<int>(sy / anchors.size())};
        }
        Coord best{-1, -1};
        long best_score = -1;
        for (int y = 1; y < grid - 1; ++y) {
            for (int x = 1; x < grid - 1; ++x) {
                Coord c{x, y};
                bool ok = true;
                for (const Coord& p : vertex_at)
                    if (std::max(std::abs(p.x - x), std::abs(p.y - y)) < spacing) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                long score = 0;
                if (anchors.empty()) {
                    score = std::abs(x - target.x) + std::abs(y - target.y);
                } else {
                    for (const Coord& a : anchors)
                        score += std::abs(x - a.x) + std::abs(y - a.y);
                }
                if (best.x < 0 || score < best_score ||
                    (score == best_score && Coord{x, y} < best)) {
                    best = c;
                    best_score = score;
                }
            }
        }
        if (best.x < 0) throw ReduceError("no room for vertex");
        l.vertex_pos[u] = best;
        vertex_at.insert(best);
    }

    // route edges, shortest first attempt order: sorted by endpoints
    auto edges = split_edges(g);
    std::set<Coord> used;  // path interiors and endpoints
    for (auto [a, b] : edges) {
        // from variable toward clause when applicable
        int from = a, to = b;
        if (g.vertices[a].is_clause && !g.vertices[b].is_clause) std::swap(from, to);
        Coord s = l.vertex_pos[from], t = l.vertex_pos[to];
        std::map<Coord, Coord> parent;
        std::queue<Coord> q;
        q.push(s);
        parent[s] = s;
        bool found = false;
        while (!q.empty() && !found) {
            Coord u = q.front();
            q.pop();
            const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
            for (int d = 0; d < 4; ++d) {
                Coord v{u.x + dx[d], u.y + dy[d]};
                if (v.x < 0 || v.y < 0 || v.x >= grid || v.y >= grid) continue;
                if (parent.count(v)) continue;
                if (v == t) {
                    parent[v] = u;
                    found = true;
                    break;
                }
                if (vertex_at.count(v) || used.count(v)) continue;
                parent[v] = u;
                q.push(v);
            }
        }
        if (!found) throw ReduceError("edge routing failed");
        OrthoLayout::Path path;
        path.from = from;
        path.to = to;
        for (Coord w = t;; w = parent[w]) {
            path.points.push_back(w);
            if (w == s) break;
        }
        std::reverse(path.points.begin(), path.points.end());
        for (const Coord& w : path.points) used.insert(w);
        l.paths.push_back(std::move(path));
    }

    // normalize to a tight bounding box with a 1-cell margin
    int minx = grid, miny = grid, maxx = 0, maxy = 0;
    auto see = [&](Coord c) {
        minx = std::min(minx, c.x);
        miny = std::min(miny, c.y);
        maxx = std::max(maxx, c.x);
        maxy = std::max(maxy, c.y);
    };
    for (const Coord& c : l.vertex_pos) see(c);
    for (const auto& p : l.paths)
        for (const Coord& c : p.points) see(c);
    if (l.vertex_pos.empty()) {
        l.width = l.height = 1;
        return l;
    }
    for (Coord& c : l.vertex_pos) c = {c.x - minx, c.y - miny};
    for (auto& p : l.paths)
        for (Coord& c : p.points) c = {c.x - minx, c.y - miny};
    l.width = maxx - minx + 1;
    l.height = maxy - miny + 1;
    return l;
}

}  // namespace

OrthoLayout ortho_layout(const SplitGraph& g) {
    const int n = std::max(1, g.embedding.vertex_count);
    std::string last;
    for (int attempt = 0; attempt < 5; ++attempt) {
        const int grid = (4 + 2 * attempt) * n + 8;
        const int spacing = 2 + attempt;
        try {
            OrthoLayout l = layout_attempt(g, grid, spacing);
            check_layout(l, g);
            return l;
        } catch (const ReduceError& e) {
            last = e.what();
        }
    }
    throw ReduceError("orthogonal layout failed: " + last);
}

void check_layout(const OrthoLayout& l, const SplitGraph& g) {
    std::set<Coord> vertices(l.vertex_pos.begin(), l.vertex_pos.end());
    if (vertices.size() != l.vertex_pos.size())
        throw ReduceError("layout: coincident vertices");
    std::map<Coord, int> owner;
    for (size_t pi = 0; pi < l.paths.size(); ++pi) {
        const auto& p = l.paths[pi];
        if (p.points.size() < 2) throw ReduceError("layout: degenerate path");
        if (p.points.front() != l.vertex_pos[p.from] || p.points.back() != l.vertex_pos[p.to])
            throw ReduceError("layout: path endpoints disagree with vertices");
        for (size_t i = 0; i + 1 < p.points.size(); ++i) {
            const int dx = std::abs(p.points[i + 1].x - p.points[i].x);
            const int dy = std::abs(p.points[i + 1].y - p.points[i].y);
            if (dx + dy != 1) throw ReduceError("layout: non-unit step");
        }
        for (size_t i = 0; i < p.points.size(); ++i) {
            const Coord c = p.points[i];
            const bool endpoint = i == 0 || i + 1 == p.points.size();
            if (endpoint) continue;
            if (vertices.count(c)) throw ReduceError("layout: path through a vertex");
            if (owner.count(c)) throw ReduceError("layout: crossing paths");
            owner[c] = static_cast<int>(pi);
        }
    }
    (void)g;
}

OrthoLayout double_coords(const OrthoLayout& l) {
    OrthoLayout out;
    out.width = 2 * l.width - 1;
    out.height = 2 * l.height - 1;
    for (const Coord& c : l.vertex_pos) out.vertex_pos.push_back({2 * c.x, 2 * c.y});
    for (const auto& p : l.paths) {
        OrthoLayout::Path np;
        np.from = p.from;
        np.to = p.to;
        for (size_t i = 0; i < p.points.size(); ++i) {
            const Coord c = p.points[i];
            np.points.push_back({2 * c.x, 2 * c.y});
            if (i + 1 < p.points.size()) {
                const Coord d = p.points[i + 1];
                np.points.push_back({c.x + d.x, c.y + d.y});
            }
        }
        out.paths.push_back(std::move(np));
    }
    return out;
}

// ---- tile planning ---------------------------------------------------------

const char* to_string(SlotKind k) {
    switch (k) {
        case SlotKind::Blank: return "blank";
        case SlotKind::Variable: return "variable";
        case SlotKind::Clause: return "clause";
        case SlotKind::Turn: return "turn";
        case SlotKind::JoinFM: return "join_fm";
        case SlotKind::JoinMM: return "join_mm";
        case SlotKind::JoinSwitchMM: return "join_switch_mm";
    }
    return "?";
}

namespace {

SlotKind slot_kind_from(const std::string& s) {
    for (SlotKind k : {SlotKind::Blank, SlotKind::Variable, SlotKind::Clause, SlotKind::Turn,
                       SlotKind::JoinFM, SlotKind::JoinMM, SlotKind::JoinSwitchMM})
        if (s == to_string(k)) return k;
    throw ReduceError("unknown slot kind " + s);
}

const GadgetManifest& base_manifest(const TileSet& t, SlotKind k) {
    switch (k) {
        case SlotKind::Blank: return t.blank;
        case SlotKind::Variable: return t.variable;
        case SlotKind::Clause: return t.clause;
        case SlotKind::Turn: return t.turn;
        case SlotKind::JoinFM: return t.join_fm;
        case SlotKind::JoinMM: return t.join_mm;
        case SlotKind::JoinSwitchMM: return t.join_switch_mm;
    }
    throw ReduceError("bad slot kind");
}

// Cache of rotated manifests.
class Oriented {
  public:
    explicit Oriented(const TileSet& t) : tiles_(t) {}
    const GadgetManifest& get(SlotKind k, int rot) {
        auto key = std::make_pair(k, rot & 3);
        auto it = cache_.find(key);
        if (it == cache_.end())
            it = cache_.emplace(key, rotated(base_manifest(tiles_, k), rot & 3)).first;
        return it->second;
    }

  private:
    const TileSet& tiles_;
    std::map<std::pair<SlotKind, int>, GadgetManifest> cache_;
};

Edge dir_between(Coord from, Coord to) {
    if (to.x == from.x + 1 && to.y == from.y) return Edge::E;
    if (to.x == from.x - 1 && to.y == from.y) return Edge::W;
    if (to.y == from.y + 1 && to.x == from.x) return Edge::S;
    if (to.y == from.y - 1 && to.x == from.x) return Edge::N;
    throw ReduceError("points are not orthogonally adjacent");
}

Edge opposite(Edge e) {
    switch (e) {
        case Edge::N: return Edge::S;
        case Edge::S: return Edge::N;
        case Edge::E: return Edge::W;
        case Edge::W: return Edge::E;
    }
    throw ReduceError("bad edge");
}

const PortSpec* port_on(const GadgetManifest& m, Edge e) {
    for (const auto& p : m.ports)
        if (p.edge == e) return &p;
    return nullptr;
}

int rotation_covering(const TileSet& t, Oriented& oriented, SlotKind k,
                      const std::set<Edge>& dirs) {
    for (int r = 0; r < 4; ++r) {
        const GadgetManifest& m = oriented.get(k, r);
        bool ok = true;
        for (Edge e : dirs)
            if (!port_on(m, e)) ok = false;
        if (ok) return r;
    }
    (void)t;
    throw ReduceError("no rotation covers the required port directions");
}

// Truth transmitted at `port` in declared state s.
Role truth_in_state(const GadgetManifest& m, const PortSpec& port, int s) {
    auto lane = m.occupied_lane(port, m.states[s]);
    if (!lane) throw ReduceError("state does not occupy the port");
    return *lane == 0 ? port.role0 : port.role1;
}

// Whether a seam between these two facing ports transmits equal truth.
bool seam_equal(const PortSpec& a, const PortSpec& b) { return a.role0 == b.role1; }

}  // namespace

TilePlan plan_tiles(const OrthoLayout& l, const SplitGraph& g, const TileSet& roster) {
    TilePlan plan;
    plan.tile_size = roster.blank.size;
    plan.width = std::max(1, l.width);
    plan.height = std::max(1, l.height);
    plan.slots.assign(static_cast<size_t>(plan.width) * plan.height, Slot{});

    Oriented oriented(roster);
    const int n = g.embedding.vertex_count;

    // port directions used at each device
    std::vector<std::set<Edge>> dirs(n);
    for (const auto& p : l.paths) {
        dirs[p.from].insert(dir_between(p.points[0], p.points[1]));
        dirs[p.to].insert(
            dir_between(p.points.back(), p.points[p.points.size() - 2]));
    }
    for (int v = 0; v < n; ++v) {
        Slot& s = plan.at(l.vertex_pos[v].x, l.vertex_pos[v].y);
        s.kind = g.vertices[v].is_clause ? SlotKind::Clause : SlotKind::Variable;
        s.vertex = v;
        s.rotation = rotation_covering(roster, oriented, s.kind, dirs[v]);
        if (s.kind == SlotKind::Clause) {
            const GadgetManifest& m = oriented.get(s.kind, s.rotation);
            for (const auto& port : m.ports)
                if (!dirs[v].count(port.edge)) s.capped_ports.push_back(port.edge);
        }
    }

    // path slots: joins on straight points, turns on bends
    for (size_t pi = 0; pi < l.paths.size(); ++pi) {
        const auto& path = l.paths[pi];
        for (size_t i = 1; i + 1 < path.points.size(); ++i) {
            const Coord c = path.points[i];
            const Edge back = dir_between(c, path.points[i - 1]);
            const Edge fwd = dir_between(c, path.points[i + 1]);
            Slot& s = plan.at(c.x, c.y);
            s.path = static_cast<int>(pi);
            if (back == opposite(fwd)) {
                s.kind = SlotKind::JoinFM;  // provisional; genders fixed below
                s.rotation = 0;
            } else {
                s.kind = SlotKind::Turn;
                std::set<Edge> want = {back, fwd};
                s.rotation = rotation_covering(roster, oriented, SlotKind::Turn, want);
            }
        }
    }

    // genders and polarity, one path at a time
    for (size_t pi = 0; pi < l.paths.size(); ++pi) {
        const auto& path = l.paths[pi];
        // device indices along the path: endpoints and bends
        std::vector<size_t> devices = {0};
        for (size_t i = 1; i + 1 < path.points.size(); ++i) {
            const Coord c = path.points[i];
            if (plan.at(c.x, c.y).kind == SlotKind::Turn) devices.push_back(i);
        }
        devices.push_back(path.points.size() - 1);

        // assign genders: in every device-to-device segment the slot next
        // to the segment start is male-male, the rest are female-male
        // pointing onward
        for (size_t di = 0; di + 1 < devices.size(); ++di) {
            for (size_t i = devices[di] + 1; i < devices[di + 1]; ++i) {
                const Coord c = path.points[i];
                Slot& s = plan.at(c.x, c.y);
                const Edge travel = dir_between(path.points[i - 1], path.points[i]);
                if (i == devices[di] + 1) {
                    s.kind = SlotKind::JoinMM;
                    s.rotation = (travel == Edge::E || travel == Edge::W) ? 0 : 1;
                } else {
                    s.kind = SlotKind::JoinFM;
                    switch (travel) {  // male end faces the travel direction
                        case Edge::E: s.rotation = 0; break;
                        case Edge::S: s.rotation = 1; break;
                        case Edge::W: s.rotation = 2; break;
                        case Edge::N: s.rotation = 3; break;
                    }
                }
            }
        }

        // polarity: simulate propagation with the source tile in state 0
        auto propagate = [&]() -> Role {
            const Slot& src = plan.at(path.points[0].x, path.points[0].y);
            const GadgetManifest& sm = oriented.get(src.kind, src.rotation);
            Edge out_dir = dir_between(path.points[0], path.points[1]);
            const PortSpec* out_port = port_on(sm, out_dir);
            if (!out_port) throw ReduceError("source port missing");
            Role t = truth_in_state(sm, *out_port, 0);
            for (size_t i = 1; i + 1 < path.points.size(); ++i) {
                const Coord c = path.points[i];
                const Slot& s = plan.at(c.x, c.y);
                const GadgetManifest& m = oriented.get(s.kind, s.rotation);
                const Edge in_dir = dir_between(c, path.points[i - 1]);
                const PortSpec* in_port = port_on(m, in_dir);
                const PortSpec* prev_port = out_port;
                if (!in_port) throw ReduceError("join port missing");
                if (!seam_equal(*prev_port, *in_port)) t = t == Role::T ? Role::F : Role::T;
                const Edge out2 = dir_between(c, path.points[i + 1]);
                const PortSpec* op = port_on(m, out2);
                if (!op) throw ReduceError("join exit port missing");
                const int st = truth_in_state(m, *in_port, 0) == t ? 0 : 1;
                t = truth_in_state(m, *op, st);
                out_port = op;
            }
            // final seam into the target device
            const Coord tc = path.points.back();
            const Slot& dst = plan.at(tc.x, tc.y);
            const GadgetManifest& dm = oriented.get(dst.kind, dst.rotation);
            const Edge in_dir = dir_between(tc, path.points[path.points.size() - 2]);
            const PortSpec* dport = port_on(dm, in_dir);
            if (!dport) throw ReduceError("target port missing");
            if (!seam_equal(*out_port, *dport)) t = t == Role::T ? Role::F : Role::T;
            // return the truth the target port reads when the source
            // variable sits in state 0
            return t;
        };

        // desired relation
        const auto key = std::make_pair(std::min(path.from, path.to),
                                        std::max(path.from, path.to));
        const auto& info = g.edge_info.at(key);
        Role want;
        if (info.chain_link) {
            // the far variable must also sit in state 0: the far port must
            // read what it reads in its own state 0
            const Coord tc = path.points.back();
            const Slot& dst = plan.at(tc.x, tc.y);
            const GadgetManifest& dm = oriented.get(dst.kind, dst.rotation);
            const Edge in_dir = dir_between(tc, path.points[path.points.size() - 2]);
            want = truth_in_state(dm, *port_on(dm, in_dir), 0);
        } else {
            want = info.negative ? Role::F : Role::T;
        }
        if (propagate() != want) {
            Slot& mm = plan.at(path.points[1].x, path.points[1].y);
            if (mm.kind != SlotKind::JoinMM)
                throw ReduceError("switch slot is not male-male");
            mm.kind = SlotKind::JoinSwitchMM;
            if (propagate() != want) throw ReduceError("polarity switch failed");
        }
    }
    return plan;
}

int tariff(const TilePlan& p, const TileSet& roster) {
    int sum = 0;
    for (const Slot& s : p.slots) sum += base_manifest(roster, s.kind).tariff;
    return sum;
}

// ---- assembly --------------------------------------------------------------

namespace {

BoardGrid stitch(const TilePlan& plan, const TileSet& roster, Oriented& oriented) {
    const int S = plan.tile_size;
    BoardGrid board(plan.width * S, plan.height * S, Cell::Black);
    for (int ty = 0; ty < plan.height; ++ty) {
        for (int tx = 0; tx < plan.width; ++tx) {
            const Slot& s = plan.at(tx, ty);
            const GadgetManifest& m = oriented.get(s.kind, s.rotation);
            for (int y = 0; y < S; ++y)
                for (int x = 0; x < S; ++x)
                    if (m.body.white({x, y}))
                        board.set({tx * S + x, ty * S + y}, Cell::White);
            // cap unused clause ports: black out the T readout so the port
            // can only ever read false
            for (Edge e : s.capped_ports) {
                const PortSpec* p = port_on(m, e);
                if (!p) throw ReduceError("capped port does not exist");
                const Coord c = m.port_cell_for_role(*p, Role::T);
                board.set({tx * S + c.x, ty * S + c.y}, Cell::Black);
            }
        }
    }
    return board;
}

void check_seams(const TilePlan& plan, const BoardGrid& board, const TileSet& roster,
                 Oriented& oriented) {
    const int S = plan.tile_size;
    // whites may only face each other across a seam at matched port lanes
    for (int y = 0; y < board.height(); ++y) {
        for (int x = 0; x < board.width(); ++x) {
            if (!board.white({x, y})) continue;
            for (int dx = -1; dx <= 1; ++dx) {
                for (int dy = -1; dy <= 1; ++dy) {
                    if (!dx && !dy) continue;
                    Coord o{x + dx, y + dy};
                    if (!board.white(o)) continue;
                    if (o.x / S == x / S && o.y / S == y / S) continue;
                    if (dx && dy)
                        throw ReduceError("diagonal white contact across a seam");
                    // orthogonal cross-seam contact: must be two port lane
                    // cells, with black beyond on both sides
                    Coord beyond_a{x - dx, y - dy}, beyond_b{o.x + dx, o.y + dy};
                    if (board.white(beyond_a) || board.white(beyond_b))
                        throw ReduceError("white run crosses a seam");
                }
            }
        }
    }
    // gender pairing and port facing
    for (int ty = 0; ty < plan.height; ++ty) {
        for (int tx = 0; tx < plan.width; ++tx) {
            const Slot& s = plan.at(tx, ty);
            const GadgetManifest& m = oriented.get(s.kind, s.rotation);
            for (const auto& port : m.ports) {
                if (std::find(s.capped_ports.begin(), s.capped_ports.end(), port.edge) !=
                    s.capped_ports.end())
                    continue;
                int nx = tx, ny = ty;
                switch (port.edge) {
                    case Edge::N: --ny; break;
                    case Edge::S: ++ny; break;
                    case Edge::E: ++nx; break;
                    case Edge::W: --nx; break;
                }
                const bool off = nx < 0 || ny < 0 || nx >= plan.width || ny >= plan.height;
                const PortSpec* facing = nullptr;
                if (!off) {
                    const Slot& ns = plan.at(nx, ny);
                    facing = port_on(oriented.get(ns.kind, ns.rotation), opposite(port.edge));
                }
                if (facing) {
                    if (facing->gender == port.gender)
                        throw ReduceError("seam pairs two ports of the same gender");
                } else {
                    // floating port: legal for variables (unused side faces
                    // black), a plan bug for anything else
                    if (s.kind != SlotKind::Variable)
                        throw ReduceError(std::string("unmatched port on a ") +
                                          to_string(s.kind) + " tile");
                }
            }
        }
    }
}

}  // namespace

ReductionOutput assemble(const TilePlan& p, const SplitGraph& g, const TileSet& roster) {
    Oriented oriented(roster);
    ReductionOutput out;
    out.plan = p;
    out.board = stitch(p, roster, oriented);
    out.tariff = tariff(p, roster);
    check_seams(p, out.board, roster, oriented);

    const int S = p.tile_size;
    for (int ty = 0; ty < p.height; ++ty) {
        for (int tx = 0; tx < p.width; ++tx) {
            const Slot& s = p.at(tx, ty);
            if (s.kind != SlotKind::Variable) continue;
            const GadgetManifest& m = oriented.get(s.kind, s.rotation);
            const PortSpec& port = m.ports[0];
            const Coord a = m.port_cell(port, true), b = m.port_cell(port, false);
            const bool a_in_state0 = m.states[0].count(a) > 0;
            DecoderEntry entry;
            entry.variable = g.vertices[s.vertex].original + 1;
            entry.cell_true = a_in_state0 ? Coord{tx * S + a.x, ty * S + a.y}
                                          : Coord{tx * S + b.x, ty * S + b.y};
            entry.cell_false = a_in_state0 ? Coord{tx * S + b.x, ty * S + b.y}
                                           : Coord{tx * S + a.x, ty * S + a.y};
            out.decoder.push_back(entry);
        }
    }
    return out;
}

ReductionOutput reduce(const Formula& f, const TileSet& roster) {
    IncidenceGraph g = incidence_graph(f);
    PlanarEmbedding emb = planar_embed(g);
    SplitGraph split = split_high_degree(emb, g);
    const long n = f.variable_count + static_cast<long>(f.clauses.size());
    if (static_cast<long>(split.vertices.size()) > std::max(1l, n * n))
        throw ReduceError("split graph exceeds the quadratic vertex bound");
    OrthoLayout l = double_coords(ortho_layout(split));
    TilePlan plan = plan_tiles(l, split, roster);
    ReductionOutput out = assemble(plan, split, roster);
    if (out.tariff > out.board.width() * out.board.height())
        throw ReduceError("tariff exceeds the board area");
    return out;
}

std::vector<bool> decode(const Placement& p, const ReductionOutput& out) {
    if (static_cast<int>(p.size()) != out.tariff)
        throw ReduceError("decode: placement size differs from the tariff");
    std::map<int, bool> value;
    for (const auto& entry : out.decoder) {
        const bool t = p.count(entry.cell_true) > 0;
        const bool f = p.count(entry.cell_false) > 0;
        if (t == f) throw ReduceError("decode: inconsistent port readout");
        auto it = value.find(entry.variable);
        if (it != value.end() && it->second != t)
            throw ReduceError("decode: subvariable tiles disagree");
        value[entry.variable] = t;
    }
    int max_var = 0;
    for (const auto& [var, val] : value) max_var = std::max(max_var, var);
    std::vector<bool> assignment(max_var, false);
    for (const auto& [var, val] : value) assignment[var - 1] = val;
    return assignment;
}

// ---- tile-aware solving ----------------------------------------------------

std::optional<Placement> solve_tiled(const ReductionOutput& out, const TileSet& roster,
                                     PieceRules rules) {
    (void)rules;  // layouts are range-independent by construction
    Oriented oriented(roster);
    const TilePlan& plan = out.plan;
    const int S = plan.tile_size;

    struct Cand {
        Placement cells;                        // global coordinates
        std::map<Edge, Coord> port_occupied;    // global coordinate per port
    };
    const size_t slot_count = plan.slots.size();
    std::vector<std::vector<Cand>> cands(slot_count);

    for (int ty = 0; ty < plan.height; ++ty) {
        for (int tx = 0; tx < plan.width; ++tx) {
            const Slot& s = plan.at(tx, ty);
            const GadgetManifest& m = oriented.get(s.kind, s.rotation);
            auto& list = cands[ty * plan.width + tx];
            auto add = [&](const Placement& local) {
                Cand c;
                for (const Coord& cell : local)
                    c.cells.insert({tx * S + cell.x, ty * S + cell.y});
                for (const auto& port : m.ports) {
                    const Coord a = m.port_cell(port, true), b = m.port_cell(port, false);
                    const bool occ_a = local.count(a) > 0, occ_b = local.count(b) > 0;
                    if (occ_a == occ_b) throw ReduceError("state occupies both lanes");
                    const Coord cell = occ_a ? a : b;
                    c.port_occupied[port.edge] = {tx * S + cell.x, ty * S + cell.y};
                }
                list.push_back(std::move(c));
            };
            if (s.kind == SlotKind::Blank) {
                list.push_back(Cand{});
            } else if (s.kind == SlotKind::Clause) {
                for (unsigned pat = 0; pat < 7; ++pat) {
                    bool ok = true;
                    for (Edge e : s.capped_ports) {
                        int j = -1;
                        for (size_t pi = 0; pi < m.ports.size(); ++pi)
                            if (m.ports[pi].edge == e) j = static_cast<int>(pi);
                        if (j < 0 || !((pat >> j) & 1)) ok = false;  // must read F
                    }
                    if (ok) add(m.states[pat]);
                }
            } else {
                add(m.states[0]);
                add(m.states[1]);
            }
        }
    }

    // backtracking over slots in row-major order
    std::vector<int> choice(slot_count, -1);
    auto compatible = [&](int idx, int pick) {
        const int tx = idx % plan.width, ty = idx / plan.width;
        const Cand& c = cands[idx][pick];
        auto check = [&](int ox, int oy, Edge my_edge) {
            if (ox < 0 || oy < 0) return true;
            const int oidx = oy * plan.width + ox;
            if (choice[oidx] < 0) return true;
            const Cand& o = cands[oidx][choice[oidx]];
            auto mine = c.port_occupied.find(my_edge);
            auto theirs = o.port_occupied.find(opposite(my_edge));
            if (mine == c.port_occupied.end() || theirs == o.port_occupied.end()) return true;
            if (my_edge == Edge::W || my_edge == Edge::E)
                return mine->second.y != theirs->second.y;
            return mine->second.x != theirs->second.x;
        };
        return check(tx - 1, ty, Edge::W) && check(tx, ty - 1, Edge::N);
    };

    std::function<bool(size_t)> assign = [&](size_t idx) -> bool {
        if (idx == slot_count) return true;
        for (int pick = 0; pick < static_cast<int>(cands[idx].size()); ++pick) {
            if (!compatible(static_cast<int>(idx), pick)) continue;
            choice[idx] = pick;
            if (assign(idx + 1)) return true;
            choice[idx] = -1;
        }
        return false;
    };
    if (!assign(0)) return std::nullopt;

    Placement result;
    for (size_t i = 0; i < slot_count; ++i)
        for (const Coord& c : cands[i][choice[i]].cells) result.insert(c);
    if (static_cast<int>(result.size()) != out.tariff)
        throw ReduceError("tiled solution size disagrees with the tariff");
    return result;
}

// ---- sidecar ---------------------------------------------------------------

std::string save_sidecar(const ReductionOutput& out) {
    std::ostringstream os;
    os << "tariff " << out.tariff << "\n";
    os << "plan " << out.plan.width << " " << out.plan.height << " " << out.plan.tile_size
       << "\n";
    for (int y = 0; y < out.plan.height; ++y) {
        for (int x = 0; x < out.plan.width; ++x) {
            const Slot& s = out.plan.at(x, y);
            os << "slot " << x << " " << y << " " << to_string(s.kind) << " " << s.rotation
               << " " << s.vertex << " " << s.path << " ";
            if (s.capped_ports.empty()) {
                os << "-";
            } else {
                for (Edge e : s.capped_ports) os << to_string(e);
            }
            os << "\n";
        }
    }
    for (const auto& d : out.decoder)
        os << "decode " << d.variable << " " << d.cell_true.x << " " << d.cell_true.y << " "
           << d.cell_false.x << " " << d.cell_false.y << "\n";
    os << "end\n";
    return os.str();
}

ReductionOutput load_sidecar(const std::string& text, const TileSet& roster) {
    std::istringstream in(text);
    std::string line;
    ReductionOutput out;
    bool have_plan = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "tariff") {
            ls >> out.tariff;
        } else if (tok == "plan") {
            ls >> out.plan.width >> out.plan.height >> out.plan.tile_size;
            out.plan.slots.assign(static_cast<size_t>(out.plan.width) * out.plan.height,
                                  Slot{});
            have_plan = true;
        } else if (tok == "slot") {
            if (!have_plan) throw ReduceError("slot before plan header");
            int x, y, rot, vertex, path;
            std::string kind, capped;
            ls >> x >> y >> kind >> rot >> vertex >> path >> capped;
            Slot s;
            s.kind = slot_kind_from(kind);
            s.rotation = rot;
            s.vertex = vertex;
            s.path = path;
            if (capped != "-")
                for (char ch : capped)
                    s.capped_ports.push_back(ch == 'N'   ? Edge::N
                                             : ch == 'S' ? Edge::S
                                             : ch == 'E' ? Edge::E
                                                         : Edge::W);
            out.plan.at(x, y) = s;
        } else if (tok == "decode") {
            DecoderEntry d;
            ls >> d.variable >> d.cell_true.x >> d.cell_true.y >> d.cell_false.x >>
                d.cell_false.y;
            out.decoder.push_back(d);
        } else if (tok == "end") {
            break;
        } else {
            throw ReduceError("unknown sidecar line: " + line);
        }
    }
    if (!have_plan) throw ReduceError("sidecar missing plan");
    Oriented oriented(roster);
    out.board = stitch(out.plan, roster, oriented);
    return out;
}

}  // namespace qw

#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "garland/complex_core.hpp"
#include "garland/errors.hpp"
#include "garland/union_find.hpp"

namespace garland {

struct LinkVertex {
    int p = -1; // cell index, -1 encodes the phi sentinel
    int b = -1; // cell index in S^0

    auto operator<=>(const LinkVertex&) const = default;
};

struct LinkEdge {
    int c = -1; // cell index in S^1 labeling the edge
    int u = -1; // endpoint positions into the component vertex list
    int v = -1;

    auto operator<=>(const LinkEdge&) const = default;
};

enum class ComponentKind { geometric, transversal };

struct LinkComponent {
    int id = -1;
    ComponentKind kind = ComponentKind::geometric;
    int pi = -1;        // cell index of pi(a), -1 for phi
    long long piId = -1; // cell id of pi(a), -1 for phi
    std::vector<LinkVertex> vertices; // sorted by (p, b); constant p across the component
    std::vector<LinkEdge> edges;

    int vertex_position(int b) const {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i].b == b) return static_cast<int>(i);
        return -1;
    }
};

struct LinkGraph {
    int level = 0;
    ComplexKind kind = ComplexKind::simplicial;
    std::vector<LinkComponent> components;
};

namespace detail {

// All cells <= the given cell, sorted ascending.
inline std::vector<int> down_set(const FacePoset& fp, int cell) {
    std::vector<int> out;
    std::vector<int> stack = {cell};
    std::set<int> seen = {cell};
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        out.push_back(x);
        for (const CoverRel& f : fp.facets[x])
            if (seen.insert(f.cell).second) stack.push_back(f.cell);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Infimum of b and b' when it exists: the unique maximal common lower bound.
// Returns -1 when there is no common lower bound or no unique maximum.
inline int meet(const FacePoset& fp, const std::vector<int>& downB, const std::vector<int>& downB2,
                int b, int b2) {
    std::vector<int> common;
    std::set_intersection(downB.begin(), downB.end(), downB2.begin(), downB2.end(),
                          std::back_inserter(common));
    common.erase(std::remove(common.begin(), common.end(), b), common.end());
    common.erase(std::remove(common.begin(), common.end(), b2), common.end());
    if (common.empty()) return -1;
    // Maximal elements within `common`.
    std::vector<int> maximal;
    for (int x : common) {
        bool below = false;
        for (int y : common) {
            if (y == x || fp.dims[y] <= fp.dims[x]) continue;
            const std::vector<int> dy = down_set(fp, y);
            if (std::binary_search(dy.begin(), dy.end(), x)) {
                below = true;
                break;
            }
        }
        if (!below) maximal.push_back(x);
    }
    return maximal.size() == 1 ? maximal[0] : -1;
}

inline int cover_sign_between(const FacePoset& fp, int facet, int cell) {
    for (const CoverRel& f : fp.facets[cell])
        if (f.cell == facet) return f.sign;
    return 0;
}

} // namespace detail

// Level-k link graph Gamma. Simplicial: one edge per corank-2 interval
// (p, c), joining the two middles over p. Cubical: one edge per facet pair
// of every (k+1)-cell, routed to the infimum when it lies in P^(k-1) and to
// phi otherwise; every b also gets the extra vertex (phi, b).
inline LinkGraph link_components(const FacePoset& fp, int level) {
    if (level < 0 || (fp.kind == ComplexKind::simplicial && level < 1))
        throw PurityError("unsupported level " + std::to_string(level) + " for " +
                          kind_name(fp.kind) + " complexes");
    if (level + 1 > fp.dimension())
        throw PurityError("no cells above level " + std::to_string(level));
    const std::vector<int>& sZero = fp.byDim[level];
    if (sZero.empty()) throw PurityError("no cells at level " + std::to_string(level));
    {
        std::vector<long long> bare;
        for (int b : sZero)
            if (fp.cofacets[b].empty()) bare.push_back(fp.ids[b]);
        if (!bare.empty()) {
            std::string msg = "purity violation: " + std::to_string(bare.size()) + " cell(s) at level " +
                              std::to_string(level) + " with no coface, first id " +
                              std::to_string(bare[0]);
            throw PurityError(msg);
        }
    }

    // Vertex universe.
    std::map<std::pair<int, int>, int> vertexId; // (p, b) -> dense id
    std::vector<std::pair<int, int>> vertexKey;
    auto addVertex = [&](int p, int b) {
        if (vertexId.emplace(std::make_pair(p, b), static_cast<int>(vertexKey.size())).second)
            vertexKey.push_back({p, b});
    };
    for (int b : sZero) {
        for (const CoverRel& f : fp.facets[b]) addVertex(f.cell, b);
        if (fp.kind == ComplexKind::cubical) addVertex(-1, b);
    }

    struct RawEdge {
        int c, p, b1, b2;
    };
    std::vector<RawEdge> rawEdges;
    const std::vector<int>& sOne = fp.byDim[level + 1];
    if (fp.kind == ComplexKind::simplicial) {
        for (int c : sOne) {
            std::map<int, std::vector<int>> middles; // p -> facets of c above p
            for (const CoverRel& b : fp.facets[c])
                for (const CoverRel& p : fp.facets[b.cell]) middles[p.cell].push_back(b.cell);
            for (auto& [p, bs] : middles) {
                // Validation guarantees exactly two middles per interval.
                std::sort(bs.begin(), bs.end());
                bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
                if (bs.size() == 2) rawEdges.push_back({c, p, bs[0], bs[1]});
            }
        }
    } else {
        std::unordered_map<int, std::vector<int>> downCache;
        auto down = [&](int b) -> const std::vector<int>& {
            auto it = downCache.find(b);
            if (it == downCache.end()) it = downCache.emplace(b, detail::down_set(fp, b)).first;
            return it->second;
        };
        for (int c : sOne) {
            const auto& facets = fp.facets[c];
            for (std::size_t i = 0; i < facets.size(); ++i)
                for (std::size_t j = i + 1; j < facets.size(); ++j) {
                    const int b1 = facets[i].cell, b2 = facets[j].cell;
                    const int m = detail::meet(fp, down(b1), down(b2), b1, b2);
                    const int p = (m >= 0 && fp.dims[m] == level - 1) ? m : -1;
                    rawEdges.push_back({c, p, std::min(b1, b2), std::max(b1, b2)});
                }
        }
    }

    UnionFind uf(vertexKey.size());
    for (const RawEdge& e : rawEdges)
        uf.unite(vertexId.at({e.p, e.b1}), vertexId.at({e.p, e.b2}));

    // Components ordered geometric-first by (p, min b), then transversal by min b.
    std::map<std::size_t, std::vector<int>> byRoot;
    for (std::size_t v = 0; v < vertexKey.size(); ++v) byRoot[uf.find(v)].push_back(static_cast<int>(v));
    std::vector<std::pair<std::pair<std::pair<int, int>, std::pair<int, int>>, std::size_t>> order;
    for (const auto& [root, verts] : byRoot) {
        const auto [p, b] = vertexKey[verts.front()];
        order.push_back({{{p == -1 ? 1 : 0, p}, {b, 0}}, root});
    }
    std::sort(order.begin(), order.end());

    LinkGraph lg;
    lg.level = level;
    lg.kind = fp.kind;
    std::unordered_map<std::size_t, int> rootComp;
    for (const auto& [key, root] : order) {
        LinkComponent comp;
        comp.id = static_cast<int>(lg.components.size());
        const auto& verts = byRoot.at(root);
        for (int v : verts) comp.vertices.push_back({vertexKey[v].first, vertexKey[v].second});
        std::sort(comp.vertices.begin(), comp.vertices.end());
        comp.pi = comp.vertices.front().p;
        comp.piId = comp.pi >= 0 ? fp.ids[comp.pi] : -1;
        comp.kind = comp.pi == -1 ? ComponentKind::transversal : ComponentKind::geometric;
        rootComp[root] = comp.id;
        lg.components.push_back(std::move(comp));
    }
    for (const RawEdge& e : rawEdges) {
        LinkComponent& comp = lg.components[rootComp.at(uf.find(vertexId.at({e.p, e.b1})))];
        comp.edges.push_back({e.c, comp.vertex_position(e.b1), comp.vertex_position(e.b2)});
    }
    for (LinkComponent& comp : lg.components) std::sort(comp.edges.begin(), comp.edges.end());
    return lg;
}

// Orientation of the a < b covers for transversal components: +1 at the
// smallest vertex, propagated over a breadth-first spanning tree by
// w(a,b') = -w(a,b) * sign(b,c) * sign(b',c); every non-tree edge must agree.
inline std::vector<std::vector<int>> orient_transversal(const FacePoset& fp, int /*level*/,
                                                        const LinkGraph& lg) {
    std::vector<std::vector<int>> w(lg.components.size());
    for (const LinkComponent& comp : lg.components) {
        if (comp.kind != ComponentKind::transversal) continue;
        std::vector<int>& cw = w[comp.id];
        cw.assign(comp.vertices.size(), 0);
        std::vector<std::vector<int>> adj(comp.vertices.size());
        for (std::size_t e = 0; e < comp.edges.size(); ++e) {
            adj[comp.edges[e].u].push_back(static_cast<int>(e));
            adj[comp.edges[e].v].push_back(static_cast<int>(e));
        }
        auto relation = [&](const LinkEdge& e) {
            return -detail::cover_sign_between(fp, comp.vertices[e.u].b, e.c) *
                   detail::cover_sign_between(fp, comp.vertices[e.v].b, e.c);
        };
        std::queue<int> bfs;
        cw[0] = 1; // vertices sorted, position 0 is the smallest id
        bfs.push(0);
        std::vector<bool> used(comp.edges.size(), false);
        while (!bfs.empty()) {
            const int u = bfs.front();
            bfs.pop();
            for (int ei : adj[u]) {
                const LinkEdge& e = comp.edges[ei];
                const int v = e.u == u ? e.v : e.u;
                if (cw[v] == 0) {
                    used[ei] = true;
                    cw[v] = cw[u] * relation(e);
                    bfs.push(v);
                }
            }
        }
        for (std::size_t ei = 0; ei < comp.edges.size(); ++ei) {
            if (used[ei]) continue;
            const LinkEdge& e = comp.edges[ei];
            if (cw[e.v] != cw[e.u] * relation(e))
                throw ObstructionError(
                    "no (P5)-compatible orientation: inconsistent non-tree edge in transversal component " +
                        std::to_string(comp.id),
                    fp.ids[e.c], fp.ids[comp.vertices[e.u].b], fp.ids[comp.vertices[e.v].b]);
        }
    }
    return w;
}

// --- monodromy ---

struct ComponentMonodromy {
    int component = -1;
    bool free = true;
    long long holonomyGroupSize = 1;
};

struct MonodromyReport {
    bool free = true;
    std::vector<std::array<long long, 3>> witnessCycle; // offending edges (c, b, b')
    std::vector<ComponentMonodromy> perComponent;
};

namespace detail {

// Facet-frame transport across the edge (c, {b, b'}): the slot of b holding
// corner u maps to the slot of b' holding the corner reached through the
// facet of c adjacent to u. Returns an empty vector when the transport is
// not defined (degenerate attachment).
inline std::vector<int> frame_transport(const FacePoset& fp, int b, int b2, int c) {
    const std::size_t nSlots = fp.facets[b].size();
    std::vector<int> tau(nSlots, -1);
    std::vector<bool> hit(fp.facets[b2].size(), false);
    for (std::size_t s = 0; s < nSlots; ++s) {
        const int u = fp.facets[b][s].cell;
        // Middles of [u, c]; must be {b, x}.
        std::vector<int> mids;
        for (const CoverRel& f : fp.facets[c])
            for (const CoverRel& g : fp.facets[f.cell])
                if (g.cell == u) {
                    mids.push_back(f.cell);
                    break;
                }
        std::sort(mids.begin(), mids.end());
        mids.erase(std::unique(mids.begin(), mids.end()), mids.end());
        if (mids.size() != 2) return {};
        const int x = mids[0] == b ? mids[1] : (mids[1] == b ? mids[0] : -1);
        if (x < 0) return {};
        // v = unique common facet of b' and x.
        int v = -1;
        int count = 0;
        for (const CoverRel& f : fp.facets[b2])
            for (const CoverRel& g : fp.facets[x])
                if (f.cell == g.cell) {
                    v = f.cell;
                    ++count;
                }
        if (count != 1) return {};
        for (std::size_t t = 0; t < fp.facets[b2].size(); ++t)
            if (fp.facets[b2][t].cell == v) {
                if (hit[t]) return {};
                hit[t] = true;
                tau[s] = static_cast<int>(t);
            }
        if (tau[s] < 0) return {};
    }
    return tau;
}

inline std::vector<int> compose(const std::vector<int>& outer, const std::vector<int>& inner) {
    std::vector<int> r(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i) r[i] = outer[inner[i]];
    return r;
}

inline std::vector<int> invert(const std::vector<int>& p) {
    std::vector<int> r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
    return r;
}

inline bool is_identity(const std::vector<int>& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != static_cast<int>(i)) return false;
    return true;
}

} // namespace detail

// A transversal component is monodromy-free when the facet frames of its
// cells transport consistently: every coface of every member appears as
// exactly one edge at that member, every transport is defined, and every
// non-tree edge has identity holonomy.
inline MonodromyReport check_monodromy_free(const FacePoset& fp, int level, const LinkGraph& lg) {
    MonodromyReport rep;
    for (const LinkComponent& comp : lg.components) {
        if (comp.kind != ComponentKind::transversal) continue;
        ComponentMonodromy cm;
        cm.component = comp.id;

        // Edge-label completeness at every vertex.
        for (std::size_t vi = 0; vi < comp.vertices.size() && cm.free; ++vi) {
            const int b = comp.vertices[vi].b;
            for (const CoverRel& up : fp.cofacets[b]) {
                int count = 0;
                for (const LinkEdge& e : comp.edges)
                    if (e.c == up.cell && (e.u == static_cast<int>(vi) || e.v == static_cast<int>(vi)))
                        ++count;
                if (count != 1) {
                    cm.free = false;
                    rep.witnessCycle.push_back({fp.ids[up.cell], fp.ids[b], fp.ids[b]});
                    break;
                }
            }
        }

        if (cm.free && level >= 1) {
            const std::size_t n = comp.vertices.size();
            std::vector<std::vector<int>> frame(n);
            std::vector<std::vector<int>> adj(n);
            for (std::size_t e = 0; e < comp.edges.size(); ++e) {
                adj[comp.edges[e].u].push_back(static_cast<int>(e));
                adj[comp.edges[e].v].push_back(static_cast<int>(e));
            }
            std::vector<bool> used(comp.edges.size(), false);
            frame[0].resize(2 * level);
            for (int s = 0; s < 2 * level; ++s) frame[0][s] = s;
            std::queue<int> bfs;
            bfs.push(0);
            std::vector<std::vector<int>> holonomies;
            while (!bfs.empty() && cm.free) {
                const int u = bfs.front();
                bfs.pop();
                for (int ei : adj[u]) {
                    const LinkEdge& e = comp.edges[ei];
                    const int v = e.u == u ? e.v : e.u;
                    std::vector<int> tau =
                        detail::frame_transport(fp, comp.vertices[u].b, comp.vertices[v].b, e.c);
                    if (tau.empty()) {
                        cm.free = false;
                        rep.witnessCycle.push_back(
                            {fp.ids[e.c], fp.ids[comp.vertices[e.u].b], fp.ids[comp.vertices[e.v].b]});
                        break;
                    }
                    if (frame[v].empty()) {
                        used[ei] = true;
                        frame[v] = detail::compose(tau, frame[u]);
                        bfs.push(v);
                    } else if (!used[ei]) {
                        const std::vector<int> hol =
                            detail::compose(detail::invert(frame[v]), detail::compose(tau, frame[u]));
                        if (!detail::is_identity(hol)) {
                            cm.free = false;
                            rep.witnessCycle.push_back({fp.ids[e.c], fp.ids[comp.vertices[e.u].b],
                                                        fp.ids[comp.vertices[e.v].b]});
                        } else if (!hol.empty()) {
                            holonomies.push_back(hol);
                        }
                        used[ei] = true;
                    }
                }
            }
            // Holonomy group size from the non-tree generators (identity when free).
            if (cm.free) {
                cm.holonomyGroupSize = 1;
            } else {
                std::set<std::vector<int>> group;
                std::vector<int> id(2 * level);
                for (int s = 0; s < 2 * level; ++s) id[s] = s;
                group.insert(id);
                // Recollect generators, including the nontrivial ones.
                for (std::size_t ei = 0; ei < comp.edges.size(); ++ei) {
                    const LinkEdge& e = comp.edges[ei];
                    if (frame[e.u].empty() || frame[e.v].empty()) continue;
                    const std::vector<int> tau =
                        detail::frame_transport(fp, comp.vertices[e.u].b, comp.vertices[e.v].b, e.c);
                    if (tau.empty()) continue;
                    group.insert(
                        detail::compose(detail::invert(frame[e.v]), detail::compose(tau, frame[e.u])));
                }
                bool grew = true;
                while (grew && group.size() < 100000) {
                    grew = false;
                    std::vector<std::vector<int>> elems(group.begin(), group.end());
                    for (const auto& a : elems)
                        for (const auto& b : elems)
                            if (group.insert(detail::compose(a, b)).second) grew = true;
                }
                cm.holonomyGroupSize = static_cast<long long>(group.size());
            }
        }

        rep.free = rep.free && cm.free;
        rep.perComponent.push_back(cm);
    }
    return rep;
}

// --- the Garland poset ---

struct AxiomCheck {
    bool pass = true;
    std::string counterexample;
};

struct AxiomReport {
    AxiomCheck p1, p2, p3, p4, p5;

    bool all() const { return p1.pass && p2.pass && p3.pass && p4.pass && p5.pass; }

    std::string first_failure() const {
        if (!p1.pass) return "(P1) " + p1.counterexample;
        if (!p2.pass) return "(P2) " + p2.counterexample;
        if (!p3.pass) return "(P3) " + p3.counterexample;
        if (!p4.pass) return "(P4) " + p4.counterexample;
        if (!p5.pass) return "(P5) " + p5.counterexample;
        return "";
    }
};

struct GarlandPoset {
    int level = 0;
    ComplexKind kind = ComplexKind::simplicial;
    long long n0 = 0, n1 = 0, n010 = 1;
    std::vector<int> sZero, sOne; // cell indices
    std::vector<long long> idsZero, idsOne;
    LinkGraph links;
    std::vector<std::vector<int>> wLower; // per component, aligned with its vertices

    // Lookup tables (positions are offsets into sZero / sOne).
    std::vector<std::vector<std::pair<int, int>>> upperCovers; // per sZero position: (sOne pos, sign)
    std::vector<std::vector<int>> compsBelow;                  // per sZero position: sorted comp ids
    std::vector<std::vector<int>> facetPos;                    // per sOne position: sZero positions
    std::vector<std::vector<int>> facetSign;                   // per sOne position: matching signs
    std::unordered_map<int, int> posZero, posOne;              // cell index -> position

    int comp_count() const { return static_cast<int>(links.components.size()); }

    int w_lower(int comp, int b) const {
        const int pos = links.components[comp].vertex_position(b);
        return pos < 0 ? 0 : wLower[comp][pos];
    }
};

inline AxiomReport check_axioms(const GarlandPoset& g);

inline GarlandPoset build_garland(const FacePoset& fp, int level) {
    GarlandPoset g;
    g.level = level;
    g.kind = fp.kind;
    g.links = link_components(fp, level);
    if (fp.kind == ComplexKind::simplicial) {
        g.n0 = level + 1;
        g.n1 = static_cast<long long>(level + 2) * (level + 1) / 2;
    } else {
        g.n0 = 2 * level + 1;
        g.n1 = static_cast<long long>(2 * level + 2) * (2 * level + 1) / 2;
    }
    g.n010 = 1;
    g.sZero = fp.byDim[level];
    g.sOne = fp.byDim[level + 1];
    for (int b : g.sZero) g.idsZero.push_back(fp.ids[b]);
    for (int c : g.sOne) g.idsOne.push_back(fp.ids[c]);
    for (std::size_t i = 0; i < g.sZero.size(); ++i) g.posZero[g.sZero[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < g.sOne.size(); ++i) g.posOne[g.sOne[i]] = static_cast<int>(i);

    // w on S^-1 x S^0 covers: geometric components inherit the face-poset
    // sign of pi(a) < b; transversal ones are oriented per component.
    g.wLower = orient_transversal(fp, level, g.links);
    for (const LinkComponent& comp : g.links.components) {
        if (comp.kind != ComponentKind::geometric) continue;
        std::vector<int>& cw = g.wLower[comp.id];
        cw.assign(comp.vertices.size(), 0);
        for (std::size_t i = 0; i < comp.vertices.size(); ++i)
            cw[i] = detail::cover_sign_between(fp, comp.pi, comp.vertices[i].b);
    }

    g.upperCovers.resize(g.sZero.size());
    for (std::size_t i = 0; i < g.sZero.size(); ++i)
        for (const CoverRel& up : fp.cofacets[g.sZero[i]])
            g.upperCovers[i].push_back({g.posOne.at(up.cell), up.sign});
    g.compsBelow.resize(g.sZero.size());
    for (const LinkComponent& comp : g.links.components)
        for (const LinkVertex& v : comp.vertices) g.compsBelow[g.posZero.at(v.b)].push_back(comp.id);
    for (auto& list : g.compsBelow) std::sort(list.begin(), list.end());
    g.facetPos.resize(g.sOne.size());
    g.facetSign.resize(g.sOne.size());
    for (std::size_t i = 0; i < g.sOne.size(); ++i)
        for (const CoverRel& f : fp.facets[g.sOne[i]]) {
            g.facetPos[i].push_back(g.posZero.at(f.cell));
            g.facetSign[i].push_back(f.sign);
        }

    const AxiomReport rep = check_axioms(g);
    if (!rep.all()) throw AxiomError("axiom violation: " + rep.first_failure());
    return g;
}

inline AxiomReport check_axioms(const GarlandPoset& g) {
    AxiomReport rep;

    for (std::size_t i = 0; i < g.sZero.size() && rep.p1.pass; ++i)
        if (static_cast<long long>(g.compsBelow[i].size()) != g.n0) {
            rep.p1.pass = false;
            rep.p1.counterexample = "|S_<b| = " + std::to_string(g.compsBelow[i].size()) + " for b = " +
                                    std::to_string(g.idsZero[i]) + ", expected " + std::to_string(g.n0);
        }

    for (std::size_t ci = 0; ci < g.sOne.size() && rep.p2.pass; ++ci) {
        std::set<int> below;
        for (int bp : g.facetPos[ci]) below.insert(g.compsBelow[bp].begin(), g.compsBelow[bp].end());
        if (static_cast<long long>(below.size()) != g.n1) {
            rep.p2.pass = false;
            rep.p2.counterexample = "|S^-1_<c| = " + std::to_string(below.size()) + " for c = " +
                                    std::to_string(g.idsOne[ci]) + ", expected " + std::to_string(g.n1);
        }
    }

    for (std::size_t ci = 0; ci < g.sOne.size() && rep.p3.pass; ++ci) {
        const std::vector<int>& fps = g.facetPos[ci];
        for (std::size_t i = 0; i < fps.size() && rep.p3.pass; ++i)
            for (std::size_t j = i + 1; j < fps.size(); ++j) {
                std::vector<int> inter;
                std::set_intersection(g.compsBelow[fps[i]].begin(), g.compsBelow[fps[i]].end(),
                                      g.compsBelow[fps[j]].begin(), g.compsBelow[fps[j]].end(),
                                      std::back_inserter(inter));
                if (static_cast<long long>(inter.size()) != g.n010) {
                    rep.p3.pass = false;
                    rep.p3.counterexample =
                        "|S_<b and S_<b'| = " + std::to_string(inter.size()) + " for b = " +
                        std::to_string(g.idsZero[fps[i]]) + ", b' = " + std::to_string(g.idsZero[fps[j]]) +
                        " under c = " + std::to_string(g.idsOne[ci]);
                    break;
                }
            }
    }

    // (P4): components are finite by construction; verify connectivity.
    for (const LinkComponent& comp : g.links.components) {
        std::vector<std::vector<int>> adj(comp.vertices.size());
        for (const LinkEdge& e : comp.edges) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
        std::vector<bool> seen(comp.vertices.size(), false);
        std::queue<int> bfs;
        bfs.push(0);
        seen[0] = true;
        std::size_t reached = 1;
        while (!bfs.empty()) {
            const int u = bfs.front();
            bfs.pop();
            for (int v : adj[u])
                if (!seen[v]) {
                    seen[v] = true;
                    ++reached;
                    bfs.push(v);
                }
        }
        if (reached != comp.vertices.size()) {
            rep.p4.pass = false;
            rep.p4.counterexample = "component " + std::to_string(comp.id) + " is not connected";
            break;
        }
    }

    // (P5): every a < c has exactly two middles with the sign relation.
    for (std::size_t ci = 0; ci < g.sOne.size() && rep.p5.pass; ++ci) {
        std::map<int, std::vector<int>> middles; // comp -> facet positions
        for (int bp : g.facetPos[ci])
            for (int a : g.compsBelow[bp]) middles[a].push_back(bp);
        for (const auto& [a, bs] : middles) {
            if (bs.size() != 2) {
                rep.p5.pass = false;
                rep.p5.counterexample = "a = component " + std::to_string(a) + " under c = " +
                                        std::to_string(g.idsOne[ci]) + " has " +
                                        std::to_string(bs.size()) + " middles";
                break;
            }
            const int b1 = g.sZero[bs[0]], b2 = g.sZero[bs[1]];
            int s1 = 0, s2 = 0;
            for (const auto& [cp, sign] : g.upperCovers[bs[0]])
                if (cp == static_cast<int>(ci)) s1 = sign;
            for (const auto& [cp, sign] : g.upperCovers[bs[1]])
                if (cp == static_cast<int>(ci)) s2 = sign;
            const int w1 = g.w_lower(a, b1), w2 = g.w_lower(a, b2);
            if (w1 * s1 != -w2 * s2) {
                rep.p5.pass = false;
                rep.p5.counterexample = "sign relation fails for a = component " + std::to_string(a) +
                                        ", c = " + std::to_string(g.idsOne[ci]);
                break;
            }
        }
    }

    return rep;
}

inline nlohmann::json garland_to_json(const GarlandPoset& g) {
    nlohmann::json j;
    j["level"] = g.level;
    j["kind"] = kind_name(g.kind);
    j["constants"] = {{"n0", g.n0}, {"n1", g.n1}, {"n010", g.n010}};
    j["counts"] = {{"sMinus", g.comp_count()},
                   {"sZero", g.sZero.size()},
                   {"sOne", g.sOne.size()}};
    j["components"] = nlohmann::json::array();
    for (const LinkComponent& comp : g.links.components) {
        nlohmann::json cj;
        cj["id"] = comp.id;
        cj["kind"] = comp.kind == ComponentKind::geometric ? "geometric" : "transversal";
        if (comp.pi >= 0)
            cj["pi"] = comp.piId;
        else
            cj["pi"] = nullptr;
        cj["vertices"] = comp.vertices.size();
        cj["edges"] = comp.edges.size();
        j["components"].push_back(cj);
    }
    return j;
}

} // namespace garland

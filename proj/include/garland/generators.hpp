#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "garland/complex_core.hpp"
#include "garland/errors.hpp"
#include "garland/rng.hpp"
#include "garland/union_find.hpp"

namespace garland {

// --- torus pair ---

inline CellComplex torus_cubical(int m, int n) {
    if (m < 3 || n < 3) throw std::invalid_argument("torus_cubical requires m, n >= 3");
    CellComplex out;
    out.kind = ComplexKind::cubical;
    const long long nv = static_cast<long long>(m) * n;
    auto vid = [&](int i, int j) { return static_cast<long long>(((i % m + m) % m) * n + ((j % n + n) % n)); };
    auto hid = [&](int i, int j) { return nv + vid(i, j); };      // edge v(i,j) -> v(i+1,j)
    auto wid = [&](int i, int j) { return 2 * nv + vid(i, j); };  // edge v(i,j) -> v(i,j+1)
    auto sid = [&](int i, int j) { return 3 * nv + vid(i, j); };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) out.cells.push_back({vid(i, j), 0, {}});
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) out.cells.push_back({hid(i, j), 1, {vid(i, j), vid(i + 1, j)}});
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) out.cells.push_back({wid(i, j), 1, {vid(i, j), vid(i, j + 1)}});
    // Square (i,j): axis 1 = vertical sides (left, right), axis 2 = horizontal (bottom, top).
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            out.cells.push_back({sid(i, j), 2, {wid(i, j), wid(i + 1, j), hid(i, j), hid(i, j + 1)}});
    return out;
}

inline CellComplex torus_simplicial(int m, int n) {
    if (m < 3 || n < 3) throw std::invalid_argument("torus_simplicial requires m, n >= 3");
    CellComplex out;
    out.kind = ComplexKind::simplicial;
    const long long nv = static_cast<long long>(m) * n;
    auto vid = [&](int i, int j) { return static_cast<long long>(((i % m + m) % m) * n + ((j % n + n) % n)); };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) out.cells.push_back({vid(i, j), 0, {}});

    std::map<std::pair<long long, long long>, long long> edgeId;
    long long next = nv;
    auto edge = [&](long long a, long long b) {
        if (a > b) std::swap(a, b);
        auto it = edgeId.find({a, b});
        if (it != edgeId.end()) return it->second;
        edgeId[{a, b}] = next;
        out.cells.push_back({next, 1, {a, b}});
        return next++;
    };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            edge(vid(i, j), vid(i + 1, j));
            edge(vid(i, j), vid(i, j + 1));
            edge(vid(i, j), vid(i + 1, j + 1)); // diagonal
        }
    // Each square splits along its (i,j)-(i+1,j+1) diagonal.
    auto triangle = [&](long long a, long long b, long long c) {
        long long v[3] = {a, b, c};
        std::sort(v, v + 3);
        out.cells.push_back({next, 2, {edge(v[1], v[2]), edge(v[0], v[2]), edge(v[0], v[1])}});
        ++next;
    };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            triangle(vid(i, j), vid(i + 1, j), vid(i + 1, j + 1));
            triangle(vid(i, j), vid(i, j + 1), vid(i + 1, j + 1));
        }
    return out;
}

// --- small library ---

inline CellComplex cycle_complex(int n) {
    if (n < 2) throw std::invalid_argument("cycle requires n >= 2");
    CellComplex out;
    out.kind = ComplexKind::cubical;
    for (int i = 0; i < n; ++i) out.cells.push_back({i, 0, {}});
    for (int i = 0; i < n; ++i) out.cells.push_back({n + i, 1, {i, (i + 1) % n}});
    return out;
}

inline CellComplex cube_skeleton(int r) {
    if (r < 1) throw std::invalid_argument("cube_skeleton requires r >= 1");
    CellComplex out;
    out.kind = ComplexKind::cubical;
    const long long nv = 1LL << r;
    for (long long v = 0; v < nv; ++v) out.cells.push_back({v, 0, {}});
    long long next = nv;
    for (long long v = 0; v < nv; ++v)
        for (int a = 0; a < r; ++a)
            if (!(v >> a & 1)) out.cells.push_back({next++, 1, {v, v | (1LL << a)}});
    return out;
}

// All faces of proper dimension of the d-dimensional cross-polytope:
// vertex pair (2i, 2i+1) is antipodal, faces are antipodal-free subsets.
inline CellComplex cross_polytope_boundary(int d) {
    if (d < 1) throw std::invalid_argument("cross_polytope requires d >= 1");
    const int nv = 2 * d;
    CellComplex out;
    out.kind = ComplexKind::simplicial;
    std::map<std::vector<long long>, long long> faceId;
    long long next = 0;
    std::vector<std::vector<std::vector<long long>>> bySize(d + 1);
    std::vector<long long> cur;
    auto antipodalFree = [&](const std::vector<long long>& s) {
        for (std::size_t i = 0; i + 1 < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j)
                if (s[i] / 2 == s[j] / 2) return false;
        return true;
    };
    std::function<void(int)> rec = [&](int start) {
        if (!cur.empty() && static_cast<int>(cur.size()) <= d) bySize[cur.size()].push_back(cur);
        if (static_cast<int>(cur.size()) == d) return;
        for (int v = start; v < nv; ++v) {
            cur.push_back(v);
            if (antipodalFree(cur)) rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    for (int s = 1; s <= d; ++s)
        for (const auto& face : bySize[s]) {
            faceId[face] = next;
            Cell cell{next, s - 1, {}};
            if (s > 1)
                for (int omit = 0; omit < s; ++omit) {
                    std::vector<long long> sub;
                    for (int t = 0; t < s; ++t)
                        if (t != omit) sub.push_back(face[t]);
                    cell.facets.push_back(faceId.at(sub));
                }
            out.cells.push_back(std::move(cell));
            ++next;
        }
    return out;
}

inline CellComplex simplex_complex(int d) {
    if (d < 0) throw std::invalid_argument("simplex requires d >= 0");
    CellComplex out;
    out.kind = ComplexKind::simplicial;
    std::map<std::vector<long long>, long long> faceId;
    long long next = 0;
    for (int s = 1; s <= d + 1; ++s) {
        std::vector<int> idx(s);
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            std::vector<long long> face(idx.begin(), idx.end());
            faceId[face] = next;
            Cell cell{next, s - 1, {}};
            if (s > 1)
                for (int omit = 0; omit < s; ++omit) {
                    std::vector<long long> sub;
                    for (int t = 0; t < s; ++t)
                        if (t != omit) sub.push_back(face[t]);
                    cell.facets.push_back(faceId.at(sub));
                }
            out.cells.push_back(std::move(cell));
            ++next;
            int pos = s - 1;
            while (pos >= 0 && idx[pos] == d + 1 - s + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (int t = pos + 1; t < s; ++t) idx[t] = idx[t - 1] + 1;
        }
    }
    return out;
}

inline CellComplex cube_complex(int d) {
    if (d < 0) throw std::invalid_argument("cube requires d >= 0");
    CellComplex out;
    out.kind = ComplexKind::cubical;
    // Faces are trit patterns over axes: 0, 1, or free (2).
    long long pow3 = 1;
    for (int i = 0; i < d; ++i) pow3 *= 3;
    std::vector<long long> id(pow3, -1);
    std::vector<long long> byCode;
    auto dimOf = [&](long long code) {
        int free = 0;
        for (int a = 0; a < d; ++a) {
            if (code % 3 == 2) ++free;
            code /= 3;
        }
        return free;
    };
    std::vector<std::pair<int, long long>> order;
    for (long long code = 0; code < pow3; ++code) order.push_back({dimOf(code), code});
    std::sort(order.begin(), order.end());
    long long next = 0;
    for (const auto& [fdim, code] : order) id[code] = next++;
    for (const auto& [fdim, code] : order) {
        Cell cell{id[code], fdim, {}};
        long long p3 = 1;
        for (int a = 0; a < d; ++a) {
            const int trit = static_cast<int>(code / p3 % 3);
            if (trit == 2) {
                cell.facets.push_back(id[code - 2 * p3]); // side 0
                cell.facets.push_back(id[code - 1 * p3]); // side 1
            }
            p3 *= 3;
        }
        out.cells.push_back(std::move(cell));
    }
    std::sort(out.cells.begin(), out.cells.end(),
              [](const Cell& a, const Cell& b) { return a.id < b.id; });
    return out;
}

// --- moment-angle complex ---

// Vertex-set description of a simplicial CellComplex; throws unless the
// complex is a genuine simplicial complex (cells determined by vertex sets).
inline std::vector<uint32_t> simplicial_vertex_sets(const CellComplex& k) {
    if (k.kind != ComplexKind::simplicial)
        throw std::invalid_argument("moment_angle requires a simplicial complex");
    std::unordered_map<long long, int> index;
    for (int i = 0; i < static_cast<int>(k.cells.size()); ++i) index[k.cells[i].id] = i;
    std::vector<uint32_t> vset(k.cells.size(), 0);
    std::unordered_map<long long, int> vertexNumber;
    for (const Cell& c : k.cells)
        if (c.dim == 0) {
            const int num = static_cast<int>(vertexNumber.size());
            if (num >= 31) throw std::invalid_argument("moment_angle supports at most 31 vertices");
            vertexNumber[c.id] = num;
        }
    // Cells must come facet-closed and dimension-sorted resolvable; resolve
    // by increasing dimension.
    std::vector<int> byDim;
    for (int d = 0; d <= k.dimension(); ++d)
        for (int i = 0; i < static_cast<int>(k.cells.size()); ++i)
            if (k.cells[i].dim == d) byDim.push_back(i);
    std::map<uint32_t, int> setToCell;
    for (int i : byDim) {
        const Cell& c = k.cells[i];
        if (c.dim == 0) {
            vset[i] = 1u << vertexNumber.at(c.id);
        } else {
            uint32_t u = 0;
            for (long long f : c.facets) u |= vset[index.at(f)];
            vset[i] = u;
        }
        if (std::popcount(vset[i]) != c.dim + 1)
            throw std::invalid_argument("not a simplicial complex: degenerate cell " +
                                        std::to_string(c.id));
        if (setToCell.count(vset[i]))
            throw std::invalid_argument("not a simplicial complex: repeated vertex set");
        setToCell[vset[i]] = i;
    }
    return vset;
}

inline CellComplex moment_angle(const CellComplex& k) {
    const std::vector<uint32_t> vsets = simplicial_vertex_sets(k);
    int nV = 0;
    for (const Cell& c : k.cells)
        if (c.dim == 0) ++nV;
    const uint32_t full = (nV == 32) ? 0xFFFFFFFFu : ((1u << nV) - 1);

    std::vector<uint32_t> faces = {0u}; // sigma masks, including the empty face
    for (uint32_t s : vsets) faces.push_back(s);
    std::sort(faces.begin(), faces.end(), [](uint32_t a, uint32_t b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());

    // Cells are pairs (sigma, nu) with nu inside the complement of sigma;
    // ids increase with dimension, then (sigma, nu) masks.
    std::vector<std::pair<uint32_t, uint32_t>> keys;
    for (uint32_t sigma : faces) {
        const uint32_t comp = full & ~sigma;
        for (uint32_t nu = comp;; nu = (nu - 1) & comp) {
            keys.push_back({sigma, nu});
            if (nu == 0) break;
        }
    }
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
        const int pa = std::popcount(a.first), pb = std::popcount(b.first);
        if (pa != pb) return pa < pb;
        return a < b;
    });
    std::map<std::pair<uint32_t, uint32_t>, long long> cellId;
    long long next = 0;
    for (const auto& key : keys) cellId[key] = next++;

    CellComplex out;
    out.kind = ComplexKind::cubical;
    for (const auto& key : keys) {
        const long long id = cellId.at(key);
        const uint32_t sigma = key.first, nu = key.second;
        Cell cell{id, std::popcount(sigma), {}};
        for (int v = 0; v < nV; ++v) {
            if (!(sigma >> v & 1)) continue;
            const uint32_t sub = sigma & ~(1u << v);
            cell.facets.push_back(cellId.at({sub, nu}));            // v -> side 0
            cell.facets.push_back(cellId.at({sub, nu | (1u << v)})); // v -> side 1
        }
        out.cells.push_back(std::move(cell));
    }
    return out;
}

// --- random models ---

enum class RandomModel { ydelta, ybox, zbox };

inline std::string model_name(RandomModel m) {
    switch (m) {
        case RandomModel::ydelta: return "ydelta";
        case RandomModel::ybox: return "ybox";
        default: return "zbox";
    }
}

struct RandomModelParams {
    RandomModel model = RandomModel::ydelta;
    int h = 1, d = 1, k = 1;
    uint64_t seed = 0;
    uint64_t rejectionCap = 1000000; // zbox conditioning attempts
};

struct RandomSample {
    CellComplex complex;
    uint64_t attempts = 1; // zbox conditioning attempts consumed
};

namespace detail {

// Quotient of `copies` disjoint model cells by a union-find on their faces.
// faceCount = faces per copy; faceDim/facetsOf describe the model cell.
struct QuotientBuilder {
    int copies = 0;
    int facesPerCopy = 0;
    UnionFind uf;

    QuotientBuilder(int copies_, int facesPerCopy_)
        : copies(copies_), facesPerCopy(facesPerCopy_),
          uf(static_cast<std::size_t>(copies_) * facesPerCopy_) {}

    std::size_t slot(int copy, int face) const {
        return static_cast<std::size_t>(copy) * facesPerCopy + face;
    }
};

} // namespace detail

// Y^Delta: hd copies of the (k-1)-simplex; per direction K the facets are
// grouped into h classes of size d and identified by the order-preserving
// coordinate map. Faces of a copy are encoded by their zero-set Z subset of
// [k] (bitmask); dim = k - 1 - |Z|.
inline RandomSample random_simplicial(const RandomModelParams& p) {
    if (p.model != RandomModel::ydelta) throw std::invalid_argument("model must be ydelta");
    if (p.h < 1 || p.d < 1 || p.k < 1) throw std::invalid_argument("h, d, k must be positive");
    const int copies = p.h * p.d;
    const int k = p.k;
    const int nMask = 1 << k;
    detail::QuotientBuilder qb(copies, nMask); // full mask slots unused
    SplitMix64 g(p.seed);

    for (int dir = 0; dir < k; ++dir) {
        const std::vector<uint32_t> perm = random_permutation(copies, g);
        // class of copy F in direction dir = perm[F] / d
        std::vector<std::vector<int>> buckets(p.h);
        for (int f = 0; f < copies; ++f) buckets[perm[f] / p.d].push_back(f);
        for (const auto& bucket : buckets)
            for (std::size_t i = 1; i < bucket.size(); ++i)
                for (int z = 0; z < nMask - 1; ++z)
                    if (z >> dir & 1) qb.uf.unite(qb.slot(bucket[0], z), qb.slot(bucket[i], z));
    }

    // Collect classes; full zero-set mask is not a face.
    std::map<std::size_t, long long> rootId;
    std::vector<std::pair<std::pair<int, std::size_t>, std::size_t>> order;
    for (int f = 0; f < copies; ++f)
        for (int z = 0; z < nMask - 1; ++z) {
            const std::size_t root = qb.uf.find(qb.slot(f, z));
            if (!rootId.count(root)) {
                rootId[root] = 0;
                order.push_back({{k - 1 - std::popcount(static_cast<unsigned>(z)), root}, root});
            }
        }
    std::sort(order.begin(), order.end());
    long long next = 0;
    for (const auto& o : order) rootId[o.second] = next++;

    CellComplex out;
    out.kind = ComplexKind::simplicial;
    out.cells.resize(order.size());
    std::vector<bool> done(order.size(), false);
    for (int f = 0; f < copies; ++f)
        for (int z = 0; z < nMask - 1; ++z) {
            const std::size_t root = qb.uf.find(qb.slot(f, z));
            const long long id = rootId.at(root);
            if (done[id]) continue;
            done[id] = true;
            Cell cell{id, k - 1 - std::popcount(static_cast<unsigned>(z)), {}};
            if (cell.dim > 0)
                for (int dir = 0; dir < k; ++dir) {
                    if (z >> dir & 1) continue;
                    cell.facets.push_back(rootId.at(qb.uf.find(qb.slot(f, z | (1 << dir)))));
                }
            out.cells[id] = std::move(cell);
        }
    return {out, 1};
}

// Y^Box / Z^Box: cubes with facet slots (K, E). For ybox each slot has its
// own class space [h] (sides never mix). For zbox the class space [2h] is
// shared between the two sides of an axis, so opposite facets of one cube
// can land in the same class; sampling is conditioned on that never
// happening. Faces of a copy are trit patterns over axes (0, 1, free).
inline RandomSample random_cubical(const RandomModelParams& p) {
    if (p.model == RandomModel::ydelta) throw std::invalid_argument("model must be ybox or zbox");
    if (p.h < 1 || p.d < 1 || p.k < 1) throw std::invalid_argument("h, d, k must be positive");
    const bool zbox = p.model == RandomModel::zbox;
    const int copies = (zbox ? 2 : 1) * p.h * p.d;
    const int classes = (zbox ? 2 : 1) * p.h;
    const int k = p.k;
    int pow3 = 1;
    for (int i = 0; i < k; ++i) pow3 *= 3;

    for (uint64_t attempt = 1;; ++attempt) {
        if (attempt > p.rejectionCap)
            throw std::runtime_error("zbox rejection cap exceeded (" +
                                     std::to_string(p.rejectionCap) + " attempts)");
        SplitMix64 g(derive_seed(p.seed, attempt - 1));
        // cls[K][E][F] in [0, classes)
        std::vector<std::array<std::vector<int>, 2>> cls(k);
        for (int dir = 0; dir < k; ++dir)
            for (int e = 0; e < 2; ++e) {
                const std::vector<uint32_t> perm = random_permutation(copies, g);
                cls[dir][e].resize(copies);
                for (int f = 0; f < copies; ++f) cls[dir][e][f] = static_cast<int>(perm[f]) / p.d;
            }
        if (zbox) {
            bool rejected = false;
            for (int dir = 0; dir < k && !rejected; ++dir)
                for (int f = 0; f < copies; ++f)
                    if (cls[dir][0][f] == cls[dir][1][f]) {
                        rejected = true;
                        break;
                    }
            if (rejected) continue;
        }

        detail::QuotientBuilder qb(copies, pow3);
        std::vector<long long> trit(k);
        {
            long long t = 1;
            for (int i = 0; i < k; ++i) {
                trit[i] = t;
                t *= 3;
            }
        }
        for (int dir = 0; dir < k; ++dir) {
            // Bucket (copy, side) pairs by identification class. zbox shares
            // the class space between the two sides of an axis; ybox keeps
            // them disjoint.
            std::vector<std::vector<std::pair<int, int>>> buckets(zbox ? classes : 2 * classes);
            for (int e = 0; e < 2; ++e)
                for (int f = 0; f < copies; ++f) {
                    const int key = zbox ? cls[dir][e][f] : e * classes + cls[dir][e][f];
                    buckets[key].push_back({f, e});
                }
            for (const auto& bucket : buckets) {
                if (bucket.size() < 2) continue;
                for (long long code = 0; code < pow3; ++code) {
                    if (code / trit[dir] % 3 != 2) continue; // iterate patterns free on dir, then pin
                    const auto [f0, e0] = bucket[0];
                    for (std::size_t i = 1; i < bucket.size(); ++i) {
                        const auto [fi, ei] = bucket[i];
                        qb.uf.unite(qb.slot(f0, static_cast<int>(code - (2 - e0) * trit[dir])),
                                    qb.slot(fi, static_cast<int>(code - (2 - ei) * trit[dir])));
                    }
                }
            }
        }

        std::map<std::size_t, long long> rootId;
        std::vector<std::pair<std::pair<int, std::size_t>, std::size_t>> order;
        auto dimOf = [&](int code) {
            int free = 0;
            for (int a = 0; a < k; ++a)
                if (code / trit[a] % 3 == 2) ++free;
            return free;
        };
        for (int f = 0; f < copies; ++f)
            for (int code = 0; code < pow3; ++code) {
                const std::size_t root = qb.uf.find(qb.slot(f, code));
                if (!rootId.count(root)) {
                    rootId[root] = 0;
                    order.push_back({{dimOf(code), root}, root});
                }
            }
        std::sort(order.begin(), order.end());
        long long next = 0;
        for (const auto& o : order) rootId[o.second] = next++;

        CellComplex out;
        out.kind = ComplexKind::cubical;
        out.cells.resize(order.size());
        std::vector<bool> done(order.size(), false);
        for (int f = 0; f < copies; ++f)
            for (int code = 0; code < pow3; ++code) {
                const std::size_t root = qb.uf.find(qb.slot(f, code));
                const long long id = rootId.at(root);
                if (done[id]) continue;
                done[id] = true;
                Cell cell{id, dimOf(code), {}};
                for (int a = 0; a < k; ++a) {
                    if (code / trit[a] % 3 != 2) continue;
                    cell.facets.push_back(rootId.at(qb.uf.find(qb.slot(f, static_cast<int>(code - 2 * trit[a])))));
                    cell.facets.push_back(rootId.at(qb.uf.find(qb.slot(f, static_cast<int>(code - 1 * trit[a])))));
                }
                out.cells[id] = std::move(cell);
            }
        return {out, attempt};
    }
}

inline RandomSample random_model(const RandomModelParams& p) {
    return p.model == RandomModel::ydelta ? random_simplicial(p) : random_cubical(p);
}

} // namespace garland

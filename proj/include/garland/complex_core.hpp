#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "garland/errors.hpp"

namespace garland {

enum class ComplexKind { simplicial, cubical };

inline std::string kind_name(ComplexKind k) {
    return k == ComplexKind::simplicial ? "simplicial" : "cubical";
}

struct Cell {
    long long id = 0;
    int dim = 0;
    std::vector<long long> facets; // ordered; order is semantic (signs)

    bool operator==(const Cell&) const = default;
};

struct CellComplex {
    ComplexKind kind = ComplexKind::simplicial;
    std::vector<Cell> cells;

    bool operator==(const CellComplex&) const = default;

    int dimension() const {
        int d = -1;
        for (const Cell& c : cells) d = std::max(d, c.dim);
        return d;
    }
};

// Expected facet count for a cell of the given dimension: d+1 for a
// d-simplex (d >= 1), 2d for a d-cube, 0 for vertices.
inline std::size_t expected_facet_count(ComplexKind kind, int dim) {
    if (dim == 0) return 0;
    return kind == ComplexKind::simplicial ? static_cast<std::size_t>(dim + 1)
                                           : static_cast<std::size_t>(2 * dim);
}

struct Violation {
    std::string rule;
    std::vector<long long> cells;
    std::string message;
};

struct ValidationWarning {
    int dim = 0;
    std::vector<long long> cells;
    std::string message;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
    std::vector<ValidationWarning> warnings;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["ok"] = ok;
        j["violations"] = nlohmann::json::array();
        for (const Violation& v : violations)
            j["violations"].push_back({{"rule", v.rule}, {"cells", v.cells}, {"message", v.message}});
        j["warnings"] = nlohmann::json::array();
        for (const ValidationWarning& w : warnings)
            j["warnings"].push_back({{"dim", w.dim}, {"cells", w.cells}, {"message", w.message}});
        return j;
    }
};

// --- parsing and serialization ---

inline CellComplex parse_complex(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed document: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind") || !j.contains("cells"))
        throw ParseError("malformed document: expected object with \"kind\" and \"cells\"");
    CellComplex out;
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "simplicial")
        out.kind = ComplexKind::simplicial;
    else if (kind == "cubical")
        out.kind = ComplexKind::cubical;
    else
        throw ParseError("unknown kind \"" + kind + "\"");
    if (!j["cells"].is_array()) throw ParseError("malformed document: \"cells\" must be an array");

    std::unordered_map<long long, int> seen;
    for (const auto& cj : j["cells"]) {
        if (!cj.is_object() || !cj.contains("id") || !cj.contains("dim") || !cj.contains("facets"))
            throw ParseError("malformed cell: expected {id, dim, facets}");
        Cell c;
        c.id = cj["id"].get<long long>();
        c.dim = cj["dim"].get<int>();
        if (c.id < 0) throw ParseError("malformed cell: negative id");
        if (c.dim < 0) throw ParseError("malformed cell: negative dim");
        for (const auto& f : cj["facets"]) c.facets.push_back(f.get<long long>());
        if (seen.count(c.id)) throw ParseError("duplicate cell id " + std::to_string(c.id));
        seen[c.id] = 1;
        out.cells.push_back(std::move(c));
    }
    for (const Cell& c : out.cells) {
        if (c.facets.size() != expected_facet_count(out.kind, c.dim))
            throw ParseError("wrong facet count for cell " + std::to_string(c.id) + ": dim " +
                             std::to_string(c.dim) + " expects " +
                             std::to_string(expected_facet_count(out.kind, c.dim)) + ", got " +
                             std::to_string(c.facets.size()));
        for (long long f : c.facets)
            if (!seen.count(f))
                throw ParseError("dangling facet id " + std::to_string(f) + " in cell " +
                                 std::to_string(c.id));
    }
    return out;
}

inline nlohmann::json complex_to_json(const CellComplex& c) {
    nlohmann::json j;
    j["kind"] = kind_name(c.kind);
    j["cells"] = nlohmann::json::array();
    for (const Cell& cell : c.cells)
        j["cells"].push_back({{"id", cell.id}, {"dim", cell.dim}, {"facets", cell.facets}});
    return j;
}

inline std::string serialize(const CellComplex& c) { return complex_to_json(c).dump(2); }

// Sign of the cover relation for the facet at list position `pos`.
// Simplicial: (-1)^i for the i-th facet. Cubical: the (axis, side) slot at
// position 2(axis-1)+side gets (-1)^(axis+1) * (side ? +1 : -1).
inline int cover_sign(ComplexKind kind, std::size_t pos) {
    if (kind == ComplexKind::simplicial) return (pos % 2 == 0) ? 1 : -1;
    const std::size_t axis = pos / 2 + 1;
    const int side = static_cast<int>(pos % 2);
    const int axisSign = (axis % 2 == 1) ? 1 : -1;
    return axisSign * (side == 1 ? 1 : -1);
}

// --- validation ---

inline ValidationReport validate(const CellComplex& c) {
    ValidationReport rep;
    std::unordered_map<long long, int> index;
    for (int i = 0; i < static_cast<int>(c.cells.size()); ++i) index[c.cells[i].id] = i;

    auto violation = [&](const std::string& rule, std::vector<long long> cells, std::string msg) {
        rep.violations.push_back({rule, std::move(cells), std::move(msg)});
    };

    for (const Cell& cell : c.cells) {
        const std::size_t want = expected_facet_count(c.kind, cell.dim);
        if (cell.facets.size() != want) {
            violation("rank_regularity", {cell.id},
                      "cell covers " + std::to_string(cell.facets.size()) + " elements, expected " +
                          std::to_string(want));
            continue;
        }
        std::vector<long long> sorted = cell.facets;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            violation("rank_regularity", {cell.id}, "repeated facet id");
            continue;
        }
        for (long long f : cell.facets) {
            auto it = index.find(f);
            if (it == index.end()) {
                violation("rank_regularity", {cell.id, f}, "facet id not present");
                continue;
            }
            if (c.cells[it->second].dim != cell.dim - 1)
                violation("facet_dimension", {cell.id, f},
                          "facet must have dimension " + std::to_string(cell.dim - 1));
        }
    }

    // Signed dd = 0 and the two-middles property on every corank-2 interval,
    // exact integer arithmetic. Skipped when structure above is broken.
    if (rep.violations.empty()) {
        for (const Cell& cell : c.cells) {
            if (cell.dim < 2) continue;
            std::unordered_map<long long, std::pair<int, int>> middle; // p -> (count, signed sum)
            for (std::size_t pos = 0; pos < cell.facets.size(); ++pos) {
                const Cell& b = c.cells[index[cell.facets[pos]]];
                const int signBC = cover_sign(c.kind, pos);
                for (std::size_t pos2 = 0; pos2 < b.facets.size(); ++pos2) {
                    const int signPB = cover_sign(c.kind, pos2);
                    auto& acc = middle[b.facets[pos2]];
                    acc.first += 1;
                    acc.second += signPB * signBC;
                }
            }
            for (const auto& [p, acc] : middle) {
                if (acc.first != 2)
                    violation("middle_count", {p, cell.id},
                              "interval has " + std::to_string(acc.first) + " middle elements, expected 2");
                else if (acc.second != 0)
                    violation("boundary_squared", {p, cell.id}, "signed middle sum is nonzero");
            }
        }
    }

    // Coface coverage warnings, one per dimension with uncovered cells.
    const int dim = c.dimension();
    std::unordered_map<long long, bool> hasCoface;
    for (const Cell& cell : c.cells)
        for (long long f : cell.facets) hasCoface[f] = true;
    for (int k = 0; k <= dim; ++k) {
        std::vector<long long> uncovered;
        for (const Cell& cell : c.cells)
            if (cell.dim == k && !hasCoface.count(cell.id)) uncovered.push_back(cell.id);
        if (!uncovered.empty())
            rep.warnings.push_back({k, uncovered,
                                    std::to_string(k) + "-cells have no " + std::to_string(k + 1) +
                                        "-cofaces"});
    }

    rep.ok = rep.violations.empty();
    return rep;
}

// --- face poset ---

struct CoverRel {
    int cell = 0; // index of the other endpoint
    int sign = 0;
};

struct FacePoset {
    ComplexKind kind = ComplexKind::simplicial;
    std::vector<long long> ids;                  // element ids, input order
    std::vector<int> dims;
    std::vector<std::vector<CoverRel>> facets;   // downward covers, facet-list order
    std::vector<std::vector<CoverRel>> cofacets; // upward covers
    std::vector<std::vector<int>> byDim;         // indices per dimension

    int dimension() const { return static_cast<int>(byDim.size()) - 1; }

    int size() const { return static_cast<int>(ids.size()); }

    int index_of(long long id) const {
        auto it = index_.find(id);
        return it == index_.end() ? -1 : it->second;
    }

    std::unordered_map<long long, int> index_;
};

inline FacePoset face_poset(const CellComplex& c) {
    const ValidationReport rep = validate(c);
    if (!rep.ok) {
        std::string msg = "invalid complex:";
        for (const Violation& v : rep.violations) {
            msg += " [" + v.rule + "] " + v.message;
            break;
        }
        throw ValidationError(msg);
    }
    FacePoset fp;
    fp.kind = c.kind;
    fp.ids.reserve(c.cells.size());
    for (int i = 0; i < static_cast<int>(c.cells.size()); ++i) {
        fp.ids.push_back(c.cells[i].id);
        fp.index_[c.cells[i].id] = i;
        fp.dims.push_back(c.cells[i].dim);
    }
    fp.facets.resize(c.cells.size());
    fp.cofacets.resize(c.cells.size());
    const int dim = c.dimension();
    fp.byDim.assign(dim + 1, {});
    for (int i = 0; i < static_cast<int>(c.cells.size()); ++i) {
        const Cell& cell = c.cells[i];
        fp.byDim[cell.dim].push_back(i);
        for (std::size_t pos = 0; pos < cell.facets.size(); ++pos) {
            const int f = fp.index_.at(cell.facets[pos]);
            const int s = cover_sign(c.kind, pos);
            fp.facets[i].push_back({f, s});
            fp.cofacets[f].push_back({i, s});
        }
    }
    return fp;
}

// P^k by covered-element count. Simplicial vertices implicitly cover the
// empty face, so a d-cell covers d+1 elements; cubical d-cells cover 2d.
inline std::vector<long long> rank_cells(const FacePoset& fp, int k) {
    std::vector<long long> out;
    if (k < 0) return out;
    const std::size_t want = fp.kind == ComplexKind::simplicial
                                 ? static_cast<std::size_t>(k + 1)
                                 : static_cast<std::size_t>(2 * k);
    for (int i = 0; i < fp.size(); ++i) {
        const std::size_t covered =
            (fp.kind == ComplexKind::simplicial && fp.dims[i] == 0) ? 1 : fp.facets[i].size();
        if (covered == want) out.push_back(fp.ids[i]);
    }
    return out;
}

} // namespace garland

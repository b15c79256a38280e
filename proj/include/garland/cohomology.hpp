#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "garland/complex_core.hpp"
#include "garland/errors.hpp"
#include "garland/garland_poset.hpp"
#include "garland/matrix.hpp"
#include "garland/rational.hpp"

namespace garland {

// Coboundary matrices over the rationals (stored as integers, entries from
// the face-poset signs). delta[d] maps C^d -> C^{d+1}; rows are (d+1)-cells
// and columns d-cells, in byDim order. Reduced cohomology augments degree
// -1 with the all-ones column.
struct CochainData {
    std::vector<Matrix<BigInt>> delta; // d = 0 .. dim-1
    int dim = -1;
};

inline CochainData cochain_data(const FacePoset& fp) {
    CochainData cd;
    cd.dim = fp.dimension();
    std::vector<std::map<int, int>> pos(cd.dim + 1);
    for (int d = 0; d <= cd.dim; ++d)
        for (std::size_t i = 0; i < fp.byDim[d].size(); ++i) pos[d][fp.byDim[d][i]] = static_cast<int>(i);
    for (int d = 0; d + 1 <= cd.dim; ++d) {
        Matrix<BigInt> m(fp.byDim[d + 1].size(), fp.byDim[d].size());
        for (std::size_t r = 0; r < fp.byDim[d + 1].size(); ++r)
            for (const CoverRel& f : fp.facets[fp.byDim[d + 1][r]])
                m(r, pos[d].at(f.cell)) += f.sign;
        cd.delta.push_back(std::move(m));
    }
    return cd;
}

namespace detail {

inline std::size_t delta_rank(const CochainData& cd, const FacePoset& fp, int d, const RankMode& mode) {
    if (d == -1) return fp.byDim.empty() || fp.byDim[0].empty() ? 0 : 1; // augmentation
    if (d < -1 || d >= static_cast<int>(cd.delta.size())) return 0;
    return matrix_rank(cd.delta[d], mode);
}

} // namespace detail

// Reduced Betti number in degree d.
inline long long betti(const FacePoset& fp, int d, const RankMode& mode = RankMode::exact()) {
    if (d < 0 || d > fp.dimension()) return 0;
    const CochainData cd = cochain_data(fp);
    return static_cast<long long>(fp.byDim[d].size()) -
           static_cast<long long>(detail::delta_rank(cd, fp, d, mode)) -
           static_cast<long long>(detail::delta_rank(cd, fp, d - 1, mode));
}

inline std::vector<long long> betti_all(const FacePoset& fp, const RankMode& mode = RankMode::exact()) {
    std::vector<long long> out;
    const CochainData cd = cochain_data(fp);
    for (int d = 0; d <= fp.dimension(); ++d)
        out.push_back(static_cast<long long>(fp.byDim[d].size()) -
                      static_cast<long long>(detail::delta_rank(cd, fp, d, mode)) -
                      static_cast<long long>(detail::delta_rank(cd, fp, d - 1, mode)));
    return out;
}

// Connecting class delta_a = sum over b > a of w(a,b) b*, a k-cochain.
// The (P5) sign relation forces it to be a cocycle; verified exactly.
inline std::vector<long long> connecting_class(const GarlandPoset& g, int component) {
    std::vector<long long> coeff(g.sZero.size(), 0);
    const LinkComponent& comp = g.links.components.at(component);
    for (std::size_t vi = 0; vi < comp.vertices.size(); ++vi)
        coeff[g.posZero.at(comp.vertices[vi].b)] = g.wLower[component][vi];
    for (std::size_t ci = 0; ci < g.sOne.size(); ++ci) {
        long long acc = 0;
        for (std::size_t t = 0; t < g.facetPos[ci].size(); ++t)
            acc += static_cast<long long>(g.facetSign[ci][t]) * coeff[g.facetPos[ci][t]];
        if (acc != 0)
            throw AxiomError("connecting class of component " + std::to_string(component) +
                             " is not a cocycle (axiom breach)");
    }
    return coeff;
}

struct LTDims {
    long long dimL = 0, dimT = 0, dimLplusT = 0;
};

// Spans of the geometric and transversal connecting classes in H^k,
// measured relative to the coboundary image (with the augmentation column
// at level 0).
inline LTDims lt_dims(const FacePoset& fp, const GarlandPoset& g,
                      const RankMode& mode = RankMode::exact()) {
    const CochainData cd = cochain_data(fp);
    const std::size_t rows = g.sZero.size();
    Matrix<BigInt> base;
    if (g.level == 0) {
        base = Matrix<BigInt>(rows, 1);
        for (std::size_t i = 0; i < rows; ++i) base(i, 0) = 1;
    } else {
        base = cd.delta[g.level - 1];
    }
    std::vector<std::vector<long long>> geo, trans;
    for (const LinkComponent& comp : g.links.components) {
        std::vector<long long> cls = connecting_class(g, comp.id);
        (comp.kind == ComponentKind::geometric ? geo : trans).push_back(std::move(cls));
    }
    auto withColumns = [&](const std::vector<std::vector<long long>>* a,
                           const std::vector<std::vector<long long>>* b) {
        std::size_t extra = (a ? a->size() : 0) + (b ? b->size() : 0);
        Matrix<BigInt> m(rows, base.cols() + extra);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < base.cols(); ++j) m(i, j) = base(i, j);
        std::size_t col = base.cols();
        for (const auto* group : {a, b}) {
            if (!group) continue;
            for (const auto& cls : *group) {
                for (std::size_t i = 0; i < rows; ++i) m(i, col) = cls[i];
                ++col;
            }
        }
        return m;
    };
    const std::size_t rankBase = matrix_rank(base, mode);
    LTDims out;
    out.dimL = static_cast<long long>(matrix_rank(withColumns(&geo, nullptr), mode) - rankBase);
    out.dimT = static_cast<long long>(matrix_rank(withColumns(nullptr, &trans), mode) - rankBase);
    out.dimLplusT = static_cast<long long>(matrix_rank(withColumns(&geo, &trans), mode) - rankBase);
    return out;
}

struct CohomologyReport {
    std::vector<long long> betti; // reduced, degrees 0..dim
    long long dimL = 0, dimT = 0, dimLplusT = 0;
    long long h0B = 0;
    bool consistent = false; // h0B == betti[level] - dimLplusT
    int level = 0;
    std::string mode = "exact";

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["betti"] = betti;
        j["dimL"] = dimL;
        j["dimT"] = dimT;
        j["dimLplusT"] = dimLplusT;
        j["h0B"] = h0B;
        j["consistent"] = consistent;
        j["level"] = level;
        j["mode"] = mode;
        return j;
    }
};

} // namespace garland

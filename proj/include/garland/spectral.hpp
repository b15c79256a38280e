#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "garland/eigen.hpp"
#include "garland/errors.hpp"
#include "garland/garland_poset.hpp"
#include "garland/rational.hpp"

namespace garland {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Symmetric normalization D^{-1/2} (D - A) D^{-1/2} of the multigraph
// Laplacian; parallel edges count, a loop adds 2 to its vertex degree and 2
// to the diagonal adjacency entry. Same spectrum as I - D^{-1} A.
inline Matrix<double> normalized_laplacian(const LinkComponent& comp) {
    const std::size_t n = comp.vertices.size();
    std::vector<long long> degree(n, 0);
    Matrix<long long> adj(n, n, 0);
    for (const LinkEdge& e : comp.edges) {
        if (e.u == e.v) {
            degree[e.u] += 2;
            adj(e.u, e.u) += 2;
        } else {
            degree[e.u] += 1;
            degree[e.v] += 1;
            adj(e.u, e.v) += 1;
            adj(e.v, e.u) += 1;
        }
    }
    if (n > 1)
        for (std::size_t i = 0; i < n; ++i)
            if (degree[i] == 0)
                throw AxiomError("isolated vertex in a multi-vertex link component " +
                                 std::to_string(comp.id));
    Matrix<double> lap(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (degree[i] == 0) continue; // single-vertex component
        for (std::size_t j = 0; j < n; ++j) {
            if (degree[j] == 0) continue;
            const double norm = std::sqrt(static_cast<double>(degree[i]) * static_cast<double>(degree[j]));
            const double d = (i == j) ? static_cast<double>(degree[i]) : 0.0;
            lap(i, j) = (d - static_cast<double>(adj(i, j))) / norm;
        }
    }
    return lap;
}

inline std::vector<double> spectrum(const LinkComponent& comp) {
    if (comp.vertices.size() == 1 && comp.edges.empty()) return {0.0};
    return symmetric_eigenvalues(normalized_laplacian(comp));
}

// Second-smallest eigenvalue; +inf for single-vertex components.
inline double spectral_gap(const LinkComponent& comp) {
    const std::vector<double> eig = spectrum(comp);
    if (eig.size() < 2) return kInf;
    return eig[1];
}

struct ComponentSpectrum {
    int component = -1;
    ComponentKind kind = ComponentKind::geometric;
    std::size_t size = 0;
    std::size_t edgeCount = 0;
    std::vector<double> eigenvalues;
    double gap = kInf;
};

struct SpectralReport {
    std::vector<ComponentSpectrum> components;
    double minGap = kInf;
    double tol = 1e-9;
};

inline SpectralReport spectral_report(const LinkGraph& lg, double tol = 1e-9) {
    SpectralReport rep;
    rep.tol = tol;
    for (const LinkComponent& comp : lg.components) {
        ComponentSpectrum cs;
        cs.component = comp.id;
        cs.kind = comp.kind;
        cs.size = comp.vertices.size();
        cs.edgeCount = comp.edges.size();
        cs.eigenvalues = spectrum(comp);
        cs.gap = cs.eigenvalues.size() < 2 ? kInf : cs.eigenvalues[1];
        rep.minGap = std::min(rep.minGap, cs.gap);
        rep.components.push_back(std::move(cs));
    }
    return rep;
}

// k/(k+1) for simplicial, 2k/(2k+1) for cubical, as exact rationals.
inline Fraction threshold(int k, ComplexKind kind) {
    if (k < 0) throw std::invalid_argument("threshold requires k >= 0");
    if (kind == ComplexKind::simplicial) return {k, k + 1};
    return {2 * k, 2 * k + 1};
}

enum class CriterionStatus { holds, fails, inconclusive };

inline std::string status_name(CriterionStatus s) {
    switch (s) {
        case CriterionStatus::holds: return "holds";
        case CriterionStatus::fails: return "fails";
        default: return "inconclusive";
    }
}

struct ComponentVerdict {
    int component = -1;
    double gap = kInf;
    CriterionStatus status = CriterionStatus::holds;
};

struct CriterionVerdict {
    Fraction threshold;
    double band = 1e-7;
    double tol = 1e-9;
    std::vector<ComponentVerdict> perComponent;
    CriterionStatus overall = CriterionStatus::holds;
};

// Strict inequality gap > threshold is required, so a gap within `tol` of
// the threshold counts as equality and fails; the wider `band` flags
// numerically suspicious gaps as inconclusive.
inline CriterionVerdict evaluate_criterion(const SpectralReport& spectra, int k, ComplexKind kind,
                                           double band = 1e-7, double tol = 1e-9) {
    CriterionVerdict v;
    v.threshold = threshold(k, kind);
    v.band = band;
    v.tol = tol;
    const double thr = v.threshold.value();
    bool anyFail = false, anyInconclusive = false;
    for (const ComponentSpectrum& cs : spectra.components) {
        ComponentVerdict cv;
        cv.component = cs.component;
        cv.gap = cs.gap;
        if (std::isinf(cs.gap)) {
            cv.status = CriterionStatus::holds;
        } else {
            const double d = cs.gap - thr;
            if (std::abs(d) <= tol)
                cv.status = CriterionStatus::fails; // equality is not strict inequality
            else if (std::abs(d) < band)
                cv.status = CriterionStatus::inconclusive;
            else
                cv.status = d > 0 ? CriterionStatus::holds : CriterionStatus::fails;
        }
        anyFail = anyFail || cv.status == CriterionStatus::fails;
        anyInconclusive = anyInconclusive || cv.status == CriterionStatus::inconclusive;
        v.perComponent.push_back(cv);
    }
    v.overall = anyFail ? CriterionStatus::fails
                        : (anyInconclusive ? CriterionStatus::inconclusive : CriterionStatus::holds);
    return v;
}

inline nlohmann::json gap_to_json(double gap) {
    if (std::isinf(gap)) return "inf";
    return gap;
}

inline nlohmann::json spectral_report_to_json(const SpectralReport& rep, bool fullSpectra) {
    nlohmann::json j;
    j["minGap"] = gap_to_json(rep.minGap);
    j["tol"] = rep.tol;
    j["components"] = nlohmann::json::array();
    for (const ComponentSpectrum& cs : rep.components) {
        nlohmann::json cj;
        cj["id"] = cs.component;
        cj["kind"] = cs.kind == ComponentKind::geometric ? "geometric" : "transversal";
        cj["size"] = cs.size;
        cj["edgeCount"] = cs.edgeCount;
        cj["gap"] = gap_to_json(cs.gap);
        if (fullSpectra) cj["eigenvalues"] = cs.eigenvalues;
        j["components"].push_back(cj);
    }
    return j;
}

inline nlohmann::json verdict_to_json(const CriterionVerdict& v) {
    nlohmann::json j;
    j["threshold"] = v.threshold.str();
    j["thresholdValue"] = v.threshold.value();
    j["band"] = v.band;
    j["tol"] = v.tol;
    j["overall"] = status_name(v.overall);
    j["perComponent"] = nlohmann::json::array();
    for (const ComponentVerdict& cv : v.perComponent)
        j["perComponent"].push_back(
            {{"id", cv.component}, {"gap", gap_to_json(cv.gap)}, {"status", status_name(cv.status)}});
    return j;
}

} // namespace garland

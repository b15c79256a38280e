#pragma once

#include <cmath>
#include <optional>
#include <string>

#include <json.hpp>

#include "garland/cohomology.hpp"
#include "garland/complex_core.hpp"
#include "garland/exactness.hpp"
#include "garland/garland_poset.hpp"
#include "garland/spectral.hpp"

namespace garland {

struct AnalyzeOptions {
    double tol = 1e-9;
    double band = 1e-7;
    RankMode rankMode = RankMode::exact();
    bool fullSpectra = false;
};

struct AnalysisResult {
    ValidationReport validation;
    FacePoset fp;
    GarlandPoset g;
    SpectralReport spectra;
    CriterionVerdict verdict;
    std::optional<MonodromyReport> monodromy; // cubical only
};

// validate -> garland poset (axioms included) -> spectra -> criterion.
inline AnalysisResult analyze_complex(const CellComplex& c, int level, const AnalyzeOptions& opts = {}) {
    AnalysisResult res;
    res.validation = validate(c);
    if (!res.validation.ok) {
        std::string msg = "validation failed:";
        for (const Violation& v : res.validation.violations) {
            msg += " [" + v.rule + "] " + v.message;
            break;
        }
        throw ValidationError(msg);
    }
    res.fp = face_poset(c);
    res.g = build_garland(res.fp, level);
    res.spectra = spectral_report(res.g.links, opts.tol);
    res.verdict = evaluate_criterion(res.spectra, level, c.kind, opts.band, opts.tol);
    if (c.kind == ComplexKind::cubical)
        res.monodromy = check_monodromy_free(res.fp, level, res.g.links);
    return res;
}

inline int default_level(const CellComplex& c) { return c.dimension() - 1; }

struct TheoremCheckResult {
    AnalysisResult analysis;
    CohomologyReport cohomology;
    double alphaValue = 0;
    double betaValue = 0;
    bool blocksExact = false;
    // Soundness of the implication chain on this instance:
    //   beta < alpha  =>  h0B = 0,
    //   verdict holds =>  betti[level] = dimLplusT,
    //   h0B = betti[level] - dimLplusT.
    bool vanishingSound = true;
    bool conclusionSound = true;
    bool theoremConsistent = false;
};

// Full cross-check: spectral criterion, exact cohomology, and the explicit
// structure agree per the exact sequence.
inline TheoremCheckResult theorem_check(const CellComplex& c, int level,
                                        const AnalyzeOptions& opts = {}) {
    TheoremCheckResult res;
    res.analysis = analyze_complex(c, level, opts);
    const FacePoset& fp = res.analysis.fp;
    const GarlandPoset& g = res.analysis.g;

    const ExplicitGarlandStructure e = assemble(g);
    res.alphaValue = alpha(e).overall;
    res.betaValue = beta_from_rayleigh_identity(e, opts.rankMode);
    const BlockReport blocks = verify_block_decomposition(e);
    res.blocksExact = blocks.allExact;

    res.cohomology.level = level;
    res.cohomology.betti = betti_all(fp, opts.rankMode);
    const LTDims lt = lt_dims(fp, g, opts.rankMode);
    res.cohomology.dimL = lt.dimL;
    res.cohomology.dimT = lt.dimT;
    res.cohomology.dimLplusT = lt.dimLplusT;
    res.cohomology.h0B = h0_dim(e, opts.rankMode);
    res.cohomology.mode = opts.rankMode.modular ? "probabilistic" : "exact";
    const long long bettiAtLevel = res.cohomology.betti[level];
    res.cohomology.consistent = res.cohomology.h0B == bettiAtLevel - res.cohomology.dimLplusT;

    if (res.betaValue < res.alphaValue) res.vanishingSound = res.cohomology.h0B == 0;
    if (res.analysis.verdict.overall == CriterionStatus::holds)
        res.conclusionSound = bettiAtLevel == res.cohomology.dimLplusT;
    res.theoremConsistent = res.vanishingSound && res.conclusionSound && res.cohomology.consistent;
    return res;
}

inline nlohmann::json analysis_to_json(const AnalysisResult& res, bool fullSpectra) {
    nlohmann::json j = garland_to_json(res.g);
    j["spectra"] = spectral_report_to_json(res.spectra, fullSpectra);
    j["criterion"] = verdict_to_json(res.verdict);
    if (res.monodromy) {
        nlohmann::json mj;
        mj["free"] = res.monodromy->free;
        mj["witnesses"] = nlohmann::json::array();
        for (const auto& w : res.monodromy->witnessCycle) mj["witnesses"].push_back({w[0], w[1], w[2]});
        mj["perComponent"] = nlohmann::json::array();
        for (const ComponentMonodromy& cm : res.monodromy->perComponent)
            mj["perComponent"].push_back({{"component", cm.component},
                                          {"free", cm.free},
                                          {"holonomyGroupSize", cm.holonomyGroupSize}});
        j["monodromy"] = mj;
    }
    return j;
}

} // namespace garland

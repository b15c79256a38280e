#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "garland/generators.hpp"
#include "garland/pipeline.hpp"

namespace garland {

struct ExperimentRecord {
    long long trialIndex = 0;
    uint64_t derivedSeed = 0;
    std::string model;
    int h = 0, d = 0, k = 0;
    int level = 0;
    long long resamples = 0;     // validity resamples (identification degeneracies)
    long long zboxAttempts = 0;  // conditioning attempts inside the sampler
    std::string verdict;
    double minGap = 0;
    std::string threshold;
    long long bettiAtLevel = 0;
    long long dimL = 0, dimT = 0, dimLplusT = 0, h0B = 0;
    double alphaValue = 0, betaValue = 0;
    bool blocksExact = false;
    bool theoremConsistent = false;
    long long buildMs = 0, analyzeMs = 0;
};

struct ExperimentParams {
    RandomModel model = RandomModel::ydelta;
    int h = 2, d = 2, k = 3;
    long long trials = 10;
    uint64_t seed = 0;
    int threads = 0; // 0: GARLAND_THREADS env or hardware_concurrency
    long long resampleCap = 256;
    AnalyzeOptions options;
};

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("GARLAND_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// One seeded trial: sample (resampling on validation rejections), analyze at
// level dim-1, cross-check the theorem. Deterministic given (seed, index).
inline ExperimentRecord run_trial(const ExperimentParams& params, long long trialIndex) {
    ExperimentRecord rec;
    rec.trialIndex = trialIndex;
    rec.derivedSeed = derive_seed(params.seed, static_cast<uint64_t>(trialIndex));
    rec.model = model_name(params.model);
    rec.h = params.h;
    rec.d = params.d;
    rec.k = params.k;

    const auto t0 = std::chrono::steady_clock::now();
    CellComplex complex;
    long long resamples = 0;
    uint64_t attempts = 0;
    for (;; ++resamples) {
        if (resamples > params.resampleCap)
            throw std::runtime_error("resample cap exceeded for trial " + std::to_string(trialIndex));
        RandomModelParams mp{params.model, params.h, params.d, params.k,
                             derive_seed(rec.derivedSeed, static_cast<uint64_t>(resamples))};
        RandomSample sample = random_model(mp);
        attempts += sample.attempts;
        if (validate(sample.complex).ok) {
            complex = std::move(sample.complex);
            break;
        }
    }
    rec.resamples = resamples;
    rec.zboxAttempts = static_cast<long long>(attempts);
    const auto t1 = std::chrono::steady_clock::now();

    rec.level = default_level(complex);
    AnalyzeOptions opts = params.options;
    if (opts.rankMode.modular)
        opts.rankMode.prime = random_prime62(derive_seed(params.seed, 0xA5A5A5A5ULL));
    const TheoremCheckResult check = theorem_check(complex, rec.level, opts);
    const auto t2 = std::chrono::steady_clock::now();

    rec.verdict = status_name(check.analysis.verdict.overall);
    rec.minGap = check.analysis.spectra.minGap;
    rec.threshold = check.analysis.verdict.threshold.str();
    rec.bettiAtLevel = check.cohomology.betti[rec.level];
    rec.dimL = check.cohomology.dimL;
    rec.dimT = check.cohomology.dimT;
    rec.dimLplusT = check.cohomology.dimLplusT;
    rec.h0B = check.cohomology.h0B;
    rec.alphaValue = check.alphaValue;
    rec.betaValue = check.betaValue;
    rec.blocksExact = check.blocksExact;
    rec.theoremConsistent = check.theoremConsistent;
    rec.buildMs = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    rec.analyzeMs = std::chrono::duration_cast<std::chrono::milliseconds>(t2 - t1).count();
    return rec;
}

inline std::string experiment_csv_header() {
    return "trialIndex,derivedSeed,model,h,d,k,level,resamples,zboxAttempts,verdict,minGap,"
           "threshold,bettiAtLevel,dimL,dimT,dimLplusT,h0B,alpha,beta,blocksExact,"
           "theoremConsistent,buildMs,analyzeMs";
}

inline std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// Timing columns sit at the end so determinism checks can strip them.
inline std::string record_to_csv(const ExperimentRecord& r, bool includeTimings = true) {
    std::ostringstream os;
    os << r.trialIndex << ',' << r.derivedSeed << ',' << r.model << ',' << r.h << ',' << r.d << ','
       << r.k << ',' << r.level << ',' << r.resamples << ',' << r.zboxAttempts << ',' << r.verdict
       << ',' << format_double(r.minGap) << ',' << r.threshold << ',' << r.bettiAtLevel << ','
       << r.dimL << ',' << r.dimT << ',' << r.dimLplusT << ',' << r.h0B << ','
       << format_double(r.alphaValue) << ',' << format_double(r.betaValue) << ','
       << (r.blocksExact ? 1 : 0) << ',' << (r.theoremConsistent ? 1 : 0);
    if (includeTimings) os << ',' << r.buildMs << ',' << r.analyzeMs;
    return os.str();
}

struct ExperimentResult {
    std::vector<ExperimentRecord> records;

    std::string to_csv(bool includeTimings = true) const {
        std::ostringstream os;
        std::string header = experiment_csv_header();
        if (!includeTimings) header = header.substr(0, header.find(",buildMs"));
        os << header << '\n';
        for (const ExperimentRecord& r : records) os << record_to_csv(r, includeTimings) << '\n';
        return os.str();
    }

    nlohmann::json summary() const {
        nlohmann::json j;
        j["trials"] = records.size();
        std::map<std::string, long long> verdicts;
        std::vector<long long> histogram(21, 0); // [0,0.1) .. [1.9,2.0], last bucket: >= 2 or inf
        double bettiSum = 0;
        for (const ExperimentRecord& r : records) {
            verdicts[r.verdict] += 1;
            bettiSum += static_cast<double>(r.bettiAtLevel);
            const int bucket =
                std::isinf(r.minGap) ? 20 : std::min(20, static_cast<int>(r.minGap / 0.1));
            histogram[std::max(0, bucket)] += 1;
        }
        j["verdictRates"] = nlohmann::json::object();
        for (const auto& [name, count] : verdicts)
            j["verdictRates"][name] = static_cast<double>(count) / static_cast<double>(records.size());
        j["gapHistogram"] = histogram;
        j["meanBetti"] = records.empty() ? 0.0 : bettiSum / static_cast<double>(records.size());
        bool allConsistent = true;
        for (const ExperimentRecord& r : records) allConsistent = allConsistent && r.theoremConsistent;
        j["allTheoremConsistent"] = allConsistent;
        return j;
    }
};

// Work pool over trial indices; records land in trialIndex order regardless
// of scheduling, so output bytes depend only on the seed.
inline ExperimentResult run_experiment(const ExperimentParams& params) {
    if (params.model == RandomModel::ydelta && params.k < 3)
        throw std::invalid_argument(
            "ydelta experiments require k >= 3 so the analysis level dim-1 is at least 1");
    ExperimentResult result;
    result.records.resize(static_cast<std::size_t>(params.trials));
    const int nThreads = resolve_threads(params.threads);
    std::atomic<long long> nextTrial{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nThreads));
    for (int t = 0; t < nThreads; ++t)
        pool.emplace_back([&, t]() {
            try {
                for (;;) {
                    const long long i = nextTrial.fetch_add(1);
                    if (i >= params.trials) return;
                    result.records[static_cast<std::size_t>(i)] = run_trial(params, i);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
                nextTrial.store(params.trials);
            }
        });
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& err : errors)
        if (err) std::rethrow_exception(err);
    for (const ExperimentRecord& r : result.records)
        if (!r.theoremConsistent)
            throw std::runtime_error("theorem consistency violated in trial " +
                                     std::to_string(r.trialIndex));
    return result;
}

} // namespace garland

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <vector>

#include "subldpc/channel.hpp"
#include "subldpc/code.hpp"
#include "subldpc/decoder.hpp"
#include "subldpc/mc.hpp"

namespace subldpc {

/// One Monte Carlo decoding trial. Wall time is measurement metadata and is
/// kept out of the deterministic primary output.
struct TrialRecord {
    std::size_t trial = 0;
    double epsilon = 0.0;
    DecodeStatus status = DecodeStatus::Stalled;
    std::size_t iterations_used = 0;
    std::size_t max_final_dim = 0;
    std::size_t truth_violations = 0;
    double wall_ms = 0.0;
};

struct WilsonInterval {
    double lo = 0.0;
    double hi = 0.0;
};

/// 95% Wilson score interval for a binomial proportion.
inline WilsonInterval wilson_interval(std::size_t successes, std::size_t n, double z = 1.96) {
    if (n == 0) return {0.0, 1.0};
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

struct EpsilonSummary {
    double epsilon = 0.0;
    std::size_t trials = 0;
    std::size_t block_errors = 0;
    double block_error_rate = 0.0;
    WilsonInterval wilson;
};

struct CampaignResult {
    std::vector<TrialRecord> records;
    std::vector<EpsilonSummary> summaries;
    double wall_ms_total = 0.0;
};

/// All-zero-codeword decoding campaign over an epsilon grid. Trial t of
/// epsilon index e draws its channel from stream (seed, e * trials + t), so
/// results do not depend on the worker count.
inline CampaignResult run_campaign(const ParityCheckCode& code,
                                   const std::vector<double>& epsilons, std::size_t trials,
                                   std::size_t max_iterations, std::uint64_t seed,
                                   unsigned threads = 0, bool use_peeling = false) {
    const auto t_start = std::chrono::steady_clock::now();
    CampaignResult result;
    result.records.resize(epsilons.size() * trials);

    const std::vector<Vec> zero_word(code.n_vars, Vec(code.m, 0));
    for (std::size_t e = 0; e < epsilons.size(); ++e) {
        const ChannelSpec spec(code.q, code.m, epsilons[e]);
        parallel_for(trials, threads, [&, e](std::size_t t) {
            const auto t0 = std::chrono::steady_clock::now();
            Rng rng = Rng::stream(seed, e * trials + t);
            std::vector<ChannelOutput> outputs;
            outputs.reserve(code.n_vars);
            for (std::size_t v = 0; v < code.n_vars; ++v) {
                outputs.push_back(transmit(spec, Vec(code.m, 0), rng));
            }
            DecoderConfig cfg;
            cfg.max_iterations = max_iterations;
            cfg.truth = &zero_word;
            const DecodeResult dec =
                use_peeling ? peeling_decode(code, outputs, cfg) : decode(code, outputs, cfg);

            TrialRecord rec;
            rec.trial = t;
            rec.epsilon = epsilons[e];
            rec.status = dec.status;
            rec.iterations_used = dec.iterations_used;
            rec.max_final_dim = dec.final_dims.empty()
                                    ? 0
                                    : *std::max_element(dec.final_dims.begin(),
                                                        dec.final_dims.end());
            rec.truth_violations = dec.truth_violations;
            rec.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
            result.records[e * trials + t] = rec;
        });
    }

    for (std::size_t e = 0; e < epsilons.size(); ++e) {
        EpsilonSummary s;
        s.epsilon = epsilons[e];
        s.trials = trials;
        for (std::size_t t = 0; t < trials; ++t) {
            if (result.records[e * trials + t].status != DecodeStatus::Decoded) {
                ++s.block_errors;
            }
        }
        s.block_error_rate =
            trials == 0 ? 0.0 : static_cast<double>(s.block_errors) / static_cast<double>(trials);
        s.wilson = wilson_interval(s.block_errors, trials);
        result.summaries.push_back(s);
    }
    result.wall_ms_total =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
            .count();
    return result;
}

}  // namespace subldpc

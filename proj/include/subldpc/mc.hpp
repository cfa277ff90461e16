#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "subldpc/density_evolution.hpp"
#include "subldpc/rng.hpp"
#include "subldpc/subspace.hpp"

namespace subldpc {

/// Run fn(i) for i in [0, n) across up to `threads` workers in fixed
/// contiguous chunks. Work items must be independent; results are identical
/// for any worker count because each item derives its own randomness.
inline void parallel_for(std::size_t n, unsigned threads,
                         const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn]() {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

struct ConcentrationReport {
    std::size_t m = 0;
    std::uint32_t q = 2;
    std::size_t d1 = 0, d2 = 0, k = 0;
    std::size_t trials = 0;
    /// Fraction of pairs with d1 [.] d2 <= dim(V1 ^ V2) < d1 [.] d2 + k.
    double freq_intersection = 0.0;
    /// Fraction with d1 [+] d2 - k < dim(V1 + V2) <= d1 [+] d2 (the dual
    /// window; it contains the generic value, mirroring the intersection one).
    double freq_sum = 0.0;
    /// Analytic lower bound 1 - q^{-k - max(0, m - d1 - d2)} for both events.
    double bound = 0.0;
};

/// Sample pairs of uniform random subspaces and measure how often their
/// intersection and sum dimensions fall in the k-wide windows anchored at
/// the generic values. dim(V1 + V2) is the rank of the stacked bases and
/// dim(V1 ^ V2) follows by the modular law.
inline ConcentrationReport mc_concentration(std::size_t m, std::uint32_t q, std::size_t d1,
                                            std::size_t d2, std::size_t k, std::size_t trials,
                                            std::uint64_t seed, unsigned threads = 0) {
    if (d1 > m || d2 > m) throw DomainError("subspace dimension exceeds ambient dimension");
    ConcentrationReport rep;
    rep.m = m;
    rep.q = q;
    rep.d1 = d1;
    rep.d2 = d2;
    rep.k = k;
    rep.trials = trials;

    const std::size_t int_lo = d1 + d2 > m ? d1 + d2 - m : 0;  // d1 [.] d2
    const std::size_t sum_hi = std::min(d1 + d2, m);           // d1 [+] d2
    const double exponent = static_cast<double>(k) +
                            static_cast<double>(m > d1 + d2 ? m - d1 - d2 : 0);
    rep.bound = 1.0 - std::pow(static_cast<double>(q), -exponent);

    std::vector<std::uint8_t> int_hit(trials, 0), sum_hit(trials, 0);
    parallel_for(trials, threads, [&](std::size_t t) {
        Rng rng = Rng::stream(seed, t);
        const Subspace v1 = uniform_random_subspace(m, d1, q, rng);
        const Subspace v2 = uniform_random_subspace(m, d2, q, rng);
        const std::size_t dim_sum = v1.dim() + v2.dim() == 0
                                        ? 0
                                        : rref(vstack(v1.basis(), v2.basis())).rank;
        const std::size_t dim_int = d1 + d2 - dim_sum;
        int_hit[t] = (dim_int >= int_lo && dim_int < int_lo + k) ? 1 : 0;
        sum_hit[t] = (dim_sum + k > sum_hi && dim_sum <= sum_hi) ? 1 : 0;
    });
    std::size_t ints = 0, sums = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        ints += int_hit[t];
        sums += sum_hit[t];
    }
    rep.freq_intersection = trials == 0 ? 0.0 : static_cast<double>(ints) / trials;
    rep.freq_sum = trials == 0 ? 0.0 : static_cast<double>(sums) / trials;
    return rep;
}

/// Monte Carlo version of the regular-ensemble recursion on actual random
/// subspaces, for comparison against the scalar trace. Per round, each of
/// `trials` tracked samples is refreshed through one check step (sum of
/// dr - 1 draws from the previous round's population) and one variable step
/// (a fresh channel subspace intersected with dl - 1 check samples), with
/// every draw's stream derived from (seed, round, sample). Returns the mean
/// normalized dimension per round, index 0 being the channel itself.
inline std::vector<double> mc_subspace_de(unsigned dl, unsigned dr, std::size_t m,
                                          std::uint32_t q, double eps, std::size_t rounds,
                                          std::size_t trials, std::uint64_t seed,
                                          unsigned threads = 0) {
    check_regular_degrees(dl, dr);
    check_unit_interval(eps, "eps");
    if (trials == 0) throw ParamError("at least one trial is required");
    const std::size_t noise_dim =
        static_cast<std::size_t>(std::floor(eps * static_cast<double>(m) + 0.5));

    std::vector<Subspace> var_pop(trials), check_pop(trials), next_pop(trials);
    std::vector<double> means;
    means.reserve(rounds + 1);

    const auto stream_of = [&](std::size_t round, std::size_t idx, std::uint64_t phase) {
        return Rng::stream(seed, (2 * round + phase) * trials + idx);
    };

    parallel_for(trials, threads, [&](std::size_t i) {
        Rng rng = stream_of(0, i, 0);
        var_pop[i] = uniform_random_subspace(m, noise_dim, q, rng);
    });
    means.push_back(static_cast<double>(noise_dim) / static_cast<double>(m));

    for (std::size_t t = 1; t <= rounds; ++t) {
        parallel_for(trials, threads, [&](std::size_t i) {
            Rng rng = stream_of(t, i, 0);
            std::size_t total_rows = 0;
            std::vector<const Subspace*> parts(dr - 1);
            for (unsigned e = 0; e + 1 < dr; ++e) {
                parts[e] = &var_pop[rng.below(trials)];
                total_rows += parts[e]->dim();
            }
            Matrix gens(total_rows, m, q);
            std::size_t out = 0;
            for (const Subspace* p : parts) {
                for (std::size_t r = 0; r < p->dim(); ++r, ++out)
                    for (std::size_t c = 0; c < m; ++c) gens(out, c) = p->basis()(r, c);
            }
            check_pop[i] = Subspace::from_matrix(gens);
        });
        parallel_for(trials, threads, [&](std::size_t i) {
            Rng rng = stream_of(t, i, 1);
            std::vector<Subspace> terms;
            terms.reserve(dl);
            terms.push_back(uniform_random_subspace(m, noise_dim, q, rng));
            for (unsigned e = 0; e + 1 < dl; ++e) {
                terms.push_back(check_pop[rng.below(trials)]);
            }
            next_pop[i] = intersect_all(terms);
        });
        var_pop.swap(next_pop);
        double total = 0.0;
        for (const auto& v : var_pop) total += static_cast<double>(v.dim());
        means.push_back(total / (static_cast<double>(trials) * static_cast<double>(m)));
    }
    return means;
}

}  // namespace subldpc

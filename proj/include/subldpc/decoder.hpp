#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "subldpc/channel.hpp"
#include "subldpc/code.hpp"
#include "subldpc/errors.hpp"
#include "subldpc/subspace.hpp"

namespace subldpc {

enum class DecodeStatus { Decoded, Stalled, Inconsistent };

inline const char* to_string(DecodeStatus s) {
    switch (s) {
        case DecodeStatus::Decoded: return "decoded";
        case DecodeStatus::Stalled: return "stalled";
        case DecodeStatus::Inconsistent: return "inconsistent";
    }
    return "unknown";
}

struct DecoderConfig {
    std::size_t max_iterations = 100;
    bool track_dimensions = false;
    /// When set, every message and a-posteriori space is checked to contain
    /// the given word; violations are counted in the result. On a faithfully
    /// simulated channel the count is always zero.
    const std::vector<Vec>* truth = nullptr;
};

struct DecodeResult {
    DecodeStatus status = DecodeStatus::Stalled;
    std::size_t iterations_used = 0;
    std::optional<std::vector<Vec>> decoded_word;
    std::vector<AffineSubspace> posteriors;
    std::vector<std::size_t> final_dims;
    std::vector<double> dim_trace;  // mean dim/m of variable-to-check messages
    std::size_t truth_violations = 0;
};

/// Solve one parity check for its target variable: given the other incident
/// variables' affine spaces A_k with coefficients h_k, the target lies in
/// h_out^{-1} (-sum_k h_k A_k). Linear inputs give a linear output.
inline AffineSubspace check_update(
    const std::vector<std::pair<AffineSubspace, Matrix>>& incoming, const Matrix& out_coeff) {
    const std::size_t m = out_coeff.rows();
    const std::uint32_t q = out_coeff.field();
    AffineSubspace acc = AffineSubspace::point(Vec(m, 0), q);
    for (const auto& [space, coeff] : incoming) {
        acc = affine_sum(acc, affine_map(coeff, space));
    }
    return affine_map(inverse(out_coeff), affine_neg(acc));
}

/// Intersect the channel space with all incoming check messages. An empty
/// intersection signals an inconsistency (nullopt), not a fault.
inline std::optional<AffineSubspace> var_update(const AffineSubspace& channel,
                                                const std::vector<AffineSubspace>& incoming) {
    std::optional<AffineSubspace> acc = channel;
    for (const auto& u : incoming) {
        acc = affine_intersect(*acc, u);
        if (!acc) return std::nullopt;
    }
    return acc;
}

namespace detail {

struct EdgeRef {
    std::size_t check;
    std::size_t slot;  // index within code.rows[check]
};

inline std::vector<std::vector<EdgeRef>> variable_adjacency(const ParityCheckCode& code) {
    std::vector<std::vector<EdgeRef>> adj(code.n_vars);
    for (std::size_t i = 0; i < code.n_checks; ++i) {
        for (std::size_t k = 0; k < code.rows[i].size(); ++k) {
            adj[code.rows[i][k].var].push_back(EdgeRef{i, k});
        }
    }
    return adj;
}

inline void check_outputs(const ParityCheckCode& code, const std::vector<ChannelOutput>& outputs) {
    if (outputs.size() != code.n_vars) {
        throw ShapeError("decode: one channel output per variable required");
    }
    for (const auto& out : outputs) {
        if (out.y.size() != code.m || out.noise_space.ambient_dim() != code.m ||
            out.noise_space.field() != code.q) {
            throw ShapeError("decode: channel output does not match code symbol space");
        }
    }
}

}  // namespace detail

/// Flooding-schedule sum-product decoding with affine-subspace messages.
/// Terminates as soon as every a-posteriori space is a single point
/// (Decoded), the messages stop changing or the iteration budget runs out
/// (Stalled), or an intersection empties (Inconsistent).
inline DecodeResult decode(const ParityCheckCode& code, const std::vector<ChannelOutput>& outputs,
                           const DecoderConfig& cfg = {}) {
    if (cfg.max_iterations < 1) throw ParamError("max_iterations must be at least 1");
    detail::check_outputs(code, outputs);
    const std::uint32_t q = code.q;
    const std::size_t m = code.m;
    const auto var_adj = detail::variable_adjacency(code);

    std::vector<AffineSubspace> channel(code.n_vars);
    for (std::size_t v = 0; v < code.n_vars; ++v) channel[v] = received_affine(outputs[v]);

    // Per-edge inverse coefficients, indexed like code.rows.
    std::vector<std::vector<Matrix>> inv_coeff(code.n_checks);
    for (std::size_t i = 0; i < code.n_checks; ++i) {
        inv_coeff[i].reserve(code.rows[i].size());
        for (const auto& e : code.rows[i]) inv_coeff[i].push_back(inverse(e.coeff));
    }

    // var -> check messages, indexed by (check, slot); check -> var likewise.
    std::vector<std::vector<AffineSubspace>> msg_vc(code.n_checks);
    std::vector<std::vector<AffineSubspace>> msg_cv(code.n_checks);
    for (std::size_t i = 0; i < code.n_checks; ++i) {
        msg_vc[i].resize(code.rows[i].size());
        msg_cv[i].resize(code.rows[i].size());
        for (std::size_t k = 0; k < code.rows[i].size(); ++k) {
            msg_vc[i][k] = channel[code.rows[i][k].var];
        }
    }

    DecodeResult res;
    std::vector<AffineSubspace> posterior = channel;

    const auto count_truth_violations = [&](const AffineSubspace& s, std::size_t v) {
        if (cfg.truth && !s.contains((*cfg.truth)[v])) ++res.truth_violations;
    };
    const auto mean_msg_dim = [&]() {
        double total = 0.0;
        std::size_t edges = 0;
        for (const auto& row : msg_vc) {
            for (const auto& msg : row) total += static_cast<double>(msg.dim());
            edges += row.size();
        }
        return edges == 0 ? 0.0 : total / (static_cast<double>(edges) * static_cast<double>(m));
    };
    const auto finish = [&](DecodeStatus status, std::size_t iters) {
        res.status = status;
        res.iterations_used = iters;
        res.final_dims.resize(code.n_vars);
        for (std::size_t v = 0; v < code.n_vars; ++v) res.final_dims[v] = posterior[v].dim();
        if (status == DecodeStatus::Decoded) {
            std::vector<Vec> word(code.n_vars);
            for (std::size_t v = 0; v < code.n_vars; ++v) word[v] = posterior[v].offset();
            res.decoded_word = std::move(word);
        }
        res.posteriors = std::move(posterior);
        return res;
    };

    if (cfg.track_dimensions) res.dim_trace.push_back(mean_msg_dim());
    if (cfg.truth) {
        for (std::size_t v = 0; v < code.n_vars; ++v) count_truth_violations(channel[v], v);
    }
    if (std::all_of(posterior.begin(), posterior.end(),
                    [](const AffineSubspace& s) { return s.is_point(); })) {
        return finish(DecodeStatus::Decoded, 0);
    }

    std::vector<AffineSubspace> prefix, suffix;
    for (std::size_t iter = 1; iter <= cfg.max_iterations; ++iter) {
        // Check sweep: leave-one-out Minkowski sums via prefix/suffix.
        for (std::size_t i = 0; i < code.n_checks; ++i) {
            const auto& row = code.rows[i];
            const std::size_t deg = row.size();
            std::vector<AffineSubspace> mapped(deg);
            for (std::size_t k = 0; k < deg; ++k) {
                mapped[k] = affine_map(row[k].coeff, msg_vc[i][k]);
            }
            const AffineSubspace zero_pt = AffineSubspace::point(Vec(m, 0), q);
            prefix.assign(deg + 1, zero_pt);
            suffix.assign(deg + 1, zero_pt);
            for (std::size_t k = 0; k < deg; ++k) {
                prefix[k + 1] = affine_sum(prefix[k], mapped[k]);
            }
            for (std::size_t k = deg; k-- > 0;) {
                suffix[k] = affine_sum(suffix[k + 1], mapped[k]);
            }
            for (std::size_t k = 0; k < deg; ++k) {
                const AffineSubspace others = affine_sum(prefix[k], suffix[k + 1]);
                msg_cv[i][k] = affine_map(inv_coeff[i][k], affine_neg(others));
                count_truth_violations(msg_cv[i][k], row[k].var);
            }
        }

        // Variable sweep: leave-one-out intersections, channel space always in.
        bool changed = false;
        for (std::size_t v = 0; v < code.n_vars; ++v) {
            const auto& edges = var_adj[v];
            const std::size_t deg = edges.size();
            prefix.assign(deg + 1, channel[v]);
            suffix.assign(deg + 1, AffineSubspace(Vec(m, 0), Subspace::full(m, q)));
            for (std::size_t k = 0; k < deg; ++k) {
                auto next = affine_intersect(prefix[k], msg_cv[edges[k].check][edges[k].slot]);
                if (!next) return finish(DecodeStatus::Inconsistent, iter);
                prefix[k + 1] = std::move(*next);
            }
            for (std::size_t k = deg; k-- > 0;) {
                auto next = affine_intersect(suffix[k + 1], msg_cv[edges[k].check][edges[k].slot]);
                if (!next) return finish(DecodeStatus::Inconsistent, iter);
                suffix[k] = std::move(*next);
            }
            posterior[v] = prefix[deg];
            count_truth_violations(posterior[v], v);
            for (std::size_t k = 0; k < deg; ++k) {
                auto out = affine_intersect(prefix[k], suffix[k + 1]);
                if (!out) return finish(DecodeStatus::Inconsistent, iter);
                count_truth_violations(*out, v);
                AffineSubspace& slot = msg_vc[edges[k].check][edges[k].slot];
                if (!(slot == *out)) {
                    slot = std::move(*out);
                    changed = true;
                }
            }
        }

        if (cfg.track_dimensions) res.dim_trace.push_back(mean_msg_dim());
        if (std::all_of(posterior.begin(), posterior.end(),
                        [](const AffineSubspace& s) { return s.is_point(); })) {
            return finish(DecodeStatus::Decoded, iter);
        }
        if (!changed) return finish(DecodeStatus::Stalled, iter);
    }
    return finish(DecodeStatus::Stalled, cfg.max_iterations);
}

/// Peeling decoder: repeatedly fix variables whose affine space is a single
/// point, substitute them into their checks, and let any check with one
/// unresolved variable pin that variable through its coefficient inverse.
inline DecodeResult peeling_decode(const ParityCheckCode& code,
                                   const std::vector<ChannelOutput>& outputs,
                                   const DecoderConfig& cfg = {}) {
    if (cfg.max_iterations < 1) throw ParamError("max_iterations must be at least 1");
    detail::check_outputs(code, outputs);
    const std::uint32_t q = code.q;
    const std::size_t m = code.m;
    const auto var_adj = detail::variable_adjacency(code);

    std::vector<AffineSubspace> space(code.n_vars);
    std::vector<bool> fixed(code.n_vars, false), substituted(code.n_vars, false);
    for (std::size_t v = 0; v < code.n_vars; ++v) {
        space[v] = received_affine(outputs[v]);
        fixed[v] = space[v].is_point();
    }
    std::vector<Vec> acc(code.n_checks, Vec(m, 0));  // sum of coeff * value over fixed vars
    std::vector<std::size_t> active(code.n_checks);
    for (std::size_t i = 0; i < code.n_checks; ++i) active[i] = code.rows[i].size();

    DecodeResult res;
    const auto finish = [&](DecodeStatus status, std::size_t rounds) {
        res.status = status;
        res.iterations_used = rounds;
        res.final_dims.resize(code.n_vars);
        for (std::size_t v = 0; v < code.n_vars; ++v) res.final_dims[v] = space[v].dim();
        if (status == DecodeStatus::Decoded) {
            std::vector<Vec> word(code.n_vars);
            for (std::size_t v = 0; v < code.n_vars; ++v) word[v] = space[v].offset();
            res.decoded_word = std::move(word);
        }
        res.posteriors = std::move(space);
        return res;
    };

    std::size_t rounds = 0;
    for (bool changed = true; changed && rounds < cfg.max_iterations;) {
        changed = false;
        ++rounds;
        if (cfg.truth) {
            for (std::size_t v = 0; v < code.n_vars; ++v) {
                if (!space[v].contains((*cfg.truth)[v])) ++res.truth_violations;
            }
        }
        for (std::size_t v = 0; v < code.n_vars; ++v) {
            if (!fixed[v] || substituted[v]) continue;
            substituted[v] = true;
            changed = true;
            const Vec& value = space[v].offset();
            for (const auto& [check, slot] : var_adj[v]) {
                acc[check] = vec_add(acc[check], mat_vec(code.rows[check][slot].coeff, value), q);
                --active[check];
            }
        }
        for (std::size_t i = 0; i < code.n_checks; ++i) {
            if (active[i] == 0) {
                if (!is_zero_vec(acc[i])) return finish(DecodeStatus::Inconsistent, rounds);
                continue;
            }
            if (active[i] != 1) continue;
            std::size_t slot = code.rows[i].size();
            for (std::size_t k = 0; k < code.rows[i].size(); ++k) {
                if (!substituted[code.rows[i][k].var]) {
                    slot = k;
                    break;
                }
            }
            const std::size_t v = code.rows[i][slot].var;
            if (fixed[v]) continue;  // fixed this round, substitution pending
            const Vec point = mat_vec(inverse(code.rows[i][slot].coeff), vec_neg(acc[i], q));
            if (!space[v].contains(point)) return finish(DecodeStatus::Inconsistent, rounds);
            space[v] = AffineSubspace::point(point, q);
            fixed[v] = true;
            changed = true;
        }
    }
    const bool all_fixed = std::all_of(fixed.begin(), fixed.end(), [](bool b) { return b; });
    return finish(all_fixed ? DecodeStatus::Decoded : DecodeStatus::Stalled, rounds);
}

/// Exact marginalization oracle for tiny instances: enumerate the product of
/// the received cosets, keep assignments satisfying every check, and report
/// the values each variable takes among survivors. Guarded by a hard bound
/// on the product of coset sizes.
inline std::vector<std::vector<Vec>> brute_force_marginal(
    const ParityCheckCode& code, const std::vector<ChannelOutput>& outputs,
    double max_assignments = static_cast<double>(1u << 20)) {
    detail::check_outputs(code, outputs);
    const std::uint32_t q = code.q;

    double total = 1.0;
    std::vector<std::vector<Vec>> points(code.n_vars);
    for (std::size_t v = 0; v < code.n_vars; ++v) {
        points[v] = received_affine(outputs[v]).enumerate_points();
        total *= static_cast<double>(points[v].size());
        if (total > max_assignments) {
            throw InstanceTooLargeError("product of coset sizes exceeds the enumeration bound");
        }
    }

    std::vector<std::set<Vec>> compatible(code.n_vars);
    std::vector<std::size_t> idx(code.n_vars, 0);
    for (;;) {
        bool ok = true;
        for (std::size_t i = 0; i < code.n_checks && ok; ++i) {
            Vec s(code.m, 0);
            for (const auto& e : code.rows[i]) {
                s = vec_add(s, mat_vec(e.coeff, points[e.var][idx[e.var]]), q);
            }
            ok = is_zero_vec(s);
        }
        if (ok) {
            for (std::size_t v = 0; v < code.n_vars; ++v) {
                compatible[v].insert(points[v][idx[v]]);
            }
        }
        std::size_t k = 0;
        while (k < code.n_vars && ++idx[k] == points[k].size()) idx[k++] = 0;
        if (k == code.n_vars) break;
    }

    std::vector<std::vector<Vec>> out(code.n_vars);
    for (std::size_t v = 0; v < code.n_vars; ++v) {
        out[v].assign(compatible[v].begin(), compatible[v].end());
    }
    return out;
}

}  // namespace subldpc

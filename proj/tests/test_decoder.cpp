#include <gtest/gtest.h>

#include "subldpc/decoder.hpp"
#include "test_util.hpp"

using namespace subldpc;

namespace {

ParityCheckCode single_check_code(std::uint32_t q, std::size_t m,
                                  std::vector<Matrix> coeffs) {
    ParityCheckCode code;
    code.q = q;
    code.m = m;
    code.n_checks = 1;
    code.n_vars = coeffs.size();
    std::vector<CheckEntry> row;
    for (std::size_t v = 0; v < coeffs.size(); ++v) {
        row.push_back(CheckEntry{v, std::move(coeffs[v])});
    }
    code.rows.push_back(std::move(row));
    return code;
}

std::vector<ChannelOutput> noiseless_outputs(const std::vector<Vec>& word, std::uint32_t q) {
    std::vector<ChannelOutput> outs;
    for (const Vec& y : word) {
        outs.push_back(ChannelOutput{y, Subspace::zero(y.size(), q)});
    }
    return outs;
}

}  // namespace

TEST(CheckUpdate, SinglePointIdentityOverF2) {
    const Vec v{1, 0};
    const Matrix i2 = Matrix::identity(2, 2);
    const auto out = check_update({{AffineSubspace::point(v, 2), i2}}, i2);
    EXPECT_EQ(out, AffineSubspace::point(v, 2));  // -1 = 1 in F_2
}

TEST(CheckUpdate, FullSpaceAbsorbs) {
    Rng rng(401);
    const Matrix i3 = Matrix::identity(3, 2);
    const auto out = check_update(
        {{AffineSubspace::point(Vec{1, 0, 1}, 2), i3},
         {AffineSubspace(Vec(3, 0), Subspace::full(3, 2)), random_gl(3, 2, rng)}},
        random_gl(3, 2, rng));
    EXPECT_TRUE(out.direction().is_full());
}

TEST(CheckUpdate, TwoPointsOverF3) {
    const Matrix i1 = Matrix::identity(1, 3);
    const Vec a{1}, b{1};
    const auto out =
        check_update({{AffineSubspace::point(a, 3), i1}, {AffineSubspace::point(b, 3), i1}}, i1);
    EXPECT_EQ(out, AffineSubspace::point(Vec{1}, 3));  // -(1+1) = 1 mod 3
}

TEST(CheckUpdate, EmptyIncomingForcesZero) {
    Rng rng(409);
    const auto out = check_update({}, random_gl(2, 3, rng));
    EXPECT_EQ(out, AffineSubspace::point(Vec{0, 0}, 3));
}

TEST(CheckUpdate, SolvesTheCheckExactly) {
    // brute-force cross-check on a random 3-variable check over F_3
    Rng rng(419);
    const std::size_t m = 2;
    const std::uint32_t q = 3;
    std::vector<Matrix> h{random_gl(m, q, rng), random_gl(m, q, rng), random_gl(m, q, rng)};
    Vec x0{1, 2}, x1{0, 1};
    const AffineSubspace a0 = AffineSubspace::point(x0, q);
    const AffineSubspace a1(x1, uniform_random_subspace(m, 1, q, rng));
    const auto msg = check_update({{a0, h[0]}, {a1, h[1]}}, h[2]);
    // every x2 with h0 x0 + h1 x1' + h2 x2 = 0 for some x1' in a1 must be in msg
    for (const Vec& x1p : a1.enumerate_points()) {
        const Vec rhs = vec_neg(vec_add(mat_vec(h[0], x0), mat_vec(h[1], x1p), q), q);
        const Vec x2 = mat_vec(inverse(h[2]), rhs);
        EXPECT_TRUE(msg.contains(x2));
    }
    EXPECT_EQ(msg.dim(), a1.dim());
}

TEST(VarUpdate, NoIncomingKeepsChannel) {
    Rng rng(421);
    const AffineSubspace ch(Vec{1, 0}, uniform_random_subspace(2, 1, 2, rng));
    const auto out = var_update(ch, {});
    ASSERT_TRUE(out.has_value());
    EXPECT_EQ(*out, ch);
}

TEST(VarUpdate, PointInChannelPinsIt) {
    const Subspace line = Subspace::from_generators({{1, 0}}, 2, 2);
    const AffineSubspace ch(Vec{0, 1}, line);
    const Vec p{1, 1};
    ASSERT_TRUE(ch.contains(p));
    const auto out = var_update(ch, {AffineSubspace::point(p, 2)});
    ASSERT_TRUE(out.has_value());
    EXPECT_EQ(*out, AffineSubspace::point(p, 2));
}

TEST(VarUpdate, DisjointCosetsAreInconsistent) {
    const Subspace line = Subspace::from_generators({{1, 0}}, 2, 2);
    const auto out = var_update(AffineSubspace(Vec{0, 0}, line),
                                {AffineSubspace(Vec{0, 1}, line)});
    EXPECT_FALSE(out.has_value());
}

TEST(Decode, NoiselessDecodesInZeroIterations) {
    Rng rng(431);
    const ParityCheckCode code = build_regular(2, 4, 2, 3, 2, rng);
    std::vector<Vec> word(code.n_vars, Vec(code.m, 0));
    const DecodeResult res = decode(code, noiseless_outputs(word, code.q));
    EXPECT_EQ(res.status, DecodeStatus::Decoded);
    EXPECT_EQ(res.iterations_used, 0u);
    EXPECT_EQ(res.decoded_word, word);
}

TEST(Decode, SingleCheckHandCase) {
    // x1 + x2 = 0 over F_2^2; var1 known exactly, var2 a dim-1 coset
    const Matrix i2 = Matrix::identity(2, 2);
    ParityCheckCode code = single_check_code(2, 2, {i2, i2});
    const Vec y1{1, 0};
    const Subspace line = Subspace::from_generators({{0, 1}}, 2, 2);
    std::vector<ChannelOutput> outs;
    outs.push_back(ChannelOutput{y1, Subspace::zero(2, 2)});
    outs.push_back(ChannelOutput{vec_add(y1, Vec{0, 1}, 2), line});  // coset contains y1
    const DecodeResult res = decode(code, outs);
    EXPECT_EQ(res.status, DecodeStatus::Decoded);
    ASSERT_TRUE(res.decoded_word.has_value());
    EXPECT_EQ((*res.decoded_word)[1], y1);
}

TEST(Decode, AllZeroTransmissionKeepsMessagesLinear) {
    // with x = 0 every posterior coset has offset 0 in canonical form
    Rng rng(433);
    const ParityCheckCode code = build_regular(3, 6, 3, 4, 2, rng);
    const ChannelSpec spec(2, 4, 0.5);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<ChannelOutput> outs;
        for (std::size_t v = 0; v < code.n_vars; ++v) {
            outs.push_back(transmit(spec, Vec(4, 0), rng));
        }
        DecoderConfig cfg;
        cfg.max_iterations = 30;
        const DecodeResult res = decode(code, outs, cfg);
        EXPECT_NE(res.status, DecodeStatus::Inconsistent);
        for (const auto& p : res.posteriors) {
            EXPECT_TRUE(is_zero_vec(p.offset()));
        }
    }
}

TEST(Decode, TruthPreservationAndNoInconsistency) {
    Rng rng(439);
    for (int trial = 0; trial < 30; ++trial) {
        const std::uint32_t q = trial % 2 == 0 ? 2 : 3;
        const ParityCheckCode code = build_regular(2, 4, 3, 3, q, rng);
        const ChannelSpec spec(q, 3, rng.below(2) == 0 ? 1.0 / 3.0 : 2.0 / 3.0);
        std::vector<Vec> truth(code.n_vars, Vec(code.m, 0));
        std::vector<ChannelOutput> outs;
        for (std::size_t v = 0; v < code.n_vars; ++v) {
            outs.push_back(transmit(spec, truth[v], rng));
        }
        DecoderConfig cfg;
        cfg.truth = &truth;
        const DecodeResult res = decode(code, outs, cfg);
        EXPECT_EQ(res.truth_violations, 0u);
        EXPECT_NE(res.status, DecodeStatus::Inconsistent);
        if (res.status == DecodeStatus::Decoded) {
            EXPECT_EQ(*res.decoded_word, truth);
        }
    }
}

TEST(Decode, DimTraceIsMonotone) {
    Rng rng(443);
    const ParityCheckCode code = build_regular(3, 6, 4, 4, 2, rng);
    const ChannelSpec spec(2, 4, 0.5);
    std::vector<ChannelOutput> outs;
    for (std::size_t v = 0; v < code.n_vars; ++v) {
        outs.push_back(transmit(spec, Vec(4, 0), rng));
    }
    DecoderConfig cfg;
    cfg.track_dimensions = true;
    const DecodeResult res = decode(code, outs, cfg);
    ASSERT_GE(res.dim_trace.size(), 2u);
    for (std::size_t t = 1; t < res.dim_trace.size(); ++t) {
        EXPECT_LE(res.dim_trace[t], res.dim_trace[t - 1] + 1e-12);
    }
}

TEST(Decode, DegreeOneCheckForcesZero) {
    // a single-entry check h x = 0 pins its variable to 0 regardless of noise
    Rng rng(445);
    const Matrix h = random_gl(2, 2, rng);
    ParityCheckCode code = single_check_code(2, 2, {h});
    std::vector<ChannelOutput> outs{ChannelOutput{Vec{1, 1}, Subspace::full(2, 2)}};
    const DecodeResult res = decode(code, outs);
    EXPECT_EQ(res.status, DecodeStatus::Decoded);
    EXPECT_EQ((*res.decoded_word)[0], Vec({0, 0}));
}

TEST(Peeling, TruthTrackingReportsNoViolations) {
    Rng rng(447);
    for (int trial = 0; trial < 15; ++trial) {
        const ParityCheckCode code = build_regular(2, 4, 3, 3, 2, rng);
        const ChannelSpec spec(2, 3, 1.0 / 3.0);
        std::vector<Vec> truth(code.n_vars, Vec(code.m, 0));
        std::vector<ChannelOutput> outs;
        for (std::size_t v = 0; v < code.n_vars; ++v) {
            outs.push_back(transmit(spec, truth[v], rng));
        }
        DecoderConfig cfg;
        cfg.truth = &truth;
        const DecodeResult res = peeling_decode(code, outs, cfg);
        EXPECT_EQ(res.truth_violations, 0u);
        EXPECT_NE(res.status, DecodeStatus::Inconsistent);
    }
}

TEST(Peeling, NoiselessImmediateSuccess) {
    Rng rng(449);
    const ParityCheckCode code = build_regular(2, 4, 2, 2, 2, rng);
    std::vector<Vec> word(code.n_vars, Vec(code.m, 0));
    const DecodeResult res = peeling_decode(code, noiseless_outputs(word, code.q));
    EXPECT_EQ(res.status, DecodeStatus::Decoded);
    EXPECT_EQ(res.decoded_word, word);
}

TEST(Peeling, ResolvesAlongAChain) {
    // x1 + x2 = 0, x2 + x3 = 0 over F_2^2 with x1 known: fills in x2 then x3
    const Matrix i2 = Matrix::identity(2, 2);
    ParityCheckCode code;
    code.q = 2;
    code.m = 2;
    code.n_checks = 2;
    code.n_vars = 3;
    code.rows.push_back({CheckEntry{0, i2}, CheckEntry{1, i2}});
    code.rows.push_back({CheckEntry{1, i2}, CheckEntry{2, i2}});
    std::vector<ChannelOutput> outs;
    outs.push_back(ChannelOutput{Vec{0, 0}, Subspace::zero(2, 2)});
    outs.push_back(ChannelOutput{Vec{1, 0}, Subspace::full(2, 2)});
    outs.push_back(ChannelOutput{Vec{0, 1}, Subspace::full(2, 2)});
    const DecodeResult res = peeling_decode(code, outs);
    EXPECT_EQ(res.status, DecodeStatus::Decoded);
    const std::vector<Vec> expect{{0, 0}, {0, 0}, {0, 0}};
    EXPECT_EQ(*res.decoded_word, expect);
}

TEST(Peeling, NeverBeatsSumProduct) {
    // paired trials: peeling success implies SPA success
    Rng rng(457);
    std::size_t peel_wins = 0, spa_wins = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const ParityCheckCode code = build_regular(3, 6, 2, 3, 2, rng);
        const ChannelSpec spec(2, 3, rng.below(2) == 0 ? 1.0 / 3.0 : 2.0 / 3.0);
        std::vector<ChannelOutput> outs;
        for (std::size_t v = 0; v < code.n_vars; ++v) {
            outs.push_back(transmit(spec, Vec(code.m, 0), rng));
        }
        const bool peel = peeling_decode(code, outs).status == DecodeStatus::Decoded;
        const bool spa = decode(code, outs).status == DecodeStatus::Decoded;
        if (peel) {
            EXPECT_TRUE(spa);
            ++peel_wins;
        }
        if (spa) ++spa_wins;
    }
    EXPECT_GE(spa_wins, peel_wins);
}

TEST(BruteForce, NoChecksGivesReceivedCosets) {
    Rng rng(461);
    ParityCheckCode code;
    code.q = 2;
    code.m = 2;
    code.n_checks = 0;
    code.n_vars = 2;
    const ChannelSpec spec(2, 2, 0.5);
    std::vector<ChannelOutput> outs{transmit(spec, Vec{1, 0}, rng),
                                    transmit(spec, Vec{0, 0}, rng)};
    const auto sets = brute_force_marginal(code, outs);
    for (std::size_t v = 0; v < 2; ++v) {
        EXPECT_EQ(testutil::sorted_points(sets[v]),
                  testutil::sorted_points(received_affine(outs[v]).enumerate_points()));
    }
}

TEST(BruteForce, TruthAlwaysCompatible) {
    Rng rng(463);
    for (int trial = 0; trial < 20; ++trial) {
        const auto inst = testutil::random_tree_instance(rng);
        const auto sets = brute_force_marginal(inst.code, inst.outputs);
        for (std::size_t v = 0; v < inst.code.n_vars; ++v) {
            EXPECT_TRUE(std::find(sets[v].begin(), sets[v].end(), inst.truth[v]) !=
                        sets[v].end());
        }
    }
}

TEST(BruteForce, RejectsHugeInstances) {
    ParityCheckCode code;
    code.q = 2;
    code.m = 8;
    code.n_checks = 0;
    code.n_vars = 4;
    std::vector<ChannelOutput> outs(4, ChannelOutput{Vec(8, 0), Subspace::full(8, 2)});
    EXPECT_THROW(brute_force_marginal(code, outs), InstanceTooLargeError);
}

TEST(TreeExactness, SpaMatchesBruteForce) {
    Rng rng(467);
    for (int trial = 0; trial < 25; ++trial) {
        const auto inst = testutil::random_tree_instance(rng);
        const auto oracle = brute_force_marginal(inst.code, inst.outputs);
        const DecodeResult res = decode(inst.code, inst.outputs);
        ASSERT_EQ(res.posteriors.size(), inst.code.n_vars);
        for (std::size_t v = 0; v < inst.code.n_vars; ++v) {
            EXPECT_EQ(testutil::sorted_points(res.posteriors[v].enumerate_points()),
                      testutil::sorted_points(oracle[v]))
                << "variable " << v << " in trial " << trial;
        }
    }
}

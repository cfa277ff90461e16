#include <gtest/gtest.h>

#include <sstream>

#include "subldpc/code.hpp"
#include "subldpc/code_io.hpp"
#include "subldpc/decoder.hpp"

using namespace subldpc;

namespace {

// the 12 x 18 band pattern for (dl=4, dr=8, L=9): row r covers the columns
// of sections max(0, r-3) .. min(r, 8), two columns per section
bool coupled_489_cell(std::size_t r, std::size_t c) {
    const std::size_t s = c / 2;
    return s <= r && r <= s + 3;
}

}  // namespace

TEST(BaseMatrix, Coupled489MatchesBandPattern) {
    const BaseMatrix base = base_matrix_coupled(4, 8, 9);
    ASSERT_EQ(base.rows, 12u);
    ASSERT_EQ(base.cols, 18u);
    for (std::size_t r = 0; r < base.rows; ++r) {
        for (std::size_t c = 0; c < base.cols; ++c) {
            EXPECT_EQ(base.at(r, c), coupled_489_cell(r, c) ? 1u : 0u)
                << "cell (" << r << ", " << c << ")";
        }
    }
}

TEST(BaseMatrix, SmallestBand) {
    const BaseMatrix base = base_matrix_coupled(2, 4, 1);
    EXPECT_EQ(base.rows, 2u);
    EXPECT_EQ(base.cols, 2u);
    EXPECT_EQ(base.entries, (std::vector<std::uint32_t>{1, 1, 1, 1}));
}

TEST(BaseMatrix, WeightsFor362) {
    const BaseMatrix base = base_matrix_coupled(3, 6, 2);
    ASSERT_EQ(base.rows, 4u);
    ASSERT_EQ(base.cols, 4u);
    EXPECT_EQ(base.row_weight(0), 2u);
    EXPECT_EQ(base.row_weight(1), 4u);
    EXPECT_EQ(base.row_weight(2), 4u);
    EXPECT_EQ(base.row_weight(3), 2u);
    for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(base.col_weight(c), 3u);
}

TEST(BaseMatrix, RejectsBadDegrees) {
    EXPECT_THROW(base_matrix_coupled(3, 7, 4), ParamError);  // not divisible
    EXPECT_THROW(base_matrix_coupled(3, 3, 4), ParamError);  // ratio below 2
    EXPECT_THROW(base_matrix_coupled(3, 6, 0), ParamError);
}

TEST(Lift, TrivialLiftIsBaseItself) {
    Rng rng(301);
    const BaseMatrix base = base_matrix_coupled(3, 6, 2);
    const Matrix h = lift(base, 1, rng);
    ASSERT_EQ(h.rows(), base.rows);
    ASSERT_EQ(h.cols(), base.cols);
    for (std::size_t r = 0; r < base.rows; ++r)
        for (std::size_t c = 0; c < base.cols; ++c) EXPECT_EQ(h(r, c), base.at(r, c));
}

TEST(Lift, PreservesWeightsAndSize) {
    Rng rng(307);
    const BaseMatrix base = base_matrix_coupled(4, 8, 9);
    const Matrix h = lift(base, 8, rng);
    EXPECT_EQ(h.rows(), 96u);
    EXPECT_EQ(h.cols(), 144u);
    for (std::size_t c = 0; c < h.cols(); ++c) {
        std::size_t w = 0;
        for (std::size_t r = 0; r < h.rows(); ++r) w += h(r, c);
        EXPECT_EQ(w, base.col_weight(c / 8));
    }
    for (std::size_t r = 0; r < h.rows(); ++r) {
        std::size_t w = 0;
        for (std::size_t c = 0; c < h.cols(); ++c) w += h(r, c);
        EXPECT_EQ(w, base.row_weight(r / 8));
    }
}

TEST(BuildRegular, SmallestInstanceForcedByWeights) {
    Rng rng(311);
    const ParityCheckCode code = build_regular(2, 4, 1, 1, 2, rng);
    EXPECT_EQ(code.n_checks, 2u);
    EXPECT_EQ(code.n_vars, 4u);
    for (const auto& row : code.rows) {
        ASSERT_EQ(row.size(), 4u);
        for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(row[k].var, k);
    }
}

TEST(BuildRegular, DegreeRegularityAndEdgeCount) {
    Rng rng(313);
    const ParityCheckCode code = build_regular(3, 6, 10, 2, 2, rng);
    EXPECT_EQ(code.n_checks, 30u);
    EXPECT_EQ(code.n_vars, 60u);
    std::size_t edges = 0;
    std::vector<std::size_t> var_deg(code.n_vars, 0);
    for (const auto& row : code.rows) {
        EXPECT_EQ(row.size(), 6u);
        edges += row.size();
        std::set<std::size_t> vars_here;
        for (const auto& e : row) {
            ++var_deg[e.var];
            EXPECT_TRUE(vars_here.insert(e.var).second) << "duplicate incidence";
        }
    }
    EXPECT_EQ(edges, 180u);
    for (std::size_t d : var_deg) EXPECT_EQ(d, 3u);
}

TEST(BuildRegular, CoefficientsInvertible) {
    Rng rng(317);
    const ParityCheckCode code = build_regular(2, 4, 3, 3, 3, rng);
    EXPECT_NO_THROW(validate_code(code));
}

TEST(BuildRegular, RejectsBadParameters) {
    Rng rng(331);
    EXPECT_THROW(build_regular(3, 7, 2, 2, 2, rng), ParamError);
    EXPECT_THROW(build_regular(3, 6, 2, 2, 6, rng), ParamError);  // q not prime
}

TEST(BuildCoupled, SkeletonMatchesBaseForM1m1) {
    Rng rng(337);
    const ParityCheckCode code = build_coupled(4, 8, 9, 1, 1, 2, rng);
    const BaseMatrix base = base_matrix_coupled(4, 8, 9);
    ASSERT_EQ(code.n_checks, base.rows);
    ASSERT_EQ(code.n_vars, base.cols);
    for (std::size_t r = 0; r < base.rows; ++r) {
        std::set<std::size_t> vars;
        for (const auto& e : code.rows[r]) vars.insert(e.var);
        for (std::size_t c = 0; c < base.cols; ++c) {
            EXPECT_EQ(vars.count(c), base.at(r, c));
        }
    }
}

TEST(BuildCoupled, BlockDimensionsAndVariableDegree) {
    Rng rng(347);
    const ParityCheckCode code = build_coupled(4, 8, 9, 2, 2, 2, rng);
    EXPECT_EQ(code.n_checks, 24u);  // (L + dl - 1) M
    EXPECT_EQ(code.n_vars, 36u);    // (dr/dl) L M
    std::vector<std::size_t> var_deg(code.n_vars, 0);
    for (const auto& row : code.rows) {
        for (const auto& e : row) ++var_deg[e.var];
    }
    for (std::size_t d : var_deg) EXPECT_EQ(d, 4u);
}

TEST(BuildCoupled, BandSupport) {
    // check block i touches only variable sections in [i - dl + 1, i]
    Rng rng(349);
    const unsigned dl = 3, dr = 6, L = 5;
    const std::size_t M = 3;
    const ParityCheckCode code = build_coupled(dl, dr, L, M, 1, 2, rng);
    const std::size_t sect_cols = (dr / dl) * M;
    for (std::size_t i = 0; i < code.n_checks; ++i) {
        const std::size_t block = i / M;
        for (const auto& e : code.rows[i]) {
            const std::size_t section = e.var / sect_cols;
            EXPECT_LE(section, block);
            EXPECT_LE(block, section + dl - 1);
        }
    }
}

TEST(AllZeroIsCodeword, BothConstructions) {
    Rng rng(353);
    for (const ParityCheckCode& code :
         {build_regular(3, 6, 4, 2, 3, rng), build_coupled(2, 4, 3, 2, 2, 3, rng)}) {
        for (const auto& row : code.rows) {
            Vec s(code.m, 0);
            for (const auto& e : row) s = vec_add(s, mat_vec(e.coeff, Vec(code.m, 0)), code.q);
            EXPECT_TRUE(is_zero_vec(s));
        }
    }
}

TEST(DesignRate, RegularAndCoupled) {
    EXPECT_DOUBLE_EQ(design_rate(3, 6), 0.5);
    EXPECT_DOUBLE_EQ(design_rate(3, 6, 10), 1.0 - 0.5 * 1.2);
    // approaches the regular rate from below as L grows
    double prev = -1.0;
    for (unsigned L : {2u, 4u, 8u, 16u, 64u, 1024u}) {
        const double r = design_rate(3, 6, L);
        EXPECT_GT(r, prev);
        EXPECT_LT(r, design_rate(3, 6));
        prev = r;
    }
    EXPECT_NEAR(design_rate(3, 6, 100000), 0.5, 1e-4);
}

TEST(CodeIo, RoundTripIsIdentical) {
    Rng rng(359);
    ParityCheckCode code = build_coupled(2, 4, 3, 2, 2, 3, rng);
    code.meta.seed = 359;
    std::stringstream ss;
    write_code(ss, code);
    const ParityCheckCode back = read_code(ss);
    EXPECT_EQ(back.q, code.q);
    EXPECT_EQ(back.m, code.m);
    EXPECT_EQ(back.n_checks, code.n_checks);
    EXPECT_EQ(back.n_vars, code.n_vars);
    EXPECT_EQ(back.meta.seed, code.meta.seed);
    EXPECT_EQ(back.meta.dl, code.meta.dl);
    ASSERT_EQ(back.rows.size(), code.rows.size());
    for (std::size_t i = 0; i < code.rows.size(); ++i) {
        ASSERT_EQ(back.rows[i].size(), code.rows[i].size());
        for (std::size_t k = 0; k < code.rows[i].size(); ++k) {
            EXPECT_EQ(back.rows[i][k].var, code.rows[i][k].var);
            EXPECT_EQ(back.rows[i][k].coeff, code.rows[i][k].coeff);
        }
    }
    // and the serialized form itself is stable
    std::stringstream ss2;
    write_code(ss2, back);
    std::stringstream ss3;
    write_code(ss3, code);
    EXPECT_EQ(ss2.str(), ss3.str());
}

TEST(CodeIo, RejectsCorruptedCode) {
    Rng rng(367);
    ParityCheckCode code = build_regular(2, 4, 1, 2, 2, rng);
    auto j = code_to_json(code);
    j["rows"][0][0][1][0][0] = 0;  // may make the first coefficient singular
    j["rows"][0][0][1][0][1] = 0;
    j["rows"][0][0][1][1][0] = 0;
    j["rows"][0][0][1][1][1] = 0;
    EXPECT_THROW(code_from_json(j), ParamError);
}

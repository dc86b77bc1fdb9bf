#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include <json.hpp>
#include <sxor/analysis.hpp>

using namespace sxor;

namespace {

const Poly2 g1 = Poly2::from_mask(0xB);
const Poly2 g2 = Poly2::from_mask(0xD);

GenMatrix user(const PolyMatrix& m) {
    return GenMatrix(CodeSpec{CodeKind::User, m.rows(), m.cols(), 0, Poly2{}, {}}, m);
}

PolyMatrix permute_rows(const PolyMatrix& m, const std::vector<std::size_t>& perm) {
    PolyMatrix out(m.rows(), m.cols(), Poly2{});
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(perm[r], c);
    return out;
}

void expect_table(const ClassReport& rep, const auto& table) {
    ASSERT_EQ(rep.classes.size(), table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& c = rep.classes[i];
        EXPECT_EQ(c.rep, Sequence(table[i].rep.begin(), table[i].rep.end()));
        EXPECT_EQ(c.size(), 7u);
        EXPECT_EQ(c.metrics, (Metrics{table[i].l_max, table[i].l_sum, table[i].alpha})) << format_sequence(c.rep);
    }
}

} // namespace

TEST(Equivalence, ColumnAndRowPermutations) {
    const GenMatrix a = build_sxor(3, 7, g1);
    PolyMatrix cols(3, 7, Poly2{});
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 7; ++c) cols(r, c) = a(r, (c + 3) % 7);
    EXPECT_TRUE(matrices_equivalent(a, user(cols)));
    EXPECT_TRUE(matrices_equivalent(a, user(permute_rows(cols, {2, 0, 1}))));
}

TEST(Equivalence, DetectsDifferentEntries) {
    const GenMatrix a = build_sxor(3, 7, g1);
    PolyMatrix m = a.entries();
    m(1, 1) = Poly2::monomial(2);
    EXPECT_FALSE(matrices_equivalent(a, user(m)));
    EXPECT_FALSE(matrices_equivalent(build_sxor(3, 7, g1), build_sxor(3, 7, g2)));
    EXPECT_THROW(matrices_equivalent(build_sxor(2, 7, g1), a), InvalidArgument);
}

TEST(ShiftSequence, Wraps) {
    EXPECT_EQ(shift_sequence({1, 3, 4}, 1, 7), (Sequence{2, 4, 5}));
    EXPECT_EQ(shift_sequence({1, 3, 4}, 6, 7), (Sequence{7, 2, 3}));
    EXPECT_EQ(shift_sequence({7}, 1, 7), (Sequence{1}));
    EXPECT_THROW(shift_sequence({1}, 0, 7), InvalidArgument);
    EXPECT_THROW(shift_sequence({1}, 7, 7), InvalidArgument);
}

TEST(ShiftSequence, ShiftByOneRotatesColumns) {
    const GenMatrix a = build_systematic_sxor(3, 7, g1, {1, 3, 4});
    const GenMatrix b = build_systematic_sxor(3, 7, g1, {2, 4, 5});
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 7; ++c) EXPECT_EQ(b(r, (c + 1) % 7), a(r, c));
}

TEST(EquivalenceProperties, PermutingSequencePermutesRows) {
    std::mt19937_64 rng(107);
    for (int t = 0; t < 50; ++t) {
        const std::size_t k = 2 + rng() % 4;
        Sequence x(7);
        std::iota(x.begin(), x.end(), std::size_t{1});
        std::shuffle(x.begin(), x.end(), rng);
        x.resize(k);
        Sequence y = x;
        std::vector<std::size_t> perm(k);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::size_t i = 0; i < k; ++i) y[i] = x[perm[i]];
        const GenMatrix ax = build_systematic_sxor(k, 7, g1, x);
        const GenMatrix ay = build_systematic_sxor(k, 7, g1, y);
        ASSERT_EQ(ay.entries(), permute_rows(ax.entries(), perm));
        ASSERT_TRUE(matrices_equivalent(ax, ay));
        ASSERT_EQ(metrics(ax), metrics(ay));
    }
}

TEST(EquivalenceProperties, CyclicShiftsAreEquivalent) {
    for (const Poly2& g : {g1, g2})
        for (std::size_t k = 1; k <= 6; ++k)
            for_each_subset(7, k, [&](std::span<const std::size_t> idx) {
                Sequence x;
                for (auto i : idx) x.push_back(i + 1);
                const GenMatrix ax = build_systematic_sxor(k, 7, g, x);
                for (std::size_t s = 1; s < 7; ++s) {
                    const GenMatrix ay = build_systematic_sxor(k, 7, g, shift_sequence(x, s, 7));
                    ASSERT_TRUE(matrices_equivalent(ax, ay));
                    ASSERT_EQ(metrics(ax), metrics(ay));
                }
            });
}

TEST(Classes, PublishedTableForBothPolynomials) {
    const ClassReport r1 = enumerate_classes(3, 7, g1);
    EXPECT_TRUE(r1.cyclic_merge);
    EXPECT_EQ(r1.sequences_examined, 35u);
    expect_table(r1, reference::kClassesG1);
    expect_table(enumerate_classes(3, 7, g2), reference::kClassesG2);
}

TEST(Classes, MembersPartitionAllSequences) {
    for (std::size_t k = 1; k <= 7; ++k) {
        const ClassReport r = enumerate_classes(k, 7, g1);
        std::set<Sequence> seen;
        for (const auto& c : r.classes) {
            EXPECT_TRUE(std::find(c.members.begin(), c.members.end(), c.rep) != c.members.end());
            for (const auto& m : c.members) {
                EXPECT_TRUE(seen.insert(m).second);
                EXPECT_EQ(metrics(build_systematic_sxor(k, 7, g1, m)), c.metrics);
            }
        }
        EXPECT_EQ(seen.size(), r.sequences_examined);
    }
}

TEST(Classes, NoMergingWhenLengthIsNotFieldOrder) {
    const ClassReport r = enumerate_classes(3, 6, g1);
    EXPECT_FALSE(r.cyclic_merge);
    EXPECT_EQ(r.classes.size(), 20u);
    for (const auto& c : r.classes) EXPECT_EQ(c.size(), 1u);
}

TEST(Classes, RepresentativeIsMostCompactWindow) {
    const ClassReport r = enumerate_classes(2, 7, g1);
    ASSERT_EQ(r.classes.size(), 3u);
    EXPECT_EQ(r.classes[0].rep, (Sequence{1, 2}));
    EXPECT_EQ(r.classes[1].rep, (Sequence{1, 3}));
    EXPECT_EQ(r.classes[2].rep, (Sequence{1, 4}));
}

TEST(BestSystematic, PublishedCodes) {
    const BestCode b3 = best_systematic(3, 7, g1);
    EXPECT_EQ(b3.x, (Sequence{1, 3, 4}));
    EXPECT_EQ(b3.metrics, (Metrics{2, 6, 14}));
    for (const auto& row : reference::kSystematicSxorN7) {
        const BestCode b = best_systematic(row.k, 7, g1);
        EXPECT_EQ(b.metrics, (Metrics{row.l_max, row.l_sum, row.alpha})) << "K=" << row.k;
    }
}

TEST(Comparison, MatchesPublishedExceptOneTotal) {
    const ComparisonReport rep = compare_codes(7, g1, 2, 6);
    ASSERT_EQ(rep.rows.size(), 5u);
    const std::size_t sxor_sum[] = {10, 12, 12, 12, 12};
    const std::size_t sxor_alpha[] = {12, 24, 36, 48, 60};
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_EQ(rep.rows[i].sxor, (Metrics{2, sxor_sum[i], sxor_alpha[i]}));
        EXPECT_TRUE(rep.rows[i].published_zd.has_value());
    }
    ASSERT_EQ(rep.notes.size(), 1u);
    EXPECT_EQ(rep.notes[0], "sxor K=3: computed l_sum = 12, published 11");
}

TEST(Comparison, NoPublishedDataForOtherParameters) {
    const ComparisonReport rep = compare_codes(7, g2, 2, 3);
    for (const auto& r : rep.rows) EXPECT_FALSE(r.published_sxor.has_value());
    EXPECT_TRUE(rep.notes.empty());
    const auto j = nlohmann::json::parse(emit_comparison(rep, ReportFormat::Json));
    EXPECT_EQ(j["rows"].size(), 2u);
    EXPECT_FALSE(j["rows"][0].contains("zd_reference"));
}

TEST(Report, JsonSchema) {
    const auto j = nlohmann::json::parse(emit_report({enumerate_classes(3, 7, g1)}, ReportFormat::Json));
    EXPECT_EQ(j["K"], 3);
    EXPECT_EQ(j["N"], 7);
    EXPECT_EQ(j["g"], "0xb");
    ASSERT_EQ(j["classes"].size(), 5u);
    EXPECT_EQ(j["classes"][3]["rep"], nlohmann::json({1, 3, 4}));
    EXPECT_EQ(j["classes"][3]["size"], 7);
    EXPECT_EQ(j["classes"][3]["alpha"], 14);
    EXPECT_EQ(j["best"]["rep"], nlohmann::json({1, 3, 4}));
    EXPECT_EQ(j["best"]["l_sum"], 6);
}

TEST(Report, MultipleAndEmpty) {
    const auto j = nlohmann::json::parse(
        emit_report({enumerate_classes(3, 7, g1), enumerate_classes(3, 7, g2)}, ReportFormat::Json));
    ASSERT_TRUE(j.is_array());
    EXPECT_EQ(j.size(), 2u);
    EXPECT_EQ(j[1]["g"], "0xd");
    EXPECT_EQ(nlohmann::json::parse(emit_report({}, ReportFormat::Json)), nlohmann::json::array());
}

TEST(Report, Markdown) {
    const std::string md = emit_report({enumerate_classes(3, 7, g1)}, ReportFormat::Markdown);
    EXPECT_EQ(md.rfind("# Systematic SXOR equivalence classes\n", 0), 0u);
    EXPECT_NE(md.find("| (1,3,4) | 7 | 2 | 6 | 14 |"), std::string::npos) << md;
    EXPECT_NE(md.find("35 sequences, 5 classes after cyclic merging."), std::string::npos);
}

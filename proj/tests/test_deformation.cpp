#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace gpd;
using namespace gpd::testing;

namespace {

constexpr std::size_t V1 = 0, V2 = 1;

Lift<PrimeField> universal_lift(const PModule& v) { return universal_lift_from_witness(strong_gp_witness(v, 0)); }

// Relations evaluated on the full block matrices, independent of check_lift.
bool relations_hold(const Lift<PrimeField>& l) {
    const auto& alg = l.module.algebra();
    const auto& f = l.module.field();
    const std::size_t n = l.order * l.base_dim();
    for (const auto& rel : alg.relations) {
        PMatrix sum(f, n, n);
        for (const auto& term : rel.terms) {
            auto prod = PMatrix::identity(f, n);
            for (auto g : term.word) prod = prod * l.full_action(g);
            sum = sum + prod.scaled(f.from_int(term.coeff));
        }
        if (!sum.is_zero()) return false;
    }
    // t commutes with every generator
    for (std::size_t g = 0; g < alg.num_generators(); ++g)
        if (!(l.t_action() * l.full_action(g) == l.full_action(g) * l.t_action())) return false;
    return true;
}

TEST(TrivialLiftTest, Shapes) {
    auto alg = a2_dual();
    auto s2 = simple_module(alg, V2);
    for (std::size_t n = 1; n <= 3; ++n) {
        auto l = trivial_lift(s2, n);
        EXPECT_EQ(l.as_module().dim(), n * s2.dim());
        EXPECT_NO_THROW(check_lift(l));
    }
    EXPECT_TRUE(is_lift_split(trivial_lift(s2, 2)));
    EXPECT_THROW(trivial_lift(s2, 4), Error);
    try {
        is_lift_split(trivial_lift(s2, 3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::contract_violation);
    }
}

TEST(UniversalLiftTest, DualNumbers) {
    auto alg = a1_dual();
    auto k = simple_module(alg, 0);
    auto l = universal_lift(k);
    const auto eps = *alg->epsilon_generator();
    EXPECT_EQ(l.order, 2u);
    EXPECT_TRUE(l.block(eps, 0).is_zero());
    EXPECT_FALSE(l.block(eps, 1).is_zero());
    EXPECT_TRUE(relations_hold(l));
    EXPECT_NO_THROW(check_lift(l));
    EXPECT_FALSE(is_lift_split(l));
}

TEST(UniversalLiftTest, SimpleAtSink) {
    auto alg = a2_dual();
    auto s2 = simple_module(alg, V2);
    auto l = universal_lift(s2);
    EXPECT_EQ(l.base_dim(), 1u);
    EXPECT_TRUE(relations_hold(l));
    EXPECT_NO_THROW(check_lift(l));
    EXPECT_FALSE(is_lift_split(l));
    EXPECT_TRUE(is_isomorphic(l.as_module(), indecomposable_projective(alg, V2), 0));
}

TEST(UniversalLiftTest, ProjectiveCanonicalIsTrivial) {
    auto alg = a2_dual();
    for (std::size_t i = 0; i < 2; ++i) {
        auto p = indecomposable_projective(alg, i);
        auto l = universal_lift(p);
        EXPECT_NO_THROW(check_lift(l));
        EXPECT_TRUE(is_lift_split(l));
        EXPECT_TRUE(lifts_isomorphic(l, trivial_lift(p, 2)));
    }
}

TEST(ThirdOrderTest, Examples) {
    auto a2 = a2_dual();
    auto s2 = simple_module(a2, V2);
    auto ext = extend_to_third_order(trivial_lift(s2, 2));
    ASSERT_TRUE(ext);
    EXPECT_EQ(ext->order, 3u);
    EXPECT_NO_THROW(check_lift(*ext));
    EXPECT_FALSE(extend_to_third_order(universal_lift(s2)));

    auto a1 = a1_dual();
    EXPECT_FALSE(extend_to_third_order(universal_lift(simple_module(a1, 0))));
    EXPECT_THROW(extend_to_third_order(trivial_lift(s2, 1)), Error);
}

TEST(ThirdOrderTest, TrivialLiftsAlwaysExtend) {
    for (auto alg : {a1_dual(), a2_dual(), a3_dual(), kronecker_dual()}) {
        Rng rng(5);
        std::vector<PModule> modules{regular_module(alg)};
        for (std::size_t i = 0; i < alg->num_vertices(); ++i) modules.push_back(simple_module(alg, i));
        modules.push_back(random_torsionless_module(alg, rng));
        for (const auto& v : modules) {
            auto ext = extend_to_third_order(trivial_lift(v, 2));
            ASSERT_TRUE(ext);
            EXPECT_NO_THROW(check_lift(*ext));
        }
    }
}

TEST(TangentTest, Dimensions) {
    auto alg = a2_dual();
    auto s2 = simple_module(alg, V2);
    EXPECT_EQ(tangent_dimension(s2), 1u);
    EXPECT_EQ(tangent_dimension(indecomposable_projective(alg, V1)), 0u);
    EXPECT_EQ(tangent_dimension(direct_sum(s2, s2)), 4u);
}

TEST(LiftFromExtTest, ZeroCocycleIsTrivial) {
    auto alg = a2_dual();
    auto s2 = simple_module(alg, V2);
    auto e = ext1(s2, s2);
    ASSERT_EQ(e.dim, 1u);
    PMatrix zero(alg->field, e.basis[0].matrix.rows(), e.basis[0].matrix.cols());
    auto l = lift_from_ext(s2, ModuleMap<PrimeField>{zero});
    EXPECT_TRUE(is_lift_split(l));
    EXPECT_TRUE(lifts_isomorphic(l, trivial_lift(s2, 2)));
}

TEST(LiftFromExtTest, BasisCocycleMatchesUniversalLift) {
    for (auto [alg, vertex] : {std::pair{a2_dual(), V2}, std::pair{a1_dual(), std::size_t{0}}}) {
        const auto& f = alg->field;
        auto v = simple_module(alg, vertex);
        auto c = ext1(v, v).basis.at(0);
        auto universal = universal_lift(v);
        auto l = lift_from_ext(v, c);
        EXPECT_NO_THROW(check_lift(l));
        EXPECT_TRUE(relations_hold(l));
        EXPECT_TRUE(is_isomorphic(l.as_module(), universal.as_module(), 0));
        // Lifts carry phi, so classes differ by the k^* scaling of t; exactly
        // one scalar multiple of the basis class is the universal lift.
        std::size_t matches = 0;
        for (std::uint32_t lambda = 1; lambda < f.characteristic(); ++lambda)
            if (lifts_isomorphic(lift_from_ext(v, {c.matrix.scaled(lambda)}), universal)) ++matches;
        EXPECT_EQ(matches, 1u);
    }
}

TEST(LiftFromExtTest, ScaledClassesDoNotSplit) {
    auto alg = a2_dual();
    auto s2 = simple_module(alg, V2);
    auto c = ext1(s2, s2).basis.at(0);
    for (std::uint32_t lambda : {1u, 2u, 50u, 100u}) {
        auto l = lift_from_ext(s2, {c.matrix.scaled(lambda)});
        EXPECT_FALSE(is_lift_split(l));
    }
    EXPECT_FALSE(lifts_isomorphic(lift_from_ext(s2, {c.matrix.scaled(2)}), lift_from_ext(s2, c)));
}

TEST(LiftFromExtTest, RejectsNonCocycle) {
    auto alg = a2_dual();
    auto s2 = simple_module(alg, V2);
    EXPECT_THROW(lift_from_ext(s2, {PMatrix(alg->field, 2, 2)}), Error);
}

TEST(EnumerationTest, Counts) {
    EXPECT_EQ(enumerate_dual_number_deformations(simple_module(a1_dual(2), 0)), 2u);
    EXPECT_EQ(enumerate_dual_number_deformations(simple_module(a1_dual(3), 0)), 3u);
    EXPECT_EQ(enumerate_dual_number_deformations(simple_module(a2_dual(2), V2)), 2u);
    EXPECT_EQ(enumerate_dual_number_deformations(regular_module(a1_dual(2))), 1u);
}

TEST(EnumerationTest, BudgetExceeded) {
    auto alg = a2_dual(101);
    auto v = direct_sum(simple_module(alg, V2), simple_module(alg, V2));
    try {
        enumerate_dual_number_deformations(v, 1000);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::budget_exceeded);
        EXPECT_STREQ(e.what(), "search space too large");
    }
}

TEST(EnumerationTest, CardinalityMatchesTangentSpace) {
    std::size_t checked = 0;
    for (std::uint32_t p : {2u, 3u}) {
        for (auto alg : {a1_dual(p), a2_dual(p), kronecker_dual(p)}) {
            std::vector<PModule> modules;
            for (std::size_t i = 0; i < alg->num_vertices(); ++i) {
                modules.push_back(simple_module(alg, i));
                modules.push_back(indecomposable_projective(alg, i));
            }
            for (const auto& v : modules) {
                std::uint64_t expected = 1;
                for (std::size_t i = 0; i < tangent_dimension(v); ++i) expected *= p;
                try {
                    EXPECT_EQ(enumerate_dual_number_deformations(v), expected);
                    ++checked;
                } catch (const Error& e) {
                    ASSERT_EQ(e.code(), Errc::budget_exceeded);
                }
            }
        }
    }
    EXPECT_GE(checked, 15u);
}

TEST(ReportTest, SpecExamples) {
    auto alg = a2_dual();
    auto s2 = simple_module(alg, V2);
    auto r = deformation_report(s2, 0xDEC0DE, "S2");
    EXPECT_TRUE(r.is_gp);
    EXPECT_EQ(r.stable_end_dim, 1u);
    EXPECT_EQ(r.ext1_dim, 1u);
    ASSERT_TRUE(r.witness);
    EXPECT_FALSE(r.universal_lift_split);
    EXPECT_EQ(r.third_order_extension, ThirdOrder::none_exists);
    EXPECT_EQ(r.conclusion, Conclusion::R_is_dual_numbers);

    auto rigid = deformation_report(indecomposable_projective(alg, V1), 0xDEC0DE);
    EXPECT_EQ(rigid.ext1_dim, 0u);
    EXPECT_EQ(rigid.conclusion, Conclusion::R_is_k);
    EXPECT_EQ(rigid.third_order_extension, ThirdOrder::not_attempted);

    auto twice = deformation_report(direct_sum(s2, s2), 0xDEC0DE);
    EXPECT_EQ(twice.stable_end_dim, 4u);
    EXPECT_EQ(twice.conclusion, Conclusion::out_of_theorem_scope);
    EXPECT_EQ(twice.reason, "stable endomorphism ring has dimension 4");

    auto not_gp = deformation_report(simple_module(alg, V1), 0xDEC0DE);
    EXPECT_FALSE(not_gp.is_gp);
    EXPECT_EQ(not_gp.conclusion, Conclusion::out_of_theorem_scope);
}

TEST(ReportTest, SeedIndependentConclusion) {
    auto alg = a3_dual();
    Rng rng(9);
    for (int k = 0; k < 5; ++k) {
        auto v = random_torsionless_module(alg, rng);
        auto first = deformation_report(v, 1);
        for (std::uint64_t seed : {2u, 77u}) EXPECT_EQ(deformation_report(v, seed).conclusion, first.conclusion);
    }
}

TEST(ReportTest, RationalField) {
    RationalField q;
    auto alg = dual(quiver_a2(), q);
    auto r = deformation_report(simple_module(alg, V2), 0);
    EXPECT_EQ(r.conclusion, Conclusion::R_is_dual_numbers);
}

TEST(ReportTest, NeedsDualExtension) {
    auto alg = share(path_algebra(quiver_a2(), PrimeField(101)));
    EXPECT_THROW(deformation_report(simple_module(alg, V2), 0), Error);
}

}  // namespace

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace gpd;
using namespace gpd::testing;

namespace {

const PrimeField F101(101);

// Independent count: paths of Q starting at a vertex, by depth-first walk.
std::size_t paths_from(const Quiver& q, std::size_t v) {
    std::size_t count = 1;
    for (const auto& a : q.arrows())
        if (a.source == v) count += paths_from(q, a.target);
    return count;
}

std::size_t all_paths(const Quiver& q) {
    std::size_t n = 0;
    for (std::size_t v = 0; v < q.num_vertices(); ++v) n += paths_from(q, v);
    return n;
}

TEST(QuiverTest, RejectsCycles) {
    try {
        Quiver::from_labels({"1", "2"}, {{"a", "1", "2"}, {"b", "2", "1"}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::validation);
        EXPECT_STREQ(e.what(), "quiver has a directed cycle");
    }
    EXPECT_THROW(Quiver::from_labels({"1"}, {{"loop", "1", "1"}}), Error);
    EXPECT_THROW(Quiver({"1", "1"}, {}), Error);
    EXPECT_THROW(Quiver::from_labels({"1"}, {{"a", "1", "9"}}), Error);
}

TEST(PathAlgebraTest, Dimensions) {
    EXPECT_EQ(path_algebra(quiver_a1(), F101).dim(), 1u);
    auto a2 = path_algebra(quiver_a2(), F101);
    EXPECT_EQ(a2.dim(), 3u);
    EXPECT_EQ(a2.basis, (std::vector<std::string>{"e1", "e2", "a"}));
    EXPECT_EQ(path_algebra(quiver_kronecker(), F101).dim(), 4u);
    auto a3 = path_algebra(quiver_a3(), F101);
    EXPECT_EQ(a3.basis, (std::vector<std::string>{"e1", "e2", "e3", "a", "b", "ba"}));
    for (const auto& q : {quiver_a1(), quiver_a2(), quiver_a3(), quiver_kronecker()})
        EXPECT_EQ(path_algebra(q, F101).dim(), all_paths(q));
}

TEST(PathAlgebraTest, MultiplicationIsConcatenation) {
    auto a3 = path_algebra(quiver_a3(), F101);
    auto a = a3.basis_element(3), b = a3.basis_element(4), ba = a3.basis_element(5);
    EXPECT_EQ(a3.multiply(b, a), ba);
    EXPECT_EQ(a3.multiply(a, b), a3.zero_element());
    EXPECT_EQ(a3.multiply(a3.basis_element(1), a), a);  // e2 * a
    EXPECT_EQ(a3.multiply(a, a3.basis_element(0)), a);  // a * e1
}

TEST(DualExtensionTest, DoublesDimension) {
    auto k_eps = dual_number_extension(path_algebra(quiver_a1(), F101));
    EXPECT_EQ(k_eps.dim(), 2u);
    EXPECT_EQ(dual_number_extension(path_algebra(quiver_a2(), F101)).dim(), 6u);
    auto a3 = dual_number_extension(path_algebra(quiver_a3(), F101));
    EXPECT_EQ(a3.dim(), 12u);
    EXPECT_EQ(a3.generator_names.back(), "eps");
    EXPECT_EQ(a3.relations.front().name, "e1^2 = e1");
    EXPECT_EQ(a3.relations[a3.relations.size() - 3].name, "eps*e3 = e3*eps");
}

TEST(DualExtensionTest, RejectsSecondExtension) {
    auto once = dual_number_extension(path_algebra(quiver_a2(), F101));
    try {
        dual_number_extension(once);
        FAIL();
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "already extended");
    }
}

TEST(ValidateTest, AcceptsConstructedAlgebras) {
    for (const auto& q : {quiver_a1(), quiver_a2(), quiver_a3(), quiver_kronecker()}) {
        EXPECT_NO_THROW(validate(path_algebra(q, F101)));
        EXPECT_NO_THROW(validate(dual_number_extension(path_algebra(q, F101))));
    }
    EXPECT_NO_THROW(validate(dual_number_extension(path_algebra(quiver_a3(), RationalField{}))));
}

TEST(ValidateTest, CorruptedStructureConstant) {
    auto alg = dual_number_extension(path_algebra(quiver_a2(), F101));
    alg.products[2][0] = {{2, 2}};  // a * e1 = 2a
    try {
        validate(alg);
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("associativity fails"), std::string::npos) << e.what();
    }
}

TEST(ValidateTest, ZeroedUnit) {
    auto alg = dual_number_extension(path_algebra(quiver_a2(), F101));
    alg.unit.assign(alg.dim(), 0);
    try {
        validate(alg);
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("unit law"), std::string::npos) << e.what();
    }
}

TEST(ValidateTest, NonCentralEpsilon) {
    auto alg = dual_number_extension(path_algebra(quiver_a2(), F101));
    // eps*e1 := 0 while e1*eps stays nonzero; keep associativity out of the way
    // by checking the generator element directly.
    alg.generator_elements.back()[3] = 0;  // drop the eps*e1 component of eps
    EXPECT_THROW(validate(alg), Error);
}

TEST(ProjectiveTest, Dimensions) {
    auto alg = a2_dual();
    EXPECT_EQ(indecomposable_projective(alg, 1).dim(), 2u);
    EXPECT_EQ(indecomposable_projective(alg, 0).dim(), 4u);
    EXPECT_EQ(indecomposable_projective(a1_dual(), 0).dim(), 2u);
    EXPECT_THROW(indecomposable_projective(alg, 2), Error);
}

TEST(ProjectiveTest, DimensionsMatchPathCount) {
    for (const auto& q : {quiver_a1(), quiver_a2(), quiver_a3(), quiver_kronecker()}) {
        auto alg = dual(q, F101);
        std::size_t total = 0;
        for (std::size_t v = 0; v < q.num_vertices(); ++v) {
            auto p = indecomposable_projective(alg, v);
            EXPECT_EQ(p.dim(), 2 * paths_from(q, v));
            EXPECT_NO_THROW(check_module(p));
            total += p.dim();
        }
        EXPECT_EQ(total, alg->dim());
    }
}

TEST(RegularModuleTest, SatisfiesRelations) {
    for (const auto& q : {quiver_a1(), quiver_a2(), quiver_a3(), quiver_kronecker()}) {
        EXPECT_NO_THROW(check_module(regular_module(dual(q, F101))));
        EXPECT_NO_THROW(check_module(regular_module(share(path_algebra(q, F101)))));
    }
}

}  // namespace

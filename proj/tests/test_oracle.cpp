#include <gtest/gtest.h>

#include <set>

#include "bideal.hpp"

using namespace bideal;

namespace {

TreeSchema S(const char* s) { return parseSchema(s); }

TEST(Budget, Validation) {
    EXPECT_THROW((Budget{0, 1, 1}.validate()), ParseError);
    EXPECT_NO_THROW((Budget{1, 1, 1}.validate()));
}

TEST(Enumerate, ShortlexAndTruncated) {
    std::vector<Seq> us = enumerateSchema(TreeSchema::full(), {3, 2, 1000});
    EXPECT_EQ(us.size(), 1u + 3 + 9 + 27);
    EXPECT_TRUE(std::is_sorted(us.begin(), us.end(), shortlexLess));
    EXPECT_EQ(enumerateSchema(TreeSchema::full(), {3, 2, 7}).size(), 7u);
}

TEST(Enumerate, Queries) {
    std::vector<Seq> t = enumerateQuery(parseQuery("transversal(fan([];const(chain)))"), {4, 3, 200});
    EXPECT_EQ(t, (std::vector<Seq>{{0, 0}, {1, 0}, {2, 0}, {3, 0}}));
    std::vector<Seq> u = enumerateQuery(parseQuery("union(finset{<2>,<0,0>},chain)"), {2, 3, 200});
    EXPECT_EQ(u, (std::vector<Seq>{{0}, {2}, {0, 0}}));
}

TEST(ExplicitDerivative, Examples) {
    EXPECT_EQ(explicitDerivative(TreeSchema::chain(), {}), (TreeRank{Ordinal::nat(1), true}));
    EXPECT_EQ(explicitDerivative(TreeSchema::full(), {}), (TreeRank{Ordinal{}, false}));
    EXPECT_EQ(explicitDerivative(S("fan([];const(chain))"), {}), (TreeRank{Ordinal::nat(2), true}));
    EXPECT_THROW(explicitDerivative(S("fan([];qdiag(w))"), {}), QuotientOverflow);
    EXPECT_THROW(explicitDerivative(compileCanonical({FormKind::P, Ordinal::nat(9)}), {6, 6, 4}), QuotientOverflow);
}

TEST(ExplicitDerivative, AgreesOnSmallSchemas) {
    std::vector<TreeSchema> all = gen::allSchemas(5);
    EXPECT_GT(all.size(), 3000u);
    for (const auto& t : all) EXPECT_EQ(explicitDerivative(t, {6, 6, 64}), treeRank(t)) << t.key();
}

TEST(Witness, Checks) {
    EXPECT_TRUE(checkDominating(EventuallyPeriodic::constant(1), parseQuery("spine([];const(chain))"), {8, 8, 200}));
    EXPECT_FALSE(checkDominating(EventuallyPeriodic::constant(0), parseQuery("fan([];const(eps))"), {8, 8, 200}));
    EmbeddingWitness identity{{}, {}, TreeSchema::full(), false, "identity"};
    EXPECT_TRUE(checkEmbedding(identity, {8, 8, 200}));
    EmbeddingWitness collapsing{{}, {}, TreeSchema::chain(), false, "bogus"};
    EXPECT_FALSE(checkEmbedding(collapsing, {4, 4, 50}));
    UnboundedFamily flat{0, [](std::uint64_t) { return Seq{0}; }, "constant"};
    EXPECT_FALSE(checkUnbounded(flat, parseQuery("fan([];const(eps))"), {8, 8, 20}));
}

TEST(Orthogonality, FiniteIntersection) {
    QueryTerm chainBlock = parseQuery("fan([chain];const(empty))");
    QueryTerm transversal = parseQuery("transversal(fan([];const(chain)))");
    EXPECT_TRUE(checkFiniteIntersection(chainBlock, transversal));
    EXPECT_TRUE(checkFiniteIntersection(parseQuery("spine([];const(chain))"), parseQuery("fan([];const(eps))")));
    EXPECT_THROW(checkFiniteIntersection(transversal, chainBlock), InvariantViolation);
}

TEST(Laws, OracleLawsHold) {
    for (const auto& law : laws::oracleLaws()) {
        LawResult r = runLaw(law, 53, 0, 150);
        EXPECT_EQ(r.failures, 0u) << law.name << ": " << r.firstCounterexample;
    }
}

}  // namespace

#include <gtest/gtest.h>

#include "bideal.hpp"

using namespace bideal;

namespace {

QueryTerm Qy(const char* s) { return parseQuery(s); }
IdealExpr E(const char* s) { return parseIdeal(s); }

const char* kBlock0 = "fan([chain];const(empty))";

TEST(Subset, Examples) {
    EXPECT_EQ(subsetOf(Qy("finset{<0,0>}"), TreeSchema::chain()).verdict, Tri::Yes);
    EXPECT_EQ(subsetOf(Qy("finset{<0>,<1>}"), TreeSchema::chain()).verdict, Tri::No);
    EXPECT_EQ(subsetOf(TreeSchema::chain(), TreeSchema::full()).verdict, Tri::Yes);
    Containment c = subsetOf(TreeSchema::chain(), parseSchema("fan([];const(eps))"));
    EXPECT_EQ(c.verdict, Tri::No);
    ASSERT_TRUE(c.counterexample.has_value());
    EXPECT_TRUE(memberElem(*c.counterexample, TreeSchema::chain()));
    EXPECT_FALSE(memberElem(*c.counterexample, parseSchema("fan([];const(eps))")));
    EXPECT_EQ(subsetOf(parseSchema(kBlock0), compile(E("P(1)"))).verdict, Tri::Yes);
    EXPECT_EQ(subsetOf(Qy("transversal(fan([];const(chain)))"), compile(E("P(1)"))).verdict, Tri::Yes);
}

TEST(Predicates, Examples) {
    QueryTerm f = Qy("finset{<9,9,9>}");
    EXPECT_TRUE(qInWf(f));
    EXPECT_TRUE(qInId(f));
    QueryTerm t = Qy("transversal(fan([];const(chain)))");
    EXPECT_TRUE(qInWf(t));
    EXPECT_FALSE(qInId(t));
    QueryTerm u = Qy("union(chain,finset{<1>})");
    EXPECT_FALSE(qInWf(u));
    EXPECT_TRUE(qInId(u));
}

TEST(Membership, StandardCopy) {
    IdealExpr p1 = E("P(1)");
    QueryTerm block0 = Qy(kBlock0);
    EXPECT_FALSE(memberOf(block0, p1));
    EXPECT_TRUE(memberPerp(block0, p1));
    QueryTerm tr = Qy("transversal(fan([];const(chain)))");
    EXPECT_TRUE(memberOf(tr, p1));
    EXPECT_FALSE(memberPerp(tr, p1));
    EXPECT_TRUE(memberOf(Qy("finset{<0>,<0,0>,<0,0,0>}"), E("Q(0)")));
}

TEST(Membership, Preconditions) {
    EXPECT_THROW(memberOf(Qy("full"), E("P(1)")), NotASubset);
    EXPECT_THROW(memberOf(Qy("finset{<5>}"), E("P(1)")), NotASubset);
    try {
        memberOf(Qy("chain"), E("POW"));
        FAIL();
    } catch (const NotASubset& e) {
        EXPECT_EQ(e.exitCode(), 2);
    }
}

TEST(Frechet, Examples) {
    IdealExpr p1 = E("P(1)");
    EXPECT_EQ(frechetWitness(Qy(kBlock0), p1).text(), kBlock0);
    QueryTerm whole = QueryTerm::schema(compile(p1));
    QueryTerm w = frechetWitness(whole, p1);
    EXPECT_EQ(w.text(), kBlock0);
    EXPECT_TRUE(checkFrechet(w, whole, {8, 8, 200}));
    QueryTerm two = Qy("union(fan([chain];const(empty)),fan([empty,chain];const(empty)))");
    EXPECT_EQ(frechetWitness(two, p1).text(), kBlock0);
    EXPECT_THROW(frechetWitness(Qy("transversal(fan([];const(chain)))"), p1), NotPositive);
}

TEST(Frechet, SpineTargets) {
    for (const char* e : {"Q(1)", "Q(2)", "Q(w)", "P(3)", "PQ(1)", "P(w+1)"}) {
        QueryTerm q = QueryTerm::schema(compile(E(e)));
        if (memberOf(q, E(e))) continue;
        QueryTerm w = frechetWitness(q, E(e));
        EXPECT_TRUE(checkFrechet(w, q, {8, 8, 200})) << e << " gave " << w.text();
    }
}

TEST(IdWitness, Examples) {
    IdWitness c = idWitness(Qy("chain"));
    ASSERT_TRUE(c.dominated);
    EXPECT_EQ(c.branch, EventuallyPeriodic::constant(0));
    IdWitness f = idWitness(Qy("fan([];const(eps))"));
    ASSERT_FALSE(f.dominated);
    for (std::uint64_t n = 0; n < 5; ++n) EXPECT_EQ(f.family.member(n), (Seq{n}));
    IdWitness s = idWitness(Qy("spine([];const(chain))"));
    ASSERT_TRUE(s.dominated);
    EXPECT_EQ(s.branch, EventuallyPeriodic::constant(1));
    EXPECT_TRUE(checkIdWitness(s, Qy("spine([];const(chain))"), {8, 8, 200}));
    EXPECT_FALSE(checkDominating(EventuallyPeriodic::constant(0), Qy("fan([];const(eps))"), {8, 8, 200}));
}

TEST(Branch, Arithmetic) {
    EventuallyPeriodic a{{3}, {1, 2}}, b{{}, {2}};
    EXPECT_EQ(pointwiseMax(a, b).text(), "3,(2)^w");
    EXPECT_EQ(runningMax(EventuallyPeriodic{{0, 4}, {1}}).text(), "0,(4)^w");
    EXPECT_EQ(prepend({5}, EventuallyPeriodic::constant(0)).text(), "5,(0)^w");
    EXPECT_EQ(simplify(EventuallyPeriodic{{1, 2}, {1, 2, 1, 2}}).text(), "(1,2)^w");
}

TEST(Syntax, PrintParse) {
    for (const char* s : {"chain", "finset{<0>,<1,2>}", "transversal(fan([];const(chain)))", "union(chain,finset{<1>})",
                          "finset{}"})
        EXPECT_EQ(Qy(s).text(), s);
    EXPECT_EQ(Qy("finset{<1>,<0>,<1>}").text(), "finset{<0>,<1>}");
    EXPECT_THROW(Qy("transversal(chain)"), ParseError);
}

TEST(Laws, AllMembershipLawsHold) {
    for (const auto& law : laws::membershipLaws()) {
        LawResult r = runLaw(law, 31, 0, 100);
        EXPECT_EQ(r.failures, 0u) << law.name << ": " << r.firstCounterexample;
        EXPECT_GT(r.trials, 0u) << law.name;
    }
}

}  // namespace

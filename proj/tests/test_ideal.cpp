#include <gtest/gtest.h>

#include "bideal.hpp"

using namespace bideal;

namespace {

CanonicalForm C(FormKind k, const char* a) { return {k, parseOrdinal(a)}; }
std::string N(const char* e) { return toString(normalize(parseIdeal(e))); }

constexpr auto P = FormKind::P;
constexpr auto Q = FormKind::Q;
constexpr auto PQ = FormKind::PQ;

TEST(Combine, Examples) {
    EXPECT_EQ(combine(C(P, "w"), C(Q, "3")), C(P, "w"));
    EXPECT_EQ(combine(C(P, "2"), C(Q, "2")), C(PQ, "2"));
    EXPECT_EQ(combine(C(Q, "1"), C(Q, "1")), C(Q, "1"));
    EXPECT_EQ(combine(C(PQ, "1"), C(P, "1")), C(PQ, "1"));
    EXPECT_EQ(combine(C(Q, "0"), C(PQ, "w")), C(PQ, "w"));
}

TEST(Perp, Examples) {
    EXPECT_EQ(perpC(C(P, "5")), C(Q, "5"));
    EXPECT_EQ(perpC(C(PQ, "2")), C(PQ, "2"));
    EXPECT_EQ(perpC(C(Q, "0")), C(P, "0"));
}

TEST(Normalize, Examples) {
    EXPECT_EQ(N("omega(FIN)"), "P(1)");
    EXPECT_EQ(N("omega(perp(omega(FIN)))"), "P(2)");
    EXPECT_EQ(N("perp(omega(perp(omega(FIN))))"), "Q(2)");
    EXPECT_EQ(N("limsum(w)"), "P(w)");
    EXPECT_EQ(N("perp(perp(P(5)))"), "P(5)");
    EXPECT_EQ(N("FIN"), "FIN");
    EXPECT_EQ(N("POW"), "POW");
    EXPECT_EQ(N("omega(Q(3))"), "P(4)");
    EXPECT_EQ(N("omega(PQ(2))"), "P(3)");
    EXPECT_EQ(N("omega(P(w))"), "P(w)");
    EXPECT_EQ(N("mix(Q(w+5);limsum(w^2))"), "P(w^2)");
    EXPECT_EQ(N("sum(FIN,POW)"), "PQ(0)");
    EXPECT_EQ(N("PQ(2)"), "PQ(2)");
    EXPECT_THROW(normalize(parseIdeal("limsum(w+1)")), NotLimit);
}

TEST(Rank, Examples) {
    EXPECT_EQ(bRank(parseIdeal("FIN")), parseOrdinal("0"));
    EXPECT_EQ(bRank(parseIdeal("omega(Q(3))")), parseOrdinal("4"));
    EXPECT_EQ(bRank(parseIdeal("limsum(w*2)")), parseOrdinal("w*2"));
}

TEST(Iso, Examples) {
    EXPECT_FALSE(isoCheck(parseIdeal("P(1)"), parseIdeal("Q(1)")));
    EXPECT_TRUE(isoCheck(parseIdeal("sum(P(2),Q(1))"), parseIdeal("P(2)")));
    IdealExpr e = parseIdeal("mix(perp(POW),FIN;omega(Q(w)))");
    EXPECT_TRUE(isoCheck(e, e));
}

TEST(Syntax, PrintParse) {
    for (const char* s : {"FIN", "POW", "P(w+1)", "Q(0)", "perp(sum(FIN,P(2)))", "omega(omega(FIN))", "limsum(w^2)",
                          "mix(FIN,POW;limsum(w))", "mix(P(1);omega(FIN))"})
        EXPECT_EQ(toString(parseIdeal(s)), s);
    EXPECT_THROW(parseIdeal("mix(FIN;FIN)"), ParseError);
    EXPECT_THROW(parseIdeal("sum()"), ParseError);
    EXPECT_THROW(parseIdeal("P(w"), ParseError);
}

TEST(Laws, AllIdealLawsHold) {
    for (const auto& law : laws::idealLaws()) {
        LawResult r = runLaw(law, 11, 0, 200);
        EXPECT_EQ(r.failures, 0u) << law.name << ": " << r.firstCounterexample;
        EXPECT_EQ(r.trials, 200u) << law.name;
    }
}

TEST(Laws, NormalFormKindsOnly) {
    gen::Rng r(17);
    for (int i = 0; i < 200; ++i) {
        IdealExpr e = gen::ideal(r, 12);
        EXPECT_LE(e.size(), 12u);
        CanonicalForm c = normalize(e);
        EXPECT_EQ(normalize(toExpr(c)), c);
    }
}

}  // namespace

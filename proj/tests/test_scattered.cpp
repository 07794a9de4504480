#include <gtest/gtest.h>

#include "bideal.hpp"

using namespace bideal;

namespace {

LinTerm L(const char* s) { return parseLin(s); }
std::string classOf(const char* s) { return woClassify(L(s)).text(); }

std::string joined(const std::vector<Rational>& vs) {
    std::string s;
    for (const auto& v : vs) s += (s.empty() ? "" : " ") + toString(v);
    return s;
}

TEST(WoClassify, Examples) {
    EXPECT_EQ(classOf("N"), "POW");
    EXPECT_EQ(classOf("rev(N)"), "FIN");
    EXPECT_EQ(classOf("osum([];rev(N))"), "P(1)");
    EXPECT_EQ(classOf("cat(N,rev(N))"), "PQ(0)");
    EXPECT_EQ(classOf("QQ"), "NON-SCATTERED");
    EXPECT_EQ(classOf("rev(osum([];rev(N)))"), "Q(1)");
    EXPECT_EQ(classOf("osum([N];osum([];rev(N)))"), "P(1)");
    EXPECT_EQ(classOf("osum([];cat(N,rev(N)))"), "P(1)");
}

TEST(WoClassify, ScatteredCheck) {
    EXPECT_TRUE(scatteredCheck(L("rev(osum([];N))")));
    EXPECT_FALSE(scatteredCheck(L("cat(N,QQ)")));
    EXPECT_TRUE(scatteredCheck(L("N")));
}

TEST(SelfDual, Examples) {
    SelfDual n = woSelfDual(L("N"));
    EXPECT_EQ(n.reversed.text(), "rev(N)");
    EXPECT_EQ(n.cls.text(), "FIN");
    EXPECT_EQ(woSelfDual(L("osum([];rev(N))")).cls.text(), "Q(1)");
    SelfDual q = woSelfDual(L("QQ"));
    EXPECT_EQ(q.reversed.text(), "QQ");
    EXPECT_FALSE(q.cls.scattered);
    EXPECT_EQ(reverseTerm(L("cat(N,rev(N))")).text(), "cat(N,rev(N))");
    EXPECT_EQ(reverseTerm(L("rev(N)")).text(), "N");
}

TEST(Rationalize, Examples) {
    EXPECT_EQ(joined(rationalize(L("N"), 3)), "0 1 2");
    std::vector<Rational> r = rationalize(L("rev(N)"), 3);
    EXPECT_TRUE(r[0] > r[1] && r[1] > r[2]);
    std::vector<Rational> c = rationalize(L("cat(N,rev(N))"), 4);
    // Positions alternate between the parts: 0 and 2 from N, 1 and 3 from rev(N).
    EXPECT_LT(c[0], c[2]);
    EXPECT_GT(c[1], c[3]);
    EXPECT_LT(c[2], c[3]);
    std::vector<Rational> longer = rationalize(L("cat(N,rev(N))"), 9);
    EXPECT_TRUE(std::equal(c.begin(), c.end(), longer.begin()));
}

TEST(Rationalize, FaithfulOnSamples) {
    for (const char* s : {"N", "rev(N)", "cat(N,rev(N),N)", "osum([rev(N)];cat(N,rev(N)))", "QQ", "cat(QQ,rev(N))",
                          "rev(osum([];osum([];N)))"})
        EXPECT_TRUE(checkRationalize(L(s), 40)) << s;
}

TEST(Embedding, DenseImage) {
    for (const char* s : {"QQ", "rev(QQ)", "cat(N,rev(QQ))", "osum([N];cat(rev(N),QQ))"}) {
        WoClass c = woClassify(L(s));
        ASSERT_FALSE(c.scattered) << s;
        ASSERT_TRUE(c.embedding.has_value()) << s;
        EXPECT_TRUE(checkQEmbedding(*c.embedding, 12)) << s;
    }
}

TEST(Syntax, PrintParse) {
    for (const char* s : {"N", "QQ", "rev(N)", "cat(N,rev(N))", "osum([];N)", "osum([N,QQ];rev(N))"})
        EXPECT_EQ(L(s).text(), s);
    EXPECT_THROW(L("cat()"), ParseError);
    EXPECT_THROW(L("M"), ParseError);
}

TEST(Laws, AllScatteredLawsHold) {
    for (const auto& law : laws::scatteredLaws()) {
        LawResult r = runLaw(law, 47, 0, 200);
        EXPECT_EQ(r.failures, 0u) << law.name << ": " << r.firstCounterexample;
        EXPECT_GT(r.trials, 0u) << law.name;
    }
}

}  // namespace

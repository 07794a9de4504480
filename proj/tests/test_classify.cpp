#include <gtest/gtest.h>

#include "bideal.hpp"

using namespace bideal;

namespace {

TreeSchema S(const char* s) { return parseSchema(s); }

// Root rank of the compiled tree, worked out by hand from the recursion:
// R_P(k) = k/2 + 1 and R_Q(k) = (k+1)/2 for finite k; past a limit l,
// R_P(l+k) = l + (k+1)/2 and R_Q(l+k) = l + k/2.  Tree rank is R + 1.
Ordinal expectedTreeRank(FormKind k, const Ordinal& a) {
    auto [lambda, n] = splitFinite(a);
    std::uint64_t r;
    if (lambda.isZero())
        r = k == FormKind::P ? n / 2 + 1 : (n + 1) / 2;
    else
        r = k == FormKind::P ? (n + 1) / 2 : n / 2;
    return ordSucc(ordAdd(lambda, Ordinal::nat(r)));
}

TEST(Classify, Examples) {
    EXPECT_EQ(classify(TreeSchema::chain()).text(), "FIN");
    EXPECT_EQ(classify(S("fan([];const(chain))")).text(), "P(1)");
    EXPECT_EQ(classify(S("spine([];const(fan([];const(eps))))")).text(), "Q(1)");
    EXPECT_EQ(classify(S("fan([];const(eps))")).text(), "POW");
    EXPECT_EQ(classify(S("fan([chain,fan([];const(eps))];const(empty))")).text(), "PQ(0)");
    EXPECT_EQ(classify(S("fan([eps,eps];const(chain))")).text(), "P(1)");
    EXPECT_EQ(classify(TreeSchema::full()).text(), "NON-BOREL");
    EXPECT_EQ(classify(S("fan([chain];const(full))")).text(), "NON-BOREL");
    EXPECT_THROW(classify(S("fan([eps,eps];const(empty))")), FiniteSchema);
    EXPECT_THROW(classify(TreeSchema::empty()), FiniteSchema);
}

TEST(Classify, CompiledRoundTrip) {
    for (const char* e : {"FIN", "POW", "P(1)", "PQ(0)", "P(3)", "Q(4)", "PQ(2)", "P(w)", "Q(w)", "P(w+3)", "Q(w*2+1)",
                          "P(w^2)", "Q(w^w+2)", "PQ(w^2+w)"}) {
        CanonicalForm c = normalize(parseIdeal(e));
        TreeSchema t = compile(parseIdeal(e));
        TreeClass a = classify(t), d = classifyViaDerivative(t);
        EXPECT_TRUE(a.borel) << e;
        EXPECT_EQ(a.form, c) << e;
        EXPECT_TRUE(d.borel) << e;
        EXPECT_EQ(d.form, c) << e;
    }
}

TEST(Classify, NonBorelWitness) {
    for (const char* s : {"full", "root(full)", "fan([eps];const(full))", "spine([chain,full];const(eps))",
                          "spine([];const(fan([full];const(empty))))"}) {
        TreeSchema t = S(s);
        TreeClass a = classify(t), d = classifyViaDerivative(t);
        ASSERT_FALSE(a.borel) << s;
        ASSERT_FALSE(d.borel) << s;
        EXPECT_TRUE(checkEmbedding(*a.witness, {8, 8, 200})) << s;
        EXPECT_TRUE(checkEmbedding(*d.witness, {8, 8, 200})) << s;
        EXPECT_FALSE(treeRank(t).coreEmpty) << s;
    }
}

TEST(Classify, ScaffoldAbsorption) {
    // The generated tree of a fan of chains adds the root and the block roots.
    TreeSchema t = S("fan([];const(chain))");
    EXPECT_EQ(toString(scaffoldClass(t)), "POW");
    EXPECT_EQ(classifyViaDerivative(t).text(), "P(1)");
    // Points hung off the zero branch: every infinite subset generates it.
    TreeSchema sp = S("spine([];const(eps))");
    EXPECT_EQ(classify(sp).text(), "FIN");
    EXPECT_EQ(classifyViaDerivative(sp).text(), "FIN");
    EXPECT_EQ(toString(scaffoldClass(sp)), "FIN");
}

TEST(TreeRank, Examples) {
    EXPECT_EQ(treeRank(TreeSchema::chain()), (TreeRank{Ordinal::nat(1), true}));
    EXPECT_EQ(treeRank(TreeSchema::full()), (TreeRank{Ordinal{}, false}));
    EXPECT_EQ(treeRank(S("fan([];const(chain))")), (TreeRank{Ordinal::nat(2), true}));
    EXPECT_EQ(treeRank(TreeSchema::empty()), (TreeRank{Ordinal{}, true}));
    EXPECT_EQ(treeRank(TreeSchema::eps()), (TreeRank{Ordinal::nat(1), true}));
}

TEST(TreeRank, CompiledFormsMatchClosedForm) {
    gen::Rng r(8);
    for (int i = 0; i < 200; ++i) {
        CanonicalForm c = gen::canonical(r);
        if (c.kind == FormKind::PQ) continue;
        TreeRank tr = treeRank(compileCanonical(c));
        EXPECT_TRUE(tr.coreEmpty);
        EXPECT_EQ(tr.rank, expectedTreeRank(c.kind, c.rank)) << toString(c);
    }
}

TEST(TreeRank, ExplicitDerivativeOnCompiledFiniteRanks) {
    for (std::uint64_t n = 0; n < 8; ++n)
        for (FormKind k : {FormKind::P, FormKind::Q}) {
            TreeSchema t = compileCanonical({k, Ordinal::nat(n)});
            EXPECT_EQ(explicitDerivative(t, {}), treeRank(t)) << t.key();
            EXPECT_EQ(treeRank(t).rank, expectedTreeRank(k, Ordinal::nat(n)));
        }
}

TEST(Laws, AllTreeLawsHold) {
    for (const auto& law : laws::treeLaws()) {
        LawResult r = runLaw(law, 23, 0, 150);
        EXPECT_EQ(r.failures, 0u) << law.name << ": " << r.firstCounterexample;
        EXPECT_GT(r.trials, 0u) << law.name;
    }
}

}  // namespace

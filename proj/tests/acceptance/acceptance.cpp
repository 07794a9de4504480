// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <iostream>
#include <sstream>

#include "bideal.hpp"

using namespace bideal;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream note;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            note << "first failure: " << what << "; ";
        }
    }
};

const Budget kCheck{8, 8, 200};

bool isCanonicalKind(FormKind k) { return k == FormKind::P || k == FormKind::Q || k == FormKind::PQ; }

void canonicalForms(Outcome& o) {
    gen::Rng r(1001);
    for (int i = 0; i < 200; ++i) {
        IdealExpr e = gen::ideal(r, 12);
        try {
            CanonicalForm c = normalize(e);
            o.require(isCanonicalKind(c.kind) && e.size() <= 12, toString(e));
        } catch (const std::exception& ex) {
            o.require(false, toString(e) + " threw " + ex.what());
        }
    }
    struct Idem {
        FormKind big, small;
        bool strict;
    };
    int pairs = 0;
    for (Idem law : {Idem{FormKind::P, FormKind::P, false}, Idem{FormKind::Q, FormKind::Q, false},
                     Idem{FormKind::P, FormKind::Q, true}, Idem{FormKind::Q, FormKind::P, true}}) {
        for (int done = 0; done < 200;) {
            Ordinal a = gen::ordinalBelowCube(r), b = gen::ordinalBelowCube(r);
            if (a < b) std::swap(a, b);
            if (law.strict && a == b) continue;
            IdealExpr e = IdealExpr::sum({toExpr({law.big, a}), toExpr({law.small, b})});
            o.require(normalize(e) == CanonicalForm{law.big, a}, toString(e));
            ++done;
            ++pairs;
        }
    }
    o.note << "200 expressions normalized, " << pairs << " idempotence pairs";
}

void frechetInvolution(Outcome& o) {
    gen::Rng r(1002);
    for (int i = 0; i < 200; ++i) {
        IdealExpr e = gen::ideal(r, 12);
        o.require(normalize(IdealExpr::perp(IdealExpr::perp(e))) == normalize(e), toString(e));
    }
    o.note << "200 expressions";
}

void compileRoundTrip(Outcome& o) {
    o.require(compile(parseIdeal("FIN")) == TreeSchema::chain(), "compile(FIN) is not chain");
    for (auto [e, want] : {std::pair{"FIN", "FIN"}, {"P(1)", "P(1)"}, {"PQ(0)", "PQ(0)"}}) {
        TreeClass c = classify(compile(parseIdeal(e)));
        o.require(c.borel && toString(c.form) == want, e);
    }
    gen::Rng r(1003);
    for (int i = 0; i < 200; ++i) {
        IdealExpr e = gen::ideal(r, 12);
        TreeClass c = classify(compile(e));
        o.require(c.borel && c.form == normalize(e), toString(e));
    }
    o.note << "3 named + 200 generated expressions";
}

void trichotomy(Outcome& o) {
    gen::Rng r(1004);
    int borel = 0, nonBorel = 0;
    while (borel + nonBorel < 100) {
        TreeSchema t = gen::schema(r, 8);
        if (isFinite(t)) continue;
        TreeClass a = classify(t), d = classifyViaDerivative(t);
        TreeRank tr = treeRank(t);
        o.require(sameVerdict(a, d), "verdicts differ on " + t.key());
        o.require(tr.coreEmpty == a.borel, "core emptiness differs on " + t.key());
        if (a.borel) {
            ++borel;
        } else {
            ++nonBorel;
            o.require(checkEmbedding(*a.witness, kCheck), "structural witness on " + t.key());
            o.require(checkEmbedding(*d.witness, kCheck), "derivative witness on " + t.key());
        }
    }
    o.require(borel > 0 && nonBorel > 0, "generator missed a verdict");
    o.note << borel << " Borel, " << nonBorel << " non-Borel with checked witnesses";
}

void derivativeOracle(Outcome& o) {
    std::uint64_t agreed = 0, overflow = 0;
    for (const auto& t : gen::allSchemas(6)) {
        try {
            TreeRank x = explicitDerivative(t, {6, 6, 64});
            o.require(x == treeRank(t), t.key());
            ++agreed;
        } catch (const QuotientOverflow&) {
            ++overflow;
        }
    }
    auto named = [&](const char* s, TreeRank want) {
        TreeSchema t = parseSchema(s);
        o.require(explicitDerivative(t, {}) == want && treeRank(t) == want, s);
    };
    named("chain", {Ordinal::nat(1), true});
    named("fan([];const(chain))", {Ordinal::nat(2), true});
    named("full", {Ordinal{}, false});
    o.require(agreed >= 300, "fewer than 300 cases");
    o.note << agreed << " schemas of size <= 6 agree, " << overflow << " over 64 cone types";
}

void standardCopy(Outcome& o) {
    IdealExpr p1 = parseIdeal("P(1)");
    QueryTerm block0 = parseQuery("fan([chain];const(empty))");
    QueryTerm tr = QueryTerm::transversal(compile(p1));
    o.require(!memberOf(block0, p1) && memberPerp(block0, p1), "block-0 chain");
    o.require(memberOf(tr, p1) && !memberPerp(tr, p1), "transversal");
    gen::Rng r(1006);
    int checked = 0;
    while (checked < 100) {
        IdealExpr e = gen::ideal(r, 8);
        QueryTerm q = gen::queryUnder(r, compile(e));
        if (isFiniteQuery(q)) continue;
        try {
            o.require(!(memberOf(q, e) && memberPerp(q, e)), q.text() + " in " + toString(e));
            ++checked;
        } catch (const ContainmentError&) {
        }
    }
    o.note << "standard copy memberships hold, 100 infinite queries";
}

void frechetWitnesses(Outcome& o) {
    gen::Rng r(1007);
    int done = 0, members = 0;
    while (done < 50) {
        IdealExpr e = gen::ideal(r, 8);
        TreeSchema target = compile(e);
        QueryTerm q = gen::queryUnder(r, target);
        try {
            if (isFiniteQuery(q) || memberOf(q, e)) continue;
        } catch (const ContainmentError&) {
            continue;
        }
        QueryTerm w = frechetWitness(q, e);
        o.require(subsetOfQuery(w, q).verdict == Tri::Yes, "subset: " + w.text());
        o.require(checkFrechet(w, q, kCheck), "witness check: " + w.text() + " for " + q.text());
        o.require(qInId(w) && !isFiniteQuery(w), "orthogonal and infinite: " + w.text());
        // Meets sampled members of the ideal finitely.
        for (int k = 0; k < 4; ++k) {
            QueryTerm m = gen::queryUnder(r, target);
            try {
                if (!memberOf(m, e)) continue;
            } catch (const ContainmentError&) {
                continue;
            }
            o.require(checkFiniteIntersection(w, m), "meets " + m.text() + " infinitely: " + w.text());
            ++members;
        }
        ++done;
    }
    o.note << "50 positive queries, " << members << " member intersections checked";
}

void scatteredSuite(Outcome& o) {
    for (auto [t, want] : {std::pair{"N", "POW"}, {"rev(N)", "FIN"}, {"osum([];rev(N))", "P(1)"}, {"cat(N,rev(N))", "PQ(0)"}})
        o.require(woClassify(parseLin(t)).text() == want, t);
    gen::Rng r(1008);
    for (int i = 0; i < 200; ++i) {
        LinTerm t = gen::linTerm(r, 8, false);
        CanonicalForm c = woClassify(t).form;
        o.require(woClassify(reverseTerm(t)).form == perpC(c), "reversal of " + t.text());
        o.require(woClassify(LinTerm::rev(t)).form == perpC(c), "rev of " + t.text());
    }
    int rational = 0;
    while (rational < 100) {
        LinTerm t = gen::linTerm(r, 8, true);
        if (scatteredCheck(t)) continue;
        WoClass c = woClassify(t);
        o.require(!c.scattered && c.embedding && checkQEmbedding(*c.embedding, 10), t.text());
        ++rational;
    }
    o.note << "4 named, 200 dual pairs, 100 dense embeddings";
}

void distinctness(Outcome& o) {
    std::vector<CanonicalForm> forms;
    for (FormKind k : {FormKind::P, FormKind::Q, FormKind::PQ})
        for (const char* a : {"0", "1", "2", "3", "w", "w+1", "w*2", "w^2", "w^2+w", "w^3"})
            forms.push_back({k, parseOrdinal(a)});
    int pairs = 0;
    for (std::size_t i = 0; i < forms.size(); ++i)
        for (std::size_t j = 0; j < forms.size(); ++j) {
            bool iso = isoCheck(toExpr(forms[i]), toExpr(forms[j]));
            o.require(iso == (i == j), toString(forms[i]) + " vs " + toString(forms[j]));
            if (i < j) ++pairs;
        }
    o.note << forms.size() << " ideals, " << pairs << " distinct pairs";
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        void (*run)(Outcome&);
    };
    const Criterion criteria[] = {
        {"canonical forms and idempotence", canonicalForms},
        {"double orthogonal is the identity", frechetInvolution},
        {"compile then classify round trip", compileRoundTrip},
        {"Borel trichotomy with embedding witnesses", trichotomy},
        {"explicit derivative agrees with tree rank", derivativeOracle},
        {"standard copy membership", standardCopy},
        {"Frechet witnesses", frechetWitnesses},
        {"scattered orders", scatteredSuite},
        {"distinct canonical ideals", distinctness},
    };
    int failed = 0, index = 0;
    for (const auto& c : criteria) {
        ++index;
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.require(secs < 60, "took longer than 60 s");
        if (!o.ok) ++failed;
        std::cout << (o.ok ? "PASS" : "FAIL") << " " << index << " " << c.name << ": " << o.note.str() << " ("
                  << static_cast<int>(secs * 1000) << " ms)\n";
    }
    return failed ? 1 : 0;
}

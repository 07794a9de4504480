#pragma once

// Seeded property suite: every law is run on fresh random instances and
// reports the first counterexample it finds.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bideal/branch.hpp"
#include "bideal/classify.hpp"
#include "bideal/generate.hpp"
#include "bideal/ideal.hpp"
#include "bideal/oracle.hpp"
#include "bideal/query.hpp"
#include "bideal/scattered.hpp"

namespace bideal {

struct LawResult {
    std::string name;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    std::string firstCounterexample;
};

struct LawReport {
    std::uint64_t seed = 0;
    std::vector<LawResult> laws;

    bool allPass() const {
        for (const auto& l : laws)
            if (l.failures) return false;
        return true;
    }
};

/// A trial either passes, fails with a counterexample, or is skipped because
/// the random instance does not meet the law's hypothesis.
struct Trial {
    enum class Status { Pass, Fail, Skip } status = Status::Pass;
    std::string example;

    static Trial pass() { return {}; }
    static Trial skip() { return {Status::Skip, {}}; }
    static Trial fail(std::string e) { return {Status::Fail, std::move(e)}; }
    static Trial check(bool ok, std::string e) { return ok ? pass() : fail(std::move(e)); }
};

struct Law {
    std::string name;
    std::function<Trial(gen::Rng&)> trial;
};

namespace laws {

inline const Budget kWitnessBudget{8, 8, 200};

inline std::vector<Law> idealLaws() {
    std::vector<Law> out;
    auto idem = [](std::string name, FormKind big, FormKind small, bool strict) {
        return Law{name, [=](gen::Rng& r) {
            Ordinal a = gen::ordinalBelowCube(r), b = gen::ordinalBelowCube(r);
            if (a < b) std::swap(a, b);
            if (strict && a == b) return Trial::skip();
            IdealExpr e = IdealExpr::sum({toExpr({big, a}), toExpr({small, b})});
            CanonicalForm want{big, a};
            return Trial::check(normalize(e) == want, toString(e));
        }};
    };
    out.push_back(idem("idempotence P+P", FormKind::P, FormKind::P, false));
    out.push_back(idem("idempotence Q+Q", FormKind::Q, FormKind::Q, false));
    out.push_back(idem("idempotence P+lower Q", FormKind::P, FormKind::Q, true));
    out.push_back(idem("idempotence Q+lower P", FormKind::Q, FormKind::P, true));
    out.push_back({"double orthogonal", [](gen::Rng& r) {
        IdealExpr e = gen::ideal(r, 12);
        return Trial::check(normalize(IdealExpr::perp(IdealExpr::perp(e))) == normalize(e), toString(e));
    }});
    out.push_back({"orthogonal of a finite sum", [](gen::Rng& r) {
        IdealExpr a = gen::ideal(r, 6), b = gen::ideal(r, 6);
        bool ok = normalize(IdealExpr::perp(IdealExpr::sum({a, b}))) ==
                  normalize(IdealExpr::sum({IdealExpr::perp(a), IdealExpr::perp(b)}));
        return Trial::check(ok, toString(a) + " , " + toString(b));
    }});
    out.push_back({"combine commutative and associative", [](gen::Rng& r) {
        CanonicalForm a = gen::canonical(r), b = gen::canonical(r), c = gen::canonical(r);
        bool ok = combine(a, b) == combine(b, a) && combine(combine(a, b), c) == combine(a, combine(b, c));
        return Trial::check(ok, toString(a) + " , " + toString(b) + " , " + toString(c));
    }});
    out.push_back({"combine absorbs equal forms", [](gen::Rng& r) {
        CanonicalForm a = gen::canonical(r);
        return Trial::check(combine(a, a) == a, toString(a));
    }});
    out.push_back({"omega sum regrouping", [](gen::Rng& r) {
        IdealExpr e = gen::ideal(r, 10);
        bool ok = normalize(IdealExpr::omega(IdealExpr::omega(e))) == normalize(IdealExpr::omega(e));
        return Trial::check(ok, toString(e));
    }});
    return out;
}

inline std::vector<Law> treeLaws() {
    std::vector<Law> out;
    out.push_back({"compile then classify", [](gen::Rng& r) {
        IdealExpr e = gen::ideal(r, 10);
        TreeClass c = classify(compile(e));
        return Trial::check(c.borel && c.form == normalize(e), toString(e));
    }});
    out.push_back({"compiled blocks classify as sums", [](gen::Rng& r) {
        CanonicalForm a = gen::canonical(r), b = gen::canonical(r);
        TreeSchema ta = compileCanonical(a), tb = compileCanonical(b);
        TreeClass pair = classify(TreeSchema::fan({ta, tb}, SchemaSeq::none()));
        TreeClass many = classify(TreeSchema::fan({}, SchemaSeq::constant(ta)));
        bool ok = pair.borel && pair.form == combine(a, b) && many.borel && many.form == omegaSumC(a);
        return Trial::check(ok, toString(a) + " , " + toString(b));
    }});
    out.push_back({"structural and derivative classifiers agree", [](gen::Rng& r) {
        TreeSchema t = gen::schema(r, 8);
        if (isFinite(t)) return Trial::skip();
        TreeClass a = classify(t), d = classifyViaDerivative(t);
        if (!sameVerdict(a, d)) return Trial::fail(t.key());
        if (!a.borel) return Trial::pass();
        Block joined = plus(Block::of(a.form), scaffoldClass(t));
        return Trial::check(joined.isForm() && joined.form == d.form, t.key());
    }});
    out.push_back({"empty core iff Borel", [](gen::Rng& r) {
        TreeSchema t = gen::schema(r, 8);
        if (isFinite(t)) return Trial::skip();
        return Trial::check(treeRank(t).coreEmpty == classify(t).borel, t.key());
    }});
    out.push_back({"domination witnesses check", [](gen::Rng& r) {
        TreeSchema t = gen::schema(r, 8);
        return Trial::check(checkIdWitness(idWitness(t), QueryTerm::schema(t), kWitnessBudget), t.key());
    }});
    out.push_back({"well-founded schemas respect their height", [](gen::Rng& r) {
        TreeSchema t = gen::schema(r, 8);
        auto h = maxLength(t);
        if (!inWf(t) || !h) return Trial::skip();
        for (const auto& u : enumerateSchema(t, kWitnessBudget))
            if (u.size() > *h) return Trial::fail(t.key());
        return Trial::pass();
    }});
    out.push_back({"embedding witnesses check", [](gen::Rng& r) {
        TreeSchema t = gen::schema(r, 8);
        if (isFinite(t)) return Trial::skip();
        TreeClass c = classify(t);
        if (c.borel) return Trial::skip();
        TreeClass d = classifyViaDerivative(t);
        bool ok = checkEmbedding(*c.witness, {6, 6, 200}) && checkEmbedding(*d.witness, {6, 6, 200});
        return Trial::check(ok, t.key());
    }});
    return out;
}

inline std::vector<Law> membershipLaws() {
    std::vector<Law> out;
    auto target = [](gen::Rng& r) {
        IdealExpr e = gen::ideal(r, 8);
        return std::pair{e, compile(e)};
    };
    out.push_back({"dominated meets well-founded finitely", [](gen::Rng& r) {
        TreeSchema a = gen::schema(r, 7), b = gen::schema(r, 7);
        QueryTerm q = gen::queryUnder(r, a), s = gen::queryUnder(r, b);
        if (!qInId(q) || !qInWf(s)) return Trial::skip();
        return Trial::check(checkFiniteIntersection(q, s), q.text() + " , " + s.text());
    }});
    out.push_back({"Frechet witnesses check", [=](gen::Rng& r) {
        auto [e, t] = target(r);
        QueryTerm q = gen::queryUnder(r, t);
        try {
            if (isFiniteQuery(q) || memberOf(q, e)) return Trial::skip();
        } catch (const ContainmentError&) {
            return Trial::skip();
        }
        QueryTerm w = frechetWitness(q, e);
        bool ok = checkFrechet(w, q, kWitnessBudget) && !qInWf(w);
        return Trial::check(ok, q.text() + " in " + toString(e));
    }});
    out.push_back({"never in both the ideal and its orthogonal", [=](gen::Rng& r) {
        auto [e, t] = target(r);
        QueryTerm q = gen::queryUnder(r, t);
        if (isFiniteQuery(q)) return Trial::skip();
        try {
            return Trial::check(!(memberOf(q, e) && memberPerp(q, e)), q.text() + " in " + toString(e));
        } catch (const ContainmentError&) {
            return Trial::skip();
        }
    }});
    out.push_back({"orthogonal members meet members finitely", [=](gen::Rng& r) {
        auto [e, t] = target(r);
        QueryTerm q = gen::queryUnder(r, t), s = gen::queryUnder(r, t);
        try {
            if (!memberPerp(q, e) || !memberOf(s, e)) return Trial::skip();
        } catch (const ContainmentError&) {
            return Trial::skip();
        }
        return Trial::check(checkFiniteIntersection(q, s), q.text() + " , " + s.text() + " in " + toString(e));
    }});
    return out;
}

inline std::vector<Law> scatteredLaws() {
    std::vector<Law> out;
    out.push_back({"reversal is orthogonal", [](gen::Rng& r) {
        LinTerm t = gen::linTerm(r, 8, false);
        SelfDual d = woSelfDual(t);
        WoClass viaRev = woClassify(LinTerm::rev(t));
        bool ok = d.identityHolds && viaRev.form == perpC(woClassify(t).form);
        return Trial::check(ok, t.text());
    }});
    out.push_back({"concatenation combines", [](gen::Rng& r) {
        LinTerm a = gen::linTerm(r, 5, false), b = gen::linTerm(r, 5, false);
        bool ok = woClassify(LinTerm::cat({a, b})).form == combine(woClassify(a).form, woClassify(b).form);
        return Trial::check(ok, a.text() + " , " + b.text());
    }});
    out.push_back({"rationalize keeps the order", [](gen::Rng& r) {
        LinTerm t = gen::linTerm(r, 6, true);
        return Trial::check(checkRationalize(t, 24), t.text());
    }});
    out.push_back({"rationals are never scattered", [](gen::Rng& r) {
        LinTerm t = gen::linTerm(r, 6, true);
        if (scatteredCheck(t)) return Trial::skip();
        WoClass c = woClassify(t);
        return Trial::check(!c.scattered && c.embedding && checkQEmbedding(*c.embedding, 10), t.text());
    }});
    return out;
}

inline std::vector<Law> oracleLaws() {
    std::vector<Law> out;
    out.push_back({"enumeration is monotone in the budget", [](gen::Rng& r) {
        TreeSchema t = gen::schema(r, 7);
        Budget small{gen::pick(r, 1, 4), gen::pick(r, 1, 4), 1u << 20};
        Budget big{small.depth + gen::pick(r, 0, 2), small.width + gen::pick(r, 0, 2), small.count};
        auto a = enumerateSchema(t, small), b = enumerateSchema(t, big);
        std::set<Seq> bs(b.begin(), b.end());
        for (const auto& u : a)
            if (!bs.count(u)) return Trial::fail(t.key());
        return Trial::pass();
    }});
    out.push_back({"explicit derivative matches tree rank", [](gen::Rng& r) {
        TreeSchema t = gen::schema(r, 6, false);
        try {
            return Trial::check(explicitDerivative(t, {6, 6, 64}) == treeRank(t), t.key());
        } catch (const QuotientOverflow&) {
            return Trial::skip();
        }
    }});
    out.push_back({"query witnesses check", [](gen::Rng& r) {
        QueryTerm q = gen::queryUnder(r, gen::schema(r, 7));
        return Trial::check(checkIdWitness(idWitness(q), q, kWitnessBudget), q.text());
    }});
    return out;
}

inline std::vector<Law> syntaxLaws() {
    std::vector<Law> out;
    out.push_back({"print then parse", [](gen::Rng& r) {
        IdealExpr e = gen::ideal(r, 12);
        TreeSchema t = gen::schema(r, 8);
        LinTerm l = gen::linTerm(r, 8, true);
        QueryTerm q = gen::queryUnder(r, t);
        Ordinal a = gen::anyOrdinal(r);
        bool ok = parseIdeal(toString(e)) == e && parseSchema(t.key()) == t && parseLin(l.text()).text() == l.text() &&
                  parseQuery(q.text()).text() == q.text() && parseOrdinal(toString(a)) == a;
        return Trial::check(ok, toString(e) + " ; " + t.key() + " ; " + l.text() + " ; " + q.text());
    }});
    return out;
}

}  // namespace laws

inline std::vector<Law> allLaws() {
    std::vector<Law> out;
    for (auto group : {laws::idealLaws, laws::treeLaws, laws::membershipLaws, laws::scatteredLaws, laws::oracleLaws,
                       laws::syntaxLaws}) {
        auto g = group();
        out.insert(out.end(), g.begin(), g.end());
    }
    return out;
}

/// Runs one law until it has n non-skipped trials (or gives up after 40n
/// draws).  Exceptions count as failures.
inline LawResult runLaw(const Law& law, std::uint64_t seed, std::uint64_t index, std::uint64_t n) {
    std::seed_seq ss{seed, index};
    gen::Rng rng(ss);
    LawResult res{law.name, 0, 0, {}};
    for (std::uint64_t draws = 0; res.trials < n && draws < 40 * n; ++draws) {
        Trial t;
        try {
            t = law.trial(rng);
        } catch (const std::exception& e) {
            t = Trial::fail(std::string("exception: ") + e.what());
        }
        if (t.status == Trial::Status::Skip) continue;
        ++res.trials;
        if (t.status == Trial::Status::Fail) {
            if (res.failures++ == 0) res.firstCounterexample = t.example;
        }
    }
    return res;
}

inline LawReport lawSuite(std::uint64_t seed, std::uint64_t n) {
    LawReport report{seed, {}};
    if (n == 0) return report;
    auto all = allLaws();
    for (std::size_t i = 0; i < all.size(); ++i) report.laws.push_back(runLaw(all[i], seed, i, n));
    return report;
}

inline nlohmann::json toJson(const LawReport& r) {
    nlohmann::json laws = nlohmann::json::array();
    for (const auto& l : r.laws)
        laws.push_back({{"name", l.name},
                        {"trials", l.trials},
                        {"failures", l.failures},
                        {"firstCounterexample", l.failures ? nlohmann::json(l.firstCounterexample) : nlohmann::json()}});
    return {{"seed", r.seed}, {"allPass", r.allPass()}, {"laws", laws}};
}

}  // namespace bideal

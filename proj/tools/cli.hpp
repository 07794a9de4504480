#pragma once

#include <algorithm>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bideal.hpp"

namespace bideal::cli {

struct Options {
    bool json = false;
    Budget budget;
};

inline Budget parseBudget(const std::string& text) {
    detail::Cursor c(text);
    Budget b;
    b.depth = c.natural();
    c.expect(',');
    b.width = c.natural();
    c.expect(',');
    b.count = c.natural();
    c.expectEnd();
    b.validate();
    return b;
}

/// "Q in E": the word "in" separates the query from the target expression.
inline std::pair<std::string, std::string> splitIn(const std::vector<std::string>& words) {
    if (words.size() != 3 || words[1] != "in") throw ParseError("expected: Q in E");
    return {words[0], words[2]};
}

inline void emit(std::ostream& out, const Options& o, const std::string& verb, const std::string& input, Json result,
                 const std::string& text) {
    if (o.json)
        out << Json{{"verb", verb}, {"input", input}, {"result", std::move(result)}}.dump(2) << "\n";
    else
        out << text << "\n";
}

inline std::string seqList(const std::vector<Seq>& us) {
    std::string s;
    for (const auto& u : us) s += toString(u) + "\n";
    if (!s.empty()) s.pop_back();
    return s;
}

inline void requireCheck(bool ok, const std::string& what) {
    if (!ok) throw InvariantViolation(what + " failed its check");
}

/// Runs one invocation; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Canonical forms for Borel ideals on countable sets", "bideal"};
    app.require_subcommand(1);
    Options o;
    std::string budgetText;
    app.add_flag("--json", o.json, "machine-readable output");

    std::string e1, e2, emitMode = "text", via = "structural";
    std::vector<std::string> words;
    bool perp = false;
    std::uint64_t count = 10, seed = 42, trials = 100;

    auto withBudget = [&](CLI::App* s) {
        s->add_option("--depth", o.budget.depth, "max sequence length")->capture_default_str();
        s->add_option("--width", o.budget.width, "max entry")->capture_default_str();
        s->add_option("--count", o.budget.count, "max elements")->capture_default_str();
    };

    auto* normalizeCmd = app.add_subcommand("normalize", "canonical form of an ideal expression");
    normalizeCmd->add_option("E", e1)->required();
    auto* rankCmd = app.add_subcommand("rank", "rank of the canonical form");
    rankCmd->add_option("E", e1)->required();
    auto* perpCmd = app.add_subcommand("perp", "canonical form of the orthogonal");
    perpCmd->add_option("E", e1)->required();
    auto* isoCmd = app.add_subcommand("iso", "isomorphism test");
    isoCmd->add_option("E1", e1)->required();
    isoCmd->add_option("E2", e2)->required();
    auto* compileCmd = app.add_subcommand("compile", "schema realizing an expression");
    compileCmd->add_option("E", e1)->required();
    compileCmd->add_option("--emit", emitMode, "text, dot or json")->check(CLI::IsMember({"text", "dot", "json"}));
    withBudget(compileCmd);
    auto* classifyCmd = app.add_subcommand("classify", "class of the ideal restricted to a schema");
    classifyCmd->add_option("T", e1)->required();
    classifyCmd->add_option("--via", via, "structural or derivative")->check(CLI::IsMember({"structural", "derivative"}));
    withBudget(classifyCmd);
    auto* treerankCmd = app.add_subcommand("treerank", "derivative rank of the generated tree");
    treerankCmd->add_option("T", e1)->required();
    auto* memberCmd = app.add_subcommand("member", "membership of a query in an ideal or its orthogonal");
    memberCmd->add_option("words", words, "Q in E")->required()->expected(3);
    memberCmd->add_flag("--perp", perp, "test the orthogonal");
    auto* frechetCmd = app.add_subcommand("frechet", "infinite orthogonal subset of a positive query");
    frechetCmd->add_option("words", words, "Q in E")->required()->expected(3);
    withBudget(frechetCmd);
    auto* idCmd = app.add_subcommand("idwitness", "dominating branch or unbounded family");
    idCmd->add_option("Q", e1)->required();
    withBudget(idCmd);
    auto* woCmd = app.add_subcommand("wo", "scattered linear orders");
    woCmd->require_subcommand(1);
    auto* woClassifyCmd = woCmd->add_subcommand("classify", "class of the well-ordered-subsets ideal");
    woClassifyCmd->add_option("L", e1)->required();
    auto* woReverseCmd = woCmd->add_subcommand("reverse", "reversed order and its class");
    woReverseCmd->add_option("L", e1)->required();
    auto* woRatCmd = woCmd->add_subcommand("rationalize", "order embedding into the rationals");
    woRatCmd->add_option("L", e1)->required();
    woRatCmd->add_option("--count", count, "number of elements")->capture_default_str();
    auto* enumerateCmd = app.add_subcommand("enumerate", "elements of a schema or query within a budget");
    enumerateCmd->add_option("X", e1)->required();
    enumerateCmd->add_option("--budget", budgetText, "D,W,C");
    auto* selftestCmd = app.add_subcommand("selftest", "seeded law suite");
    selftestCmd->add_option("--seed", seed)->capture_default_str();
    selftestCmd->add_option("--trials", trials)->capture_default_str();

    for (auto* s : app.get_subcommands({})) s->fallthrough();
    for (auto* s : woCmd->get_subcommands({})) s->fallthrough();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        // Help requests exit 0; every other command-line error is a parse error.
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    try {
        if (!budgetText.empty()) o.budget = parseBudget(budgetText);
        o.budget.validate();

        if (normalizeCmd->parsed()) {
            CanonicalForm c = normalize(parseIdeal(e1));
            emit(out, o, "normalize", e1, toJson(c), toString(c));
        } else if (rankCmd->parsed()) {
            Ordinal r = bRank(parseIdeal(e1));
            emit(out, o, "rank", e1, {{"rank", toString(r)}}, toString(r));
        } else if (perpCmd->parsed()) {
            CanonicalForm c = normalize(IdealExpr::perp(parseIdeal(e1)));
            emit(out, o, "perp", e1, toJson(c), toString(c));
        } else if (isoCmd->parsed()) {
            IdealExpr a = parseIdeal(e1), b = parseIdeal(e2);
            bool iso = isoCheck(a, b);
            emit(out, o, "iso", e1 + " " + e2,
                 {{"isomorphic", iso}, {"left", toJson(normalize(a))}, {"right", toJson(normalize(b))}},
                 iso ? "isomorphic" : "non-isomorphic");
        } else if (compileCmd->parsed()) {
            TreeSchema t = compile(parseIdeal(e1));
            if (emitMode == "dot") {
                out << toDot(t, o.budget);
            } else if (emitMode == "json") {
                out << Json{{"verb", "compile"}, {"input", e1}, {"result", denotationJson(t, o.budget)}}.dump(2) << "\n";
            } else {
                emit(out, o, "compile", e1, {{"schema", t.key()}}, t.key());
            }
        } else if (classifyCmd->parsed()) {
            TreeSchema t = parseSchema(e1);
            TreeClass c = via == "derivative" ? classifyViaDerivative(t) : classify(t);
            std::string text = c.text();
            if (!c.borel) {
                requireCheck(checkEmbedding(*c.witness, o.budget), "embedding witness");
                text += "\nwitness: <> -> " + toString(c.witness->anchor) + ", u -> " + toString(c.witness->spine) +
                        " followed by u (" + c.witness->route + ")";
            }
            Json j = toJson(c, o.budget);
            j["via"] = via;
            emit(out, o, "classify", e1, j, text);
        } else if (treerankCmd->parsed()) {
            TreeRank r = treeRank(parseSchema(e1));
            emit(out, o, "treerank", e1, toJson(r),
                 "rank " + toString(r.rank) + (r.coreEmpty ? ", core empty" : ", core nonempty"));
        } else if (memberCmd->parsed()) {
            auto [qs, es] = splitIn(words);
            QueryTerm q = parseQuery(qs);
            IdealExpr e = parseIdeal(es);
            bool m = perp ? memberPerp(q, e) : memberOf(q, e);
            emit(out, o, "member", qs + " in " + es, {{"member", m}, {"perp", perp}, {"target", compile(e).key()}},
                 m ? "yes" : "no");
        } else if (frechetCmd->parsed()) {
            auto [qs, es] = splitIn(words);
            QueryTerm q = parseQuery(qs);
            QueryTerm w = frechetWitness(q, parseIdeal(es));
            requireCheck(checkFrechet(w, q, o.budget), "Frechet witness");
            emit(out, o, "frechet", qs + " in " + es,
                 {{"witness", witnessJson("frechet", {{"query", w.text()}}, o.budget)}}, w.text());
        } else if (idCmd->parsed()) {
            QueryTerm q = parseQuery(e1);
            IdWitness w = idWitness(q);
            requireCheck(checkIdWitness(w, q, o.budget), "domination witness");
            std::string text = w.dominated ? "dominated by " + w.branch.text()
                                           : "unbounded at coordinate " + std::to_string(w.family.coordinate) + ": " +
                                                 w.family.description;
            emit(out, o, "idwitness", e1, {{"witness", toJson(w, o.budget)}}, text);
        } else if (woClassifyCmd->parsed()) {
            WoClass c = woClassify(parseLin(e1));
            if (c.embedding) requireCheck(checkQEmbedding(*c.embedding, 10), "rational embedding");
            emit(out, o, "wo classify", e1, toJson(c), c.text());
        } else if (woReverseCmd->parsed()) {
            SelfDual d = woSelfDual(parseLin(e1));
            emit(out, o, "wo reverse", e1, {{"term", d.reversed.text()}, {"class", toJson(d.cls)}},
                 d.reversed.text() + "\n" + d.cls.text());
        } else if (woRatCmd->parsed()) {
            LinTerm t = parseLin(e1);
            requireCheck(checkRationalize(t, std::min<std::uint64_t>(count, 64)), "rationalize");
            std::vector<Rational> vs = rationalize(t, count);
            Json a = Json::array();
            std::string text;
            for (const auto& v : vs) {
                a.push_back(toJson(v));
                text += (text.empty() ? "" : " ") + toString(v);
            }
            emit(out, o, "wo rationalize", e1, {{"values", a}}, text);
        } else if (enumerateCmd->parsed()) {
            std::vector<Seq> us = enumerateQuery(parseQuery(e1), o.budget);
            emit(out, o, "enumerate", e1, {{"budget", toJson(o.budget)}, {"elements", toJson(us)}}, seqList(us));
        } else if (selftestCmd->parsed()) {
            LawReport r = lawSuite(seed, trials);
            std::ostringstream text;
            for (const auto& l : r.laws) {
                text << (l.failures ? "FAIL " : "ok   ") << l.name << " (" << l.trials << " trials";
                if (l.failures) text << ", " << l.failures << " failures, e.g. " << l.firstCounterexample;
                text << ")\n";
            }
            text << (r.allPass() ? "all laws hold" : "law violations found");
            emit(out, o, "selftest", "seed " + std::to_string(seed), toJson(r), text.str());
            if (!r.allPass()) return 3;
        }
    } catch (const Error& e) {
        err << e.name() << ": " << e.what() << "\n";
        return e.exitCode();
    }
    return 0;
}

}  // namespace bideal::cli

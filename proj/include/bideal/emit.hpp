#pragma once

// JSON and DOT renderings of terms, classes, witnesses and budget-truncated
// denotations.

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bideal/branch.hpp"
#include "bideal/classify.hpp"
#include "bideal/oracle.hpp"
#include "bideal/query.hpp"
#include "bideal/scattered.hpp"

namespace bideal {

using Json = nlohmann::json;

inline Json toJson(const Seq& u) { return Json(std::vector<std::uint64_t>(u.begin(), u.end())); }

inline Json toJson(const std::vector<Seq>& us) {
    Json a = Json::array();
    for (const auto& u : us) a.push_back(toJson(u));
    return a;
}

inline Json toJson(const Budget& b) { return {{"depth", b.depth}, {"width", b.width}, {"count", b.count}}; }

inline const char* kindName(FormKind k) {
    switch (k) {
    case FormKind::P: return "P";
    case FormKind::Q: return "Q";
    case FormKind::PQ: return "PQ";
    }
    return "";
}

inline Json toJson(const CanonicalForm& c) {
    return {{"kind", kindName(c.kind)}, {"rank", toString(c.rank)}, {"text", toString(c)}};
}

inline Json witnessJson(const char* kind, Json data, const Budget& b) {
    return {{"kind", kind}, {"data", std::move(data)}, {"checkedAtBudget", toJson(b)}};
}

inline Json toJson(const EmbeddingWitness& w, const Budget& b) {
    return witnessJson("embedding",
                       {{"anchor", toJson(w.anchor)},
                        {"spine", toJson(w.spine)},
                        {"target", w.target.key()},
                        {"generatedTree", w.generatedTree},
                        {"route", w.route}},
                       b);
}

inline Json toJson(const TreeClass& c, const Budget& b) {
    if (c.borel) return {{"borel", true}, {"form", toJson(c.form)}, {"text", c.text()}};
    return {{"borel", false}, {"text", c.text()}, {"witness", toJson(*c.witness, b)}};
}

inline Json toJson(const EventuallyPeriodic& a) {
    return {{"prefix", a.prefix}, {"cycle", a.cycle}, {"text", a.text()}};
}

inline Json toJson(const IdWitness& w, const Budget& b) {
    if (w.dominated) return witnessJson("dominatingBranch", toJson(w.branch), b);
    Json sample = Json::array();
    for (std::uint64_t n = 0; n < 5; ++n) sample.push_back(toJson(w.family.member(n)));
    return witnessJson("unboundedFamily",
                       {{"coordinate", w.family.coordinate}, {"description", w.family.description}, {"sample", sample}},
                       b);
}

inline Json toJson(const TreeRank& r) {
    return {{"rank", toString(r.rank)}, {"coreEmpty", r.coreEmpty}};
}

inline Json toJson(const Rational& q) { return q.str(); }

inline Json toJson(const WoClass& c) {
    if (c.scattered) return {{"scattered", true}, {"form", toJson(c.form)}, {"text", c.text()}};
    const QEmbedding& e = *c.embedding;
    return {{"scattered", false},
            {"text", c.text()},
            {"witness", {{"kind", "rationalEmbedding"},
                         {"data", {{"path", e.path}, {"reversed", e.reversed}, {"target", e.target.text()}}}}}};
}

// ---------------------------------------------------------------------------

/// Nodes of the generated tree reached by the enumeration, members drawn as
/// double circles.
inline std::string toDot(const TreeSchema& t, const Budget& b) {
    std::vector<Seq> members = enumerateSchema(t, b);
    std::set<Seq, decltype(&shortlexLess)> nodes(&shortlexLess);
    std::set<Seq> isMember(members.begin(), members.end());
    for (const auto& u : members)
        for (std::size_t k = 0; k <= u.size(); ++k) nodes.insert(Seq(u.begin(), u.begin() + k));
    std::ostringstream os;
    os << "digraph schema {\n  label=\"" << t.key() << "\";\n";
    auto id = [](const Seq& u) { return "\"" + toString(u) + "\""; };
    for (const auto& u : nodes) {
        os << "  " << id(u) << " [label=\"" << (u.empty() ? std::string("root") : std::to_string(u.back()))
           << "\", shape=" << (isMember.count(u) ? "doublecircle" : "circle") << "];\n";
        if (!u.empty()) os << "  " << id(Seq(u.begin(), u.end() - 1)) << " -> " << id(u) << ";\n";
    }
    os << "}\n";
    return os.str();
}

inline Json denotationJson(const TreeSchema& t, const Budget& b) {
    return {{"schema", t.key()}, {"budget", toJson(b)}, {"elements", toJson(enumerateSchema(t, b))}};
}

}  // namespace bideal

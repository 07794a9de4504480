#pragma once

// Finitely presented test sets and their membership in compiled ideals and
// orthogonals.

#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bideal/branch.hpp"
#include "bideal/detail/cursor.hpp"
#include "bideal/error.hpp"
#include "bideal/ideal.hpp"
#include "bideal/schema.hpp"

namespace bideal {

class QueryTerm {
public:
    struct Node;

    static QueryTerm schema(TreeSchema t);
    static QueryTerm finSet(std::vector<Seq> elems);
    /// One least element per nonempty block of a fan.
    static QueryTerm transversal(TreeSchema fan);
    static QueryTerm unite(QueryTerm a, QueryTerm b);

    const Node& node() const { return *node_; }
    std::string text() const;

    friend bool operator==(const QueryTerm& a, const QueryTerm& b) { return a.text() == b.text(); }

private:
    explicit QueryTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

namespace query_node {
struct Schema { TreeSchema t; };
struct FinSet { std::vector<Seq> elems; };
struct Transversal { TreeSchema fan; };
struct Union { QueryTerm a, b; };
}  // namespace query_node

struct QueryTerm::Node {
    std::variant<query_node::Schema, query_node::FinSet, query_node::Transversal, query_node::Union> v;
};

inline QueryTerm QueryTerm::schema(TreeSchema t) {
    return QueryTerm(std::make_shared<const Node>(Node{query_node::Schema{std::move(t)}}));
}

inline QueryTerm QueryTerm::finSet(std::vector<Seq> elems) {
    std::sort(elems.begin(), elems.end(), shortlexLess);
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return QueryTerm(std::make_shared<const Node>(Node{query_node::FinSet{std::move(elems)}}));
}

inline QueryTerm QueryTerm::transversal(TreeSchema fan) {
    if (!std::holds_alternative<schema_node::Fan>(fan.node().v))
        throw InvariantViolation("transversal needs a fan, got " + fan.key());
    return QueryTerm(std::make_shared<const Node>(Node{query_node::Transversal{std::move(fan)}}));
}

inline QueryTerm QueryTerm::unite(QueryTerm a, QueryTerm b) {
    return QueryTerm(std::make_shared<const Node>(Node{query_node::Union{std::move(a), std::move(b)}}));
}

inline std::string QueryTerm::text() const {
    using namespace query_node;
    return std::visit(Overloaded{
        [](const Schema& s) { return s.t.key(); },
        [](const FinSet& f) {
            std::string s = "finset{";
            for (std::size_t i = 0; i < f.elems.size(); ++i) s += (i ? "," : "") + toString(f.elems[i]);
            return s + "}";
        },
        [](const Transversal& t) { return "transversal(" + t.fan.key() + ")"; },
        [](const Union& u) { return "union(" + u.a.text() + "," + u.b.text() + ")"; },
    }, node_->v);
}

inline std::ostream& operator<<(std::ostream& os, const QueryTerm& q) { return os << q.text(); }

// ---------------------------------------------------------------------------

inline bool memberQuery(const Seq& u, const QueryTerm& q) {
    using namespace query_node;
    return std::visit(Overloaded{
        [&](const Schema& s) { return memberElem(u, s.t); },
        [&](const FinSet& f) { return std::binary_search(f.elems.begin(), f.elems.end(), u, shortlexLess); },
        [&](const Transversal& t) {
            if (u.empty()) return false;
            TreeSchema block = view(t.fan).child(u[0]);
            return !block.isEmpty() && u == concat(Seq{u[0]}, canonicalPick(block));
        },
        [&](const Union& x) { return memberQuery(u, x.a) || memberQuery(u, x.b); },
    }, q.node().v);
}

inline bool isFiniteQuery(const QueryTerm& q) {
    using namespace query_node;
    return std::visit(Overloaded{
        [](const Schema& s) { return isFinite(s.t); },
        [](const FinSet&) { return true; },
        [](const Transversal& t) { return std::get<schema_node::Fan>(t.fan.node().v).tail.isNone(); },
        [](const Union& x) { return isFiniteQuery(x.a) && isFiniteQuery(x.b); },
    }, q.node().v);
}

inline bool qInWf(const QueryTerm& q) {
    using namespace query_node;
    return std::visit(Overloaded{
        [](const Schema& s) { return inWf(s.t); },
        [](const FinSet&) { return true; },
        // One finite path per cone <n>: the generated tree has no infinite branch.
        [](const Transversal&) { return true; },
        [](const Union& x) { return qInWf(x.a) && qInWf(x.b); },
    }, q.node().v);
}

inline bool qInId(const QueryTerm& q) {
    using namespace query_node;
    return std::visit(Overloaded{
        [](const Schema& s) { return inId(s.t); },
        [](const FinSet&) { return true; },
        [](const Transversal& t) { return std::get<schema_node::Fan>(t.fan.node().v).tail.isNone(); },
        [](const Union& x) { return qInId(x.a) && qInId(x.b); },
    }, q.node().v);
}

/// Transversal as an explicit schema; nullopt for diagonal tails, whose
/// least elements differ from block to block.
inline std::optional<TreeSchema> transversalSchema(const TreeSchema& fan) {
    const auto& f = std::get<schema_node::Fan>(fan.node().v);
    if (f.tail.isDiag()) return std::nullopt;
    auto pickOf = [](const TreeSchema& b) {
        return b.isEmpty() ? TreeSchema::empty() : TreeSchema::singleton(canonicalPick(b));
    };
    std::vector<TreeSchema> heads;
    for (const auto& h : f.heads) heads.push_back(pickOf(h));
    return TreeSchema::fan(std::move(heads), SchemaSeq::constant(pickOf(f.tail.item)));
}

// ---------------------------------------------------------------------------

enum class Tri { Yes, No, Unknown };

inline const char* toString(Tri t) {
    switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "unknown";
    }
    return "";
}

struct Containment {
    Tri verdict = Tri::Yes;
    std::optional<Seq> counterexample;  // an element of the left side outside the right
};

namespace detail {

// Structural comparison of child views.  Pairs on the current path are
// assumed contained: any counterexample is found at finite depth.
class SchemaComparer {
public:
    Containment compare(const TreeSchema& a, const TreeSchema& b, const Seq& path) {
        if (a.isEmpty() || a == b || std::holds_alternative<schema_node::Full>(b.node().v)) return {};
        if (b.isEmpty()) return {Tri::No, concat(path, canonicalPick(a))};
        std::string pair = a.key() + "|" + b.key();
        if (onPath_.count(pair)) return {};
        if (path.size() > kMaxDepth) return {Tri::Unknown, {}};
        ChildView va = view(a);
        ChildView vb = view(b);
        if (va.hasRoot && !vb.hasRoot) return {Tri::No, path};
        onPath_.insert(pair);
        Containment out = children(va, vb, path);
        onPath_.erase(pair);
        return out;
    }

private:
    static constexpr std::size_t kMaxDepth = 48;

    Containment children(const ChildView& va, const ChildView& vb, const Seq& path) {
        Containment out;
        const std::size_t m = std::max(va.children.size(), vb.children.size());
        for (std::uint64_t i = 0; i < m; ++i) {
            Containment c = compare(va.child(i), vb.child(i), concat(path, Seq{i}));
            if (c.verdict == Tri::No) return c;
            if (c.verdict == Tri::Unknown) out.verdict = Tri::Unknown;
        }
        SchemaSeq ra = va.rest.shifted(m - va.children.size());
        SchemaSeq rb = vb.rest.shifted(m - vb.children.size());
        if (ra.isNone()) return out;
        if (!rb.isDiag() && std::holds_alternative<schema_node::Full>(rb.item.node().v)) return out;
        if (!ra.isDiag() && !rb.isDiag()) {
            Containment c = compare(ra.item, rb.item, concat(path, Seq{m}));
            if (c.verdict != Tri::Yes) return c;
            return out;
        }
        if (ra == rb) return out;
        if (rb.isNone()) return {Tri::No, concat(concat(path, Seq{m}), canonicalPick(ra.block(0)))};
        return {Tri::Unknown, {}};
    }

    std::set<std::string> onPath_;
};

}  // namespace detail

inline Containment subsetOf(const TreeSchema& a, const TreeSchema& b) {
    return detail::SchemaComparer{}.compare(a, b, {});
}

/// Conservative containment of a query set in a schema.
inline Containment subsetOf(const QueryTerm& q, const TreeSchema& s) {
    using namespace query_node;
    return std::visit(Overloaded{
        [&](const Schema& x) { return subsetOf(x.t, s); },
        [&](const FinSet& f) -> Containment {
            for (const auto& u : f.elems)
                if (!memberElem(u, s)) return {Tri::No, u};
            return {};
        },
        [&](const Transversal& t) -> Containment {
            if (subsetOf(t.fan, s).verdict == Tri::Yes) return {};
            if (auto ts = transversalSchema(t.fan)) return subsetOf(*ts, s);
            const auto& f = std::get<schema_node::Fan>(t.fan.node().v);
            for (std::uint64_t i = 0; i < f.heads.size(); ++i) {
                if (f.heads[i].isEmpty()) continue;
                Seq u = concat(Seq{i}, canonicalPick(f.heads[i]));
                if (!memberElem(u, s)) return {Tri::No, u};
            }
            return {Tri::Unknown, {}};
        },
        [&](const Union& x) -> Containment {
            Containment a = subsetOf(x.a, s);
            if (a.verdict == Tri::No) return a;
            Containment b = subsetOf(x.b, s);
            if (b.verdict == Tri::No) return b;
            if (a.verdict == Tri::Yes && b.verdict == Tri::Yes) return {};
            return {Tri::Unknown, {}};
        },
    }, q.node().v);
}

/// Containment of one query in another; only schema and union right-hand
/// sides are compared.
inline Containment subsetOfQuery(const QueryTerm& w, const QueryTerm& q) {
    using namespace query_node;
    if (w == q) return {};
    if (auto* s = std::get_if<Schema>(&q.node().v)) return subsetOf(w, s->t);
    if (auto* u = std::get_if<Union>(&q.node().v)) {
        if (subsetOfQuery(w, u->a).verdict == Tri::Yes || subsetOfQuery(w, u->b).verdict == Tri::Yes) return {};
    }
    return {Tri::Unknown, {}};
}

inline void requireSubset(const QueryTerm& q, const IdealExpr& target) {
    TreeSchema s = compile(target);
    Containment c = subsetOf(q, s);
    if (c.verdict == Tri::No)
        throw NotASubset(q.text() + " is not contained in " + s.key() + " (witness " +
                         toString(*c.counterexample) + ")");
    if (c.verdict == Tri::Unknown)
        throw UnknownContainment("cannot decide whether " + q.text() + " is contained in " + s.key());
}

/// q in the restriction of the well-founded-tree ideal to compile(target).
inline bool memberOf(const QueryTerm& q, const IdealExpr& target) {
    requireSubset(q, target);
    return qInWf(q);
}

/// q in the orthogonal of that restriction (the dominated sets).
inline bool memberPerp(const QueryTerm& q, const IdealExpr& target) {
    requireSubset(q, target);
    return qInId(q);
}

// ---------------------------------------------------------------------------

namespace detail {

inline TreeSchema placeAt(bool spineShape, std::size_t i, TreeSchema inner) {
    std::vector<TreeSchema> heads(i + 1);
    heads[i] = std::move(inner);
    return spineShape ? TreeSchema::spine(std::move(heads), SchemaSeq::none())
                      : TreeSchema::fan(std::move(heads), SchemaSeq::none());
}

/// Infinite dominated subset of a schema outside the well-founded ideal.
inline TreeSchema frechetSchema(const TreeSchema& t) {
    using namespace schema_node;
    return std::visit(Overloaded{
        [](const Chain&) { return TreeSchema::chain(); },
        [](const Full&) { return TreeSchema::chain(); },
        [](const Rooted& r) { return frechetSchema(r.inner); },
        [](const Fan& f) {
            for (std::size_t i = 0; i < f.heads.size(); ++i)
                if (!inWf(f.heads[i])) return placeAt(false, i, frechetSchema(f.heads[i]));
            return placeAt(false, f.heads.size(), frechetSchema(f.tail.block(0)));
        },
        [](const Spine& s) {
            for (std::size_t i = 0; i < s.heads.size(); ++i)
                if (!inWf(s.heads[i])) return placeAt(true, i, frechetSchema(s.heads[i]));
            TreeSchema first = s.tail.block(0);
            if (!inWf(first)) return placeAt(true, s.heads.size(), frechetSchema(first));
            // Every copy is well founded: keep one fixed element per copy.
            std::vector<TreeSchema> skip(s.heads.size());
            return TreeSchema::spine(std::move(skip),
                                     SchemaSeq::constant(TreeSchema::singleton(canonicalPick(first))));
        },
        [](const auto&) -> TreeSchema { throw InvariantViolation("well-founded leaf has no Frechet witness"); },
    }, t.node().v);
}

inline std::optional<TreeSchema> frechetQuery(const QueryTerm& q) {
    using namespace query_node;
    return std::visit(Overloaded{
        [](const Schema& s) -> std::optional<TreeSchema> {
            if (inWf(s.t)) return std::nullopt;
            return frechetSchema(s.t);
        },
        [](const Union& u) -> std::optional<TreeSchema> {
            if (auto w = frechetQuery(u.a)) return w;
            return frechetQuery(u.b);
        },
        [](const auto&) -> std::optional<TreeSchema> { return std::nullopt; },
    }, q.node().v);
}

}  // namespace detail

/// Infinite subset of q lying in the orthogonal, for q positive in the
/// restriction to compile(target).
inline QueryTerm frechetWitness(const QueryTerm& q, const IdealExpr& target) {
    if (memberOf(q, target))
        throw NotPositive(q.text() + " belongs to the restriction; it has no orthogonal infinite subset");
    auto w = detail::frechetQuery(q);
    if (!w) throw InvariantViolation("positive query without a positive schema part: " + q.text());
    return QueryTerm::schema(*w);
}

// ---------------------------------------------------------------------------

inline IdWitness idWitness(const QueryTerm& q) {
    using namespace query_node;
    return std::visit(Overloaded{
        [](const Schema& s) { return idWitness(s.t); },
        [](const FinSet& f) {
            EventuallyPeriodic b;
            for (const auto& u : f.elems) b = pointwiseMax(b, EventuallyPeriodic{u, {0}});
            return IdWitness{true, b, {}};
        },
        [](const Transversal& t) {
            const auto& f = std::get<schema_node::Fan>(t.fan.node().v);
            if (f.tail.isNone()) {
                EventuallyPeriodic b;
                for (std::uint64_t i = 0; i < f.heads.size(); ++i)
                    if (!f.heads[i].isEmpty())
                        b = pointwiseMax(b, EventuallyPeriodic{concat(Seq{i}, canonicalPick(f.heads[i])), {0}});
                return IdWitness{true, b, {}};
            }
            return IdWitness{false, {}, unboundedFamily(t.fan)};
        },
        [](const Union& u) {
            IdWitness a = idWitness(u.a);
            if (!a.dominated) return a;
            IdWitness b = idWitness(u.b);
            if (!b.dominated) return b;
            return IdWitness{true, pointwiseMax(a.branch, b.branch), {}};
        },
    }, q.node().v);
}

// ---------------------------------------------------------------------------
// Query grammar: tree schemas, finset{<seq>,...}, transversal(<fan>), union(q,q)

namespace detail {

inline QueryTerm parseQuery(Cursor& c) {
    std::string word = c.identifier();
    if (word == "finset") {
        c.expect('{');
        std::vector<Seq> elems;
        if (c.peek() != '}') {
            elems.push_back(parseSeq(c));
            while (c.accept(',')) elems.push_back(parseSeq(c));
        }
        c.expect('}');
        return QueryTerm::finSet(std::move(elems));
    }
    if (word == "transversal") {
        c.expect('(');
        TreeSchema t = parseSchema(c);
        c.expect(')');
        if (!std::holds_alternative<schema_node::Fan>(t.node().v)) c.fail("transversal needs a fan");
        return QueryTerm::transversal(std::move(t));
    }
    if (word == "union") {
        c.expect('(');
        QueryTerm a = parseQuery(c);
        c.expect(',');
        QueryTerm b = parseQuery(c);
        c.expect(')');
        return QueryTerm::unite(std::move(a), std::move(b));
    }
    return QueryTerm::schema(parseSchemaAfterWord(c, word));
}

}  // namespace detail

inline QueryTerm parseQuery(std::string_view text) {
    detail::Cursor c(text);
    QueryTerm q = detail::parseQuery(c);
    c.expectEnd();
    return q;
}

}  // namespace bideal

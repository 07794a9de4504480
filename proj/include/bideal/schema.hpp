#pragma once

// Finite terms denoting subsets of N^{<w}: fans of blocks under <n>, spines of
// copies hung at 0^n 1 along the zero branch, chains, and diagonal families of
// compiled blocks.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bideal/detail/cursor.hpp"
#include "bideal/error.hpp"
#include "bideal/ideal.hpp"
#include "bideal/ordinal.hpp"

namespace bideal {

using Seq = std::vector<std::uint64_t>;

inline std::string toString(const Seq& s) {
    std::string out = "<";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + ">";
}

inline Seq concat(Seq a, const Seq& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline bool isPrefix(const Seq& a, const Seq& b) {
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

/// Shortlex order: shorter first, then lexicographic.
inline bool shortlexLess(const Seq& a, const Seq& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

class TreeSchema;

/// Block sequence of a fan or spine beyond its explicit heads.
struct SchemaSeq;

class TreeSchema {
public:
    struct Node;

    TreeSchema();  // empty

    static TreeSchema empty();
    static TreeSchema eps();
    static TreeSchema chain();
    static TreeSchema full();
    /// {<>} together with x.
    static TreeSchema rooted(TreeSchema x);
    static TreeSchema fan(std::vector<TreeSchema> heads, SchemaSeq tail);
    static TreeSchema spine(std::vector<TreeSchema> heads, SchemaSeq tail);
    static TreeSchema singleton(const Seq& s);

    const Node& node() const { return *node_; }
    const std::string& key() const;
    std::size_t size() const;
    bool isEmpty() const;

    friend bool operator==(const TreeSchema& a, const TreeSchema& b) { return a.key() == b.key(); }

private:
    explicit TreeSchema(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static TreeSchema make(auto&& v);
    std::shared_ptr<const Node> node_;
};

struct SchemaSeq {
    enum class Kind { Const, QDiag, PDiag };

    Kind kind = Kind::Const;
    TreeSchema item;      // Const only
    Ordinal limit;        // diagonals only
    std::uint64_t offset = 0;

    static SchemaSeq constant(TreeSchema t) { return {Kind::Const, std::move(t), {}, 0}; }
    static SchemaSeq none() { return constant(TreeSchema::empty()); }
    static SchemaSeq diag(FormKind k, Ordinal lambda, std::uint64_t offset = 0) {
        if (!isLimit(lambda)) throw NotLimit("diagonal needs a limit ordinal, got " + toString(lambda));
        if (k == FormKind::PQ) throw InvariantViolation("diagonal kind must be P or Q");
        return {k == FormKind::P ? Kind::PDiag : Kind::QDiag, TreeSchema::empty(), std::move(lambda), offset};
    }

    bool isDiag() const { return kind != Kind::Const; }
    bool isNone() const { return kind == Kind::Const && item.isEmpty(); }
    FormKind diagKind() const { return kind == Kind::PDiag ? FormKind::P : FormKind::Q; }

    /// Block n of the sequence.
    TreeSchema block(std::uint64_t n) const;

    SchemaSeq shifted(std::uint64_t k) const {
        SchemaSeq s = *this;
        if (isDiag()) s.offset += k;
        return s;
    }

    std::string text() const {
        switch (kind) {
        case Kind::Const: return "const(" + item.key() + ")";
        case Kind::QDiag:
        case Kind::PDiag: {
            std::string s = (kind == Kind::QDiag ? "qdiag(" : "pdiag(") + toString(limit);
            if (offset) s += "," + std::to_string(offset);
            return s + ")";
        }
        }
        return "";
    }

    friend bool operator==(const SchemaSeq& a, const SchemaSeq& b) { return a.text() == b.text(); }
};

namespace schema_node {
struct Empty {};
struct Eps {};
struct Chain {};
struct Full {};
struct Rooted { TreeSchema inner; };
struct Fan { std::vector<TreeSchema> heads; SchemaSeq tail; };
struct Spine { std::vector<TreeSchema> heads; SchemaSeq tail; };
}  // namespace schema_node

struct TreeSchema::Node {
    std::variant<schema_node::Empty, schema_node::Eps, schema_node::Chain, schema_node::Full,
                 schema_node::Rooted, schema_node::Fan, schema_node::Spine>
        v;
    std::string key;
    std::size_t size = 1;
};

namespace detail {

inline std::string headsText(const std::vector<TreeSchema>& hs) {
    std::string s = "[";
    for (std::size_t i = 0; i < hs.size(); ++i) s += (i ? "," : "") + hs[i].key();
    return s + "]";
}

inline std::size_t seqSize(const SchemaSeq& s) { return s.isDiag() ? 1 : s.item.size(); }

}  // namespace detail

TreeSchema TreeSchema::make(auto&& v) {
    using namespace schema_node;
    auto n = std::make_shared<Node>();
    n->v = std::forward<decltype(v)>(v);
    std::visit(Overloaded{
        [&](const Empty&) { n->key = "empty"; },
        [&](const Eps&) { n->key = "eps"; },
        [&](const Chain&) { n->key = "chain"; },
        [&](const Full&) { n->key = "full"; },
        [&](const Rooted& r) {
            n->key = "root(" + r.inner.key() + ")";
            n->size = 1 + r.inner.size();
        },
        [&](const Fan& f) {
            n->key = "fan(" + detail::headsText(f.heads) + ";" + f.tail.text() + ")";
            n->size = 1 + detail::seqSize(f.tail);
            for (const auto& h : f.heads) n->size += h.size();
        },
        [&](const Spine& f) {
            n->key = "spine(" + detail::headsText(f.heads) + ";" + f.tail.text() + ")";
            n->size = 1 + detail::seqSize(f.tail);
            for (const auto& h : f.heads) n->size += h.size();
        },
    }, n->v);
    return TreeSchema(std::move(n));
}

inline TreeSchema::TreeSchema() {
    static const std::shared_ptr<const Node> emptyNode = [] {
        auto n = std::make_shared<Node>();
        n->key = "empty";
        return n;
    }();
    node_ = emptyNode;
}

inline const std::string& TreeSchema::key() const { return node_->key; }
inline std::size_t TreeSchema::size() const { return node_->size; }
inline bool TreeSchema::isEmpty() const { return std::holds_alternative<schema_node::Empty>(node_->v); }

inline TreeSchema TreeSchema::empty() { return TreeSchema(); }
inline TreeSchema TreeSchema::eps() { return make(schema_node::Eps{}); }
inline TreeSchema TreeSchema::chain() { return make(schema_node::Chain{}); }
inline TreeSchema TreeSchema::full() { return make(schema_node::Full{}); }

inline TreeSchema TreeSchema::rooted(TreeSchema x) {
    using namespace schema_node;
    const auto& v = x.node().v;
    if (std::holds_alternative<Empty>(v) || std::holds_alternative<Eps>(v)) return eps();
    if (std::holds_alternative<Full>(v) || std::holds_alternative<Rooted>(v)) return x;
    return make(Rooted{std::move(x)});
}

inline TreeSchema TreeSchema::fan(std::vector<TreeSchema> heads, SchemaSeq tail) {
    if (tail.isNone()) {
        while (!heads.empty() && heads.back().isEmpty()) heads.pop_back();
        if (heads.empty()) return empty();
    }
    return make(schema_node::Fan{std::move(heads), std::move(tail)});
}

inline TreeSchema TreeSchema::spine(std::vector<TreeSchema> heads, SchemaSeq tail) {
    if (tail.isNone()) {
        while (!heads.empty() && heads.back().isEmpty()) heads.pop_back();
        if (heads.empty()) return empty();
    }
    return make(schema_node::Spine{std::move(heads), std::move(tail)});
}

inline TreeSchema TreeSchema::singleton(const Seq& s) {
    TreeSchema t = eps();
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
        std::vector<TreeSchema> heads(*it + 1);
        heads.back() = t;
        t = fan(std::move(heads), SchemaSeq::none());
    }
    return t;
}

inline std::ostream& operator<<(std::ostream& os, const TreeSchema& t) { return os << t.key(); }
inline std::string toString(const TreeSchema& t) { return t.key(); }

// ---------------------------------------------------------------------------
// Compilation of normal forms into subsets of N^{<w}:
//   P(0) -> fan([];const(eps))        Q(0) -> chain
//   P(a+1) -> fan([];const(Q(a)))     Q(a+1) -> spine([];const(P(a)))
//   P(l) -> fan([];qdiag(l))          Q(l) -> spine([];pdiag(l))
//   PQ(a) -> fan([P(a),Q(a)];const(empty))

inline TreeSchema compileCanonical(const CanonicalForm& c) {
    static std::mutex mu;
    static std::map<std::string, TreeSchema> memo;
    const std::string k = toString(c);
    {
        std::lock_guard lock(mu);
        if (auto it = memo.find(k); it != memo.end()) return it->second;
    }
    TreeSchema out;
    if (c.kind == FormKind::PQ) {
        out = TreeSchema::fan({compileCanonical({FormKind::P, c.rank}), compileCanonical({FormKind::Q, c.rank})},
                              SchemaSeq::none());
    } else {
        const bool isP = c.kind == FormKind::P;
        switch (ordKind(c.rank)) {
        case OrdinalKind::Zero:
            out = isP ? TreeSchema::fan({}, SchemaSeq::constant(TreeSchema::eps())) : TreeSchema::chain();
            break;
        case OrdinalKind::Successor: {
            Ordinal pred = ordPred(c.rank);
            if (isP)
                out = TreeSchema::fan({}, SchemaSeq::constant(compileCanonical({FormKind::Q, pred})));
            else
                out = TreeSchema::spine({}, SchemaSeq::constant(compileCanonical({FormKind::P, pred})));
            break;
        }
        case OrdinalKind::Limit:
            if (isP)
                out = TreeSchema::fan({}, SchemaSeq::diag(FormKind::Q, c.rank));
            else
                out = TreeSchema::spine({}, SchemaSeq::diag(FormKind::P, c.rank));
            break;
        }
    }
    std::lock_guard lock(mu);
    return memo.emplace(k, out).first->second;
}

inline TreeSchema compile(const IdealExpr& e) { return compileCanonical(normalize(e)); }

inline TreeSchema SchemaSeq::block(std::uint64_t n) const {
    if (kind == Kind::Const) return item;
    return compileCanonical({diagKind(), fundSeq(limit, n + offset)});
}

// ---------------------------------------------------------------------------
// Uniform child view: whether <> belongs to the set, and the set
// {v : <i> v in S} for every i.

struct ChildView {
    bool hasRoot = false;
    std::vector<TreeSchema> children;  // indices 0..children.size()-1
    SchemaSeq rest = SchemaSeq::none();  // index children.size()+j gets rest.block(j)

    TreeSchema child(std::uint64_t i) const {
        if (i < children.size()) return children[i];
        return rest.block(i - children.size());
    }
};

inline ChildView view(const TreeSchema& t) {
    using namespace schema_node;
    return std::visit(Overloaded{
        [](const Empty&) { return ChildView{}; },
        [](const Eps&) { return ChildView{true, {}, SchemaSeq::none()}; },
        [](const Chain&) { return ChildView{false, {TreeSchema::rooted(TreeSchema::chain())}, SchemaSeq::none()}; },
        [](const Full&) { return ChildView{true, {}, SchemaSeq::constant(TreeSchema::full())}; },
        [](const Rooted& r) {
            ChildView v = view(r.inner);
            v.hasRoot = true;
            return v;
        },
        [](const Fan& f) { return ChildView{false, f.heads, f.tail}; },
        [](const Spine& s) {
            TreeSchema rest;
            TreeSchema first;
            if (s.heads.empty()) {
                rest = TreeSchema::spine({}, s.tail.shifted(1));
                first = s.tail.block(0);
            } else {
                rest = TreeSchema::spine({s.heads.begin() + 1, s.heads.end()}, s.tail);
                first = s.heads.front();
            }
            return ChildView{false, {rest, first}, SchemaSeq::none()};
        },
    }, t.node().v);
}

/// {v : u v in t}; empty when nothing in t extends u.
inline TreeSchema coneOf(const TreeSchema& t, const Seq& u) {
    TreeSchema cur = t;
    for (auto x : u) {
        if (cur.isEmpty()) break;
        if (std::holds_alternative<schema_node::Full>(cur.node().v)) break;
        cur = view(cur).child(x);
    }
    return cur;
}

inline bool memberElem(const Seq& u, const TreeSchema& t) { return view(coneOf(t, u)).hasRoot; }

/// u is a node of the tree generated by t.
inline bool inGenerated(const Seq& u, const TreeSchema& t) { return !coneOf(t, u).isEmpty(); }

// ---------------------------------------------------------------------------

inline bool isFinite(const TreeSchema& t) {
    using namespace schema_node;
    return std::visit(Overloaded{
        [](const Empty&) { return true; },
        [](const Eps&) { return true; },
        [](const Chain&) { return false; },
        [](const Full&) { return false; },
        [](const Rooted& r) { return isFinite(r.inner); },
        [](const auto& f) {
            if (!f.tail.isNone()) return false;
            return std::all_of(f.heads.begin(), f.heads.end(), [](const TreeSchema& h) { return isFinite(h); });
        },
    }, t.node().v);
}

/// Membership of the denoted set in the ideal generated by well-founded trees.
inline bool inWf(const TreeSchema& t) {
    using namespace schema_node;
    auto heads = [](const std::vector<TreeSchema>& hs) {
        return std::all_of(hs.begin(), hs.end(), [](const TreeSchema& h) { return inWf(h); });
    };
    return std::visit(Overloaded{
        [](const Empty&) { return true; },
        [](const Eps&) { return true; },
        [](const Chain&) { return false; },
        [](const Full&) { return false; },
        [](const Rooted& r) { return inWf(r.inner); },
        [&](const Fan& f) {
            // Diagonal blocks compile ranks >= 1, none of which is P(0).
            if (f.tail.isDiag()) return false;
            return heads(f.heads) && inWf(f.tail.item);
        },
        [&](const Spine& s) { return s.tail.isNone() && heads(s.heads); },
    }, t.node().v);
}

/// Membership of the denoted set in the ideal of branch-dominated sets.
inline bool inId(const TreeSchema& t) {
    using namespace schema_node;
    auto heads = [](const std::vector<TreeSchema>& hs) {
        return std::all_of(hs.begin(), hs.end(), [](const TreeSchema& h) { return inId(h); });
    };
    return std::visit(Overloaded{
        [](const Empty&) { return true; },
        [](const Eps&) { return true; },
        [](const Chain&) { return true; },
        [](const Full&) { return false; },
        [](const Rooted& r) { return inId(r.inner); },
        [&](const Fan& f) { return f.tail.isNone() && heads(f.heads); },
        [&](const Spine& s) {
            // Diagonal copies compile ranks >= 1, none of which is Q(0).
            if (s.tail.isDiag()) return false;
            return heads(s.heads) && inId(s.tail.item);
        },
    }, t.node().v);
}

/// Least-index element: lowest nonempty block first, then recursively.
inline Seq canonicalPick(const TreeSchema& t) {
    using namespace schema_node;
    if (t.isEmpty()) throw InvariantViolation("canonicalPick of the empty schema");
    return std::visit(Overloaded{
        [](const Chain&) { return Seq{0}; },
        [&](const Fan& f) {
            for (std::size_t i = 0; i < f.heads.size(); ++i)
                if (!f.heads[i].isEmpty()) return concat(Seq{i}, canonicalPick(f.heads[i]));
            return concat(Seq{f.heads.size()}, canonicalPick(f.tail.block(0)));
        },
        [&](const Spine& s) {
            for (std::size_t i = 0; i < s.heads.size(); ++i)
                if (!s.heads[i].isEmpty()) {
                    Seq p(i, 0);
                    p.push_back(1);
                    return concat(p, canonicalPick(s.heads[i]));
                }
            Seq p(s.heads.size(), 0);
            p.push_back(1);
            return concat(p, canonicalPick(s.tail.block(0)));
        },
        [](const auto&) { return Seq{}; },
    }, t.node().v);
}

/// Bound on element length; nullopt when lengths are unbounded.
inline std::optional<std::uint64_t> maxLength(const TreeSchema& t) {
    using namespace schema_node;
    using R = std::optional<std::uint64_t>;
    auto over = [](std::uint64_t shift, const std::vector<TreeSchema>& hs, bool spineShape) -> R {
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < hs.size(); ++i) {
            if (hs[i].isEmpty()) continue;
            R h = maxLength(hs[i]);
            if (!h) return std::nullopt;
            m = std::max<std::uint64_t>(m, (spineShape ? i + 1 : shift) + *h);
        }
        return m;
    };
    return std::visit(Overloaded{
        [](const Empty&) -> R { return 0; },
        [](const Eps&) -> R { return 0; },
        [](const Chain&) -> R { return std::nullopt; },
        [](const Full&) -> R { return std::nullopt; },
        [](const Rooted& r) -> R { return maxLength(r.inner); },
        [&](const Fan& f) -> R {
            if (f.tail.isDiag()) return std::nullopt;
            R h = over(1, f.heads, false);
            R tl = maxLength(f.tail.item);
            if (!h || !tl) return std::nullopt;
            return f.tail.isNone() ? *h : std::max(*h, 1 + *tl);
        },
        [&](const Spine& s) -> R {
            if (!s.tail.isNone()) return std::nullopt;
            return over(0, s.heads, true);
        },
    }, t.node().v);
}

// ---------------------------------------------------------------------------
// empty | eps | chain | full | root(t) | fan([t,...]; tail) | spine([t,...]; tail)
// tail := const(t) | qdiag(<ord>[, n]) | pdiag(<ord>[, n])

namespace detail {

inline TreeSchema parseSchemaAfterWord(Cursor& c, const std::string& word);

inline TreeSchema parseSchema(Cursor& c) { return parseSchemaAfterWord(c, c.identifier()); }

inline SchemaSeq parseTail(Cursor& c) {
    std::string word = c.identifier();
    c.expect('(');
    if (word == "const") {
        TreeSchema t = parseSchema(c);
        c.expect(')');
        return SchemaSeq::constant(std::move(t));
    }
    if (word == "qdiag" || word == "pdiag") {
        Ordinal lam = parseOrdinalSum(c);
        std::uint64_t off = 0;
        if (c.accept(',')) off = c.natural();
        c.expect(')');
        return SchemaSeq::diag(word == "pdiag" ? FormKind::P : FormKind::Q, std::move(lam), off);
    }
    c.fail("expected const(...), qdiag(...) or pdiag(...)");
}

inline TreeSchema parseSchemaAfterWord(Cursor& c, const std::string& word) {
    if (word == "empty") return TreeSchema::empty();
    if (word == "eps") return TreeSchema::eps();
    if (word == "chain") return TreeSchema::chain();
    if (word == "full") return TreeSchema::full();
    if (word == "root") {
        c.expect('(');
        TreeSchema t = parseSchema(c);
        c.expect(')');
        return TreeSchema::rooted(std::move(t));
    }
    if (word == "fan" || word == "spine") {
        c.expect('(');
        c.expect('[');
        std::vector<TreeSchema> heads;
        if (c.peek() != ']') {
            heads.push_back(parseSchema(c));
            while (c.accept(',')) heads.push_back(parseSchema(c));
        }
        c.expect(']');
        c.expect(';');
        SchemaSeq tail = parseTail(c);
        c.expect(')');
        return word == "fan" ? TreeSchema::fan(std::move(heads), std::move(tail))
                             : TreeSchema::spine(std::move(heads), std::move(tail));
    }
    c.fail(word.empty() ? "expected a tree schema" : "unknown schema constructor '" + word + "'");
}

inline Seq parseSeq(Cursor& c) {
    c.expect('<');
    Seq s;
    if (c.peek() != '>') {
        s.push_back(c.natural());
        while (c.accept(',')) s.push_back(c.natural());
    }
    c.expect('>');
    return s;
}

}  // namespace detail

inline TreeSchema parseSchema(std::string_view text) {
    detail::Cursor c(text);
    TreeSchema t = detail::parseSchema(c);
    c.expectEnd();
    return t;
}

inline Seq parseSeq(std::string_view text) {
    detail::Cursor c(text);
    Seq s = detail::parseSeq(c);
    c.expectEnd();
    return s;
}

}  // namespace bideal

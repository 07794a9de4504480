#pragma once

// Expressions over the family generated by FIN under countable direct sums and
// orthogonals, and their normal forms P(a), Q(a), PQ(a).

#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bideal/detail/cursor.hpp"
#include "bideal/error.hpp"
#include "bideal/ordinal.hpp"

namespace bideal {

enum class FormKind { P, Q, PQ };

/// Normal form of a member of the family: kind x rank.
struct CanonicalForm {
    FormKind kind = FormKind::P;
    Ordinal rank;

    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

inline std::string toString(const CanonicalForm& c) {
    if (c.rank.isZero()) {
        if (c.kind == FormKind::P) return "POW";
        if (c.kind == FormKind::Q) return "FIN";
    }
    const char* k = c.kind == FormKind::P ? "P" : c.kind == FormKind::Q ? "Q" : "PQ";
    return std::string(k) + "(" + toString(c.rank) + ")";
}

inline std::ostream& operator<<(std::ostream& os, const CanonicalForm& c) { return os << toString(c); }

/// Direct sum of two normal forms.  Higher rank absorbs lower rank whatever
/// the kinds; at equal rank P+P=P, Q+Q=Q and anything mixed is PQ.
inline CanonicalForm combine(const CanonicalForm& a, const CanonicalForm& b) {
    if (a.rank > b.rank) return a;
    if (b.rank > a.rank) return b;
    if (a.kind == b.kind) return a;
    return {FormKind::PQ, a.rank};
}

inline CanonicalForm perpC(const CanonicalForm& c) {
    switch (c.kind) {
    case FormKind::P: return {FormKind::Q, c.rank};
    case FormKind::Q: return {FormKind::P, c.rank};
    case FormKind::PQ: return c;
    }
    return c;
}

/// omega-fold sum of copies of c.
inline CanonicalForm omegaSumC(const CanonicalForm& c) {
    if (c.kind == FormKind::P) return c;
    return {FormKind::P, ordSucc(c.rank)};
}

// ---------------------------------------------------------------------------

class IdealExpr;

namespace ideal_node {
struct Fin {};
struct Pow {};
struct P { Ordinal rank; };
struct Q { Ordinal rank; };
struct Perp;
struct SumFin;
struct OmegaSum;
struct LimSum { Ordinal limit; };
struct MixSum;
}  // namespace ideal_node

class IdealExpr {
public:
    struct Node;

    IdealExpr();  // FIN

    static IdealExpr fin();
    static IdealExpr pow();
    static IdealExpr p(Ordinal a);
    static IdealExpr q(Ordinal a);
    static IdealExpr perp(IdealExpr e);
    static IdealExpr sum(std::vector<IdealExpr> es);
    static IdealExpr omega(IdealExpr e);
    static IdealExpr limSum(Ordinal lambda);
    /// tail must be an omega(...) or limsum(...) term.
    static IdealExpr mix(std::vector<IdealExpr> heads, IdealExpr tail);

    const Node& node() const { return *node_; }

    std::size_t size() const;

    friend bool operator==(const IdealExpr& a, const IdealExpr& b);

private:
    explicit IdealExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

namespace ideal_node {
struct Perp { IdealExpr child; };
struct SumFin { std::vector<IdealExpr> children; };
struct OmegaSum { IdealExpr child; };
struct MixSum { std::vector<IdealExpr> heads; IdealExpr tail; };
}  // namespace ideal_node

struct IdealExpr::Node {
    std::variant<ideal_node::Fin, ideal_node::Pow, ideal_node::P, ideal_node::Q, ideal_node::Perp,
                 ideal_node::SumFin, ideal_node::OmegaSum, ideal_node::LimSum, ideal_node::MixSum>
        v;
};

inline IdealExpr::IdealExpr() : node_(std::make_shared<const Node>(Node{ideal_node::Fin{}})) {}
inline IdealExpr IdealExpr::fin() { return IdealExpr(); }
inline IdealExpr IdealExpr::pow() { return IdealExpr(std::make_shared<const Node>(Node{ideal_node::Pow{}})); }
inline IdealExpr IdealExpr::p(Ordinal a) {
    return IdealExpr(std::make_shared<const Node>(Node{ideal_node::P{std::move(a)}}));
}
inline IdealExpr IdealExpr::q(Ordinal a) {
    return IdealExpr(std::make_shared<const Node>(Node{ideal_node::Q{std::move(a)}}));
}
inline IdealExpr IdealExpr::perp(IdealExpr e) {
    return IdealExpr(std::make_shared<const Node>(Node{ideal_node::Perp{std::move(e)}}));
}
inline IdealExpr IdealExpr::sum(std::vector<IdealExpr> es) {
    if (es.empty()) throw InvariantViolation("sum() needs at least one summand");
    return IdealExpr(std::make_shared<const Node>(Node{ideal_node::SumFin{std::move(es)}}));
}
inline IdealExpr IdealExpr::omega(IdealExpr e) {
    return IdealExpr(std::make_shared<const Node>(Node{ideal_node::OmegaSum{std::move(e)}}));
}
inline IdealExpr IdealExpr::limSum(Ordinal lambda) {
    return IdealExpr(std::make_shared<const Node>(Node{ideal_node::LimSum{std::move(lambda)}}));
}
inline IdealExpr IdealExpr::mix(std::vector<IdealExpr> heads, IdealExpr tail) {
    const auto& tv = tail.node().v;
    if (!std::holds_alternative<ideal_node::OmegaSum>(tv) && !std::holds_alternative<ideal_node::LimSum>(tv))
        throw InvariantViolation("mix tail must be omega(...) or limsum(...)");
    return IdealExpr(std::make_shared<const Node>(Node{ideal_node::MixSum{std::move(heads), std::move(tail)}}));
}

template <class... Ts>
struct Overloaded : Ts... { using Ts::operator()...; };
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

inline std::size_t IdealExpr::size() const {
    using namespace ideal_node;
    return std::visit(Overloaded{
        [](const Perp& x) { return 1 + x.child.size(); },
        [](const SumFin& x) {
            std::size_t s = 1;
            for (const auto& c : x.children) s += c.size();
            return s;
        },
        [](const OmegaSum& x) { return 1 + x.child.size(); },
        [](const MixSum& x) {
            std::size_t s = 1 + x.tail.size();
            for (const auto& c : x.heads) s += c.size();
            return s;
        },
        [](const auto&) -> std::size_t { return 1; },
    }, node_->v);
}

inline std::string toString(const IdealExpr& e);

inline bool operator==(const IdealExpr& a, const IdealExpr& b) {
    return a.node_ == b.node_ || toString(a) == toString(b);
}

// ---------------------------------------------------------------------------

/// Bottom-up rewrite to the unique normal form.
inline CanonicalForm normalize(const IdealExpr& e) {
    using namespace ideal_node;
    return std::visit(Overloaded{
        [](const Fin&) { return CanonicalForm{FormKind::Q, {}}; },
        [](const Pow&) { return CanonicalForm{FormKind::P, {}}; },
        [](const P& x) { return CanonicalForm{FormKind::P, x.rank}; },
        [](const Q& x) { return CanonicalForm{FormKind::Q, x.rank}; },
        [](const Perp& x) { return perpC(normalize(x.child)); },
        [](const SumFin& x) {
            CanonicalForm acc = normalize(x.children.front());
            for (std::size_t i = 1; i < x.children.size(); ++i) acc = combine(acc, normalize(x.children[i]));
            return acc;
        },
        [](const OmegaSum& x) { return omegaSumC(normalize(x.child)); },
        [](const LimSum& x) {
            if (!isLimit(x.limit))
                throw NotLimit("limsum(" + toString(x.limit) + ") needs a limit ordinal");
            return CanonicalForm{FormKind::P, x.limit};
        },
        [](const MixSum& x) {
            CanonicalForm acc = normalize(x.tail);
            for (const auto& h : x.heads) acc = combine(acc, normalize(h));
            return acc;
        },
    }, e.node().v);
}

inline Ordinal bRank(const IdealExpr& e) { return normalize(e).rank; }

inline bool isoCheck(const IdealExpr& a, const IdealExpr& b) { return normalize(a) == normalize(b); }

inline IdealExpr toExpr(const CanonicalForm& c) {
    switch (c.kind) {
    case FormKind::P: return IdealExpr::p(c.rank);
    case FormKind::Q: return IdealExpr::q(c.rank);
    case FormKind::PQ: return IdealExpr::sum({IdealExpr::p(c.rank), IdealExpr::q(c.rank)});
    }
    return IdealExpr::p(c.rank);
}

// ---------------------------------------------------------------------------
// FIN | POW | P(a) | Q(a) | PQ(a) | perp(e) | sum(e,...) | omega(e) | limsum(a) | mix(e,...; tail)

inline std::string toString(const IdealExpr& e) {
    using namespace ideal_node;
    auto list = [](const std::vector<IdealExpr>& xs) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + toString(xs[i]);
        return s;
    };
    return std::visit(Overloaded{
        [](const Fin&) { return std::string("FIN"); },
        [](const Pow&) { return std::string("POW"); },
        [](const P& x) { return "P(" + toString(x.rank) + ")"; },
        [](const Q& x) { return "Q(" + toString(x.rank) + ")"; },
        [](const Perp& x) { return "perp(" + toString(x.child) + ")"; },
        [&](const SumFin& x) { return "sum(" + list(x.children) + ")"; },
        [](const OmegaSum& x) { return "omega(" + toString(x.child) + ")"; },
        [](const LimSum& x) { return "limsum(" + toString(x.limit) + ")"; },
        [&](const MixSum& x) { return "mix(" + list(x.heads) + ";" + toString(x.tail) + ")"; },
    }, e.node().v);
}

inline std::ostream& operator<<(std::ostream& os, const IdealExpr& e) { return os << toString(e); }

namespace detail {

inline IdealExpr parseIdeal(Cursor& c) {
    auto ordArg = [&] {
        c.expect('(');
        Ordinal a = parseOrdinalSum(c);
        c.expect(')');
        return a;
    };
    std::string word = c.identifier();
    if (word == "FIN") return IdealExpr::fin();
    if (word == "POW") return IdealExpr::pow();
    if (word == "P") return IdealExpr::p(ordArg());
    if (word == "Q") return IdealExpr::q(ordArg());
    if (word == "PQ") {
        Ordinal a = ordArg();
        return IdealExpr::sum({IdealExpr::p(a), IdealExpr::q(a)});
    }
    if (word == "limsum") return IdealExpr::limSum(ordArg());
    if (word == "perp" || word == "omega") {
        c.expect('(');
        IdealExpr child = parseIdeal(c);
        c.expect(')');
        return word == "perp" ? IdealExpr::perp(child) : IdealExpr::omega(child);
    }
    if (word == "sum") {
        c.expect('(');
        std::vector<IdealExpr> xs{parseIdeal(c)};
        while (c.accept(',')) xs.push_back(parseIdeal(c));
        c.expect(')');
        return IdealExpr::sum(std::move(xs));
    }
    if (word == "mix") {
        c.expect('(');
        std::vector<IdealExpr> heads;
        if (c.peek() != ';') {
            heads.push_back(parseIdeal(c));
            while (c.accept(',')) heads.push_back(parseIdeal(c));
        }
        c.expect(';');
        IdealExpr tail = parseIdeal(c);
        c.expect(')');
        const auto& tv = tail.node().v;
        if (!std::holds_alternative<ideal_node::OmegaSum>(tv) && !std::holds_alternative<ideal_node::LimSum>(tv))
            c.fail("mix tail must be omega(...) or limsum(...)");
        return IdealExpr::mix(std::move(heads), std::move(tail));
    }
    c.fail(word.empty() ? "expected an ideal expression" : "unknown ideal constructor '" + word + "'");
}

}  // namespace detail

inline IdealExpr parseIdeal(std::string_view text) {
    detail::Cursor c(text);
    IdealExpr e = detail::parseIdeal(c);
    c.expectEnd();
    return e;
}

}  // namespace bideal

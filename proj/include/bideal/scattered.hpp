#pragma once

// Countable linear orders built from N by reversal, finite and omega-indexed
// sums, plus Q itself; classification of the well-ordered-subset ideal
// restricted to them, and concrete embeddings into the rationals.

#include <boost/multiprecision/cpp_int.hpp>

#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bideal/detail/cursor.hpp"
#include "bideal/error.hpp"
#include "bideal/ideal.hpp"

namespace bideal {

using Rational = boost::multiprecision::cpp_rational;

inline std::string toString(const Rational& q) { return q.str(); }

class LinTerm {
public:
    struct Node;

    static LinTerm nat();
    static LinTerm rev(LinTerm t);
    static LinTerm cat(std::vector<LinTerm> ts);
    static LinTerm osum(std::vector<LinTerm> heads, LinTerm tail);
    static LinTerm rationals();

    const Node& node() const { return *node_; }
    std::string text() const;
    std::size_t size() const;

    friend bool operator==(const LinTerm& a, const LinTerm& b) { return a.text() == b.text(); }

private:
    explicit LinTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

namespace lin_node {
struct Nat {};
struct Rev { LinTerm child; };
struct Cat { std::vector<LinTerm> parts; };
struct OmegaCat { std::vector<LinTerm> heads; LinTerm tail; };
struct RatQ {};
}  // namespace lin_node

struct LinTerm::Node {
    std::variant<lin_node::Nat, lin_node::Rev, lin_node::Cat, lin_node::OmegaCat, lin_node::RatQ> v;
};

inline LinTerm LinTerm::nat() { return LinTerm(std::make_shared<const Node>(Node{lin_node::Nat{}})); }
inline LinTerm LinTerm::rev(LinTerm t) {
    return LinTerm(std::make_shared<const Node>(Node{lin_node::Rev{std::move(t)}}));
}
inline LinTerm LinTerm::cat(std::vector<LinTerm> ts) {
    if (ts.empty()) throw InvariantViolation("cat() needs at least one part");
    return LinTerm(std::make_shared<const Node>(Node{lin_node::Cat{std::move(ts)}}));
}
inline LinTerm LinTerm::osum(std::vector<LinTerm> heads, LinTerm tail) {
    return LinTerm(std::make_shared<const Node>(Node{lin_node::OmegaCat{std::move(heads), std::move(tail)}}));
}
inline LinTerm LinTerm::rationals() { return LinTerm(std::make_shared<const Node>(Node{lin_node::RatQ{}})); }

inline std::string LinTerm::text() const {
    using namespace lin_node;
    auto list = [](const std::vector<LinTerm>& xs) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i].text();
        return s;
    };
    return std::visit(Overloaded{
        [](const Nat&) { return std::string("N"); },
        [](const Rev& r) { return "rev(" + r.child.text() + ")"; },
        [&](const Cat& c) { return "cat(" + list(c.parts) + ")"; },
        [&](const OmegaCat& o) { return "osum([" + list(o.heads) + "];" + o.tail.text() + ")"; },
        [](const RatQ&) { return std::string("QQ"); },
    }, node_->v);
}

inline std::size_t LinTerm::size() const {
    using namespace lin_node;
    return std::visit(Overloaded{
        [](const Rev& r) { return 1 + r.child.size(); },
        [](const Cat& c) {
            std::size_t s = 1;
            for (const auto& p : c.parts) s += p.size();
            return s;
        },
        [](const OmegaCat& o) {
            std::size_t s = 1 + o.tail.size();
            for (const auto& p : o.heads) s += p.size();
            return s;
        },
        [](const auto&) -> std::size_t { return 1; },
    }, node_->v);
}

inline std::ostream& operator<<(std::ostream& os, const LinTerm& t) { return os << t.text(); }

/// Contains no copy of Q.
inline bool scatteredCheck(const LinTerm& t) {
    using namespace lin_node;
    return std::visit(Overloaded{
        [](const Nat&) { return true; },
        [](const Rev& r) { return scatteredCheck(r.child); },
        [](const Cat& c) {
            for (const auto& p : c.parts)
                if (!scatteredCheck(p)) return false;
            return true;
        },
        [](const OmegaCat& o) {
            for (const auto& p : o.heads)
                if (!scatteredCheck(p)) return false;
            return scatteredCheck(o.tail);
        },
        [](const RatQ&) { return false; },
    }, t.node().v);
}

// ---------------------------------------------------------------------------
// Abstract elements: the component chosen at every sum on the way down, and a
// leaf that is a natural (for N) or a rational in (0,1) (for Q).

struct LinElem {
    std::vector<std::uint64_t> path;
    std::uint64_t nat = 0;
    Rational q;
};

/// Order of t on abstract elements: -1, 0, 1.
inline int compareElem(const LinTerm& t, const LinElem& a, const LinElem& b, std::size_t depth = 0) {
    using namespace lin_node;
    return std::visit(Overloaded{
        [&](const Nat&) { return a.nat < b.nat ? -1 : a.nat > b.nat ? 1 : 0; },
        [&](const Rev& r) { return -compareElem(r.child, a, b, depth); },
        [&](const RatQ&) { return a.q < b.q ? -1 : a.q > b.q ? 1 : 0; },
        [&](const Cat& c) {
            auto i = a.path.at(depth), j = b.path.at(depth);
            if (i != j) return i < j ? -1 : 1;
            return compareElem(c.parts.at(i), a, b, depth + 1);
        },
        [&](const OmegaCat& o) {
            auto i = a.path.at(depth), j = b.path.at(depth);
            if (i != j) return i < j ? -1 : 1;
            const LinTerm& part = i < o.heads.size() ? o.heads[i] : o.tail;
            return compareElem(part, a, b, depth + 1);
        },
    }, t.node().v);
}

namespace detail {

/// n-th rational in (0,1) ordered by denominator, then numerator.
inline Rational nthUnitRational(std::uint64_t n) {
    for (std::uint64_t q = 2;; ++q)
        for (std::uint64_t p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            if (n-- == 0) return Rational(p, q);
        }
}

inline std::pair<std::uint64_t, std::uint64_t> cantorUnpair(std::uint64_t n) {
    std::uint64_t w = 0;
    while ((w + 1) * (w + 2) / 2 <= n) ++w;
    std::uint64_t y = n - w * (w + 1) / 2;
    return {w - y, y};
}

inline Rational pow2inv(std::uint64_t k) {
    return Rational(1, boost::multiprecision::cpp_int(1) << static_cast<unsigned>(k));
}

inline void nthElem(const LinTerm& t, std::uint64_t n, LinElem& out) {
    using namespace lin_node;
    std::visit(Overloaded{
        [&](const Nat&) { out.nat = n; },
        [&](const Rev& r) { nthElem(r.child, n, out); },
        [&](const RatQ&) { out.q = nthUnitRational(n); },
        [&](const Cat& c) {
            // Round robin over the parts.
            std::uint64_t m = c.parts.size();
            out.path.push_back(n % m);
            nthElem(c.parts[n % m], n / m, out);
        },
        [&](const OmegaCat& o) {
            auto [i, j] = cantorUnpair(n);
            out.path.push_back(i);
            nthElem(i < o.heads.size() ? o.heads[i] : o.tail, j, out);
        },
    }, t.node().v);
}

/// Position in (0,1): N at 1-2^-(k+1), reversal reflects, sum component i
/// sits in [1-2^-i, 1-2^-(i+1)].
inline Rational unitValue(const LinTerm& t, const LinElem& e, std::size_t depth = 0) {
    using namespace lin_node;
    return std::visit(Overloaded{
        [&](const Nat&) { return Rational(1) - pow2inv(e.nat + 1); },
        [&](const Rev& r) { return Rational(1) - unitValue(r.child, e, depth); },
        [&](const RatQ&) { return e.q; },
        [&](const Cat& c) {
            // Part i < m-1 gets [1-2^-i, 1-2^-(i+1)], the last part the rest.
            auto i = e.path.at(depth);
            std::uint64_t last = c.parts.size() - 1;
            Rational width = i < last ? pow2inv(i + 1) : pow2inv(last);
            return Rational(1) - pow2inv(i) + width * unitValue(c.parts.at(i), e, depth + 1);
        },
        [&](const OmegaCat& o) {
            auto i = e.path.at(depth);
            const LinTerm& part = i < o.heads.size() ? o.heads[i] : o.tail;
            return Rational(1) - pow2inv(i) + pow2inv(i + 1) * unitValue(part, e, depth + 1);
        },
    }, t.node().v);
}

/// Order isomorphism (0,1) -> Q, piecewise linear with 1-2^-(k+1) -> k and
/// 2^-(k+1) -> -k.
inline Rational unfold(const Rational& v) {
    if (v < Rational(1, 2)) return -unfold(Rational(1) - v);
    Rational d = Rational(1) - v;
    std::uint64_t k = 0;
    while (d <= pow2inv(k + 2)) ++k;
    return Rational(k) + (v - (Rational(1) - pow2inv(k + 1))) / pow2inv(k + 2);
}

}  // namespace detail

inline LinElem nthElement(const LinTerm& t, std::uint64_t n) {
    LinElem e;
    detail::nthElem(t, n, e);
    return e;
}

inline Rational rationalValue(const LinTerm& t, const LinElem& e) { return detail::unfold(detail::unitValue(t, e)); }

/// First n elements of a fixed order embedding of t into Q.
inline std::vector<Rational> rationalize(const LinTerm& t, std::uint64_t n) {
    std::vector<Rational> out;
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(rationalValue(t, nthElement(t, i)));
    return out;
}

// ---------------------------------------------------------------------------

/// Order embedding of Q into a term, through its first QQ occurrence.
struct QEmbedding {
    LinTerm target;
    std::vector<std::uint64_t> path;  // sum components leading to the QQ leaf
    bool reversed = false;            // odd number of reversals on the way

    LinElem at(const Rational& x) const {
        // x -> 1/2 + x / (2(1+|x|)), an order isomorphism Q -> Q cap (0,1).
        Rational y = reversed ? Rational(-x) : x;
        Rational ay = y < 0 ? Rational(-y) : y;
        return LinElem{path, 0, Rational(1, 2) + y / (Rational(2) * (Rational(1) + ay))};
    }
};

struct WoClass {
    bool scattered = true;
    CanonicalForm form;
    std::optional<QEmbedding> embedding;

    std::string text() const { return scattered ? toString(form) : "NON-SCATTERED"; }
};

namespace detail {

inline std::optional<QEmbedding> findRatQ(const LinTerm& t, std::vector<std::uint64_t> path, bool reversed) {
    using namespace lin_node;
    using R = std::optional<QEmbedding>;
    return std::visit(Overloaded{
        [](const Nat&) -> R { return std::nullopt; },
        [&](const RatQ&) -> R { return QEmbedding{t, path, reversed}; },
        [&](const Rev& r) -> R { return findRatQ(r.child, path, !reversed); },
        [&](const Cat& c) -> R {
            for (std::uint64_t i = 0; i < c.parts.size(); ++i) {
                auto p = path;
                p.push_back(i);
                if (R e = findRatQ(c.parts[i], p, reversed)) return e;
            }
            return std::nullopt;
        },
        [&](const OmegaCat& o) -> R {
            for (std::uint64_t i = 0; i <= o.heads.size(); ++i) {
                auto p = path;
                p.push_back(i);
                if (R e = findRatQ(i < o.heads.size() ? o.heads[i] : o.tail, p, reversed)) return e;
            }
            return std::nullopt;
        },
    }, t.node().v);
}

inline CanonicalForm woForm(const LinTerm& t) {
    using namespace lin_node;
    return std::visit(Overloaded{
        [](const Nat&) { return CanonicalForm{FormKind::P, {}}; },
        [](const Rev& r) { return perpC(woForm(r.child)); },
        [](const Cat& c) {
            CanonicalForm acc = woForm(c.parts.front());
            for (std::size_t i = 1; i < c.parts.size(); ++i) acc = combine(acc, woForm(c.parts[i]));
            return acc;
        },
        [](const OmegaCat& o) {
            CanonicalForm acc = omegaSumC(woForm(o.tail));
            for (const auto& h : o.heads) acc = combine(acc, woForm(h));
            return acc;
        },
        [](const RatQ&) -> CanonicalForm { throw InvariantViolation("QQ has no normal form"); },
    }, t.node().v);
}

}  // namespace detail

inline WoClass woClassify(const LinTerm& t) {
    if (auto e = detail::findRatQ(t, {}, false)) {
        e->target = t;
        return {false, {}, e};
    }
    return {true, detail::woForm(t), std::nullopt};
}

/// Reversal with reversals pushed through finite sums.
inline LinTerm reverseTerm(const LinTerm& t) {
    using namespace lin_node;
    return std::visit(Overloaded{
        [&](const Rev& r) { return r.child; },
        [&](const Cat& c) {
            std::vector<LinTerm> parts;
            for (auto it = c.parts.rbegin(); it != c.parts.rend(); ++it) parts.push_back(reverseTerm(*it));
            return LinTerm::cat(std::move(parts));
        },
        [&](const RatQ&) { return t; },
        [&](const auto&) { return LinTerm::rev(t); },
    }, t.node().v);
}

struct SelfDual {
    LinTerm reversed;
    WoClass cls;
    bool identityHolds = true;  // classification of the reversal is the orthogonal
};

inline SelfDual woSelfDual(const LinTerm& t) {
    LinTerm r = reverseTerm(t);
    WoClass a = woClassify(t);
    WoClass b = woClassify(r);
    bool ok = a.scattered ? (b.scattered && b.form == perpC(a.form)) : !b.scattered;
    if (!ok) throw InvariantViolation("reversal of " + t.text() + " breaks the duality identity");
    return {r, b, ok};
}

// ---------------------------------------------------------------------------
// N | QQ | rev(t) | cat(t,...) | osum([t,...]; t)

namespace detail {

inline LinTerm parseLin(Cursor& c) {
    std::string word = c.identifier();
    if (word == "N") return LinTerm::nat();
    if (word == "QQ") return LinTerm::rationals();
    if (word == "rev") {
        c.expect('(');
        LinTerm t = parseLin(c);
        c.expect(')');
        return LinTerm::rev(std::move(t));
    }
    if (word == "cat") {
        c.expect('(');
        std::vector<LinTerm> parts{parseLin(c)};
        while (c.accept(',')) parts.push_back(parseLin(c));
        c.expect(')');
        return LinTerm::cat(std::move(parts));
    }
    if (word == "osum") {
        c.expect('(');
        c.expect('[');
        std::vector<LinTerm> heads;
        if (c.peek() != ']') {
            heads.push_back(parseLin(c));
            while (c.accept(',')) heads.push_back(parseLin(c));
        }
        c.expect(']');
        c.expect(';');
        LinTerm tail = parseLin(c);
        c.expect(')');
        return LinTerm::osum(std::move(heads), std::move(tail));
    }
    c.fail(word.empty() ? "expected a linear order term" : "unknown order constructor '" + word + "'");
}

}  // namespace detail

inline LinTerm parseLin(std::string_view text) {
    detail::Cursor c(text);
    LinTerm t = detail::parseLin(c);
    c.expectEnd();
    return t;
}

}  // namespace bideal

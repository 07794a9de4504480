#pragma once

// Countable ordinals below epsilon_0 in Cantor normal form.

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "bideal/detail/cursor.hpp"
#include "bideal/error.hpp"

namespace bideal {

struct OrdinalTerm;

/// omega^e1*c1 + omega^e2*c2 + ... with e1 > e2 > ... and every c >= 1.
/// The empty term list is 0.
class Ordinal {
public:
    Ordinal() = default;

    static Ordinal nat(std::uint64_t n);
    static Ordinal omega();
    static Ordinal omegaPow(const Ordinal& exponent, std::uint64_t coefficient = 1);

    const std::vector<OrdinalTerm>& terms() const { return terms_; }

    bool isZero() const;
    std::optional<std::uint64_t> asNatural() const;

    friend bool operator==(const Ordinal& a, const Ordinal& b);
    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

private:
    std::vector<OrdinalTerm> terms_;

    friend Ordinal ordAdd(const Ordinal& a, const Ordinal& b);
    friend Ordinal fundSeq(const Ordinal& a, std::uint64_t n);
};

struct OrdinalTerm {
    Ordinal exponent;
    std::uint64_t coefficient = 1;
};

enum class OrdinalKind { Zero, Successor, Limit };

// ---------------------------------------------------------------------------

inline Ordinal Ordinal::nat(std::uint64_t n) {
    Ordinal o;
    if (n > 0) o.terms_.push_back(OrdinalTerm{Ordinal{}, n});
    return o;
}

inline Ordinal Ordinal::omega() { return omegaPow(nat(1)); }

inline Ordinal Ordinal::omegaPow(const Ordinal& exponent, std::uint64_t coefficient) {
    Ordinal o;
    if (coefficient > 0) o.terms_.push_back(OrdinalTerm{exponent, coefficient});
    return o;
}

inline bool Ordinal::isZero() const { return terms_.empty(); }

inline std::optional<std::uint64_t> Ordinal::asNatural() const {
    if (terms_.empty()) return 0;
    if (terms_.size() == 1 && terms_[0].exponent.isZero()) return terms_[0].coefficient;
    return std::nullopt;
}

inline std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
    const auto& x = a.terms_;
    const auto& y = b.terms_;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (auto c = x[i].exponent <=> y[i].exponent; c != 0) return c;
        if (auto c = x[i].coefficient <=> y[i].coefficient; c != 0) return c;
    }
    return x.size() <=> y.size();
}

inline bool operator==(const Ordinal& a, const Ordinal& b) { return (a <=> b) == 0; }

enum class Cmp { LT, EQ, GT };

inline Cmp ordCompare(const Ordinal& a, const Ordinal& b) {
    auto c = a <=> b;
    if (c < 0) return Cmp::LT;
    if (c > 0) return Cmp::GT;
    return Cmp::EQ;
}

/// Ordinal sum; terms of a below the leading exponent of b are absorbed.
inline Ordinal ordAdd(const Ordinal& a, const Ordinal& b) {
    if (b.isZero()) return a;
    const Ordinal& lead = b.terms_.front().exponent;
    Ordinal r;
    std::size_t i = 0;
    for (; i < a.terms_.size() && a.terms_[i].exponent > lead; ++i) r.terms_.push_back(a.terms_[i]);
    std::uint64_t carry = 0;
    if (i < a.terms_.size() && a.terms_[i].exponent == lead) carry = a.terms_[i].coefficient;
    r.terms_.push_back(OrdinalTerm{lead, carry + b.terms_.front().coefficient});
    for (std::size_t j = 1; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
    return r;
}

inline Ordinal ordSucc(const Ordinal& a) { return ordAdd(a, Ordinal::nat(1)); }

inline OrdinalKind ordKind(const Ordinal& a) {
    if (a.isZero()) return OrdinalKind::Zero;
    return a.terms().back().exponent.isZero() ? OrdinalKind::Successor : OrdinalKind::Limit;
}

inline bool isLimit(const Ordinal& a) { return ordKind(a) == OrdinalKind::Limit; }

/// Predecessor of a successor ordinal.
inline Ordinal ordPred(const Ordinal& a) {
    if (ordKind(a) != OrdinalKind::Successor) throw InvariantViolation("ordPred of a non-successor");
    std::vector<OrdinalTerm> t = a.terms();
    if (--t.back().coefficient == 0) t.pop_back();
    Ordinal r;
    for (auto& term : t) r = ordAdd(r, Ordinal::omegaPow(term.exponent, term.coefficient));
    return r;
}

/// Splits a = lambda + k with lambda zero or a limit and k finite.
inline std::pair<Ordinal, std::uint64_t> splitFinite(const Ordinal& a) {
    if (ordKind(a) != OrdinalKind::Successor) return {a, 0};
    Ordinal lam;
    const auto& t = a.terms();
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        lam = ordAdd(lam, Ordinal::omegaPow(t[i].exponent, t[i].coefficient));
    return {lam, t.back().coefficient};
}

/// Canonical fundamental sequence:
///   (b + w^(g+1))[n] = b + w^g * (n+1),   (b + w^l)[n] = b + w^(l[n]) for l limit.
inline Ordinal fundSeq(const Ordinal& a, std::uint64_t n) {
    if (!isLimit(a)) throw NotLimit("fundamental sequence requested for a non-limit ordinal");
    Ordinal base;
    base.terms_ = a.terms_;
    OrdinalTerm last = base.terms_.back();
    if (--base.terms_.back().coefficient == 0) base.terms_.pop_back();
    if (ordKind(last.exponent) == OrdinalKind::Successor)
        return ordAdd(base, Ordinal::omegaPow(ordPred(last.exponent), n + 1));
    return ordAdd(base, Ordinal::omegaPow(fundSeq(last.exponent, n)));
}

// ---------------------------------------------------------------------------
// Text form: 0, 7, w, w^3, w^w, w^(w+1), w^2*3+w+4

inline std::string toString(const Ordinal& a);

namespace detail {

inline bool isPowerAtom(const Ordinal& e) {
    return e.terms().size() == 1 && e.terms()[0].coefficient == 1 && !e.terms()[0].exponent.isZero();
}

inline std::string exponentText(const Ordinal& e) {
    if (e.asNatural()) return std::to_string(*e.asNatural());
    if (isPowerAtom(e)) return toString(e);
    return "(" + toString(e) + ")";
}

inline Ordinal parseOrdinalSum(Cursor& c);

inline Ordinal parseOrdinalPower(Cursor& c) {
    if (!c.acceptWord("w")) c.fail("expected 'w'");
    if (!c.accept('^')) return Ordinal::omega();
    Ordinal e;
    if (c.atDigit()) {
        e = Ordinal::nat(c.natural());
    } else if (c.accept('(')) {
        e = parseOrdinalSum(c);
        c.expect(')');
    } else {
        e = parseOrdinalPower(c);
    }
    return Ordinal::omegaPow(e);
}

inline Ordinal parseOrdinalSummand(Cursor& c) {
    if (c.atDigit()) return Ordinal::nat(c.natural());
    Ordinal p = parseOrdinalPower(c);
    if (c.accept('*')) {
        std::uint64_t k = c.natural();
        if (k == 0) c.fail("coefficient must be positive");
        p = Ordinal::omegaPow(p.terms()[0].exponent, k);
    }
    return p;
}

inline Ordinal parseOrdinalSum(Cursor& c) {
    Ordinal r = parseOrdinalSummand(c);
    while (c.accept('+')) r = ordAdd(r, parseOrdinalSummand(c));
    return r;
}

}  // namespace detail

inline std::string toString(const Ordinal& a) {
    if (a.isZero()) return "0";
    std::string out;
    for (const auto& t : a.terms()) {
        if (!out.empty()) out += "+";
        if (t.exponent.isZero()) {
            out += std::to_string(t.coefficient);
            continue;
        }
        out += "w";
        if (t.exponent != Ordinal::nat(1)) out += "^" + detail::exponentText(t.exponent);
        if (t.coefficient != 1) out += "*" + std::to_string(t.coefficient);
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Ordinal& a) { return os << toString(a); }

inline Ordinal parseOrdinal(std::string_view text) {
    detail::Cursor c(text);
    Ordinal r = detail::parseOrdinalSum(c);
    c.expectEnd();
    return r;
}

}  // namespace bideal

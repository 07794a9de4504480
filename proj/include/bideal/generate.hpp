#pragma once

// Seeded random terms for every grammar, plus exhaustive schema enumeration
// by size.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "bideal/ideal.hpp"
#include "bideal/oracle.hpp"
#include "bideal/query.hpp"
#include "bideal/scattered.hpp"
#include "bideal/schema.hpp"

namespace bideal::gen {

using Rng = std::mt19937_64;

inline std::uint64_t pick(Rng& r, std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(r);
}

inline bool coin(Rng& r, double p = 0.5) { return std::bernoulli_distribution(p)(r); }

/// w^2*a + w*b + c with coefficients up to 4.
inline Ordinal ordinalBelowCube(Rng& r) {
    Ordinal a = Ordinal::omegaPow(Ordinal::nat(2), pick(r, 0, 4));
    a = ordAdd(a, Ordinal::omegaPow(Ordinal::nat(1), pick(r, 0, 4)));
    return ordAdd(a, Ordinal::nat(pick(r, 0, 4)));
}

/// Nonzero limit below w^3, occasionally w^w.
inline Ordinal limitOrdinal(Rng& r) {
    if (pick(r, 0, 15) == 0) return Ordinal::omegaPow(Ordinal::omega());
    for (;;) {
        Ordinal a = ordAdd(Ordinal::omegaPow(Ordinal::nat(2), pick(r, 0, 2)),
                           Ordinal::omegaPow(Ordinal::nat(1), pick(r, 0, 3)));
        if (!a.isZero()) return a;
    }
}

/// Ordinal below w^3 or an occasional larger one.
inline Ordinal anyOrdinal(Rng& r) {
    if (pick(r, 0, 9) == 0) return ordAdd(Ordinal::omegaPow(Ordinal::omega()), Ordinal::nat(pick(r, 0, 2)));
    return ordinalBelowCube(r);
}

inline CanonicalForm canonical(Rng& r) {
    static constexpr FormKind kinds[] = {FormKind::P, FormKind::Q, FormKind::PQ};
    return {kinds[pick(r, 0, 2)], ordinalBelowCube(r)};
}

// ---------------------------------------------------------------------------

namespace detail {

inline IdealExpr idealLeaf(Rng& r) {
    switch (pick(r, 0, 5)) {
        case 0: return IdealExpr::fin();
        case 1: return IdealExpr::pow();
        case 2: return IdealExpr::p(anyOrdinal(r));
        case 3: return IdealExpr::q(anyOrdinal(r));
        case 4: return IdealExpr::limSum(limitOrdinal(r));
        default: return coin(r) ? IdealExpr::fin() : IdealExpr::pow();
    }
}

inline IdealExpr ideal(Rng& r, std::size_t budget) {
    if (budget <= 1 || coin(r, 0.25)) return idealLeaf(r);
    switch (pick(r, 0, 4)) {
        case 0: return IdealExpr::perp(ideal(r, budget - 1));
        case 1: return IdealExpr::omega(ideal(r, budget - 1));
        case 2: {
            std::size_t left = pick(r, 1, std::max<std::size_t>(1, budget - 2));
            std::size_t right = budget > left + 1 ? budget - 1 - left : 1;
            std::vector<IdealExpr> parts{ideal(r, left), ideal(r, right)};
            if (budget > 4 && coin(r, 0.3)) parts.push_back(idealLeaf(r));
            return IdealExpr::sum(std::move(parts));
        }
        case 3: {
            if (budget < 4) return IdealExpr::perp(ideal(r, budget - 1));
            IdealExpr tail = coin(r) ? IdealExpr::omega(ideal(r, budget / 2 - 1)) : IdealExpr::limSum(limitOrdinal(r));
            std::vector<IdealExpr> heads{ideal(r, budget / 2 - 1)};
            return IdealExpr::mix(std::move(heads), tail);
        }
        default: return IdealExpr::perp(IdealExpr::omega(ideal(r, budget - 2)));
    }
}

}  // namespace detail

/// Random expression with size at most maxSize.
inline IdealExpr ideal(Rng& r, std::size_t maxSize) {
    for (;;) {
        IdealExpr e = detail::ideal(r, pick(r, 1, maxSize));
        if (e.size() <= maxSize) return e;
    }
}

// ---------------------------------------------------------------------------

namespace detail {

inline TreeSchema schemaLeaf(Rng& r) {
    switch (pick(r, 0, 7)) {
        case 0: return TreeSchema::empty();
        case 1: case 2: case 3: return TreeSchema::eps();
        case 4: case 5: case 6: return TreeSchema::chain();
        default: return TreeSchema::full();
    }
}

inline TreeSchema schema(Rng& r, std::size_t budget, bool diagonals);

inline SchemaSeq tail(Rng& r, std::size_t budget, bool diagonals) {
    std::uint64_t c = pick(r, 0, diagonals ? 4 : 3);
    if (c == 0) return SchemaSeq::none();
    if (c == 4) return SchemaSeq::diag(coin(r) ? FormKind::P : FormKind::Q, limitOrdinal(r), pick(r, 0, 2));
    return SchemaSeq::constant(schema(r, budget, diagonals));
}

inline TreeSchema schema(Rng& r, std::size_t budget, bool diagonals) {
    if (budget <= 1 || coin(r, 0.2)) return schemaLeaf(r);
    std::uint64_t c = pick(r, 0, 5);
    if (c == 0) return TreeSchema::rooted(schema(r, budget - 1, diagonals));
    std::size_t left = budget - 1;
    std::vector<TreeSchema> heads;
    std::uint64_t k = pick(r, 0, std::min<std::size_t>(2, left - 1));
    for (std::uint64_t i = 0; i < k && left > 1; ++i) {
        std::size_t s = pick(r, 1, left - 1);
        heads.push_back(schema(r, s, diagonals));
        left -= std::min(left - 1, heads.back().size());
    }
    SchemaSeq t = tail(r, left, diagonals);
    return c <= 2 ? TreeSchema::fan(std::move(heads), std::move(t)) : TreeSchema::spine(std::move(heads), std::move(t));
}

}  // namespace detail

/// Random schema with size at most maxSize; nonempty.
inline TreeSchema schema(Rng& r, std::size_t maxSize, bool diagonals = true) {
    for (;;) {
        TreeSchema t = detail::schema(r, pick(r, 1, maxSize), diagonals);
        if (!t.isEmpty() && t.size() <= maxSize) return t;
    }
}

/// Every diagonal-free schema of size at most maxSize, deduplicated by key.
inline std::vector<TreeSchema> allSchemas(std::size_t maxSize) {
    // bySize[n]: schemas of size exactly n.
    std::vector<std::vector<TreeSchema>> bySize(maxSize + 1);
    std::map<std::string, bool> seen;
    auto add = [&](const TreeSchema& t) {
        if (t.size() <= maxSize && seen.emplace(t.key(), true).second) bySize[t.size()].push_back(t);
    };
    for (auto t : {TreeSchema::empty(), TreeSchema::eps(), TreeSchema::chain(), TreeSchema::full()}) add(t);
    for (std::size_t n = 2; n <= maxSize; ++n) {
        for (const auto& x : bySize[n - 1]) add(TreeSchema::rooted(x));
        // Head lists of total size h, tail of size n-1-h.
        std::vector<std::vector<std::vector<TreeSchema>>> lists(n);
        lists[0].push_back({});
        for (std::size_t h = 1; h < n; ++h)
            for (std::size_t first = 1; first <= h; ++first)
                for (const auto& x : bySize[first])
                    for (const auto& rest : lists[h - first]) {
                        std::vector<TreeSchema> l{x};
                        l.insert(l.end(), rest.begin(), rest.end());
                        lists[h].push_back(std::move(l));
                    }
        for (std::size_t h = 0; h + 1 < n; ++h)
            for (const auto& tl : bySize[n - 1 - h])
                for (const auto& hs : lists[h]) {
                    add(TreeSchema::fan(hs, SchemaSeq::constant(tl)));
                    add(TreeSchema::spine(hs, SchemaSeq::constant(tl)));
                }
    }
    std::vector<TreeSchema> out;
    for (const auto& level : bySize)
        for (const auto& t : level)
            if (!t.isEmpty()) out.push_back(t);
    return out;
}

// ---------------------------------------------------------------------------

namespace detail {

/// A schema contained in t, built by dropping or shrinking pieces.
inline TreeSchema shrink(Rng& r, const TreeSchema& t, int depth) {
    using namespace schema_node;
    if (depth > 4) return t;
    auto shrinkSeq = [&](const SchemaSeq& s) {
        if (s.isDiag() || s.isNone()) return coin(r, 0.8) ? s : SchemaSeq::none();
        return SchemaSeq::constant(coin(r, 0.6) ? s.item : shrink(r, s.item, depth + 1));
    };
    return std::visit(Overloaded{
        [&](const Full&) {
            switch (pick(r, 0, 3)) {
                case 0: return TreeSchema::chain();
                case 1: return TreeSchema::fan({}, SchemaSeq::constant(TreeSchema::eps()));
                default: return t;
            }
        },
        [&](const Rooted& x) { return coin(r) ? shrink(r, x.inner, depth + 1) : TreeSchema::rooted(shrink(r, x.inner, depth + 1)); },
        [&](const Fan& f) {
            std::vector<TreeSchema> hs;
            for (const auto& h : f.heads) hs.push_back(coin(r, 0.25) ? TreeSchema::empty() : shrink(r, h, depth + 1));
            return TreeSchema::fan(std::move(hs), shrinkSeq(f.tail));
        },
        [&](const Spine& s) {
            std::vector<TreeSchema> hs;
            for (const auto& h : s.heads) hs.push_back(coin(r, 0.25) ? TreeSchema::empty() : shrink(r, h, depth + 1));
            return TreeSchema::spine(std::move(hs), shrinkSeq(s.tail));
        },
        [&](const auto&) { return t; },
    }, t.node().v);
}

inline QueryTerm queryPart(Rng& r, const TreeSchema& target) {
    switch (pick(r, 0, 5)) {
        case 0: {
            std::vector<Seq> elems = enumerateSchema(target, {5, 4, 60});
            std::vector<Seq> chosen;
            for (const auto& u : elems)
                if (coin(r, 0.2)) chosen.push_back(u);
            return QueryTerm::finSet(std::move(chosen));
        }
        case 1:
            if (std::holds_alternative<schema_node::Fan>(target.node().v)) {
                TreeSchema fan = coin(r) ? target : shrink(r, target, 0);
                if (std::holds_alternative<schema_node::Fan>(fan.node().v)) return QueryTerm::transversal(fan);
                return QueryTerm::transversal(target);
            }
            [[fallthrough]];
        case 2: return QueryTerm::schema(target);
        default: return QueryTerm::schema(shrink(r, target, 0));
    }
}

}  // namespace detail

/// Query likely (not guaranteed) to be contained in target.
inline QueryTerm queryUnder(Rng& r, const TreeSchema& target) {
    QueryTerm q = detail::queryPart(r, target);
    if (coin(r, 0.15)) q = QueryTerm::unite(q, detail::queryPart(r, target));
    return q;
}

// ---------------------------------------------------------------------------

inline LinTerm linTerm(Rng& r, std::size_t budget, bool rationals) {
    if (budget <= 1 || coin(r, 0.25)) return rationals && coin(r, 0.2) ? LinTerm::rationals() : LinTerm::nat();
    switch (pick(r, 0, 2)) {
        case 0: return LinTerm::rev(linTerm(r, budget - 1, rationals));
        case 1: {
            std::size_t left = pick(r, 1, budget - 1);
            return LinTerm::cat({linTerm(r, left, rationals), linTerm(r, std::max<std::size_t>(1, budget - 1 - left), rationals)});
        }
        default: {
            std::vector<LinTerm> heads;
            if (budget > 3 && coin(r)) heads.push_back(linTerm(r, budget / 2, rationals));
            return LinTerm::osum(std::move(heads), linTerm(r, std::max<std::size_t>(1, budget / 2), rationals));
        }
    }
}

}  // namespace bideal::gen

#pragma once

// Brute-force counterparts of the symbolic engines: bounded enumeration,
// the derivative iterated on an explicit quotient of the generated tree, and
// checkers for every kind of witness.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bideal/branch.hpp"
#include "bideal/classify.hpp"
#include "bideal/error.hpp"
#include "bideal/query.hpp"
#include "bideal/scattered.hpp"
#include "bideal/schema.hpp"

namespace bideal {

struct Budget {
    std::uint64_t depth = 6;  // max sequence length
    std::uint64_t width = 6;  // max entry
    std::uint64_t count = 200;  // max elements

    void validate() const {
        if (depth < 1 || width < 1 || count < 1) throw ParseError("budget fields must all be >= 1");
    }
};

namespace detail {

inline void collectLevel(const TreeSchema& t, std::uint64_t remaining, const Budget& b, Seq& prefix,
                         std::vector<Seq>& out) {
    if (out.size() >= b.count || t.isEmpty()) return;
    ChildView v = view(t);
    if (remaining == 0) {
        if (v.hasRoot) out.push_back(prefix);
        return;
    }
    for (std::uint64_t i = 0; i <= b.width && out.size() < b.count; ++i) {
        TreeSchema c = v.child(i);
        if (c.isEmpty()) continue;
        prefix.push_back(i);
        collectLevel(c, remaining - 1, b, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace detail

/// Elements of length <= depth with entries <= width, in shortlex order,
/// truncated to count.
inline std::vector<Seq> enumerateSchema(const TreeSchema& t, const Budget& b) {
    std::vector<Seq> out;
    Seq prefix;
    for (std::uint64_t len = 0; len <= b.depth && out.size() < b.count; ++len)
        detail::collectLevel(t, len, b, prefix, out);
    return out;
}

inline bool withinBox(const Seq& u, const Budget& b) {
    return u.size() <= b.depth && std::all_of(u.begin(), u.end(), [&](auto x) { return x <= b.width; });
}

inline std::vector<Seq> enumerateQuery(const QueryTerm& q, const Budget& b) {
    using namespace query_node;
    std::vector<Seq> out = std::visit(Overloaded{
        [&](const Schema& s) { return enumerateSchema(s.t, b); },
        [&](const FinSet& f) {
            std::vector<Seq> r;
            for (const auto& u : f.elems)
                if (withinBox(u, b)) r.push_back(u);
            return r;
        },
        [&](const Transversal& t) {
            std::vector<Seq> r;
            ChildView v = view(t.fan);
            for (std::uint64_t i = 0; i <= b.width; ++i) {
                TreeSchema block = v.child(i);
                if (block.isEmpty()) continue;
                Seq u = concat(Seq{i}, canonicalPick(block));
                if (withinBox(u, b)) r.push_back(u);
            }
            return r;
        },
        [&](const Union& u) {
            std::vector<Seq> a = enumerateQuery(u.a, b);
            std::vector<Seq> c = enumerateQuery(u.b, b);
            a.insert(a.end(), c.begin(), c.end());
            return a;
        },
    }, q.node().v);
    std::sort(out.begin(), out.end(), shortlexLess);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.size() > b.count) out.resize(b.count);
    return out;
}

// ---------------------------------------------------------------------------

/// Quotient of the generated tree by cone schema: one representative per
/// distinct cone, edges marked finite or infinite multiplicity.
struct ConeQuotient {
    struct Rep {
        TreeSchema cone;
        std::vector<std::size_t> finiteChildren;
        std::vector<std::size_t> infiniteChildren;
    };
    std::vector<Rep> reps;  // reps[0] is the root
};

inline ConeQuotient buildQuotient(const TreeSchema& t, const Budget& b) {
    ConeQuotient g;
    std::map<std::string, std::size_t> index;
    auto intern = [&](const TreeSchema& c) {
        auto [it, fresh] = index.emplace(c.key(), g.reps.size());
        if (fresh) {
            if (g.reps.size() >= b.count)
                throw QuotientOverflow("more than " + std::to_string(b.count) + " cone types under " + t.key());
            g.reps.push_back({c, {}, {}});
        }
        return it->second;
    };
    intern(t);
    for (std::size_t i = 0; i < g.reps.size(); ++i) {
        ChildView v = view(g.reps[i].cone);
        for (const auto& c : v.children)
            if (!c.isEmpty()) {
                std::size_t j = intern(c);
                g.reps[i].finiteChildren.push_back(j);
            }
        if (v.rest.isDiag())
            throw QuotientOverflow("diagonal family under " + g.reps[i].cone.key() + " has infinitely many cone types");
        if (!v.rest.isNone()) {
            std::size_t j = intern(v.rest.item);
            g.reps[i].infiniteChildren.push_back(j);
        }
    }
    return g;
}

/// Iterates A' = {a in A : A_a not dominated} on the quotient until it
/// stabilizes.  Stage 0 decides removal with the exact dominated-set test on
/// each cone and cross-checks it against the graph criterion used later.
inline TreeRank explicitDerivative(const TreeSchema& t, const Budget& b) {
    if (t.isEmpty()) return {{}, true};
    ConeQuotient g = buildQuotient(t, b);
    const std::size_t n = g.reps.size();
    std::vector<bool> alive(n, true);

    // A node keeps an undominated cone iff it reaches (through live nodes) a
    // live node with infinitely many live children.
    auto graphSurvivors = [&]() {
        std::vector<std::vector<std::size_t>> parents(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (auto j : g.reps[i].finiteChildren) parents[j].push_back(i);
            for (auto j : g.reps[i].infiniteChildren) parents[j].push_back(i);
        }
        std::vector<bool> keep(n, false);
        std::vector<std::size_t> work;
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            for (auto j : g.reps[i].infiniteChildren)
                if (alive[j]) {
                    keep[i] = true;
                    work.push_back(i);
                    break;
                }
        }
        while (!work.empty()) {
            std::size_t j = work.back();
            work.pop_back();
            for (auto p : parents[j])
                if (alive[p] && !keep[p]) {
                    keep[p] = true;
                    work.push_back(p);
                }
        }
        return keep;
    };

    std::uint64_t stages = 0;
    for (;;) {
        std::vector<bool> keep = graphSurvivors();
        if (stages == 0) {
            for (std::size_t i = 0; i < n; ++i)
                if (keep[i] != !inId(g.reps[i].cone))
                    throw InvariantViolation("dominated-set test disagrees with the quotient graph at " +
                                             g.reps[i].cone.key());
        }
        bool removed = false;
        for (std::size_t i = 0; i < n; ++i)
            if (alive[i] && !keep[i]) {
                alive[i] = false;
                removed = true;
            }
        if (!removed) break;
        ++stages;
    }
    return {Ordinal::nat(stages), !alive[0]};
}

// ---------------------------------------------------------------------------
// Witness checks.

inline bool checkDominating(const EventuallyPeriodic& branch, const QueryTerm& q, const Budget& b) {
    for (const auto& u : enumerateQuery(q, b))
        if (!dominates(branch, u)) return false;
    return true;
}

inline bool checkUnbounded(const UnboundedFamily& f, const QueryTerm& q, const Budget& b) {
    std::uint64_t prev = 0;
    for (std::uint64_t n = 0; n < b.count; ++n) {
        Seq u = f.member(n);
        if (u.size() <= f.coordinate || !memberQuery(u, q)) return false;
        if (n > 0 && u[f.coordinate] <= prev) return false;
        prev = u[f.coordinate];
    }
    return true;
}

inline bool checkIdWitness(const IdWitness& w, const QueryTerm& q, const Budget& b) {
    return w.dominated ? checkDominating(w.branch, q, b) : checkUnbounded(w.family, q, b);
}

/// Injective, preserves and reflects extension, and lands in the target.
inline bool checkEmbedding(const EmbeddingWitness& w, const Budget& b) {
    std::vector<Seq> dom = enumerateSchema(TreeSchema::full(), b);
    std::vector<Seq> img;
    std::set<Seq> seen;
    for (const auto& u : dom) {
        Seq v = witnessMap(w, u);
        bool inside = w.generatedTree ? inGenerated(v, w.target) : memberElem(v, w.target);
        if (!inside || !seen.insert(v).second) return false;
        img.push_back(v);
    }
    for (std::size_t i = 0; i < dom.size(); ++i)
        for (std::size_t j = 0; j < dom.size(); ++j)
            if (isPrefix(dom[i], dom[j]) != isPrefix(img[i], img[j])) return false;
    return true;
}

/// Grows with the budget: more elements at b than at a strictly smaller box.
inline bool infiniteAtBudget(const QueryTerm& q, const Budget& b) {
    if (isFiniteQuery(q)) return false;
    auto big = enumerateQuery(q, b).size();
    auto small = enumerateQuery(q, {b.depth - 1, b.width - 1, b.count}).size();
    return big == b.count || big > small;
}

/// Length of the least-index element; 0 for an empty query.
inline std::uint64_t anchorDepth(const QueryTerm& q) {
    using namespace query_node;
    return std::visit(Overloaded{
        [](const Schema& s) -> std::uint64_t { return s.t.isEmpty() ? 0 : canonicalPick(s.t).size(); },
        [](const FinSet& f) -> std::uint64_t {
            std::uint64_t m = f.elems.empty() ? 0 : f.elems.front().size();
            for (const auto& u : f.elems) m = std::min<std::uint64_t>(m, u.size());
            return m;
        },
        [](const Transversal& t) -> std::uint64_t {
            ChildView v = view(t.fan);
            for (std::uint64_t i = 0;; ++i)
                if (!v.child(i).isEmpty()) return 1 + canonicalPick(v.child(i)).size();
        },
        [](const Union& u) -> std::uint64_t { return std::min(anchorDepth(u.a), anchorDepth(u.b)); },
    }, q.node().v);
}

/// w is contained in q, infinite, and dominated by a branch.  Targets of high
/// rank have no elements near the root, so the depth budget counts from the
/// witness's least-index element.
inline bool checkFrechet(const QueryTerm& w, const QueryTerm& q, const Budget& b) {
    if (subsetOfQuery(w, q).verdict != Tri::Yes) return false;
    Budget shifted{b.depth + anchorDepth(w), b.width, b.count};
    for (const auto& u : enumerateQuery(w, shifted))
        if (!memberQuery(u, q)) return false;
    if (!infiniteAtBudget(w, shifted) || !qInId(w)) return false;
    IdWitness iw = idWitness(w);
    return iw.dominated && checkDominating(iw.branch, w, shifted);
}

/// Bound on element length of a query, when it has one.
inline std::optional<std::uint64_t> queryHeight(const QueryTerm& q, const EventuallyPeriodic& dom) {
    using namespace query_node;
    using R = std::optional<std::uint64_t>;
    return std::visit(Overloaded{
        [](const Schema& s) -> R { return maxLength(s.t); },
        [](const FinSet& f) -> R {
            std::uint64_t m = 0;
            for (const auto& u : f.elems) m = std::max<std::uint64_t>(m, u.size());
            return m;
        },
        [&](const Transversal& t) -> R {
            // Only blocks n <= dom(0) can meet a set dominated by dom.
            std::uint64_t m = 0;
            ChildView v = view(t.fan);
            for (std::uint64_t i = 0; i <= dom.at(0); ++i) {
                TreeSchema block = v.child(i);
                if (!block.isEmpty()) m = std::max<std::uint64_t>(m, 1 + canonicalPick(block).size());
            }
            return m;
        },
        [&](const Union& u) -> R {
            R a = queryHeight(u.a, dom), c = queryHeight(u.b, dom);
            if (!a || !c) return std::nullopt;
            return std::max(*a, *c);
        },
    }, q.node().v);
}

/// For q dominated and r well founded, q cap r lies in a finite box: lengths
/// up to the height of r, entries up to the branch maxima.  Counts the
/// intersection there and one box further out; they must agree.
inline bool checkFiniteIntersection(const QueryTerm& q, const QueryTerm& r) {
    if (!qInId(q) || !qInWf(r)) throw InvariantViolation("orthogonality check needs a dominated and a well-founded set");
    EventuallyPeriodic dom = idWitness(q).branch;
    std::optional<std::uint64_t> h = queryHeight(r, dom);
    if (!h) return false;
    std::uint64_t w = 0;
    for (std::uint64_t i = 0; i < *h; ++i) w = std::max(w, dom.at(i));
    auto countAt = [&](Budget b) {
        b.count = 1u << 20;
        std::size_t c = 0;
        for (const auto& u : enumerateQuery(r, b))
            if (memberQuery(u, q)) ++c;
        return c;
    };
    Budget inner{std::max<std::uint64_t>(*h, 1), std::max<std::uint64_t>(w, 1), 1};
    Budget outer{inner.depth + 2, inner.width + 2, 1};
    return countAt(inner) == countAt(outer);
}

/// Order faithfulness of rationalize on the first n positions.
inline bool checkRationalize(const LinTerm& t, std::uint64_t n) {
    std::vector<LinElem> elems;
    for (std::uint64_t i = 0; i < n; ++i) elems.push_back(nthElement(t, i));
    std::vector<Rational> vals = rationalize(t, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            int abstractOrder = compareElem(t, elems[i], elems[j]);
            int concrete = vals[i] < vals[j] ? -1 : vals[i] > vals[j] ? 1 : 0;
            if (abstractOrder != concrete) return false;
        }
    return true;
}

/// Order embedding of Q: monotone on sampled rationals, and between the
/// images of any two samples lies the image of their midpoint.
inline bool checkQEmbedding(const QEmbedding& e, std::uint64_t samples) {
    std::vector<Rational> xs;
    for (std::uint64_t i = 0; i < samples; ++i) xs.push_back(detail::unfold(detail::nthUnitRational(i)));
    std::vector<LinElem> img;
    for (const auto& x : xs) img.push_back(e.at(x));
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j) {
            int want = xs[i] < xs[j] ? -1 : xs[i] > xs[j] ? 1 : 0;
            if (compareElem(e.target, img[i], img[j]) != want) return false;
            if (want < 0) {
                LinElem mid = e.at((xs[i] + xs[j]) / 2);
                if (compareElem(e.target, img[i], mid) != -1 || compareElem(e.target, mid, img[j]) != -1) return false;
                Rational vi = rationalValue(e.target, img[i]), vm = rationalValue(e.target, mid),
                         vj = rationalValue(e.target, img[j]);
                if (!(vi < vm && vm < vj)) return false;
            }
        }
    return true;
}

}  // namespace bideal

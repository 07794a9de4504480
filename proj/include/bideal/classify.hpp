#pragma once

// Classification of the well-founded-tree ideal restricted to a schema:
// a structural pass over fans and spines, and an independent pass through the
// iterated derivative of the generated tree.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bideal/error.hpp"
#include "bideal/ideal.hpp"
#include "bideal/ordinal.hpp"
#include "bideal/schema.hpp"

namespace bideal {

/// Class of a possibly finite piece: nothing, a nonempty finite set, or an
/// infinite set with a normal form.  Finite pieces are absorbed by sums.
struct Block {
    enum class Kind { None, Finite, Form };
    Kind kind = Kind::None;
    CanonicalForm form;

    static Block none() { return {}; }
    static Block finite() { return {Kind::Finite, {}}; }
    static Block of(CanonicalForm c) { return {Kind::Form, std::move(c)}; }

    bool isForm() const { return kind == Kind::Form; }
    friend bool operator==(const Block&, const Block&) = default;
};

inline std::string toString(const Block& b) {
    switch (b.kind) {
    case Block::Kind::None: return "none";
    case Block::Kind::Finite: return "finite";
    case Block::Kind::Form: return toString(b.form);
    }
    return "";
}

inline Block plus(const Block& a, const Block& b) {
    if (a.kind == Block::Kind::None) return b;
    if (b.kind == Block::Kind::None) return a;
    if (a.isForm() && b.isForm()) return Block::of(combine(a.form, b.form));
    if (a.isForm()) return a;
    if (b.isForm()) return b;
    return Block::finite();
}

inline Block perpB(const Block& b) { return b.isForm() ? Block::of(perpC(b.form)) : b; }

/// Sum of infinitely many disjoint copies.
inline Block omegaB(const Block& b) {
    switch (b.kind) {
    case Block::Kind::None: return b;
    case Block::Kind::Finite: return Block::of({FormKind::P, {}});
    case Block::Kind::Form: return Block::of(omegaSumC(b.form));
    }
    return b;
}

/// Sum of a diagonal family whose ranks are cofinal in lambda.
inline Block diagSum(const SchemaSeq& s) { return Block::of({FormKind::P, s.limit}); }

// ---------------------------------------------------------------------------

/// f(<>) = anchor, f(<n> v) = spine <n> v.  Reduces the whole ideal into the
/// restriction to `target` (or to the tree it generates).
struct EmbeddingWitness {
    Seq anchor;
    Seq spine;
    TreeSchema target;
    bool generatedTree = false;
    std::string route;
};

inline Seq witnessMap(const EmbeddingWitness& w, const Seq& u) {
    if (u.empty()) return w.anchor;
    return concat(w.spine, u);
}

struct TreeClass {
    bool borel = true;
    CanonicalForm form;                       // when borel
    std::optional<EmbeddingWitness> witness;  // when not

    std::string text() const { return borel ? toString(form) : "NON-BOREL"; }
};

inline bool sameVerdict(const TreeClass& a, const TreeClass& b) {
    if (a.borel != b.borel) return false;
    return !a.borel || a.form == b.form;
}

namespace detail {

inline Seq spinePath(std::size_t n) {
    Seq p(n, 0);
    p.push_back(1);
    return p;
}

/// Path to a full cone inside t, if any.
inline std::optional<Seq> findFull(const TreeSchema& t) {
    using namespace schema_node;
    using R = std::optional<Seq>;
    auto scan = [](const std::vector<TreeSchema>& heads, const SchemaSeq& tail, auto&& pathAt) -> R {
        for (std::size_t i = 0; i < heads.size(); ++i)
            if (R p = findFull(heads[i])) return concat(pathAt(i), *p);
        if (!tail.isDiag())
            if (R p = findFull(tail.item)) return concat(pathAt(heads.size()), *p);
        return std::nullopt;
    };
    return std::visit(Overloaded{
        [](const Full&) -> R { return Seq{}; },
        [](const Rooted& r) -> R { return findFull(r.inner); },
        [&](const Fan& f) -> R { return scan(f.heads, f.tail, [](std::size_t i) { return Seq{i}; }); },
        [&](const Spine& s) -> R { return scan(s.heads, s.tail, spinePath); },
        [](const auto&) -> R { return std::nullopt; },
    }, t.node().v);
}

struct Structural {
    Block block;
    std::optional<Seq> fullAt;
};

inline Structural classifyRec(const TreeSchema& t) {
    using namespace schema_node;
    using R = Structural;
    return std::visit(Overloaded{
        [](const Empty&) { return R{Block::none(), {}}; },
        [](const Eps&) { return R{Block::finite(), {}}; },
        [](const Chain&) { return R{Block::of({FormKind::Q, {}}), {}}; },
        [](const Full&) { return R{Block::none(), Seq{}}; },
        [](const Rooted& r) {
            R c = classifyRec(r.inner);
            if (c.block.kind == Block::Kind::None) c.block = Block::finite();
            return c;
        },
        [](const Fan& f) {
            Block acc;
            for (std::size_t i = 0; i < f.heads.size(); ++i) {
                R c = classifyRec(f.heads[i]);
                if (c.fullAt) return R{{}, concat(Seq{i}, *c.fullAt)};
                acc = plus(acc, c.block);
            }
            if (f.tail.isDiag()) return R{plus(acc, diagSum(f.tail)), {}};
            R c = classifyRec(f.tail.item);
            if (c.fullAt) return R{{}, concat(Seq{f.heads.size()}, *c.fullAt)};
            return R{plus(acc, omegaB(c.block)), {}};
        },
        [](const Spine& s) {
            Block fin;
            Block perps;
            for (std::size_t i = 0; i < s.heads.size(); ++i) {
                R c = classifyRec(s.heads[i]);
                if (c.fullAt) return R{{}, concat(spinePath(i), *c.fullAt)};
                fin = plus(fin, c.block);
                perps = plus(perps, perpB(c.block));
            }
            if (s.tail.isNone()) return R{fin, {}};
            if (s.tail.isDiag()) return R{perpB(plus(perps, diagSum(s.tail))), {}};
            R c = classifyRec(s.tail.item);
            if (c.fullAt) return R{{}, concat(spinePath(s.heads.size()), *c.fullAt)};
            return R{perpB(plus(perps, omegaB(perpB(c.block)))), {}};
        },
    }, t.node().v);
}

}  // namespace detail

/// Structural classification of the restriction to the set t itself.
inline TreeClass classify(const TreeSchema& t) {
    detail::Structural s = detail::classifyRec(t);
    if (s.fullAt) return {false, {}, EmbeddingWitness{*s.fullAt, *s.fullAt, t, false, "structural"}};
    if (!s.block.isForm()) throw FiniteSchema("schema " + t.key() + " denotes a finite set");
    return {true, s.block.form, std::nullopt};
}

/// Class of the generated tree minus the set itself (prefix nodes that are
/// not elements).
inline Block scaffoldClass(const TreeSchema& t) {
    using namespace schema_node;
    return std::visit(Overloaded{
        [](const Chain&) { return Block::finite(); },
        [](const Rooted& r) { return scaffoldClass(r.inner); },
        [](const Fan& f) {
            Block acc = Block::finite();
            for (const auto& h : f.heads) acc = plus(acc, scaffoldClass(h));
            if (f.tail.isDiag()) return plus(acc, diagSum(f.tail));
            return plus(acc, omegaB(scaffoldClass(f.tail.item)));
        },
        [](const Spine& s) {
            Block fin;
            Block perps;
            for (const auto& h : s.heads) {
                Block b = scaffoldClass(h);
                fin = plus(fin, b);
                perps = plus(perps, perpB(b));
            }
            if (s.tail.isNone()) return plus(Block::finite(), fin);
            Block zeroBranch = Block::of({FormKind::Q, {}});
            if (s.tail.isDiag()) return plus(zeroBranch, perpB(plus(perps, diagSum(s.tail))));
            Block tail = scaffoldClass(s.tail.item);
            if (tail.kind == Block::Kind::None) return plus(zeroBranch, fin);
            return plus(zeroBranch, perpB(plus(perps, omegaB(perpB(tail)))));
        },
        [](const auto&) { return Block::none(); },
    }, t.node().v);
}

// ---------------------------------------------------------------------------
// Derivative ranks.  rho(u) is the last stage at which node u of the generated
// tree survives; nullopt marks nodes of the perfect core.

using RankValue = std::optional<Ordinal>;

class RankEngine {
public:
    /// rho of the root of the tree generated by a nonempty schema.
    RankValue rootRank(const TreeSchema& t) {
        if (auto it = rho_.find(t.key()); it != rho_.end()) return it->second;
        RankValue r = computeRho(t);
        rho_.emplace(t.key(), r);
        return r;
    }

    /// Supremum of rho+1 over nodes outside the core.
    Ordinal removedSup(const TreeSchema& t) {
        using namespace schema_node;
        if (t.isEmpty()) return {};
        RankValue r = rootRank(t);
        if (r) return ordSucc(*r);
        return std::visit(Overloaded{
            [](const Full&) { return Ordinal{}; },
            [&](const Rooted& x) { return removedSup(x.inner); },
            [&](const Fan& f) {
                Ordinal m;
                for (const auto& h : f.heads) m = std::max(m, removedSup(h));
                if (f.tail.isDiag()) return std::max(m, f.tail.limit);
                return std::max(m, removedSup(f.tail.item));
            },
            [&](const Spine& s) {
                Ordinal m;
                std::optional<std::size_t> lastCore;
                for (std::size_t i = 0; i < s.heads.size(); ++i) {
                    m = std::max(m, removedSup(s.heads[i]));
                    if (!s.heads[i].isEmpty() && !rootRank(s.heads[i])) lastCore = i;
                }
                if (s.tail.isDiag()) m = std::max(m, s.tail.limit);
                else m = std::max(m, removedSup(s.tail.item));
                bool tailCore = !s.tail.isDiag() && !s.tail.item.isEmpty() && !rootRank(s.tail.item);
                if (!tailCore && lastCore) {
                    // Zero-branch nodes past the last core copy.
                    TreeSchema after = TreeSchema::spine({s.heads.begin() + *lastCore + 1, s.heads.end()}, s.tail);
                    m = std::max(m, removedSup(after));
                }
                return m;
            },
            [](const auto&) -> Ordinal { throw InvariantViolation("core node without a full cone"); },
        }, t.node().v);
    }

private:
    static RankValue maxR(const RankValue& a, const RankValue& b) {
        if (!a || !b) return std::nullopt;
        return std::max(*a, *b);
    }

    RankValue computeRho(const TreeSchema& t) {
        using namespace schema_node;
        return std::visit(Overloaded{
            [](const Empty&) -> RankValue { return Ordinal{}; },
            [](const Eps&) -> RankValue { return Ordinal{}; },
            [](const Chain&) -> RankValue { return Ordinal{}; },
            [](const Full&) -> RankValue { return std::nullopt; },
            [&](const Rooted& r) { return rootRank(r.inner); },
            [&](const Fan& f) {
                // Root survives stage b+1 iff a block survives it, or
                // infinitely many blocks reach stage b.
                RankValue m = Ordinal{};
                for (const auto& h : f.heads)
                    if (!h.isEmpty()) m = maxR(m, rootRank(h));
                if (f.tail.isDiag()) return maxR(m, f.tail.limit);
                if (f.tail.isNone()) return m;
                RankValue b = rootRank(f.tail.item);
                return maxR(m, b ? RankValue(ordSucc(*b)) : std::nullopt);
            },
            [&](const Spine& s) {
                // Zero-branch nodes are finitely branching; they last as long
                // as some later copy does.
                RankValue m = Ordinal{};
                for (const auto& h : s.heads)
                    if (!h.isEmpty()) m = maxR(m, rootRank(h));
                if (s.tail.isDiag()) return maxR(m, s.tail.limit);
                if (s.tail.isNone()) return m;
                return maxR(m, rootRank(s.tail.item));
            },
        }, t.node().v);
    }

    std::map<std::string, RankValue> rho_;
};

struct TreeRank {
    Ordinal rank;
    bool coreEmpty = true;
    friend bool operator==(const TreeRank&, const TreeRank&) = default;
};

/// Rank of the generated tree under iterated derivative and whether the
/// fixpoint is empty.
inline TreeRank treeRank(const TreeSchema& t) {
    if (t.isEmpty()) return {{}, true};
    RankEngine eng;
    RankValue r = eng.rootRank(t);
    if (r) return {ordSucc(*r), true};
    return {eng.removedSup(t), false};
}

// ---------------------------------------------------------------------------

namespace detail {

/// Classification of the generated tree by splitting it into the nodes of
/// maximal rank H and the lower-rank pieces hung off H.
class DerivativeClassifier {
public:
    Block generated(const TreeSchema& t) {
        if (auto it = memo_.find(t.key()); it != memo_.end()) return it->second;
        Block b = compute(t);
        memo_.emplace(t.key(), b);
        return b;
    }

    RankEngine& ranks() { return ranks_; }

private:
    struct HNode {
        Block pieces;
        std::vector<std::string> next;
    };

    static const TreeSchema& unwrap(const TreeSchema& t) {
        if (auto* r = std::get_if<schema_node::Rooted>(&t.node().v)) return r->inner;
        return t;
    }

    // A spine whose remaining copies are all diagonal: every zero-branch node
    // below it has the same rank, with pairwise distinct cones.
    static const SchemaSeq* diagonalSpine(const TreeSchema& t) {
        if (auto* s = std::get_if<schema_node::Spine>(&unwrap(t).node().v))
            if (s->heads.empty() && s->tail.isDiag()) return &s->tail;
        return nullptr;
    }

    Block compute(const TreeSchema& t) {
        if (t.isEmpty()) return Block::none();
        RankValue rv = ranks_.rootRank(t);
        if (!rv) throw InvariantViolation("derivative split requested on a tree with nonempty core");
        const Ordinal r = *rv;
        if (r.isZero()) return isFinite(t) ? Block::finite() : Block::of({FormKind::Q, {}});

        std::map<std::string, HNode> h;
        std::map<std::string, TreeSchema> byKey;
        std::vector<TreeSchema> work{t};
        Block familyPerps;
        bool family = false;
        while (!work.empty()) {
            TreeSchema x = work.back();
            work.pop_back();
            if (h.count(x.key())) continue;
            HNode& node = h[x.key()];
            byKey.emplace(x.key(), x);
            if (const SchemaSeq* d = diagonalSpine(x)) {
                family = true;
                familyPerps = plus(familyPerps, diagSum(*d));
                continue;
            }
            ChildView v = view(x);
            for (const auto& c : v.children) {
                if (c.isEmpty()) continue;
                RankValue rc = ranks_.rootRank(c);
                if (!rc) throw InvariantViolation("core below a node of bounded rank");
                if (*rc == r) {
                    node.next.push_back(c.key());
                    work.push_back(c);
                } else {
                    node.pieces = plus(node.pieces, generated(c));
                }
            }
            if (v.rest.isDiag()) {
                node.pieces = plus(node.pieces, diagSum(v.rest));
            } else if (!v.rest.isNone()) {
                RankValue rc = ranks_.rootRank(v.rest.item);
                if (!rc || *rc >= r) throw InvariantViolation("infinitely many children of maximal rank");
                node.pieces = plus(node.pieces, omegaB(generated(v.rest.item)));
            }
        }

        std::set<std::string> repeated = onCycles(h);
        if (!family && repeated.empty()) {
            Block acc = Block::finite();
            for (const auto& [k, node] : h) acc = plus(acc, node.pieces);
            return acc;
        }
        Block perps = familyPerps;
        for (const auto& [k, node] : h) {
            Block p = perpB(node.pieces);
            perps = plus(perps, repeated.count(k) ? omegaB(p) : p);
        }
        if (!perps.isForm()) throw InvariantViolation("infinite maximal-rank tree with only finite pieces");
        return plus(perpB(perps), Block::of({FormKind::Q, {}}));
    }

    // Keys reachable from a cycle of the maximal-rank graph; these label
    // infinitely many nodes.
    static std::set<std::string> onCycles(const std::map<std::string, HNode>& h) {
        std::set<std::string> cyclic;
        for (const auto& [k, node] : h) {
            std::set<std::string> seen;
            std::vector<std::string> st(node.next.begin(), node.next.end());
            while (!st.empty()) {
                std::string y = st.back();
                st.pop_back();
                if (y == k) {
                    cyclic.insert(k);
                    break;
                }
                if (!seen.insert(y).second) continue;
                for (const auto& z : h.at(y).next) st.push_back(z);
            }
        }
        std::set<std::string> out;
        std::vector<std::string> st(cyclic.begin(), cyclic.end());
        while (!st.empty()) {
            std::string y = st.back();
            st.pop_back();
            if (!out.insert(y).second) continue;
            for (const auto& z : h.at(y).next) st.push_back(z);
        }
        return out;
    }

    RankEngine ranks_;
    std::map<std::string, Block> memo_;
};

}  // namespace detail

/// Classification of the restriction to the tree generated by t, computed
/// through its derivative sequence.
inline TreeClass classifyViaDerivative(const TreeSchema& t) {
    if (isFinite(t)) throw FiniteSchema("schema " + t.key() + " denotes a finite set");
    detail::DerivativeClassifier dc;
    if (!dc.ranks().rootRank(t)) {
        std::optional<Seq> p = detail::findFull(t);
        if (!p) throw InvariantViolation("nonempty core without a full cone");
        return {false, {}, EmbeddingWitness{Seq{}, *p, t, true, "derivative"}};
    }
    Block b = dc.generated(t);
    if (!b.isForm()) throw InvariantViolation("infinite schema classified as finite");
    return {true, b.form, std::nullopt};
}

}  // namespace bideal

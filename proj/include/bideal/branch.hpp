#pragma once

// Witnesses for the branch-dominated ideal: an eventually periodic branch
// dominating every element, or a family of elements unbounded at a coordinate.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "bideal/error.hpp"
#include "bideal/schema.hpp"

namespace bideal {

/// prefix followed by cycle repeated forever.
struct EventuallyPeriodic {
    std::vector<std::uint64_t> prefix;
    std::vector<std::uint64_t> cycle{0};

    std::uint64_t at(std::size_t i) const {
        if (i < prefix.size()) return prefix[i];
        return cycle[(i - prefix.size()) % cycle.size()];
    }

    static EventuallyPeriodic constant(std::uint64_t v) { return {{}, {v}}; }

    std::string text() const {
        std::string s;
        for (auto v : prefix) s += std::to_string(v) + ",";
        s += "(";
        for (std::size_t i = 0; i < cycle.size(); ++i) s += (i ? "," : "") + std::to_string(cycle[i]);
        return s + ")^w";
    }

    friend bool operator==(const EventuallyPeriodic&, const EventuallyPeriodic&) = default;
};

/// Shortest description: minimal period, then prefix folded into the cycle.
inline EventuallyPeriodic simplify(EventuallyPeriodic a) {
    auto& c = a.cycle;
    for (std::size_t p = 1; p <= c.size(); ++p) {
        if (c.size() % p) continue;
        bool ok = true;
        for (std::size_t i = p; i < c.size() && ok; ++i) ok = c[i] == c[i - p];
        if (ok) {
            c.resize(p);
            break;
        }
    }
    while (!a.prefix.empty() && a.prefix.back() == c.back()) {
        c.insert(c.begin(), a.prefix.back());
        c.pop_back();
        a.prefix.pop_back();
    }
    return a;
}

inline bool dominates(const EventuallyPeriodic& a, const Seq& u) {
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] > a.at(i)) return false;
    return true;
}

inline EventuallyPeriodic pointwiseMax(const EventuallyPeriodic& a, const EventuallyPeriodic& b) {
    std::size_t pre = std::max(a.prefix.size(), b.prefix.size());
    std::size_t cyc = std::lcm(a.cycle.size(), b.cycle.size());
    EventuallyPeriodic out{{}, {}};
    for (std::size_t i = 0; i < pre; ++i) out.prefix.push_back(std::max(a.at(i), b.at(i)));
    for (std::size_t i = pre; i < pre + cyc; ++i) out.cycle.push_back(std::max(a.at(i), b.at(i)));
    return simplify(std::move(out));
}

inline EventuallyPeriodic prepend(const Seq& head, EventuallyPeriodic a) {
    a.prefix.insert(a.prefix.begin(), head.begin(), head.end());
    return simplify(std::move(a));
}

/// i -> max of a(0..i).
inline EventuallyPeriodic runningMax(const EventuallyPeriodic& a) {
    EventuallyPeriodic out{{}, {}};
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < a.prefix.size() + a.cycle.size(); ++i) {
        m = std::max(m, a.at(i));
        out.prefix.push_back(m);
    }
    out.cycle = {m};
    return simplify(std::move(out));
}

/// Members with strictly increasing entries at `coordinate`.
struct UnboundedFamily {
    std::size_t coordinate = 0;
    std::function<Seq(std::uint64_t)> member;
    std::string description;
};

struct IdWitness {
    bool dominated = true;
    EventuallyPeriodic branch;       // when dominated
    UnboundedFamily family;          // otherwise
};

/// Branch dominating every element of a schema in the dominated ideal.
inline EventuallyPeriodic dominatingBranch(const TreeSchema& t) {
    using namespace schema_node;
    if (!inId(t)) throw InvariantViolation("no dominating branch for " + t.key());
    return std::visit(Overloaded{
        [](const Rooted& r) { return dominatingBranch(r.inner); },
        [](const Fan& f) {
            EventuallyPeriodic below;
            std::uint64_t top = 0;
            for (std::size_t i = 0; i < f.heads.size(); ++i) {
                if (f.heads[i].isEmpty()) continue;
                top = i;
                below = pointwiseMax(below, dominatingBranch(f.heads[i]));
            }
            return prepend({top}, below);
        },
        [](const Spine& s) {
            EventuallyPeriodic acc;
            for (std::size_t i = 0; i < s.heads.size(); ++i) {
                if (s.heads[i].isEmpty()) continue;
                Seq at(i, 0);
                at.push_back(1);
                acc = pointwiseMax(acc, prepend(at, dominatingBranch(s.heads[i])));
            }
            if (!s.tail.isNone()) {
                // Copy n sits n+1 levels down; a nondecreasing bound covers every shift.
                EventuallyPeriodic tail = runningMax(dominatingBranch(s.tail.item));
                acc = pointwiseMax(acc, pointwiseMax(tail, EventuallyPeriodic::constant(1)));
            }
            return acc;
        },
        [](const auto&) { return EventuallyPeriodic{}; },
    }, t.node().v);
}

/// Family witnessing that a schema is not dominated by any branch.
inline UnboundedFamily unboundedFamily(const TreeSchema& t) {
    using namespace schema_node;
    if (inId(t)) throw InvariantViolation("schema " + t.key() + " is dominated");
    auto under = [](Seq prefix, UnboundedFamily inner) {
        UnboundedFamily out;
        out.coordinate = inner.coordinate + prefix.size();
        out.description = toString(prefix) + " then " + inner.description;
        out.member = [prefix, m = inner.member](std::uint64_t n) { return concat(prefix, m(n)); };
        return out;
    };
    return std::visit(Overloaded{
        [](const Full&) {
            return UnboundedFamily{0, [](std::uint64_t n) { return Seq{n}; }, "<n>"};
        },
        [](const Rooted& r) { return unboundedFamily(r.inner); },
        [&](const Fan& f) {
            if (f.tail.isNone()) {
                for (std::size_t i = 0; i < f.heads.size(); ++i)
                    if (!inId(f.heads[i])) return under({i}, unboundedFamily(f.heads[i]));
                throw InvariantViolation("fan without undominated block");
            }
            std::vector<std::uint64_t> nonempty;
            for (std::size_t i = 0; i < f.heads.size(); ++i)
                if (!f.heads[i].isEmpty()) nonempty.push_back(i);
            std::uint64_t k = f.heads.size();
            auto fan = t;
            UnboundedFamily out;
            out.coordinate = 0;
            out.description = "<m_n> then least element of block m_n";
            out.member = [nonempty, k, fan](std::uint64_t n) {
                std::uint64_t m = n < nonempty.size() ? nonempty[n] : k + (n - nonempty.size());
                return concat(Seq{m}, canonicalPick(view(fan).child(m)));
            };
            return out;
        },
        [&](const Spine& s) {
            auto at = [](std::size_t i) {
                Seq p(i, 0);
                p.push_back(1);
                return p;
            };
            for (std::size_t i = 0; i < s.heads.size(); ++i)
                if (!inId(s.heads[i])) return under(at(i), unboundedFamily(s.heads[i]));
            if (s.tail.isNone()) throw InvariantViolation("spine without undominated copy");
            return under(at(s.heads.size()), unboundedFamily(s.tail.block(0)));
        },
        [](const auto&) -> UnboundedFamily { throw InvariantViolation("dominated leaf"); },
    }, t.node().v);
}

inline IdWitness idWitness(const TreeSchema& t) {
    if (inId(t)) return {true, dominatingBranch(t), {}};
    return {false, {}, unboundedFamily(t)};
}

}  // namespace bideal

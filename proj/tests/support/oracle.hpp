#pragma once

// Answer sets by definition, written independently of the library solver: every
// consistent subset S of the literals is a candidate, kept iff S is a model of the
// reduct and no proper subset of S is.

#include <cstdint>
#include <set>
#include <vector>

#include "gcmeta/core.hpp"

namespace oracle {

using gcmeta::Literal;
using gcmeta::Program;

inline bool models(const Program& p, const std::vector<Literal>& all, std::uint32_t mask,
                   std::uint32_t reduct_mask) {
    auto in = [&](std::uint32_t m, const Literal& l) {
        for (std::size_t i = 0; i < all.size(); ++i)
            if (all[i] == l) return ((m >> i) & 1u) != 0;
        return false;
    };
    for (const auto& r : p.rules) {
        bool blocked = false;
        for (const auto& l : r.nbody) blocked = blocked || in(reduct_mask, l);
        if (blocked) continue;
        bool body = true;
        for (const auto& l : r.pbody) body = body && in(mask, l);
        if (!body) continue;
        bool head = false;
        for (const auto& l : r.head) head = head || in(mask, l);
        if (!head) return false;
    }
    return true;
}

inline std::set<gcmeta::LiteralSet> answer_sets(const Program& p) {
    const std::vector<Literal> all = gcmeta::literals_of(p);
    std::set<gcmeta::LiteralSet> out;
    const std::uint32_t n = static_cast<std::uint32_t>(all.size());
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        gcmeta::LiteralSet set;
        for (std::uint32_t i = 0; i < n; ++i)
            if ((s >> i) & 1u) set.insert(all[i]);
        if (!gcmeta::is_consistent(set)) continue;
        if (!models(p, all, s, s)) continue;
        bool minimal = true;
        if (s != 0) {
            // proper subsets of s, down to the empty set
            std::uint32_t t = (s - 1) & s;
            while (minimal) {
                if (models(p, all, t, s)) minimal = false;
                if (t == 0) break;
                t = (t - 1) & s;
            }
        }
        if (minimal) out.insert(set);
    }
    return out;
}

}  // namespace oracle

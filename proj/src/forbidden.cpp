#include "tilejep/forbidden.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <unordered_set>

namespace tilejep {

std::vector<std::string> materializable_constraints() { return {"1", "2", "3", "6", "6*"}; }

namespace {

using Mask = std::uint64_t;
constexpr std::size_t kMaxUnion = 64;

enum class CondKind { Shared, Apart, Capture, Distinct, MinShared };

// Slot/point references are (slot, element point).
struct Cond {
    CondKind kind;
    std::size_t i = 0;
    PointId pi = 0;
    std::size_t j = 0;
    PointId pj = 0;
};

struct Config {
    std::string constraint;
    std::vector<std::size_t> elements; // one per slot
    std::vector<Cond> conds;
};

std::vector<std::size_t> elements_with(const GadgetSet& g, int sup, std::initializer_list<Role> roles) {
    std::vector<std::size_t> out;
    for (Role r : roles)
        if (auto e = g.find(r, sup))
            out.push_back(*e);
    return out;
}

std::vector<Config> configurations(const GadgetSet& g, const std::string& id) {
    std::vector<Config> out;
    const int top = g.max_superscript();
    if (id == "1") {
        for (int s = 0; s <= top; ++s) {
            const auto path = elements_with(g, s, {Role::P, Role::O});
            // Two successors: copies E1, E2 share the root p and capture roots of Fa, Fb.
            for (auto e1 : path)
                for (auto e2 : path)
                    for (auto fa : path)
                        for (auto fb : path)
                            out.push_back({id,
                                           {e1, e2, fa, fb},
                                           {{CondKind::Shared, 0, 0, 1, 0},
                                            {CondKind::Capture, 0, 0, 2, 0},
                                            {CondKind::Capture, 1, 0, 3, 0},
                                            {CondKind::Apart, 2, 0, 3, 0}}});
            // Two predecessors: Fa and Fb both capture the root of G.
            for (auto fa : path)
                for (auto fb : path)
                    for (auto gp : path)
                        out.push_back({id,
                                       {fa, fb, gp},
                                       {{CondKind::Capture, 0, 0, 2, 0},
                                        {CondKind::Capture, 1, 0, 2, 0},
                                        {CondKind::Apart, 0, 0, 1, 0}}});
        }
    } else if (id == "2") {
        for (int s = 0; s <= top; ++s)
            for (auto e : elements_with(g, s, {Role::P, Role::O}))
                out.push_back({id, {e, g.index(Role::O, s)}, {{CondKind::Capture, 0, 0, 1, 0}}});
    } else if (id == "3") {
        for (int s = 0; s <= top; ++s) {
            for (Role r : {Role::X, Role::Y}) {
                const auto e = g.index(r, s);
                out.push_back({id, {e, e}, {{CondKind::Shared, 0, 0, 1, 0}, {CondKind::Distinct, 0, 0, 1, 0}}});
            }
            const auto path = elements_with(g, s, {Role::P, Role::O});
            for (Role r : {Role::X, Role::Y})
                for (auto f1 : path)
                    for (auto f2 : path)
                        out.push_back({id,
                                       {g.index(r, s), f1, f2},
                                       {{CondKind::Capture, 0, 0, 1, 0},
                                        {CondKind::Capture, 0, 0, 2, 0},
                                        {CondKind::Apart, 1, 0, 2, 0}}});
        }
    } else if (id == "6" || id == "6*") {
        if ((id == "6") != (g.variant() == Variant::P))
            throw Error(ErrorCode::Unsupported, "constraint " + id + " does not apply to this variant");
        for (int s = 0; s <= top; ++s)
            for (int s2 = s + 1; s2 <= top; ++s2) {
                if (id == "6" && !(s == 0 && s2 == 1))
                    continue;
                for (std::size_t e = 0; e < g.size(); ++e)
                    for (std::size_t f = 0; f < g.size(); ++f)
                        if (g[e].superscript == s && g[f].superscript == s2)
                            out.push_back({id, {e, f}, {{CondKind::MinShared, 0, 0, 1, 0}}});
            }
    } else {
        throw Error(ErrorCode::Unsupported, "constraint " + id + " has no finite materialization here");
    }
    return out;
}

// Union of the slots with three partial orders, as reachability masks.
struct UnionState {
    std::size_t n = 0;
    std::array<std::array<Mask, kMaxUnion>, 3> reach{}; // reach[k][u]: nodes strictly above u
    std::vector<std::vector<int>> assign;               // slot -> element point -> node (-1 unset)
    std::vector<Mask> slot_nodes;

    bool less(std::size_t k, std::size_t u, std::size_t v) const { return (reach[k][u] >> v) & 1u; }

    bool add(std::size_t k, std::size_t u, std::size_t v) {
        if (u == v || less(k, v, u))
            return false;
        const Mask add = reach[k][v] | (Mask{1} << v);
        for (std::size_t w = 0; w < n; ++w)
            if (w == u || less(k, w, u))
                reach[k][w] |= add;
        return true;
    }
};

class Enumerator {
public:
    Enumerator(const GadgetSet& g, const ForbiddenOptions& o) : g_(g), o_(o) {
        if (o_.size_cap > 16)
            throw Error(ErrorCode::Unsupported, "size caps above 16 are not materialized");
    }

    // Calls visit for every consistent union (identifications and conditions applied).
    void unions(const Config& cfg, const std::function<void(const UnionState&)>& visit) {
        UnionState st;
        st.assign.resize(cfg.elements.size());
        st.slot_nodes.assign(cfg.elements.size(), 0);
        for (std::size_t s = 0; s < cfg.elements.size(); ++s)
            st.assign[s].assign(g_[cfg.elements[s]].shape.size(), -1);
        place(cfg, st, 0, 0, visit);
    }

private:
    void place(const Config& cfg, UnionState& st, std::size_t slot, PointId q,
               const std::function<void(const UnionState&)>& visit) {
        if (slot == cfg.elements.size()) {
            finish(cfg, st, visit);
            return;
        }
        const auto& shape = g_[cfg.elements[slot]].shape;
        if (q == shape.size()) {
            place(cfg, st, slot + 1, 0, visit);
            return;
        }
        // Remaining points of later slots could all be shared, so only the current union bounds the cap.
        std::optional<int> forced;
        for (const auto& c : cfg.conds)
            if (c.kind == CondKind::Shared) {
                if (c.j == slot && c.pj == q && c.i < slot)
                    forced = st.assign[c.i][c.pi];
                if (c.i == slot && c.pi == q && c.j < slot)
                    forced = st.assign[c.j][c.pj];
            }
        auto try_node = [&](std::size_t u, bool fresh) {
            UnionState next = st;
            if (fresh)
                next.n = st.n + 1;
            next.assign[slot][q] = static_cast<int>(u);
            next.slot_nodes[slot] |= Mask{1} << u;
            for (PointId r = 0; r < q; ++r) {
                const auto w = static_cast<std::size_t>(next.assign[slot][r]);
                for (std::size_t k = 0; k < 3; ++k) {
                    const bool ok = shape.less(k, r, q) ? next.add(k, w, u) : next.add(k, u, w);
                    if (!ok)
                        return;
                }
            }
            // Capturing slots are always complete by now; applying the capture early
            // keeps later points of this slot off the capturing copy.
            for (const auto& c : cfg.conds)
                if (c.kind == CondKind::Capture && c.j == slot && c.pj == q && !capture(cfg, next, c))
                    return;
            place(cfg, next, slot, q + 1, visit);
        };
        if (forced) {
            if (!((st.slot_nodes[slot] >> *forced) & 1u))
                try_node(static_cast<std::size_t>(*forced), false);
            return;
        }
        for (std::size_t u = 0; u < st.n; ++u) {
            if ((st.slot_nodes[slot] >> u) & 1u)
                continue;
            bool apart = false;
            for (const auto& c : cfg.conds)
                if (c.kind == CondKind::Apart &&
                    ((c.j == slot && c.pj == q && c.i < slot && st.assign[c.i][c.pi] == static_cast<int>(u)) ||
                     (c.i == slot && c.pi == q && c.j < slot && st.assign[c.j][c.pj] == static_cast<int>(u))))
                    apart = true;
            if (!apart)
                try_node(u, false);
        }
        if (st.n < o_.size_cap)
            try_node(st.n, true);
    }

    bool capture(const Config& cfg, UnionState& st, const Cond& c) const {
        const auto& e = g_[cfg.elements[c.i]];
        const auto x = static_cast<std::size_t>(st.assign[c.j][c.pj]);
        if ((st.slot_nodes[c.i] >> x) & 1u)
            return false;
        for (PointId p = 0; p < e.shape.size(); ++p) {
            const auto u = static_cast<std::size_t>(st.assign[c.i][p]);
            if (!st.add(0, u, x) || !st.add(2, u, x))
                return false;
        }
        return st.add(1, static_cast<std::size_t>(st.assign[c.i][e.lowest()]), x) &&
               st.add(1, x, static_cast<std::size_t>(st.assign[c.i][e.second_lowest()]));
    }

    void finish(const Config& cfg, const UnionState& st, const std::function<void(const UnionState&)>& visit) {
        for (const auto& c : cfg.conds) {
            switch (c.kind) {
            case CondKind::Distinct:
                if (st.slot_nodes[c.i] == st.slot_nodes[c.j])
                    return;
                break;
            case CondKind::MinShared:
                if ((st.slot_nodes[c.i] & st.slot_nodes[c.j]) == 0)
                    return;
                break;
            default:
                break;
            }
        }
        visit(st);
    }

    const GadgetSet& g_;
    const ForbiddenOptions& o_;
};

// Predecessor masks per order.
std::array<std::vector<Mask>, 3> predecessors(const UnionState& st) {
    std::array<std::vector<Mask>, 3> pred;
    for (std::size_t k = 0; k < 3; ++k) {
        pred[k].assign(st.n, 0);
        for (std::size_t u = 0; u < st.n; ++u)
            for (std::size_t v = 0; v < st.n; ++v)
                if (st.less(k, u, v))
                    pred[k][v] |= Mask{1} << u;
    }
    return pred;
}

long double count_extensions(const std::vector<Mask>& pred) {
    const std::size_t n = pred.size();
    std::vector<long double> ways(std::size_t{1} << n, 0);
    ways[0] = 1;
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
        if (ways[m] == 0)
            continue;
        for (std::size_t u = 0; u < n; ++u)
            if (!((m >> u) & 1u) && (pred[u] & ~m) == 0)
                ways[m | (Mask{1} << u)] += ways[m];
    }
    return ways[(Mask{1} << n) - 1];
}

// Every linear extension as a position array (node -> rank).
std::vector<std::vector<std::uint8_t>> extensions(const std::vector<Mask>& pred) {
    const std::size_t n = pred.size();
    std::vector<std::vector<std::uint8_t>> out;
    std::vector<std::uint8_t> pos(n);
    std::function<void(Mask, std::uint8_t)> go = [&](Mask placed, std::uint8_t r) {
        if (r == n) {
            out.push_back(pos);
            return;
        }
        for (std::size_t u = 0; u < n; ++u)
            if (!((placed >> u) & 1u) && (pred[u] & ~placed) == 0) {
                pos[u] = r;
                go(placed | (Mask{1} << u), static_cast<std::uint8_t>(r + 1));
            }
    };
    go(0, 0);
    return out;
}

void run(const ClassDescriptor& c, const std::set<std::string>& constraints, const ForbiddenOptions& opts,
         const std::function<bool(const PatternSet::Key&, std::size_t, const std::string&)>& visit) {
    Enumerator en(*c.gadgets, opts);
    std::vector<std::unordered_set<PatternSet::Key, PatternSet::KeyHash>> seen(17);
    long double budget_used = 0;
    bool stop = false;
    for (const auto& id : constraints) {
        if (id == "6" && c.variant != Variant::P)
            throw Error(ErrorCode::Unsupported, "constraint 6 does not apply to the doubled class");
        if (id == "6*" && c.variant != Variant::Q)
            throw Error(ErrorCode::Unsupported, "constraint 6* applies only to the doubled class");
        for (const auto& cfg : configurations(*c.gadgets, id)) {
            en.unions(cfg, [&](const UnionState& st) {
                if (stop)
                    return;
                const auto pred = predecessors(st);
                long double raw = 1;
                for (const auto& p : pred)
                    raw *= count_extensions(p);
                budget_used += raw;
                if (budget_used > static_cast<long double>(opts.max_candidates))
                    throw Error(ErrorCode::BudgetExceeded,
                                "constraint " + id + ": more than " + std::to_string(opts.max_candidates) +
                                    " raw candidates under size cap " + std::to_string(opts.size_cap));
                const auto e0 = extensions(pred[0]);
                const auto e1 = extensions(pred[1]);
                const auto e2 = extensions(pred[2]);
                const std::size_t n = st.n;
                std::vector<std::size_t> at(n);
                for (const auto& p0 : e0) {
                    for (std::size_t u = 0; u < n; ++u)
                        at[p0[u]] = u; // structure point i is the node at order-0 rank i
                    for (const auto& p1 : e1) {
                        std::uint64_t k1 = 0;
                        for (std::size_t i = 0; i < n; ++i)
                            k1 |= std::uint64_t{p1[at[i]]} << (4 * i);
                        for (const auto& p2 : e2) {
                            std::uint64_t k2 = 0;
                            for (std::size_t i = 0; i < n; ++i)
                                k2 |= std::uint64_t{p2[at[i]]} << (4 * i);
                            PatternSet::Key key{k1, k2};
                            if (!seen[n].insert(key).second)
                                continue;
                            if (!visit(key, n, id)) {
                                stop = true;
                                return;
                            }
                        }
                    }
                }
            });
            if (stop)
                return;
        }
    }
}

} // namespace

void for_each_forbidden(const ClassDescriptor& c, const std::set<std::string>& constraints,
                        const ForbiddenOptions& opts,
                        const std::function<bool(const MultiPerm&, const std::string&)>& visit) {
    run(c, constraints, opts, [&](const PatternSet::Key& k, std::size_t n, const std::string& id) {
        return visit(PatternSet::unpack(k, n), id);
    });
}

PatternSet enumerate_forbidden(const ClassDescriptor& c, const std::set<std::string>& constraints,
                               const ForbiddenOptions& opts) {
    PatternSet out;
    run(c, constraints, opts, [&](const PatternSet::Key& k, std::size_t n, const std::string&) {
        out.insert_packed(k, n);
        return true;
    });
    return out;
}

long double count_forbidden_candidates(const ClassDescriptor& c, const std::set<std::string>& constraints,
                                       const ForbiddenOptions& opts) {
    Enumerator en(*c.gadgets, opts);
    long double total = 0;
    for (const auto& id : constraints)
        for (const auto& cfg : configurations(*c.gadgets, id))
            en.unions(cfg, [&](const UnionState& st) {
                long double raw = 1;
                for (const auto& p : predecessors(st))
                    raw *= count_extensions(p);
                total += raw;
            });
    return total;
}

Verdict membership_by_avoidance(const MultiPerm& s, const PatternSet& forbidden) {
    Verdict v;
    auto a = avoids_all(s, forbidden);
    if (!a.avoids) {
        v.member = false;
        v.violations.push_back({"forbidden", a.witness ? a.witness->map : std::vector<PointId>{},
                                "contains a forbidden pattern"});
    }
    return v;
}

} // namespace tilejep

#include "tilejep/jep.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <queue>

namespace tilejep {

MergeState::MergeState(const MultiPerm& a, const MultiPerm& b) : na_(a.size()), nb_(b.size()) {
    if ((!a.empty() && a.dims() != 3) || (!b.empty() && b.dims() != 3))
        throw Error(ErrorCode::DimsMismatch, "merge factors need three orders");
    words_ = (size() + 63) / 64;
    reach_.assign(size(), std::vector<std::uint64_t>(words_, 0));
    out_.assign(size(), {});
    chain_pos_.assign(size(), 0);
    for (Rank r = 0; r < na_; ++r)
        chain_a_.push_back(node_a(a.at_rank(1, r)));
    for (Rank r = 0; r < nb_; ++r)
        chain_b_.push_back(node_b(b.at_rank(1, r)));
    for (const auto* chain : {&chain_a_, &chain_b_})
        for (std::size_t i = 0; i < chain->size(); ++i) {
            chain_pos_[(*chain)[i]] = i;
            if (i > 0)
                add_less((*chain)[i - 1], (*chain)[i]);
        }
}

std::optional<Node> MergeState::chain_prev(Node u) const {
    const auto& chain = in_a(u) ? chain_a_ : chain_b_;
    const std::size_t i = chain_pos_[u];
    return i == 0 ? std::nullopt : std::optional<Node>(chain[i - 1]);
}

std::optional<Node> MergeState::chain_next(Node u) const {
    const auto& chain = in_a(u) ? chain_a_ : chain_b_;
    const std::size_t i = chain_pos_[u];
    return i + 1 == chain.size() ? std::nullopt : std::optional<Node>(chain[i + 1]);
}

std::vector<Node> MergeState::path(Node from, Node to) const {
    std::vector<Node> parent(size(), static_cast<Node>(-1));
    std::queue<Node> q;
    q.push(from);
    parent[from] = from;
    while (!q.empty()) {
        const Node u = q.front();
        q.pop();
        if (u == to)
            break;
        for (Node v : out_[u])
            if (parent[v] == static_cast<Node>(-1)) {
                parent[v] = u;
                q.push(v);
            }
    }
    std::vector<Node> p;
    for (Node u = to; parent[u] != static_cast<Node>(-1); u = parent[u]) {
        p.push_back(u);
        if (u == from)
            break;
    }
    std::reverse(p.begin(), p.end());
    return p;
}

void MergeState::add_less(Node u, Node v) {
    if (u == v || less(v, u)) {
        auto cyc = u == v ? std::vector<Node>{u} : path(v, u);
        std::string text;
        for (Node x : cyc)
            text += (in_a(x) ? "a" + std::to_string(x) : "b" + std::to_string(x - na_)) + " < ";
        text += in_a(v) ? "a" + std::to_string(v) : "b" + std::to_string(v - na_);
        throw Error(ErrorCode::AlignmentInconsistent, "order 1 would contain the cycle " + text);
    }
    if (less(u, v))
        return;
    out_[u].push_back(v);
    std::vector<std::uint64_t> add = reach_[v];
    add[v >> 6] |= std::uint64_t{1} << (v & 63);
    for (Node w = 0; w < size(); ++w)
        if (w == u || less(w, u))
            for (std::size_t k = 0; k < words_; ++k)
                reach_[w][k] |= add[k];
}

void MergeState::align(NodeInterval ia, NodeInterval ib) {
    if (!in_a(ia.lo) || !in_a(ia.hi) || in_a(ib.lo) || in_a(ib.hi))
        throw Error(ErrorCode::Usage, "align takes an A interval and a B interval");
    for (auto [x, y] : {std::pair{ia, ib}, std::pair{ib, ia}}) {
        if (auto p = chain_prev(y.lo))
            add_less(*p, x.lo);
        if (auto n = chain_next(y.hi))
            add_less(x.hi, *n);
    }
}

namespace {

std::vector<Node> linearize(const MergeState& m) {
    const std::size_t n = m.size();
    std::vector<std::size_t> preds(n, 0);
    for (Node u = 0; u < n; ++u)
        for (Node v = 0; v < n; ++v)
            if (m.less(u, v))
                ++preds[v];
    std::vector<char> placed(n, 0);
    std::vector<Node> out;
    for (std::size_t step = 0; step < n; ++step) {
        Node pick = static_cast<Node>(-1);
        for (Node u = 0; u < n; ++u)
            if (!placed[u] && preds[u] == 0) {
                pick = u;
                break; // A nodes come first in id order
            }
        if (pick == static_cast<Node>(-1))
            throw Error(ErrorCode::CompletionFailed, "partial order has a cycle");
        placed[pick] = 1;
        out.push_back(pick);
        for (Node v = 0; v < n; ++v)
            if (m.less(pick, v))
                --preds[v];
    }
    return out;
}

} // namespace

std::vector<Node> complete_order(const MergeState& m, const std::vector<NodeInterval>& intervals) {
    struct Pair {
        NodeInterval a, b;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < intervals.size(); ++i)
        for (std::size_t j = 0; j < intervals.size(); ++j) {
            const auto& x = intervals[i];
            const auto& y = intervals[j];
            if (!m.in_a(x.lo) || m.in_a(y.lo))
                continue;
            if (m.forced_intersect(x, y))
                continue; // already designated
            pairs.push_back({x, y});
        }
    std::string obstruction;
    std::function<std::optional<MergeState>(MergeState, std::size_t)> solve =
        [&](MergeState s, std::size_t k) -> std::optional<MergeState> {
        for (; k < pairs.size(); ++k) {
            const auto& [x, y] = pairs[k];
            if (s.forced_disjoint(x, y))
                continue;
            if (s.forced_intersect(x, y)) {
                obstruction = "intervals [a" + std::to_string(x.lo) + ", a" + std::to_string(x.hi) + "] and [b" +
                              std::to_string(y.lo - s.size_a()) + ", b" + std::to_string(y.hi - s.size_a()) +
                              "] were forced to intersect";
                return std::nullopt;
            }
            // Only one direction stays open once some point of one lies below the other's top.
            std::vector<std::pair<Node, Node>> options;
            if (!s.less(y.lo, x.hi))
                options.push_back({x.hi, y.lo});
            if (!s.less(x.lo, y.hi))
                options.push_back({y.hi, x.lo});
            for (auto [u, v] : options) {
                MergeState next = s;
                try {
                    next.add_less(u, v);
                } catch (const Error&) {
                    continue;
                }
                if (auto done = solve(std::move(next), k + 1))
                    return done;
            }
            if (obstruction.empty())
                obstruction = "no direction separates intervals [a" + std::to_string(x.lo) + ", a" +
                              std::to_string(x.hi) + "] and [b" + std::to_string(y.lo - s.size_a()) + ", b" +
                              std::to_string(y.hi - s.size_a()) + "]";
            return std::nullopt;
        }
        return s;
    };
    auto done = solve(m, 0);
    if (!done)
        throw Error(ErrorCode::CompletionFailed, obstruction);
    return linearize(*done);
}

namespace {

struct Factor {
    const MultiPerm* s;
    TaggedStructure t;
    WeakCoordinateMap w;
    std::map<Coord, std::vector<std::size_t>> at; // weak coordinate -> positions in w.intervals
};

Factor tag(const MultiPerm& s, const ClassDescriptor& c, const Pairing& p) {
    TaggedStructure t(s, c.gadgets);
    WeakCoordinateMap w = weak_coordinates(t, p);
    Factor f{&s, std::move(t), std::move(w), {}};
    for (std::size_t a = 0; a < f.w.intervals.size(); ++a)
        for (const auto& xy : f.w.coords[a])
            f.at[xy].push_back(a);
    return f;
}

bool antilex_key_less(const Coord& a, const Coord& b) { return antilex_less(a, b); }

// Order-1 merge of two halves with A before B in orders 0 and 2.
std::vector<Node> merge_order1(const MultiPerm& a, const MultiPerm& b, const Tiling& theta, const ClassDescriptor& c,
                               const Pairing& p) {
    Factor fa = tag(a, c, p);
    Factor fb = tag(b, c, p);
    MergeState m(a, b);
    auto na = [&](PointId x) { return m.node_a(x); };
    auto nb = [&](PointId x) { return m.node_b(x); };

    auto rank_span = [](const TaggedStructure& t, std::size_t copy) {
        Rank lo = static_cast<Rank>(t.base().size()), hi = 0;
        PointId plo = 0, phi = 0;
        for (PointId q : t.copies()[copy].points) {
            const Rank r = t.base().rank(q, 1);
            if (r < lo)
                lo = r, plo = q;
            if (r >= hi)
                hi = r, phi = q;
        }
        return std::pair{plo, phi};
    };
    auto is_path = [&](const TaggedStructure& t, std::size_t k) {
        const Role r = t.role(k);
        const int s = t.superscript(k);
        return (r == Role::P || r == Role::O) && (s == p.grid || s == p.tile);
    };
    auto is_conn = [&](const TaggedStructure& t, std::size_t k) {
        const Role r = t.role(k);
        const int s = t.superscript(k);
        return (r == Role::G && s == p.grid) || (r == Role::T && s == p.tile);
    };

    // Paths of B below all of A; paths of A below the connector and tile-set copies of B.
    if (!a.empty()) {
        const Node a_min = na(a.at_rank(1, 0));
        for (std::size_t k = 0; k < fb.t.copies().size(); ++k)
            if (is_path(fb.t, k))
                m.add_less(nb(rank_span(fb.t, k).second), a_min);
        std::optional<PointId> a_path_top;
        for (std::size_t k = 0; k < fa.t.copies().size(); ++k)
            if (is_path(fa.t, k)) {
                const PointId hi = rank_span(fa.t, k).second;
                if (!a_path_top || a.less(1, *a_path_top, hi))
                    a_path_top = hi;
            }
        if (a_path_top)
            for (std::size_t k = 0; k < fb.t.copies().size(); ++k)
                if (is_conn(fb.t, k))
                    m.add_less(na(*a_path_top), nb(rank_span(fb.t, k).first));
    }

    // Per-coordinate blocks: the span of all endpoints and the common core of the intervals.
    struct Block {
        NodeInterval span, core;
        bool has_connector = false, has_tile_set = false;
    };
    auto blocks = [&](const Factor& f, bool is_a) {
        std::map<Coord, Block, decltype(&antilex_key_less)> out(&antilex_key_less);
        for (const auto& [xy, positions] : f.at) {
            PointId lo = 0, hi = 0, core_lo = 0, core_hi = 0;
            bool first = true;
            Block blk;
            for (std::size_t pos : positions) {
                const auto& iv = f.t.intervals()[f.w.intervals[pos]];
                if (first || f.s->less(1, iv.bottom, lo))
                    lo = iv.bottom;
                if (first || f.s->less(1, hi, iv.top))
                    hi = iv.top;
                if (first || f.s->less(1, core_lo, iv.bottom))
                    core_lo = iv.bottom;
                if (first || f.s->less(1, iv.top, core_hi))
                    core_hi = iv.top;
                first = false;
                (iv.kind == IntervalKind::Connector ? blk.has_connector : blk.has_tile_set) = true;
            }
            auto node = [&](PointId x) { return is_a ? na(x) : nb(x); };
            blk.span = {node(lo), node(hi)};
            blk.core = {node(core_lo), node(core_hi)};
            out.emplace(xy, blk);
        }
        return out;
    };
    const auto ba = blocks(fa, true);
    const auto bb = blocks(fb, false);

    for (const auto& [xy, blk] : ba)
        if (auto it = bb.find(xy); it != bb.end())
            m.align(blk.span, it->second.span);
    // Cross-factor blocks increase antilexicographically.
    for (const auto& [c1, x] : ba)
        for (const auto& [c2, y] : bb) {
            if (antilex_less(c1, c2))
                m.add_less(x.span.hi, y.span.lo);
            else if (antilex_less(c2, c1))
                m.add_less(y.span.hi, x.span.lo);
        }

    for (const auto& [xy, blk] : ba) {
        auto it = bb.find(xy);
        if (it == bb.end())
            continue;
        const Block& other = it->second;
        if (!(blk.has_connector && other.has_tile_set)) {
            m.add_less(blk.core.lo, other.core.hi);
            m.add_less(other.core.lo, blk.core.hi);
            continue;
        }
        const int type = theta.at(xy.first, xy.second);
        if (type != 1 && type != 2)
            throw Error(ErrorCode::InvalidTiling, "tiling uses a type other than 1 or 2");
        std::vector<Node> ones, twos;
        const Rank from = b.rank(other.span.lo - static_cast<Node>(m.size_a()), 1);
        const Rank to = b.rank(other.span.hi - static_cast<Node>(m.size_a()), 1);
        for (Rank r = from; r <= to; ++r) {
            const PointId x = b.at_rank(1, r);
            if (fb.t.in_T1(x, p.tile))
                ones.push_back(nb(x));
            if (fb.t.in_T2(x, p.tile))
                twos.push_back(nb(x));
        }
        const auto& keep_out = type == 1 ? twos : ones;
        auto inside = type == 1 ? ones : twos;
        inside.push_back(type == 1 ? other.core.lo : other.core.hi);
        for (Node x : keep_out) {
            if (type == 1)
                m.add_less(blk.span.hi, x);
            else
                m.add_less(x, blk.span.lo);
        }
        for (Node x : inside) {
            m.add_less(blk.core.lo, x);
            m.add_less(x, blk.core.hi);
        }
    }

    std::vector<NodeInterval> ivs;
    for (const auto& iv : fa.t.intervals())
        if (iv.superscript == p.grid || iv.superscript == p.tile)
            ivs.push_back({na(iv.bottom), na(iv.top)});
    for (const auto& iv : fb.t.intervals())
        if (iv.superscript == p.grid || iv.superscript == p.tile)
            ivs.push_back({nb(iv.bottom), nb(iv.top)});
    return complete_order(m, ivs);
}

void require_member(const MultiPerm& s, const ClassDescriptor& c, const char* which) {
    auto v = check_membership(s, c);
    if (!v.member) {
        std::string detail = v.violations.empty() ? "" : ": constraint " + v.violations.front().constraint + " (" +
                                                             v.violations.front().detail + ")";
        throw Error(ErrorCode::NotAMember, std::string("factor ") + which + " is not a member" + detail);
    }
}

// Factor points keep their ids; the merged order-1 sequence gives order 1.
MultiPerm assemble(const MultiPerm& a, const MultiPerm& b, const std::vector<std::vector<Node>>& seqs) {
    const std::size_t n = a.size() + b.size();
    std::vector<std::vector<Rank>> cols(3, std::vector<Rank>(n));
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t r = 0; r < n; ++r)
            cols[k][seqs[k][r]] = static_cast<Rank>(r);
    return MultiPerm::from_columns(std::move(cols));
}

std::vector<Node> a_then_b(const MultiPerm& a, const MultiPerm& b, std::size_t order) {
    std::vector<Node> seq;
    for (Rank r = 0; r < a.size(); ++r)
        seq.push_back(a.at_rank(order, r));
    for (Rank r = 0; r < b.size(); ++r)
        seq.push_back(static_cast<Node>(a.size() + b.at_rank(order, r)));
    return seq;
}

// Needed window for theta: every coordinate where an A connector meets a B tile set.
void require_valid_theta(const MultiPerm& a, const MultiPerm& b, const Tiling& theta, const ClassDescriptor& c,
                         const Pairing& p) {
    Factor fa = tag(a, c, p);
    Factor fb = tag(b, c, p);
    int w = 0, h = 0;
    for (const auto& [xy, pos] : fa.at) {
        auto it = fb.at.find(xy);
        if (it == fb.at.end())
            continue;
        bool conn = false, tiles = false;
        for (std::size_t q : pos)
            conn |= fa.t.intervals()[fa.w.intervals[q]].kind == IntervalKind::Connector;
        for (std::size_t q : it->second)
            tiles |= fb.t.intervals()[fb.w.intervals[q]].kind == IntervalKind::TileSet;
        if (conn && tiles) {
            w = std::max(w, xy.first + 1);
            h = std::max(h, xy.second + 1);
        }
    }
    if (w == 0)
        return;
    if (!theta.is_periodic() && (w > theta.width || h > theta.height))
        throw Error(ErrorCode::InvalidTiling, "tiling window " + std::to_string(theta.width) + "x" +
                                                  std::to_string(theta.height) + " does not cover " +
                                                  std::to_string(w) + "x" + std::to_string(h));
    auto verdict = check_tiling(c.problem, theta, w, h);
    if (!verdict.valid) {
        const auto& v = verdict.violations.front();
        throw Error(ErrorCode::InvalidTiling, "tiling breaks a rule at (" + std::to_string(v.x) + "," +
                                                  std::to_string(v.y) + ")");
    }
}

} // namespace

MultiPerm jep_less1(const MultiPerm& a, const MultiPerm& b, const Tiling& theta, const ClassDescriptor& c) {
    if (c.variant != Variant::P)
        throw Error(ErrorCode::VariantMismatch, "one-sided joint embedding takes a P descriptor");
    require_member(a, c, "A");
    require_member(b, c, "B");
    const Pairing p{0, 1};
    require_valid_theta(a, b, theta, c, p);
    auto order1 = merge_order1(a, b, theta, c, p);
    return assemble(a, b, {a_then_b(a, b, 0), order1, a_then_b(a, b, 2)});
}

namespace {

struct Split {
    std::vector<PointId> lower, upper; // ids sorted by order-1 rank
};

Split split_at_cut(const MultiPerm& s, const ClassDescriptor& c, const char* which) {
    TaggedStructure t(s, c.gadgets);
    std::optional<Rank> low_max, high_min;
    for (std::size_t k = 0; k < t.copies().size(); ++k)
        for (PointId q : t.copies()[k].points) {
            const Rank r = s.rank(q, 1);
            if (t.superscript(k) <= 1)
                low_max = low_max ? std::max(*low_max, r) : r;
            else
                high_min = high_min ? std::min(*high_min, r) : r;
        }
    if (low_max && high_min && *low_max >= *high_min)
        throw Error(ErrorCode::SplitNotFound, std::string("factor ") + which +
                                                  " has {2,3} copies reaching below its {0,1} copies");
    const Rank cut = low_max ? *low_max + 1 : 0;
    Split out;
    for (Rank r = 0; r < s.size(); ++r)
        (r < cut ? out.lower : out.upper).push_back(s.at_rank(1, r));
    return out;
}

// Global sequence for one order: chains of both factors plus part-level precedences.
std::optional<std::vector<Node>> merge_parts(const MultiPerm& a, const MultiPerm& b, std::size_t order,
                                             const std::vector<int>& part_a, const std::vector<int>& part_b,
                                             const int a_first[2][2]) {
    const std::size_t na = a.size(), n = na + b.size();
    std::vector<std::vector<Node>> out(n);
    std::vector<std::size_t> indeg(n, 0);
    auto edge = [&](Node u, Node v) {
        out[u].push_back(v);
        ++indeg[v];
    };
    for (Rank r = 1; r < na; ++r)
        edge(a.at_rank(order, r - 1), a.at_rank(order, r));
    for (Rank r = 1; r < b.size(); ++r)
        edge(static_cast<Node>(na + b.at_rank(order, r - 1)), static_cast<Node>(na + b.at_rank(order, r)));
    for (PointId x = 0; x < na; ++x)
        for (PointId y = 0; y < b.size(); ++y) {
            const Node u = x, v = static_cast<Node>(na + y);
            if (a_first[part_a[x]][part_b[y]])
                edge(u, v);
            else
                edge(v, u);
        }
    std::vector<Node> seq;
    std::priority_queue<Node, std::vector<Node>, std::greater<>> ready;
    for (Node u = 0; u < n; ++u)
        if (indeg[u] == 0)
            ready.push(u);
    while (!ready.empty()) {
        const Node u = ready.top();
        ready.pop();
        seq.push_back(u);
        for (Node v : out[u])
            if (--indeg[v] == 0)
                ready.push(v);
    }
    if (seq.size() != n)
        return std::nullopt;
    return seq;
}

} // namespace

MultiPerm jep_Q(const MultiPerm& a, const MultiPerm& b, const Tiling& theta, const ClassDescriptor& c) {
    if (c.variant != Variant::Q)
        throw Error(ErrorCode::VariantMismatch, "doubled joint embedding takes a Q descriptor");
    require_member(a, c, "A");
    require_member(b, c, "B");
    const Split sa = split_at_cut(a, c, "A");
    const Split sb = split_at_cut(b, c, "B");
    std::vector<int> part_a(a.size(), 0), part_b(b.size(), 0);
    for (PointId x : sa.upper)
        part_a[x] = 1;
    for (PointId x : sb.upper)
        part_b[x] = 1;

    // Lower halves put A first. The upper halves put B first when orders 0 and 2
    // allow it, so the grids of B can capture the tiles of A there.
    std::optional<std::vector<Node>> seq0, seq2;
    bool upper_b_first = false;
    for (int flip : {1, 0}) {
        for (int mixed = 0; mixed < 4 && !seq0; ++mixed) {
            const int rel[2][2] = {{1, mixed & 1}, {(mixed >> 1) & 1, flip ? 0 : 1}};
            auto s0 = merge_parts(a, b, 0, part_a, part_b, rel);
            auto s2 = merge_parts(a, b, 2, part_a, part_b, rel);
            if (s0 && s2) {
                seq0 = std::move(s0);
                seq2 = std::move(s2);
                upper_b_first = flip == 1;
            }
        }
        if (seq0)
            break;
    }

    auto sub = [](const MultiPerm& s, const std::vector<PointId>& ids) { return induced_substructure(s, ids); };
    // induced_substructure relists points by order-0 rank; map back to factor ids.
    auto relist = [](const MultiPerm& s, std::vector<PointId> ids) {
        std::sort(ids.begin(), ids.end(), [&](PointId x, PointId y) { return s.less(0, x, y); });
        return ids;
    };
    const auto la = relist(a, sa.lower), ua = relist(a, sa.upper);
    const auto lb = relist(b, sb.lower), ub = relist(b, sb.upper);
    const MultiPerm mla = sub(a, la), mua = sub(a, ua), mlb = sub(b, lb), mub = sub(b, ub);

    std::vector<Node> order1;
    const Pairing low{0, 1}, high{2, 3};
    require_valid_theta(mla, mlb, theta, c, low);
    for (Node u : merge_order1(mla, mlb, theta, c, low))
        order1.push_back(u < la.size() ? la[u] : static_cast<Node>(a.size() + lb[u - la.size()]));
    if (upper_b_first) {
        require_valid_theta(mub, mua, theta, c, high);
        for (Node u : merge_order1(mub, mua, theta, c, high))
            order1.push_back(u < ub.size() ? static_cast<Node>(a.size() + ub[u]) : ua[u - ub.size()]);
    } else {
        require_valid_theta(mua, mub, theta, c, high);
        for (Node u : merge_order1(mua, mub, theta, c, high))
            order1.push_back(u < ua.size() ? ua[u] : static_cast<Node>(a.size() + ub[u - ua.size()]));
    }
    return assemble(a, b, {*seq0, order1, *seq2});
}

// ---------------------------------------------------------------------------

namespace {

// Every interleaving of two sequences where identified pairs (a -> b) must be taken together.
void for_each_merge(const std::vector<Node>& sa, const std::vector<Node>& sb, const std::vector<Node>& partner_of_a,
                    const std::vector<Node>& partner_of_b, const std::function<bool(const std::vector<Node>&)>& visit) {
    constexpr Node none = static_cast<Node>(-1);
    std::vector<Node> cur;
    bool stop = false;
    std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t j) {
        if (stop)
            return;
        if (i == sa.size() && j == sb.size()) {
            stop = !visit(cur);
            return;
        }
        const Node x = i < sa.size() ? sa[i] : none;
        const Node y = j < sb.size() ? sb[j] : none;
        if (x != none && y != none && partner_of_a[x] == y) {
            cur.push_back(x);
            go(i + 1, j + 1);
            cur.pop_back();
            return;
        }
        if (x != none && partner_of_a[x] == none) {
            cur.push_back(x);
            go(i + 1, j);
            cur.pop_back();
        }
        if (y != none && partner_of_b[y] == none) {
            cur.push_back(static_cast<Node>(y + partner_of_a.size()));
            go(i, j + 1);
            cur.pop_back();
        }
    };
    go(0, 0);
}

// Order-consistent partial injections from A into B, smallest first.
std::vector<std::vector<Node>> identifications(const MultiPerm& a, const MultiPerm& b) {
    constexpr Node none = static_cast<Node>(-1);
    std::vector<std::vector<Node>> out;
    std::vector<Node> map(a.size(), none);
    std::vector<char> used(b.size(), 0);
    std::function<void(PointId)> go = [&](PointId x) {
        if (x == a.size()) {
            out.push_back(map);
            return;
        }
        go(x + 1);
        for (PointId y = 0; y < b.size(); ++y) {
            if (used[y])
                continue;
            bool ok = true;
            for (PointId z = 0; z < x && ok; ++z)
                if (map[z] != none)
                    for (std::size_t k = 0; k < 3 && ok; ++k)
                        ok = a.less(k, z, x) == b.less(k, map[z], y);
            if (!ok)
                continue;
            map[x] = y;
            used[y] = 1;
            go(x + 1);
            map[x] = none;
            used[y] = 0;
        }
    };
    go(0);
    std::stable_sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
        auto cnt = [](const auto& m) { return std::count_if(m.begin(), m.end(), [](Node v) { return v != none; }); };
        return cnt(l) < cnt(r);
    });
    return out;
}

} // namespace

BruteResult brute_force_jep(const MultiPerm& a, const MultiPerm& b, const ClassDescriptor& c, BruteMode mode,
                            std::size_t budget) {
    if (a.size() + b.size() > budget)
        throw Error(ErrorCode::BudgetExceeded, "|A| + |B| = " + std::to_string(a.size() + b.size()) +
                                                   " exceeds the search budget " + std::to_string(budget));
    constexpr Node none = static_cast<Node>(-1);
    BruteResult res;
    std::array<std::vector<Node>, 3> sa, sb;
    for (std::size_t k = 0; k < 3; ++k) {
        for (Rank r = 0; r < a.size(); ++r)
            sa[k].push_back(a.at_rank(k, r));
        for (Rank r = 0; r < b.size(); ++r)
            sb[k].push_back(b.at_rank(k, r));
    }

    auto search = [&](const std::vector<Node>& partner_a) -> bool {
        std::vector<Node> partner_b(b.size(), none);
        std::size_t shared = 0;
        for (PointId x = 0; x < a.size(); ++x)
            if (partner_a[x] != none) {
                partner_b[partner_a[x]] = x;
                ++shared;
            }
        const std::size_t n = a.size() + b.size() - shared;
        // Merged point ids: A points keep theirs, B points follow, identified B points become their partner.
        std::vector<Node> id_of(a.size() + b.size());
        Node next = static_cast<Node>(a.size());
        for (Node x = 0; x < a.size(); ++x)
            id_of[x] = x;
        for (PointId y = 0; y < b.size(); ++y)
            id_of[a.size() + y] = partner_b[y] != none ? partner_b[y] : next++;
        std::array<std::vector<std::vector<Rank>>, 3> merges;
        for (std::size_t k = 0; k < 3; ++k)
            for_each_merge(sa[k], sb[k], partner_a, partner_b, [&](const std::vector<Node>& seq) {
                std::vector<Rank> col(n);
                for (std::size_t r = 0; r < seq.size(); ++r)
                    col[id_of[seq[r]]] = static_cast<Rank>(r);
                merges[k].push_back(std::move(col));
                return true;
            });
        for (const auto& c0 : merges[0])
            for (const auto& c1 : merges[1])
                for (const auto& c2 : merges[2]) {
                    ++res.candidates;
                    auto s = MultiPerm::from_columns({c0, c1, c2});
                    if (check_membership(s, c).member) {
                        res.witness = std::move(s);
                        return true;
                    }
                }
        return false;
    };

    auto identified = [&]() {
        res.identify_consulted = true;
        for (const auto& m : identifications(a, b)) {
            if (std::all_of(m.begin(), m.end(), [](Node v) { return v == none; }))
                continue;
            if (search(m)) {
                res.found_in = BruteMode::Identify;
                return true;
            }
        }
        return false;
    };
    // Identify mode prefers overlapping witnesses; both modes end up trying everything.
    if (mode == BruteMode::Identify && identified())
        return res;
    if (search(std::vector<Node>(a.size(), none))) {
        res.found_in = BruteMode::Disjoint;
        return res;
    }
    if (mode == BruteMode::Disjoint)
        identified();
    return res;
}

Tiling extract_tiling(const MultiPerm& joint, const ClassDescriptor& c, int width, int height, Pairing pairing) {
    if (width < 1 || height < 1)
        throw Error(ErrorCode::Usage, "extraction window must be at least 1x1");
    TaggedStructure t(joint, c.gadgets);
    const auto w = weak_coordinates(t, pairing);
    // (x, y) -> seen type-1, seen type-2, has connector
    std::map<Coord, std::array<bool, 3>> cells;
    for (std::size_t a = 0; a < w.intervals.size(); ++a) {
        const auto& iv = t.intervals()[w.intervals[a]];
        if (iv.kind != IntervalKind::Connector)
            continue;
        for (const auto& xy : w.coords[a]) {
            auto& cell = cells[xy];
            cell[2] = true;
            for (PointId x : t.captured(iv.owner))
                for (const auto& tp : tile_roles(t, x, pairing.tile))
                    cell[tp.type - 1] = true;
        }
    }
    Tiling out = Tiling::window(width, height, 1);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            auto it = cells.find({x, y});
            if (it == cells.end() || !(it->second[0] || it->second[1]))
                throw Error(ErrorCode::UntiledCell, "no captured tile at (" + std::to_string(x) + "," +
                                                        std::to_string(y) + ")");
            out.set(x, y, it->second[0] ? 1 : 2);
        }
    return out;
}

} // namespace tilejep

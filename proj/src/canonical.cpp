#include "tilejep/canonical.hpp"

#include <algorithm>
#include <array>
#include <tuple>

namespace tilejep {

ClassDescriptor ClassDescriptor::make(Variant v, StringTilingProblem problem, std::size_t gadget_size,
                                      std::uint64_t seed) {
    problem.validate();
    ClassDescriptor c;
    c.gadgets = std::make_shared<const GadgetSet>(build_gadget_family(v, gadget_size, seed));
    c.problem = std::move(problem);
    c.variant = v;
    c.gadget_size = gadget_size;
    c.gadget_seed = seed;
    return c;
}

namespace {

using Id = std::uint32_t;

// Points are internal ids until the three orders are fixed.
struct Layout {
    Id count = 0;
    std::array<std::vector<Id>, 3> seq;
    std::vector<LedgerEntry> ledger; // points hold internal ids

    Id fresh() { return count++; }

    void append(const Layout& other, bool lower_in_order1) {
        const Id off = count;
        for (int k = 0; k < 3; ++k) {
            std::vector<Id> moved;
            for (Id id : other.seq[k])
                moved.push_back(id + off);
            if (k == 1 && lower_in_order1)
                seq[k].insert(seq[k].begin(), moved.begin(), moved.end());
            else
                seq[k].insert(seq[k].end(), moved.begin(), moved.end());
        }
        for (LedgerEntry e : other.ledger) {
            for (auto& p : e.points)
                p += off;
            e.root += off;
            ledger.push_back(std::move(e));
        }
        count += other.count;
    }
};

struct PlacedCopy {
    const AntichainElement* element = nullptr;
    std::vector<Id> ids; // element point i -> id
    Id root() const { return ids.front(); }
    Rank root_rank() const { return element->shape.rank(0, 1); }
    // Ids whose order-1 rank within the shape lies in [lo, hi), in that order.
    void ranks(Rank lo, Rank hi, std::vector<Id>& out) const {
        for (Rank r = lo; r < hi; ++r)
            out.push_back(ids[element->shape.at_rank(1, r)]);
    }
    Id lowest() const { return ids[element->lowest()]; }
    Id second_lowest() const { return ids[element->second_lowest()]; }
    Rank size() const { return static_cast<Rank>(ids.size()); }
};

PlacedCopy place(Layout& L, const AntichainElement& e, std::optional<Id> shared_root = std::nullopt) {
    PlacedCopy c;
    c.element = &e;
    c.ids.push_back(shared_root ? *shared_root : L.fresh());
    for (std::size_t i = 1; i < e.shape.size(); ++i)
        c.ids.push_back(L.fresh());
    return c;
}

void body_forward(const PlacedCopy& c, std::vector<Id>& out) {
    out.insert(out.end(), c.ids.begin() + 1, c.ids.end());
}
void body_reversed(const PlacedCopy& c, std::vector<Id>& out) {
    out.insert(out.end(), c.ids.rbegin(), c.ids.rend() - 1);
}

Layout build_layout(int n, const GadgetSet& g, int sup, bool defect) {
    if (n < 1)
        throw Error(ErrorCode::Usage, "canonical models need n >= 1");
    const bool grid = is_grid_superscript(sup);
    const auto& eX = g.element(Role::X, sup);
    const auto& eY = g.element(Role::Y, sup);
    const auto& eP = g.element(Role::P, sup);
    const auto& eO = g.element(Role::O, sup);
    const auto& eC = g.element(grid ? Role::G : Role::T, sup);

    Layout L;
    const int groups = n * n;
    std::vector<PlacedCopy> X(groups), Y(groups), C(groups), path(n);
    for (int q = 0; q < groups; ++q) {
        X[q] = place(L, eX);
        Y[q] = place(L, eY, X[q].root());
        C[q] = place(L, eC, X[q].root());
    }
    std::optional<PlacedCopy> D;
    if (defect)
        D = place(L, eP);
    for (int k = 0; k < n; ++k)
        path[k] = place(L, k == 0 ? eO : eP);

    // Order 0: groups in antilex order (q = y*n + x), then the extra copy, then the path.
    // Order 2: the same, with each copy reversed internally (the shared root last in its group).
    auto& s0 = L.seq[0];
    auto& s2 = L.seq[2];
    for (int q = 0; q < groups; ++q) {
        s0.push_back(X[q].root());
        body_forward(X[q], s0);
        body_forward(Y[q], s0);
        body_forward(C[q], s0);
        body_reversed(X[q], s2);
        body_reversed(Y[q], s2);
        body_reversed(C[q], s2);
        s2.push_back(X[q].root());
    }
    auto whole = [&](const PlacedCopy& c) {
        s0.insert(s0.end(), c.ids.begin(), c.ids.end());
        s2.insert(s2.end(), c.ids.rbegin(), c.ids.rend());
    };
    if (D)
        whole(*D);
    for (int k = 0; k < n; ++k)
        whole(path[k]);

    // Order 1, region 0: the path band, descending from cluster 0 at the top.
    // Capturing copies of p_k, keyed by their order-0 position.
    auto capturers = [&](int k) {
        std::vector<std::pair<int, const PlacedCopy*>> out;
        for (int q = 0; q < groups; ++q) {
            if (q % n == k)
                out.push_back({2 * q, &X[q]});
            if (q / n == k)
                out.push_back({2 * q + 1, &Y[q]});
        }
        if (D && k == 0)
            out.push_back({2 * groups, &*D});
        if (k >= 1)
            out.push_back({2 * groups + k, &path[k - 1]});
        std::sort(out.begin(), out.end());
        return out;
    };
    auto& s1 = L.seq[1];
    path[n - 1].ranks(0, path[n - 1].root_rank(), s1);
    for (int k = n - 1; k >= 0; --k) {
        const auto caps = capturers(k);
        // Later copies bracket earlier ones, so no copy captures another's bracket.
        for (auto it = caps.rbegin(); it != caps.rend(); ++it)
            s1.push_back(it->second->lowest());
        s1.push_back(path[k].root());
        for (const auto& [key, c] : caps)
            s1.push_back(c->second_lowest());
        path[k].ranks(path[k].root_rank() + 1, path[k].size(), s1);
        if (k >= 1)
            path[k - 1].ranks(2, path[k - 1].root_rank(), s1);
    }
    if (D)
        D->ranks(2, D->size(), s1);

    // Region 1: coordinate-copy points between the brackets and the root.
    for (int q = 0; q < groups; ++q) {
        X[q].ranks(2, X[q].root_rank(), s1);
        Y[q].ranks(2, Y[q].root_rank(), s1);
    }
    // Region 2: connector or tile-set blocks, each followed by the coordinate-copy points above the root.
    for (int q = 0; q < groups; ++q) {
        C[q].ranks(0, C[q].size(), s1);
        X[q].ranks(X[q].root_rank() + 1, X[q].size(), s1);
        Y[q].ranks(Y[q].root_rank() + 1, Y[q].size(), s1);
    }

    auto record = [&](const PlacedCopy& c, std::optional<Coord> gi, std::optional<int> pk) {
        L.ledger.push_back(LedgerEntry{c.element->role, c.element->superscript, c.ids, c.root(), gi, pk});
    };
    for (int q = 0; q < groups; ++q) {
        const Coord gi{q % n, q / n};
        record(X[q], gi, std::nullopt);
        record(Y[q], gi, std::nullopt);
        record(C[q], gi, std::nullopt);
    }
    for (int k = 0; k < n; ++k)
        record(path[k], std::nullopt, k);
    if (D)
        record(*D, std::nullopt, std::nullopt);
    return L;
}

CanonicalBuild finish(const Layout& L, int n) {
    std::vector<std::vector<Rank>> cols(3, std::vector<Rank>(L.count));
    for (int k = 0; k < 3; ++k) {
        if (L.seq[k].size() != L.count)
            throw Error(ErrorCode::NonBijectiveOrder, "layout lost points");
        for (std::size_t r = 0; r < L.count; ++r)
            cols[k][L.seq[k][r]] = static_cast<Rank>(r);
    }
    const std::vector<Rank> final_id = cols[0]; // points are relisted in order-0 sequence
    CanonicalBuild out;
    out.structure = MultiPerm::from_columns(std::move(cols));
    out.n = n;
    for (LedgerEntry e : L.ledger) {
        for (auto& p : e.points)
            p = final_id[p];
        e.root = final_id[e.root];
        out.ledger.push_back(std::move(e));
    }
    return out;
}

void require_q(const ClassDescriptor& c) {
    if (c.variant != Variant::Q || c.gadgets->variant() != Variant::Q)
        throw Error(ErrorCode::VariantMismatch, "doubled canonical models need a Q descriptor");
}

} // namespace

CanonicalBuild canonical_block(int n, const GadgetSet& g, int superscript, CanonicalOptions opts) {
    if (superscript < 0 || superscript > g.max_superscript())
        throw Error(ErrorCode::VariantMismatch, "superscript " + std::to_string(superscript) + " not in this family");
    return finish(build_layout(n, g, superscript, opts.defect_origin_predecessor), n);
}

CanonicalBuild canonical_A(int n, const ClassDescriptor& c, CanonicalOptions opts) {
    return canonical_block(n, *c.gadgets, 0, opts);
}

CanonicalBuild canonical_B(int n, const ClassDescriptor& c, CanonicalOptions opts) {
    return canonical_block(n, *c.gadgets, 1, opts);
}

CanonicalBuild canonical_Q_A(int n, const ClassDescriptor& c) {
    require_q(c);
    Layout L = build_layout(n, *c.gadgets, 0, false);
    L.append(build_layout(n, *c.gadgets, 3, false), false);
    return finish(L, n);
}

CanonicalBuild canonical_Q_B(int n, const ClassDescriptor& c) {
    require_q(c);
    Layout L = build_layout(n, *c.gadgets, 2, false);
    L.append(build_layout(n, *c.gadgets, 1, false), true);
    return finish(L, n);
}

} // namespace tilejep

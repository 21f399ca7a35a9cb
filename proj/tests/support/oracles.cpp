#include "oracles.hpp"

#include <algorithm>
#include <functional>

namespace tilejep::testing {

std::vector<std::vector<PointId>> brute_embeddings(const MultiPerm& pattern, const MultiPerm& host) {
    std::vector<std::vector<PointId>> out;
    const std::size_t m = pattern.size(), n = host.size();
    std::vector<PointId> map(m);
    std::vector<char> used(n, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == m) {
            for (std::size_t k = 0; k < pattern.dims(); ++k)
                for (PointId a = 0; a < m; ++a)
                    for (PointId b = 0; b < m; ++b)
                        if (pattern.less(k, a, b) && !host.less(k, map[a], map[b]))
                            return;
            out.push_back(map);
            return;
        }
        for (PointId h = 0; h < n; ++h)
            if (!used[h]) {
                used[h] = 1;
                map[i] = h;
                rec(i + 1);
                used[h] = 0;
            }
    };
    rec(0);
    return out;
}

std::vector<std::vector<Rank>> sorted_ranks(const MultiPerm& s, const std::vector<PointId>& subset) {
    std::vector<std::vector<Rank>> rows(subset.size(), std::vector<Rank>(s.dims()));
    for (std::size_t k = 0; k < s.dims(); ++k) {
        std::vector<std::size_t> idx(subset.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return s.less(k, subset[a], subset[b]); });
        for (std::size_t r = 0; r < idx.size(); ++r)
            rows[idx[r]][k] = static_cast<Rank>(r);
    }
    return rows;
}

} // namespace tilejep::testing

namespace tilejep::testing {

std::vector<std::set<Coord>> saturate_weak_coordinates(const TaggedStructure& t, const Pairing& p) {
    const auto& f = t.facts(p);
    const std::size_t m = f.intervals.size();
    const int cap = static_cast<int>(m);
    std::vector<std::set<Coord>> have(m);
    auto pred_has = [&](const std::vector<std::size_t>& preds, Coord c) {
        for (std::size_t b : preds)
            if (have[b].count(c))
                return true;
        return false;
    };
    auto qualifies = [&](std::size_t a, int x, int y) {
        if (x == 0 && y == 0)
            return f.origin[a] != 0;
        if (x == 0)
            return pred_has(f.vpred[a], {0, y - 1});
        if (y == 0)
            return pred_has(f.hpred[a], {x - 1, 0});
        return pred_has(f.hpred[a], {x - 1, y}) && pred_has(f.vpred[a], {x, y - 1});
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (int x = 0; x < cap; ++x)
            for (int y = 0; y < cap; ++y)
                for (std::size_t a = 0; a < m; ++a) {
                    if (have[a].count({x, y}))
                        continue;
                    bool ok = false;
                    for (std::size_t b = 0; b < m && !ok; ++b)
                        ok = (a == b || t.intersect(f.intervals[a], f.intervals[b])) && qualifies(b, x, y);
                    if (ok) {
                        have[a].insert({x, y});
                        changed = true;
                    }
                }
    }
    return have;
}

} // namespace tilejep::testing

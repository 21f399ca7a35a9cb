#include "tilejep/match.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

namespace tilejep {

namespace {

constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();

void require_same_dims(const MultiPerm& pattern, const MultiPerm& host) {
    if (pattern.dims() != host.dims())
        throw Error(ErrorCode::DimsMismatch, "pattern has " + std::to_string(pattern.dims()) +
                                                 " orders, host has " + std::to_string(host.dims()));
}

// Pattern points are matched in order-0 sequence. For every later order, the
// already-placed pattern points nearest below and above in that order bound
// the admissible host ranks.
class Matcher {
public:
    Matcher(const MultiPerm& pattern, const MultiPerm& host) : p_(pattern), h_(host) {
        const std::size_t m = p_.size();
        const std::size_t d = p_.dims();
        below_.assign(m * d, none);
        above_.assign(m * d, none);
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 1; k < d; ++k) {
                Rank rj = p_.rank(j, k);
                Rank best_lo = 0, best_hi = 0;
                for (std::size_t i = 0; i < j; ++i) {
                    Rank ri = p_.rank(i, k);
                    if (ri < rj && (below_[j * d + k] == none || ri > best_lo)) {
                        below_[j * d + k] = static_cast<std::uint32_t>(i);
                        best_lo = ri;
                    }
                    if (ri > rj && (above_[j * d + k] == none || ri < best_hi)) {
                        above_[j * d + k] = static_cast<std::uint32_t>(i);
                        best_hi = ri;
                    }
                }
            }
        image_.assign(m, 0);
    }

    template <typename Visit>
    void run(Visit&& visit) {
        if (p_.size() > h_.size())
            return;
        stop_ = false;
        search(0, 0, visit);
    }

private:
    template <typename Visit>
    void search(std::size_t j, PointId first_free, Visit& visit) {
        const std::size_t m = p_.size();
        if (j == m) {
            if (!visit(Embedding{image_}))
                stop_ = true;
            return;
        }
        const std::size_t d = p_.dims();
        const std::size_t last = h_.size() - (m - j);
        for (PointId h = first_free; h <= last && !stop_; ++h) {
            bool ok = true;
            for (std::size_t k = 1; k < d && ok; ++k) {
                Rank r = h_.rank(h, k);
                auto lo = below_[j * d + k];
                auto hi = above_[j * d + k];
                if (lo != none && h_.rank(image_[lo], k) >= r)
                    ok = false;
                else if (hi != none && h_.rank(image_[hi], k) <= r)
                    ok = false;
            }
            if (!ok)
                continue;
            image_[j] = h;
            search(j + 1, h + 1, visit);
        }
    }

    const MultiPerm& p_;
    const MultiPerm& h_;
    std::vector<std::uint32_t> below_, above_;
    std::vector<PointId> image_;
    bool stop_ = false;
};

} // namespace

void for_each_embedding(const MultiPerm& pattern, const MultiPerm& host,
                        const std::function<bool(const Embedding&)>& visit) {
    require_same_dims(pattern, host);
    Matcher(pattern, host).run(visit);
}

std::optional<Embedding> find_embedding(const MultiPerm& pattern, const MultiPerm& host) {
    require_same_dims(pattern, host);
    std::optional<Embedding> out;
    Matcher(pattern, host).run([&](const Embedding& e) {
        out = e;
        return false;
    });
    return out;
}

bool embeds(const MultiPerm& pattern, const MultiPerm& host) { return find_embedding(pattern, host).has_value(); }

CopyList enumerate_copies(const MultiPerm& pattern, const MultiPerm& host, std::optional<std::size_t> limit) {
    require_same_dims(pattern, host);
    CopyList out;
    Matcher(pattern, host).run([&](const Embedding& e) {
        if (limit && out.copies.size() == *limit) {
            out.limit_exceeded = true;
            return false;
        }
        out.copies.push_back(e);
        return true;
    });
    return out;
}

AvoidanceVerdict avoids_all(const MultiPerm& host, const std::vector<MultiPerm>& patterns) {
    for (const auto& p : patterns)
        require_same_dims(p, host);
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        if (auto e = find_embedding(patterns[i], host))
            return AvoidanceVerdict{false, i, std::move(e)};
    }
    return {};
}

std::optional<PatternSet::Key> PatternSet::pack(const MultiPerm& p) {
    if (p.dims() != 3 || p.size() > 16)
        return std::nullopt;
    Key k;
    for (PointId i = 0; i < p.size(); ++i) {
        k.order1 |= std::uint64_t{p.rank(i, 1)} << (4 * i);
        k.order2 |= std::uint64_t{p.rank(i, 2)} << (4 * i);
    }
    return k;
}

MultiPerm PatternSet::unpack(const Key& k, std::size_t n) {
    std::vector<std::vector<Rank>> cols(3, std::vector<Rank>(n));
    for (std::size_t i = 0; i < n; ++i) {
        cols[0][i] = static_cast<Rank>(i);
        cols[1][i] = static_cast<Rank>((k.order1 >> (4 * i)) & 15u);
        cols[2][i] = static_cast<Rank>((k.order2 >> (4 * i)) & 15u);
    }
    return MultiPerm::from_columns(std::move(cols));
}

bool PatternSet::insert(const MultiPerm& p) {
    if (p.dims() != 3)
        throw Error(ErrorCode::DimsMismatch, "pattern sets hold three-order patterns");
    bool fresh;
    if (auto k = pack(p))
        fresh = packed_[p.size()].insert(*k).second;
    else {
        fresh = std::find(large_.begin(), large_.end(), p) == large_.end();
        if (fresh)
            large_.push_back(p);
    }
    count_ += fresh ? 1 : 0;
    return fresh;
}

bool PatternSet::insert_packed(const Key& k, std::size_t n) {
    if (n >= packed_.size())
        throw Error(ErrorCode::Unsupported, "packed patterns have at most 16 points");
    const bool fresh = packed_[n].insert(k).second;
    count_ += fresh ? 1 : 0;
    return fresh;
}

bool PatternSet::contains(const MultiPerm& p) const {
    if (auto k = pack(p))
        return packed_[p.size()].count(*k) > 0;
    return std::find(large_.begin(), large_.end(), p) != large_.end();
}

std::vector<std::size_t> PatternSet::sizes() const {
    std::set<std::size_t> out;
    for (std::size_t n = 0; n < packed_.size(); ++n)
        if (!packed_[n].empty())
            out.insert(n);
    for (const auto& p : large_)
        out.insert(p.size());
    return {out.begin(), out.end()};
}

void PatternSet::for_each(const std::function<bool(const MultiPerm&)>& visit) const {
    for (std::size_t n = 0; n < packed_.size(); ++n) {
        std::vector<Key> keys(packed_[n].begin(), packed_[n].end());
        std::sort(keys.begin(), keys.end());
        for (const auto& k : keys)
            if (!visit(unpack(k, n)))
                return;
    }
    for (const auto& p : large_)
        if (!visit(p))
            return;
}

namespace {

double choose(std::size_t n, std::size_t k) {
    if (k > n)
        return 0;
    double r = 1;
    for (std::size_t i = 1; i <= k; ++i)
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

// Looks up every k-subset of the host in the key set; subsets are visited in lexicographic order.
std::optional<Embedding> scan_subsets(const MultiPerm& host, std::size_t k,
                                      const std::unordered_set<PatternSet::Key, PatternSet::KeyHash>& keys) {
    const std::size_t n = host.size();
    std::vector<PointId> pick(k);
    for (std::size_t i = 0; i < k; ++i)
        pick[i] = static_cast<PointId>(i);
    std::vector<std::pair<Rank, std::size_t>> buf(k);
    while (true) {
        PatternSet::Key key;
        for (std::size_t order : {std::size_t{1}, std::size_t{2}}) {
            for (std::size_t i = 0; i < k; ++i)
                buf[i] = {host.rank(pick[i], order), i};
            std::sort(buf.begin(), buf.end());
            std::uint64_t packed = 0;
            for (std::size_t r = 0; r < k; ++r)
                packed |= std::uint64_t{r} << (4 * buf[r].second);
            (order == 1 ? key.order1 : key.order2) = packed;
        }
        if (keys.count(key))
            return Embedding{pick};
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return std::nullopt;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j)
            pick[j] = pick[j - 1] + 1;
    }
}

} // namespace

AvoidanceVerdict avoids_all(const MultiPerm& host, const PatternSet& patterns) {
    if (patterns.empty())
        return {};
    if (host.dims() != 3)
        throw Error(ErrorCode::DimsMismatch, "pattern sets hold three-order patterns");
    std::size_t index = 0; // position in for_each order
    for (std::size_t k = 0; k < patterns.packed_.size(); ++k) {
        const auto& keys = patterns.packed_[k];
        if (keys.empty())
            continue;
        if (k <= host.size()) {
            const double subsets = choose(host.size(), k);
            if (k == 0) {
                return AvoidanceVerdict{false, index, Embedding{}};
            } else if (subsets <= 4e6 || subsets <= 8.0 * static_cast<double>(keys.size())) {
                if (auto e = scan_subsets(host, k, keys))
                    return AvoidanceVerdict{false, std::nullopt, std::move(e)};
            } else {
                std::vector<PatternSet::Key> sorted(keys.begin(), keys.end());
                std::sort(sorted.begin(), sorted.end());
                for (std::size_t i = 0; i < sorted.size(); ++i)
                    if (auto e = find_embedding(PatternSet::unpack(sorted[i], k), host))
                        return AvoidanceVerdict{false, index + i, std::move(e)};
            }
        }
        index += keys.size();
    }
    for (std::size_t i = 0; i < patterns.large_.size(); ++i)
        if (auto e = find_embedding(patterns.large_[i], host))
            return AvoidanceVerdict{false, index + i, std::move(e)};
    return {};
}

} // namespace tilejep

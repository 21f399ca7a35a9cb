#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

#include "tilejep/multiperm.hpp"

namespace tilejep {

/// Pattern point i maps to host point map[i]; all orders are preserved.
struct Embedding {
    std::vector<PointId> map;

    friend bool operator==(const Embedding&, const Embedding&) = default;
    friend auto operator<=>(const Embedding&, const Embedding&) = default;
};

struct CopyList {
    std::vector<Embedding> copies;
    bool limit_exceeded = false;
};

/// Lexicographically least embedding (by host indices), if any.
std::optional<Embedding> find_embedding(const MultiPerm& pattern, const MultiPerm& host);

bool embeds(const MultiPerm& pattern, const MultiPerm& host);

/// All embeddings in lexicographic order. With a limit, stops after `limit`
/// copies and sets `limit_exceeded` when at least one more exists.
CopyList enumerate_copies(const MultiPerm& pattern, const MultiPerm& host,
                          std::optional<std::size_t> limit = std::nullopt);

/// Visits embeddings in lexicographic order until the visitor returns false.
void for_each_embedding(const MultiPerm& pattern, const MultiPerm& host,
                        const std::function<bool(const Embedding&)>& visit);

struct AvoidanceVerdict {
    bool avoids = true;
    std::optional<std::size_t> pattern_index; // first pattern that embeds
    std::optional<Embedding> witness;
};

AvoidanceVerdict avoids_all(const MultiPerm& host, const std::vector<MultiPerm>& patterns);

/// Deduplicated set of three-order patterns. Patterns of at most 16 points are
/// stored as packed rank keys, larger ones as structures.
class PatternSet {
public:
    /// True when the pattern was not present yet.
    bool insert(const MultiPerm& p);
    bool contains(const MultiPerm& p) const;
    std::size_t size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }
    /// Pattern sizes present, ascending.
    std::vector<std::size_t> sizes() const;
    /// Visits patterns by size, then by key, until the visitor returns false.
    void for_each(const std::function<bool(const MultiPerm&)>& visit) const;

    struct Key {
        std::uint64_t order1 = 0, order2 = 0;
        friend bool operator==(const Key&, const Key&) = default;
        friend auto operator<=>(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            return static_cast<std::size_t>(k.order1 * 0x9e3779b97f4a7c15ull ^ (k.order2 + (k.order1 >> 17)));
        }
    };
    static std::optional<Key> pack(const MultiPerm& p);
    /// Same as insert for an already packed pattern of n points.
    bool insert_packed(const Key& k, std::size_t n);
    static MultiPerm unpack(const Key& k, std::size_t n);

private:
    friend AvoidanceVerdict avoids_all(const MultiPerm& host, const PatternSet& patterns);

    std::array<std::unordered_set<Key, KeyHash>, 17> packed_;
    std::vector<MultiPerm> large_;
    std::size_t count_ = 0;
};

/// Exact avoidance check. Small pattern sizes are checked by looking up every
/// host subset of that size when that is cheaper than matching each pattern.
AvoidanceVerdict avoids_all(const MultiPerm& host, const PatternSet& patterns);

} // namespace tilejep

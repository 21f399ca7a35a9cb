#include "tilejep/gadgets.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "tilejep/match.hpp"

namespace tilejep {

const char* to_string(Role r) {
    switch (r) {
    case Role::X: return "X";
    case Role::Y: return "Y";
    case Role::P: return "P";
    case Role::O: return "O";
    case Role::G: return "G";
    case Role::T: return "T";
    }
    return "?";
}

std::optional<Role> role_from_string(const std::string& s) {
    for (Role r : {Role::X, Role::Y, Role::P, Role::O, Role::G, Role::T})
        if (s == to_string(r))
            return r;
    return std::nullopt;
}

std::array<Role, 5> roles_for_superscript(int sup) {
    if (is_grid_superscript(sup))
        return {Role::X, Role::Y, Role::P, Role::O, Role::G};
    return {Role::X, Role::Y, Role::P, Role::O, Role::T};
}

GadgetSet::GadgetSet(Variant variant, std::vector<AntichainElement> elements)
    : variant_(variant), elements_(std::move(elements)) {}

std::optional<std::size_t> GadgetSet::find(Role role, int sup) const {
    for (std::size_t i = 0; i < elements_.size(); ++i)
        if (elements_[i].role == role && elements_[i].superscript == sup)
            return i;
    return std::nullopt;
}

std::size_t GadgetSet::index(Role role, int sup) const {
    if (auto i = find(role, sup))
        return *i;
    throw Error(ErrorCode::WrongRole, std::string("no element E_") + to_string(role) + "^" + std::to_string(sup));
}

MultiPerm gadget_shape(const std::vector<Rank>& order1_ranks) {
    const auto n = static_cast<Rank>(order1_ranks.size());
    std::vector<std::vector<Rank>> cols(3, std::vector<Rank>(n));
    for (Rank i = 0; i < n; ++i) {
        cols[0][i] = i;
        cols[1][i] = order1_ranks[i];
        cols[2][i] = n - 1 - i;
    }
    return MultiPerm::from_columns(std::move(cols));
}

bool qualifies_as_gadget(const MultiPerm& shape) {
    const std::size_t n = shape.size();
    if (shape.dims() != 3 || n < 5)
        return false;
    for (PointId p = 0; p < n; ++p)
        if (shape.rank(p, 2) != n - 1 - shape.rank(p, 0))
            return false;
    const PointId first = 0;
    const auto last = static_cast<PointId>(n - 1);
    const PointId top = shape.at_rank(1, static_cast<Rank>(n - 1));
    const PointId low0 = shape.at_rank(1, 0);
    const PointId low1 = shape.at_rank(1, 1);
    std::array<PointId, 5> pts{first, last, top, low0, low1};
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
        return false;
    return shape.rank(last, 1) < shape.rank(first, 1);
}

GadgetSet build_gadget_family(Variant variant, std::size_t size, std::uint64_t seed) {
    const std::size_t needed = variant == Variant::P ? 10 : 20;
    if (size < 5)
        throw Error(ErrorCode::FamilyTooSmall, "gadgets need at least 5 points, got " + std::to_string(size));

    std::vector<std::vector<Rank>> candidates;
    std::vector<Rank> perm(size);
    std::iota(perm.begin(), perm.end(), 0);
    // With a zero seed only the first `needed` qualifying shapes are required.
    do {
        if (qualifies_as_gadget(gadget_shape(perm))) {
            candidates.push_back(perm);
            if (seed == 0 && candidates.size() == needed)
                break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (candidates.size() < needed)
        throw Error(ErrorCode::FamilyTooSmall, "only " + std::to_string(candidates.size()) +
                                                   " qualifying shapes of size " + std::to_string(size));
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        for (std::size_t i = candidates.size() - 1; i > 0; --i) {
            std::uniform_int_distribution<std::size_t> pick(0, i);
            std::swap(candidates[i], candidates[pick(rng)]);
        }
    }

    std::vector<AntichainElement> elements;
    const int max_sup = variant == Variant::P ? 1 : 3;
    std::size_t next = 0;
    for (int sup = 0; sup <= max_sup; ++sup)
        for (Role role : roles_for_superscript(sup))
            elements.push_back(AntichainElement{gadget_shape(candidates[next++]), role, sup});

    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = 0; j < elements.size(); ++j)
            if (i != j && embeds(elements[i].shape, elements[j].shape))
                throw Error(ErrorCode::FamilyTooSmall, "antichain check failed");
    return GadgetSet(variant, std::move(elements));
}

} // namespace tilejep

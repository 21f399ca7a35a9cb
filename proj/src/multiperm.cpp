#include "tilejep/multiperm.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

namespace tilejep {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonBijectiveOrder: return "NonBijectiveOrder";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::BadOrderIndex: return "BadOrderIndex";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimsMismatch: return "DimsMismatch";
    case ErrorCode::FamilyTooSmall: return "FamilyTooSmall";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::WrongRole: return "WrongRole";
    case ErrorCode::BadTileId: return "BadTileId";
    case ErrorCode::MisalignedBlock: return "MisalignedBlock";
    case ErrorCode::UnknownCodeword: return "UnknownCodeword";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::VariantMismatch: return "VariantMismatch";
    case ErrorCode::AlignmentInconsistent: return "AlignmentInconsistent";
    case ErrorCode::NotAMember: return "NotAMember";
    case ErrorCode::InvalidTiling: return "InvalidTiling";
    case ErrorCode::CompletionFailed: return "CompletionFailed";
    case ErrorCode::SplitNotFound: return "SplitNotFound";
    case ErrorCode::UntiledCell: return "UntiledCell";
    case ErrorCode::Usage: return "Usage";
    }
    return "Unknown";
}

namespace {

void check_bijection(const std::vector<Rank>& column, std::size_t order) {
    std::vector<char> seen(column.size(), 0);
    for (Rank r : column) {
        if (r >= column.size() || seen[r])
            throw Error(ErrorCode::NonBijectiveOrder,
                        "order " + std::to_string(order) + " is not a permutation of 0.." +
                            std::to_string(column.size() == 0 ? 0 : column.size() - 1));
        seen[r] = 1;
    }
}

// Dense ranks from arbitrary distinct keys.
std::vector<Rank> ranks_of(const std::vector<Rank>& keys) {
    std::vector<PointId> idx(keys.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](PointId a, PointId b) { return keys[a] < keys[b]; });
    std::vector<Rank> out(keys.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
        if (r > 0 && keys[idx[r]] == keys[idx[r - 1]])
            throw Error(ErrorCode::NonBijectiveOrder, "duplicate sort key");
        out[idx[r]] = static_cast<Rank>(r);
    }
    return out;
}

} // namespace

MultiPerm MultiPerm::from_rank_rows(std::span<const RankRow> rows, std::size_t dims) {
    if (dims == 0)
        dims = rows.empty() ? 3 : rows.front().size();
    if (dims < 1)
        throw Error(ErrorCode::ArityMismatch, "structure needs at least one order");
    std::vector<std::vector<Rank>> columns(dims, std::vector<Rank>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != dims)
            throw Error(ErrorCode::ArityMismatch, "row " + std::to_string(i) + " has " +
                                                      std::to_string(rows[i].size()) + " entries, expected " +
                                                      std::to_string(dims));
        for (std::size_t k = 0; k < dims; ++k)
            columns[k][i] = rows[i][k];
    }
    for (std::size_t k = 0; k < dims; ++k)
        check_bijection(columns[k], k);
    return from_columns(std::move(columns));
}

MultiPerm MultiPerm::from_columns(std::vector<std::vector<Rank>> columns) {
    MultiPerm out(columns.size());
    if (columns.empty())
        throw Error(ErrorCode::ArityMismatch, "structure needs at least one order");
    const std::size_t n = columns.front().size();
    for (auto& c : columns) {
        if (c.size() != n)
            throw Error(ErrorCode::ArityMismatch, "columns differ in length");
        c = ranks_of(c);
    }
    // Relist points in order-0 sequence.
    std::vector<PointId> by_first(n);
    for (PointId p = 0; p < n; ++p)
        by_first[columns[0][p]] = p;
    out.ranks_.resize(n * out.dims_);
    for (PointId i = 0; i < n; ++i)
        for (std::size_t k = 0; k < out.dims_; ++k)
            out.ranks_[i * out.dims_ + k] = columns[k][by_first[i]];
    out.build_inverse();
    return out;
}

void MultiPerm::build_inverse() {
    const std::size_t n = size();
    inverse_.assign(n * dims_, 0);
    for (PointId p = 0; p < n; ++p)
        for (std::size_t k = 0; k < dims_; ++k)
            inverse_[k * n + rank(p, k)] = p;
}

std::vector<RankRow> MultiPerm::rows() const {
    std::vector<RankRow> out;
    out.reserve(size());
    for (PointId p = 0; p < size(); ++p)
        out.emplace_back(row(p).begin(), row(p).end());
    return out;
}

MultiPerm induced_substructure(const MultiPerm& s, std::span<const PointId> subset) {
    std::vector<PointId> pts(subset.begin(), subset.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<std::vector<Rank>> columns(s.dims(), std::vector<Rank>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t k = 0; k < s.dims(); ++k)
            columns[k][i] = s.rank(pts[i], k);
    if (s.dims() == 0)
        return MultiPerm(0);
    return MultiPerm::from_columns(std::move(columns));
}

MultiPerm reduct(const MultiPerm& s, std::span<const std::size_t> keep) {
    if (keep.empty())
        throw Error(ErrorCode::BadOrderIndex, "reduct needs at least one order");
    std::vector<std::vector<Rank>> columns;
    for (std::size_t k : keep) {
        if (k >= s.dims())
            throw Error(ErrorCode::BadOrderIndex, "order " + std::to_string(k) + " out of range");
        std::vector<Rank> col(s.size());
        for (PointId p = 0; p < s.size(); ++p)
            col[p] = s.rank(p, k);
        columns.push_back(std::move(col));
    }
    return MultiPerm::from_columns(std::move(columns));
}

MultiPerm expand(const MultiPerm& s, std::span<const std::vector<Rank>> extra) {
    std::vector<std::vector<Rank>> columns;
    for (std::size_t k = 0; k < s.dims(); ++k) {
        std::vector<Rank> col(s.size());
        for (PointId p = 0; p < s.size(); ++p)
            col[p] = s.rank(p, k);
        columns.push_back(std::move(col));
    }
    for (std::size_t e = 0; e < extra.size(); ++e) {
        if (extra[e].size() != s.size())
            throw Error(ErrorCode::ArityMismatch, "extra column has wrong length");
        check_bijection(extra[e], s.dims() + e);
        columns.push_back(extra[e]);
    }
    return MultiPerm::from_columns(std::move(columns));
}

namespace {

std::size_t locate(std::string_view text, std::string_view needle) {
    auto pos = text.find(needle);
    return pos == std::string_view::npos ? 0 : pos;
}

} // namespace

MultiPerm parse_mperm(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.byte == 0 ? 0 : e.byte - 1, e.what());
    }
    if (!j.is_object())
        throw ParseError(0, "expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "dims" && it.key() != "points")
            throw ParseError(locate(text, "\"" + it.key() + "\""), "unexpected field '" + it.key() + "'");
    if (!j.contains("dims") || !j["dims"].is_number_unsigned())
        throw ParseError(locate(text, "\"dims\""), "'dims' must be a non-negative integer");
    if (!j.contains("points") || !j["points"].is_array())
        throw ParseError(locate(text, "\"points\""), "'points' must be an array");
    const auto dims = j["dims"].get<std::size_t>();
    if (dims < 1)
        throw ParseError(locate(text, "\"dims\""), "'dims' must be at least 1");
    std::vector<RankRow> rows;
    for (const auto& r : j["points"]) {
        if (!r.is_array())
            throw ParseError(locate(text, "\"points\""), "each point must be an array of ranks");
        RankRow row;
        for (const auto& v : r) {
            if (!v.is_number_unsigned())
                throw ParseError(locate(text, "\"points\""), "ranks must be non-negative integers");
            row.push_back(v.get<Rank>());
        }
        rows.push_back(std::move(row));
    }
    auto s = MultiPerm::from_rank_rows(rows, dims);
    if (s.dims() != dims)
        throw Error(ErrorCode::ArityMismatch, "dims field disagrees with rows");
    return s;
}

std::string serialize_mperm(const MultiPerm& s) {
    std::string out = "{\"dims\":" + std::to_string(s.dims()) + ",\"points\":[";
    for (PointId p = 0; p < s.size(); ++p) {
        if (p)
            out += ',';
        out += '[';
        for (std::size_t k = 0; k < s.dims(); ++k) {
            if (k)
                out += ',';
            out += std::to_string(s.rank(p, k));
        }
        out += ']';
    }
    out += "]}";
    return out;
}

} // namespace tilejep

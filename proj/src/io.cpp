#include "tilejep/io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace tilejep::io {

namespace {

void allow_fields(const json& j, std::initializer_list<const char*> allowed, const char* what) {
    if (!j.is_object())
        throw ParseError(0, std::string(what) + ": expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            ok = ok || it.key() == a;
        if (!ok)
            throw ParseError(0, std::string(what) + ": unexpected field '" + it.key() + "'");
    }
}

const json& field(const json& j, const char* key, const char* what) {
    if (!j.contains(key))
        throw ParseError(0, std::string(what) + ": missing field '" + key + "'");
    return j.at(key);
}

int int_field(const json& j, const char* key, const char* what) {
    const auto& v = field(j, key, what);
    if (!v.is_number_integer())
        throw ParseError(0, std::string(what) + ": '" + key + "' must be an integer");
    return v.get<int>();
}

std::vector<int> int_row(const json& j, const char* what) {
    if (!j.is_array())
        throw ParseError(0, std::string(what) + ": expected an array of integers");
    std::vector<int> out;
    for (const auto& v : j) {
        if (!v.is_number_integer())
            throw ParseError(0, std::string(what) + ": expected an array of integers");
        out.push_back(v.get<int>());
    }
    return out;
}

std::vector<std::vector<int>> int_table(const json& j, const char* what) {
    if (!j.is_array())
        throw ParseError(0, std::string(what) + ": expected an array of rows");
    std::vector<std::vector<int>> out;
    for (const auto& r : j)
        out.push_back(int_row(r, what));
    return out;
}

void require_kind(const json& j, const char* kind, const char* what) {
    if (j.contains("kind") && j.at("kind") != kind)
        throw ParseError(0, std::string(what) + ": kind must be '" + kind + "'");
}

json coord(const Coord& c) { return json::array({c.first, c.second}); }

const char* kind_name(IntervalKind k) { return k == IntervalKind::Connector ? "connector" : "tile_set"; }

} // namespace

json to_json(const MultiPerm& s) { return json::parse(serialize_mperm(s)); }

MultiPerm mperm_from_json(const json& j) { return parse_mperm(j.dump()); }

json to_json(const StringTilingProblem& p) {
    json h = json::array(), v = json::array();
    for (const auto& [a, b, d] : p.h_forbidden)
        h.push_back({a, b, d});
    for (const auto& [a, b] : p.v_forbidden)
        v.push_back({a, b});
    return {{"kind", "string"}, {"D", p.D}, {"h_forbidden", h}, {"v_forbidden", v}};
}

StringTilingProblem string_problem_from_json(const json& j) {
    const char* what = "string tiling problem";
    allow_fields(j, {"kind", "D", "h_forbidden", "v_forbidden"}, what);
    require_kind(j, "string", what);
    StringTilingProblem p;
    p.D = int_field(j, "D", what);
    for (const auto& r : int_table(field(j, "h_forbidden", what), what)) {
        if (r.size() != 3)
            throw ParseError(0, "h_forbidden entries are [left, right, distance]");
        p.h_forbidden.insert({r[0], r[1], r[2]});
    }
    for (const auto& r : int_table(field(j, "v_forbidden", what), what)) {
        if (r.size() != 2)
            throw ParseError(0, "v_forbidden entries are [below, above]");
        p.v_forbidden.insert({r[0], r[1]});
    }
    p.validate();
    return p;
}

json to_json(const WangProblem& p) {
    json h = json::array(), v = json::array();
    for (const auto& [a, b] : p.h_forbidden)
        h.push_back({a, b});
    for (const auto& [a, b] : p.v_forbidden)
        v.push_back({a, b});
    return {{"kind", "wang"}, {"t", p.t}, {"h_forbidden", h}, {"v_forbidden", v}};
}

WangProblem wang_problem_from_json(const json& j) {
    const char* what = "wang problem";
    allow_fields(j, {"kind", "t", "h_forbidden", "v_forbidden"}, what);
    require_kind(j, "wang", what);
    WangProblem p;
    p.t = int_field(j, "t", what);
    for (const auto* key : {"h_forbidden", "v_forbidden"})
        for (const auto& r : int_table(field(j, key, what), what)) {
            if (r.size() != 2)
                throw ParseError(0, std::string(key) + " entries are pairs");
            (key[0] == 'h' ? p.h_forbidden : p.v_forbidden).insert({r[0], r[1]});
        }
    p.validate();
    return p;
}

json to_json(const Tiling& t) {
    if (t.is_periodic())
        return {{"kind", "periodic"}, {"px", t.width}, {"py", t.height}, {"table", t.cells}};
    return {{"kind", "window"}, {"w", t.width}, {"h", t.height}, {"rows", t.cells}};
}

Tiling tiling_from_json(const json& j) {
    const char* what = "tiling";
    if (!j.is_object() || !j.contains("kind"))
        throw ParseError(0, "tiling: missing field 'kind'");
    if (j.at("kind") == "periodic") {
        allow_fields(j, {"kind", "px", "py", "table"}, what);
        auto t = Tiling::periodic(int_table(field(j, "table", what), what));
        if (int_field(j, "px", what) != t.width || int_field(j, "py", what) != t.height)
            throw Error(ErrorCode::InvalidTiling, "px/py disagree with the table shape");
        return t;
    }
    if (j.at("kind") == "window") {
        allow_fields(j, {"kind", "w", "h", "rows"}, what);
        const int w = int_field(j, "w", what), h = int_field(j, "h", what);
        auto rows = int_table(field(j, "rows", what), what);
        if (w < 0 || h < 0 || rows.size() != static_cast<std::size_t>(h))
            throw Error(ErrorCode::InvalidTiling, "window rows disagree with h");
        Tiling t = Tiling::window(w, h);
        for (int y = 0; y < h; ++y) {
            if (rows[y].size() != static_cast<std::size_t>(w))
                throw Error(ErrorCode::InvalidTiling, "window row " + std::to_string(y) + " disagrees with w");
            t.cells[y] = rows[y];
        }
        return t;
    }
    throw ParseError(0, "tiling: kind must be 'periodic' or 'window'");
}

json to_json(const ClassDescriptor& c) {
    return {{"variant", c.variant == Variant::P ? "P" : "Q"},
            {"gadget_size", c.gadget_size},
            {"gadget_seed", c.gadget_seed},
            {"problem", to_json(c.problem)}};
}

ClassDescriptor class_from_json(const json& j) {
    const char* what = "class descriptor";
    allow_fields(j, {"variant", "gadget_size", "gadget_seed", "problem"}, what);
    const auto& v = field(j, "variant", what);
    if (v != "P" && v != "Q")
        throw ParseError(0, "class descriptor: variant must be 'P' or 'Q'");
    std::size_t size = 7;
    std::uint64_t seed = 0;
    if (j.contains("gadget_size")) {
        if (!j.at("gadget_size").is_number_unsigned())
            throw ParseError(0, "class descriptor: 'gadget_size' must be a non-negative integer");
        size = j.at("gadget_size").get<std::size_t>();
    }
    if (j.contains("gadget_seed")) {
        if (!j.at("gadget_seed").is_number_unsigned())
            throw ParseError(0, "class descriptor: 'gadget_seed' must be a non-negative integer");
        seed = j.at("gadget_seed").get<std::uint64_t>();
    }
    return ClassDescriptor::make(v == "P" ? Variant::P : Variant::Q,
                                 string_problem_from_json(field(j, "problem", what)), size, seed);
}

json to_json(const BlockCodec& codec) {
    return {{"tile_count", codec.tile_count},
            {"block_width", codec.block_width},
            {"block_height", codec.block_height},
            {"codewords", codec.codewords}};
}

json to_json(const TilingVerdict& v) {
    json out = {{"valid", v.valid}};
    json list = json::array();
    for (const auto& x : v.violations)
        list.push_back({{"at", {x.x, x.y}},
                        {"to", {x.x2, x.y2}},
                        {"direction", x.vertical ? "vertical" : "horizontal"},
                        {"distance", x.distance}});
    out["violations"] = list;
    return out;
}

json to_json(const Verdict& v) {
    json out = {{"member", v.member}};
    if (v.member)
        return out;
    json list = json::array();
    for (const auto& x : v.violations)
        list.push_back({{"constraint", x.constraint}, {"witness", x.witness}, {"detail", x.detail}});
    out["violations"] = list;
    if (v.truncated)
        out["truncated"] = true;
    return out;
}

json ledger_json(const CanonicalBuild& b, const GadgetSet& g) {
    json copies = json::array();
    for (const auto& e : b.ledger) {
        json c = {{"role", to_string(e.role)},
                  {"superscript", e.superscript},
                  {"element", g.index(e.role, e.superscript)},
                  {"root", e.root},
                  {"points", e.points}};
        if (e.grid)
            c["grid"] = coord(*e.grid);
        if (e.path_index)
            c["path_index"] = *e.path_index;
        copies.push_back(std::move(c));
    }
    return {{"n", b.n}, {"size", b.structure.size()}, {"copies", copies}};
}

json explain_json(const TaggedStructure& t, const Verdict& v) {
    json copies = json::array();
    for (std::size_t c = 0; c < t.copies().size(); ++c) {
        json e = {{"role", to_string(t.role(c))},
                  {"superscript", t.superscript(c)},
                  {"root", t.copies()[c].root},
                  {"points", t.copies()[c].points}};
        if (t.role(c) != Role::T)
            e["captures"] = t.captured(c);
        copies.push_back(std::move(e));
    }
    json intervals = json::array();
    for (const auto& i : t.intervals())
        intervals.push_back({{"kind", kind_name(i.kind)},
                             {"copy", i.owner},
                             {"bottom", i.bottom},
                             {"top", i.top},
                             {"superscript", i.superscript}});
    json coords = json::array();
    const auto n = static_cast<PointId>(t.base().size());
    for (int s = 0; s <= t.gadgets().max_superscript(); ++s)
        for (PointId p = 0; p < n; ++p)
            for (const auto& [x, y] : t.coordinates(p, s))
                coords.push_back({{"point", p}, {"superscript", s}, {"x", x}, {"y", y}});
    json weak = json::array();
    for (const auto& pr : pairings(t.gadgets().variant())) {
        const auto w = weak_coordinates(t, pr);
        json per = json::array();
        for (std::size_t i = 0; i < w.intervals.size(); ++i) {
            json cs = json::array();
            for (const auto& c : w.coords[i])
                cs.push_back(coord(c));
            per.push_back({{"interval", w.intervals[i]}, {"coords", cs}});
        }
        weak.push_back({{"pairing", {pr.grid, pr.tile}}, {"intervals", per}, {"conflict", w.non_member}});
    }
    const auto oa = origins_and_axes(t);
    return {{"size", t.base().size()},
            {"copies", copies},
            {"intervals", intervals},
            {"coordinates", coords},
            {"weak_coordinates", weak},
            {"path_origins", oa.path_origins},
            {"grid_origins", oa.grid_origins},
            {"tile_origins", oa.tile_origins},
            {"x_axis", oa.on_x_axis},
            {"y_axis", oa.on_y_axis},
            {"verdict", to_json(v)}};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::Usage, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw ParseError(e.byte == 0 ? 0 : e.byte - 1, path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorCode::Usage, "cannot write " + path);
    out << text;
    if (!text.empty() && text.back() != '\n')
        out << '\n';
    if (!out)
        throw Error(ErrorCode::Usage, "write failed for " + path);
}

} // namespace tilejep::io

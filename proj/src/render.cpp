#include "tilejep/render.hpp"

#include <algorithm>
#include <sstream>

namespace tilejep {

namespace {

const char* point_colour(const TaggedStructure* t, PointId p) {
    if (!t)
        return "#444444";
    for (int s = 0; s <= t->gadgets().max_superscript(); ++s) {
        if (t->in_O(p, s))
            return "#08306b";
        if (t->in_P(p, s))
            return "#2171b5";
        if (t->in_T1(p, s) || t->in_T2(p, s))
            return "#6a3d9a";
        if (t->in_G(p, s))
            return "#111111";
    }
    return "#888888";
}

const char* copy_colour(Role r) {
    switch (r) {
    case Role::X: return "#e6550d";
    case Role::Y: return "#31a354";
    case Role::P:
    case Role::O: return "#3182bd";
    case Role::G: return "#636363";
    case Role::T: return "#756bb1";
    }
    return "#000000";
}

} // namespace

std::string render_svg(const MultiPerm& s, const TaggedStructure* tags, const RenderSpec& spec) {
    for (const auto& l : spec.layers)
        if (l != "copies" && l != "intervals")
            throw Error(ErrorCode::Usage, "unknown render layer '" + l + "'");
    if (s.size() > 0 && s.dims() < 2)
        throw Error(ErrorCode::DimsMismatch, "rendering needs two orders");
    const int k = spec.scale, margin = 2 * k;
    const int n = static_cast<int>(s.size());
    const int w = 2 * margin + std::max(0, n - 1) * k + (tags ? k : 0);
    const int h = 2 * margin + std::max(0, n - 1) * k;
    auto px = [&](PointId p) { return margin + static_cast<int>(s.rank(p, 0)) * k; };
    auto py = [&](PointId p) { return margin + (n - 1 - static_cast<int>(s.rank(p, 1))) * k; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
      << ' ' << h << "\">\n";
    o << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    if (tags && spec.layers.count("copies")) {
        o << "<g class=\"copies\" fill=\"none\" stroke-width=\"1.5\">\n";
        for (std::size_t c = 0; c < tags->copies().size(); ++c) {
            const auto& cp = tags->copies()[c];
            std::vector<PointId> pts = cp.points;
            std::sort(pts.begin(), pts.end()); // point ids follow order 0
            o << "<polyline data-role=\"" << to_string(tags->role(c)) << "\" data-superscript=\""
              << tags->superscript(c) << "\" stroke=\"" << copy_colour(tags->role(c)) << "\" points=\"";
            for (std::size_t i = 0; i < pts.size(); ++i)
                o << (i ? " " : "") << px(pts[i]) << ',' << py(pts[i]);
            o << "\"/>\n";
        }
        o << "</g>\n";
    }
    if (tags && spec.layers.count("intervals")) {
        o << "<g class=\"intervals\" fill=\"none\" stroke=\"#000000\">\n";
        for (const auto& iv : tags->intervals()) {
            PointId right = 0;
            for (PointId p : tags->copies()[iv.owner].points)
                right = std::max(right, p);
            const int x = px(right) + k / 2, y0 = py(iv.top), y1 = py(iv.bottom), m = (y0 + y1) / 2;
            o << "<path data-kind=\"" << (iv.kind == IntervalKind::Connector ? "connector" : "tile_set")
              << "\" d=\"M" << x << ',' << y0 << " h4 V" << m << " h4 h-4 V" << y1 << " h-4\"/>\n";
        }
        o << "</g>\n";
    }
    o << "<g class=\"points\">\n";
    for (PointId p = 0; p < s.size(); ++p) {
        o << "<circle cx=\"" << px(p) << "\" cy=\"" << py(p) << "\" r=\"" << std::max(2, k / 6) << "\" fill=\""
          << point_colour(tags, p) << "\"/>\n";
        if (spec.labels && s.dims() >= 3)
            o << "<text x=\"" << px(p) + 4 << "\" y=\"" << py(p) - 4 << "\" font-size=\"" << std::max(6, k / 3)
              << "\">" << s.rank(p, 2) << "</text>\n";
    }
    o << "</g>\n</svg>\n";
    return o.str();
}

} // namespace tilejep

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tilejep/canonical.hpp"
#include "tilejep/checker.hpp"
#include "tilejep/forbidden.hpp"
#include "tilejep/io.hpp"
#include "tilejep/jep.hpp"
#include "tilejep/render.hpp"

namespace py = pybind11;
using namespace tilejep;
using io::json;

namespace {

// Documents cross the boundary as JSON text; the Python side wraps them in json.loads/dumps.
ClassDescriptor load_class(const std::string& doc) { return io::class_from_json(json::parse(doc)); }

std::string checked(const MultiPerm& s, const ClassDescriptor& c, const std::vector<std::string>& only) {
    CheckOptions o;
    o.only = {only.begin(), only.end()};
    return io::to_json(check_membership(s, c, o)).dump();
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "bindings for the tilejep C++ core";

    py::register_exception<Error>(m, "TilejepError", PyExc_RuntimeError);

    py::class_<MultiPerm>(m, "MultiPerm")
        .def(py::init([](const std::vector<RankRow>& rows, std::size_t dims) {
                 return MultiPerm::from_rank_rows(rows, dims);
             }),
             py::arg("rows"), py::arg("dims") = 3)
        .def_static("from_json", [](const std::string& doc) { return parse_mperm(doc); })
        .def("to_json", &serialize_mperm)
        .def("rows", &MultiPerm::rows)
        .def("rank", &MultiPerm::rank, py::arg("point"), py::arg("order"))
        .def_property_readonly("dims", &MultiPerm::dims)
        .def("__len__", &MultiPerm::size)
        .def("__eq__", [](const MultiPerm& a, const MultiPerm& b) { return a == b; })
        .def("__repr__", [](const MultiPerm& s) { return "MultiPerm(" + serialize_mperm(s) + ")"; });

    py::class_<ClassDescriptor>(m, "ClassDescriptor")
        .def_static("from_json", &load_class)
        .def("to_json", [](const ClassDescriptor& c) { return io::to_json(c).dump(); })
        .def_property_readonly("variant", [](const ClassDescriptor& c) { return c.variant == Variant::P ? "P" : "Q"; })
        .def_property_readonly("gadget_count", [](const ClassDescriptor& c) { return c.gadgets->size(); });

    m.def("compile_class", [](const std::string& problem, const std::string& variant, std::size_t size,
                              std::uint64_t seed) {
        if (variant != "P" && variant != "Q")
            throw Error(ErrorCode::Usage, "variant must be P or Q");
        return ClassDescriptor::make(variant == "P" ? Variant::P : Variant::Q,
                                     io::string_problem_from_json(json::parse(problem)), size, seed);
    }, py::arg("problem"), py::arg("variant") = "P", py::arg("gadget_size") = 7, py::arg("seed") = 0);

    m.def("gadget_shapes", [](const std::string& variant, std::size_t size, std::uint64_t seed) {
        auto g = build_gadget_family(variant == "Q" ? Variant::Q : Variant::P, size, seed);
        std::vector<MultiPerm> out;
        for (const auto& e : g.elements())
            out.push_back(e.shape);
        return out;
    }, py::arg("variant") = "P", py::arg("size") = 7, py::arg("seed") = 0);

    m.def("find_embedding", [](const MultiPerm& p, const MultiPerm& s) -> std::optional<std::vector<PointId>> {
        auto e = find_embedding(p, s);
        if (!e)
            return std::nullopt;
        return e->map;
    });
    m.def("count_copies", [](const MultiPerm& p, const MultiPerm& s) { return enumerate_copies(p, s).copies.size(); });
    m.def("induced_substructure", [](const MultiPerm& s, const std::vector<PointId>& keep) {
        return induced_substructure(s, keep);
    });

    m.def("check", &checked, py::arg("structure"), py::arg("cls"), py::arg("only") = std::vector<std::string>{});
    m.def("explain", [](const MultiPerm& s, const ClassDescriptor& c) {
        auto t = detect_copies(s, c.gadgets);
        return io::explain_json(t, check_membership(t, c)).dump();
    });

    m.def("canonical", [](const ClassDescriptor& c, const std::string& model, int n, bool defect) {
        CanonicalOptions o;
        o.defect_origin_predecessor = defect;
        CanonicalBuild b = model == "A"    ? canonical_A(n, c, o)
                           : model == "B"  ? canonical_B(n, c, o)
                           : model == "QA" ? canonical_Q_A(n, c)
                           : model == "QB" ? canonical_Q_B(n, c)
                                           : throw Error(ErrorCode::Usage, "model must be A, B, QA or QB");
        return std::make_pair(b.structure, io::ledger_json(b, *c.gadgets).dump());
    }, py::arg("cls"), py::arg("model"), py::arg("n"), py::arg("defect") = false);

    m.def("jep", [](const MultiPerm& a, const MultiPerm& b, const std::string& tiling, const ClassDescriptor& c) {
        auto theta = io::tiling_from_json(json::parse(tiling));
        return c.variant == Variant::P ? jep_less1(a, b, theta, c) : jep_Q(a, b, theta, c);
    });
    m.def("jep_brute", [](const MultiPerm& a, const MultiPerm& b, const ClassDescriptor& c, const std::string& mode,
                          std::size_t budget) -> std::optional<MultiPerm> {
        return brute_force_jep(a, b, c, mode == "identify" ? BruteMode::Identify : BruteMode::Disjoint, budget)
            .witness;
    }, py::arg("a"), py::arg("b"), py::arg("cls"), py::arg("mode") = "disjoint", py::arg("budget") = 10);
    m.def("extract_tiling", [](const MultiPerm& joint, const ClassDescriptor& c, int w, int h, int grid, int tile) {
        return io::to_json(extract_tiling(joint, c, w, h, Pairing{grid, tile})).dump();
    }, py::arg("joint"), py::arg("cls"), py::arg("width"), py::arg("height"), py::arg("grid") = 0,
          py::arg("tile") = 1);

    m.def("check_tiling", [](const std::string& problem, const std::string& tiling) {
        auto p = json::parse(problem);
        auto t = io::tiling_from_json(json::parse(tiling));
        if (p.value("kind", "string") == "wang")
            return io::to_json(check_tiling(io::wang_problem_from_json(p), t)).dump();
        return io::to_json(check_tiling(io::string_problem_from_json(p), t)).dump();
    });
    m.def("solve_periodic", [](const std::string& problem, int max_period) -> std::optional<std::string> {
        auto p = json::parse(problem);
        auto t = p.value("kind", "string") == "wang" ? solve_periodic(io::wang_problem_from_json(p), max_period)
                                                      : solve_periodic(io::string_problem_from_json(p), max_period);
        if (!t)
            return std::nullopt;
        return io::to_json(*t).dump();
    }, py::arg("problem"), py::arg("max_period") = 4);
    m.def("encode_wang", [](const std::string& wang) {
        auto e = encode_wang_as_string(io::wang_problem_from_json(json::parse(wang)));
        return std::make_pair(io::to_json(e.problem).dump(), io::to_json(e.codec).dump());
    });

    m.def("forbidden_patterns", [](const ClassDescriptor& c, const std::vector<std::string>& ids, std::size_t cap,
                                   std::uint64_t budget) {
        ForbiddenOptions o{cap, budget};
        std::vector<MultiPerm> out;
        for_each_forbidden(c, {ids.begin(), ids.end()}, o, [&](const MultiPerm& s, const std::string&) {
            out.push_back(s);
            return true;
        });
        return out;
    }, py::arg("cls"), py::arg("constraints"), py::arg("size_cap") = 15,
          py::arg("budget") = ForbiddenOptions{}.max_candidates);

    m.def("render_svg", [](const MultiPerm& s, const ClassDescriptor* c, int scale, bool labels) {
        RenderSpec spec;
        spec.scale = scale;
        spec.labels = labels;
        if (!c)
            return render_svg(s, nullptr, spec);
        auto t = detect_copies(s, c->gadgets);
        return render_svg(s, &t, spec);
    }, py::arg("structure"), py::arg("cls") = nullptr, py::arg("scale") = 24, py::arg("labels") = true);
}

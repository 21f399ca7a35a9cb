#include "cli.hpp"

#include <sstream>

#include "CLI11.hpp"
#include "tilejep/canonical.hpp"
#include "tilejep/checker.hpp"
#include "tilejep/forbidden.hpp"
#include "tilejep/io.hpp"
#include "tilejep/jep.hpp"
#include "tilejep/render.hpp"

namespace tilejep::cli {

namespace {

using io::json;

// Domain-negative outcome: exit 1 after printing the result.
struct Negative {};

std::set<std::string> split_ids(const std::string& s) {
    std::set<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.insert(item);
    return out;
}

std::pair<int, int> parse_window(const std::string& s) {
    const auto x = s.find('x');
    try {
        if (x == std::string::npos)
            throw std::invalid_argument(s);
        std::size_t used = 0;
        const int w = std::stoi(s.substr(0, x), &used);
        if (used != x)
            throw std::invalid_argument(s);
        const int h = std::stoi(s.substr(x + 1), &used);
        if (used != s.size() - x - 1 || w < 1 || h < 1)
            throw std::invalid_argument(s);
        return {w, h};
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::Usage, "window must look like WxH, got '" + s + "'");
    }
}

Variant parse_variant(const std::string& s) {
    if (s == "P")
        return Variant::P;
    if (s == "Q")
        return Variant::Q;
    throw Error(ErrorCode::Usage, "variant must be P or Q");
}

// Malformed invocations or documents, as opposed to well-formed inputs the domain rejects.
bool input_error(ErrorCode c) {
    switch (c) {
    case ErrorCode::Usage:
    case ErrorCode::ParseError:
    case ErrorCode::DimsMismatch:
    case ErrorCode::ArityMismatch:
    case ErrorCode::NonBijectiveOrder:
    case ErrorCode::BadOrderIndex:
    case ErrorCode::BadTileId:
        return true;
    default:
        return false;
    }
}

MultiPerm read_mperm(const std::string& path) { return io::mperm_from_json(io::read_json_file(path)); }

void emit(std::ostream& out, const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
        out << text << '\n';
    else
        io::write_text_file(path, text);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"tile-encoded permutation classes: compile, check, build and jointly embed"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string class_path, in_path, out_path, problem_path, a_path, b_path, tiling_path, ledger_path;
    std::string model = "A", variant = "P", mode = "disjoint", window, pattern_path, constraints = "2";
    std::string layers = "copies,intervals", pairing = "0,1";
    int n = 2, max_period = 4, scale = 24;
    std::size_t gadget_size = 7, cap = 0;
    std::uint64_t seed = 0, budget = 0;
    bool defect = false, no_labels = false, all = false, count_only = false;

    auto* compile = app.add_subcommand("compile", "write a .class descriptor for a string tiling problem");
    compile->add_option("--problem", problem_path, ".stp file")->required();
    compile->add_option("--variant", variant, "P or Q")->check(CLI::IsMember({"P", "Q"}));
    compile->add_option("--gadget-size", gadget_size, "points per gadget");
    compile->add_option("--seed", seed, "gadget family shuffle seed");
    compile->add_option("--out", out_path, ".class output (stdout if omitted)");

    auto* check = app.add_subcommand("check", "membership verdict");
    auto* explain = app.add_subcommand("explain", "detected copies, intervals, coordinates and verdict");
    for (auto* sc : {check, explain}) {
        sc->add_option("--class", class_path)->required();
        sc->add_option("--in", in_path)->required();
        sc->add_option("--only", constraints, "comma-separated constraint ids");
        sc->add_option("--cap", cap, "violations reported per constraint");
        sc->add_option("--budget", budget, "copy detection budget");
    }

    auto* gen = app.add_subcommand("gen-canonical", "canonical model structure and ledger");
    gen->add_option("--class", class_path)->required();
    gen->add_option("--model", model)->check(CLI::IsMember({"A", "B", "QA", "QB"}));
    gen->add_option("--n", n)->check(CLI::PositiveNumber);
    gen->add_option("--out", out_path)->required();
    gen->add_option("--ledger", ledger_path);
    gen->add_flag("--defect", defect, "add an E_P copy capturing the path origin (A and B only)");

    auto* solve = app.add_subcommand("solve-tiling", "periodic or window solution of a tiling problem");
    solve->add_option("--problem", problem_path)->required();
    solve->add_option("--window", window, "WxH window instead of a periodic search");
    solve->add_option("--max-period", max_period)->check(CLI::PositiveNumber);
    solve->add_option("--out", out_path);

    auto* wang = app.add_subcommand("encode-wang", "encode a Wang problem as a string tiling problem");
    wang->add_option("--in", in_path)->required();
    wang->add_option("--out", out_path);
    wang->add_option("--codec", ledger_path, "write the block codec here");

    auto* jep = app.add_subcommand("jep", "constructive joint embedding along a tiling");
    jep->add_option("--class", class_path)->required();
    jep->add_option("--a", a_path)->required();
    jep->add_option("--b", b_path)->required();
    jep->add_option("--tiling", tiling_path)->required();
    jep->add_option("--out", out_path);

    auto* brute = app.add_subcommand("jep-brute", "exhaustive joint embedding search");
    brute->add_option("--class", class_path)->required();
    brute->add_option("--a", a_path)->required();
    brute->add_option("--b", b_path)->required();
    brute->add_option("--mode", mode)->check(CLI::IsMember({"disjoint", "identify"}));
    brute->add_option("--budget", budget, "largest |A|+|B| searched");
    brute->add_option("--out", out_path);

    auto* extract = app.add_subcommand("extract", "read a tiling off a joint embedding");
    extract->add_option("--class", class_path)->required();
    extract->add_option("--in", in_path)->required();
    extract->add_option("--window", window)->required();
    extract->add_option("--pairing", pairing, "grid,tile superscripts");
    extract->add_option("--out", out_path);

    auto* render = app.add_subcommand("render", "SVG of the order-0/order-1 projection");
    render->add_option("--in", in_path)->required();
    render->add_option("--class", class_path, "tag copies and intervals");
    render->add_option("--out", out_path);
    render->add_option("--scale", scale)->check(CLI::PositiveNumber);
    render->add_option("--layers", layers);
    render->add_flag("--no-labels", no_labels);

    auto* forbidden = app.add_subcommand("forbidden", "materialize forbidden patterns of selected constraints");
    forbidden->add_option("--class", class_path)->required();
    forbidden->add_option("--constraints", constraints, "comma-separated ids among 1,2,3,6,6*");
    forbidden->add_option("--cap", cap, "size cap (default 15)");
    forbidden->add_option("--budget", budget, "raw candidate budget");
    forbidden->add_option("--out", out_path, "patterns as a JSON list of .mperm objects");
    forbidden->add_flag("--count", count_only, "only count raw candidates");

    auto* match = app.add_subcommand("match", "embed a pattern into a host");
    match->add_option("--pattern", pattern_path)->required();
    match->add_option("--in", in_path)->required();
    match->add_flag("--all", all, "list every embedding");

    std::vector<std::string> argv_store = {"tilejep"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store)
        argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 2;
    }

    try {
        if (*compile) {
            auto c = ClassDescriptor::make(parse_variant(variant),
                                           io::string_problem_from_json(io::read_json_file(problem_path)),
                                           gadget_size, seed);
            emit(out, out_path, io::to_json(c).dump());
            if (!out_path.empty())
                out << json{{"elements", c.gadgets->size()}}.dump() << '\n';
        } else if (*check || *explain) {
            auto c = io::class_from_json(io::read_json_file(class_path));
            CheckOptions o;
            if (check->count("--only") || explain->count("--only"))
                o.only = split_ids(constraints);
            if (cap)
                o.max_per_constraint = cap;
            if (budget)
                o.detection.copy_budget = budget;
            auto s = read_mperm(in_path);
            if (s.dims() != 3)
                throw Error(ErrorCode::DimsMismatch, "structures of the class have three orders");
            auto t = detect_copies(s, c.gadgets, o.detection);
            auto v = check_membership(t, c, o);
            out << (*check ? io::to_json(v) : io::explain_json(t, v)).dump() << '\n';
            if (!v.member)
                throw Negative{};
        } else if (*gen) {
            auto c = io::class_from_json(io::read_json_file(class_path));
            CanonicalOptions o;
            o.defect_origin_predecessor = defect;
            if (defect && (model == "QA" || model == "QB"))
                throw Error(ErrorCode::Usage, "--defect applies to models A and B");
            CanonicalBuild b = model == "A"   ? canonical_A(n, c, o)
                               : model == "B" ? canonical_B(n, c, o)
                               : model == "QA" ? canonical_Q_A(n, c)
                                               : canonical_Q_B(n, c);
            io::write_text_file(out_path, serialize_mperm(b.structure));
            if (!ledger_path.empty())
                io::write_text_file(ledger_path, io::ledger_json(b, *c.gadgets).dump());
            out << json{{"size", b.structure.size()}, {"copies", b.ledger.size()}}.dump() << '\n';
        } else if (*solve) {
            auto doc = io::read_json_file(problem_path);
            const bool is_wang = doc.is_object() && doc.value("kind", "") == "wang";
            std::optional<Tiling> t;
            if (!window.empty()) {
                auto [w, h] = parse_window(window);
                t = is_wang ? solve_window(io::wang_problem_from_json(doc), w, h)
                            : solve_window(io::string_problem_from_json(doc), w, h);
            } else {
                t = is_wang ? solve_periodic(io::wang_problem_from_json(doc), max_period)
                            : solve_periodic(io::string_problem_from_json(doc), max_period);
            }
            if (!t) {
                out << json{{"solution", nullptr}}.dump() << '\n';
                throw Negative{};
            }
            emit(out, out_path, io::to_json(*t).dump());
        } else if (*wang) {
            auto e = encode_wang_as_string(io::wang_problem_from_json(io::read_json_file(in_path)));
            emit(out, out_path, io::to_json(e.problem).dump());
            if (!ledger_path.empty())
                io::write_text_file(ledger_path, io::to_json(e.codec).dump());
        } else if (*jep) {
            auto c = io::class_from_json(io::read_json_file(class_path));
            auto theta = io::tiling_from_json(io::read_json_file(tiling_path));
            auto a = read_mperm(a_path), b = read_mperm(b_path);
            auto joint = c.variant == Variant::P ? jep_less1(a, b, theta, c) : jep_Q(a, b, theta, c);
            emit(out, out_path, serialize_mperm(joint));
        } else if (*brute) {
            auto c = io::class_from_json(io::read_json_file(class_path));
            auto r = brute_force_jep(read_mperm(a_path), read_mperm(b_path), c,
                                     mode == "identify" ? BruteMode::Identify : BruteMode::Disjoint,
                                     budget ? budget : 10);
            json summary = {{"found", r.witness.has_value()},
                            {"candidates", r.candidates},
                            {"identify_consulted", r.identify_consulted}};
            if (r.witness) {
                summary["mode"] = r.found_in == BruteMode::Identify ? "identify" : "disjoint";
                if (out_path.empty())
                    summary["witness"] = io::to_json(*r.witness);
                else
                    io::write_text_file(out_path, serialize_mperm(*r.witness));
            }
            out << summary.dump() << '\n';
            if (!r.witness)
                throw Negative{};
        } else if (*extract) {
            auto c = io::class_from_json(io::read_json_file(class_path));
            auto [w, h] = parse_window(window);
            const auto comma = pairing.find(',');
            if (comma == std::string::npos)
                throw Error(ErrorCode::Usage, "pairing must look like 0,1");
            Pairing p{std::stoi(pairing.substr(0, comma)), std::stoi(pairing.substr(comma + 1))};
            emit(out, out_path, io::to_json(extract_tiling(read_mperm(in_path), c, w, h, p)).dump());
        } else if (*render) {
            auto s = read_mperm(in_path);
            RenderSpec spec;
            spec.scale = scale;
            spec.labels = !no_labels;
            spec.layers = split_ids(layers);
            std::string svg;
            if (!class_path.empty()) {
                auto c = io::class_from_json(io::read_json_file(class_path));
                auto t = detect_copies(s, c.gadgets);
                svg = render_svg(s, &t, spec);
            } else {
                svg = render_svg(s, nullptr, spec);
            }
            if (out_path.empty() || out_path == "-")
                out << svg;
            else
                io::write_text_file(out_path, svg);
        } else if (*forbidden) {
            auto c = io::class_from_json(io::read_json_file(class_path));
            ForbiddenOptions o;
            if (cap)
                o.size_cap = cap;
            if (budget)
                o.max_candidates = budget;
            const auto ids = split_ids(constraints);
            if (count_only) {
                out << json{{"raw_candidates", static_cast<double>(count_forbidden_candidates(c, ids, o))}}.dump()
                    << '\n';
            } else {
                json list = json::array();
                std::map<std::string, std::size_t> per;
                for_each_forbidden(c, ids, o, [&](const MultiPerm& s, const std::string& id) {
                    ++per[id];
                    if (!out_path.empty())
                        list.push_back(io::to_json(s));
                    return true;
                });
                if (!out_path.empty())
                    io::write_text_file(out_path, list.dump());
                out << json{{"patterns", per}}.dump() << '\n';
            }
        } else if (*match) {
            auto p = read_mperm(pattern_path), s = read_mperm(in_path);
            if (all) {
                auto copies = enumerate_copies(p, s);
                json maps = json::array();
                for (const auto& e : copies.copies)
                    maps.push_back(e.map);
                out << json{{"embeds", !copies.copies.empty()}, {"embeddings", maps}}.dump() << '\n';
                if (copies.copies.empty())
                    throw Negative{};
            } else {
                auto e = find_embedding(p, s);
                json r = {{"embeds", e.has_value()}};
                if (e)
                    r["embedding"] = e->map;
                out << r.dump() << '\n';
                if (!e)
                    throw Negative{};
            }
        }
    } catch (const Negative&) {
        return 1;
    } catch (const Error& e) {
        if (input_error(e.code())) {
            err << e.what() << '\n';
            return 2;
        }
        // Domain refusals (NotAMember, BudgetExceeded, ...) are negative results.
        out << json{{"error", to_string(e.code())}, {"message", e.what()}}.dump() << '\n';
        err << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace tilejep::cli

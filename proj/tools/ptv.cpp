#include "ptv/ptv.hpp"

#include "CLI11.hpp"

#include <iomanip>
#include <iostream>
#include <sstream>

using ptv::json;

namespace {

json complex_json(ptv::cplx z) { return json::array({z.real(), z.imag()}); }

// "0;1,2" -> {{0},{1,2}}.  A leading 'v' on an entry is accepted ("v0,v5").
std::vector<std::vector<int>> parse_groups(const std::string& text)
{
    std::vector<std::vector<int>> out;
    std::stringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::vector<int> ids;
        std::stringstream items(group);
        std::string item;
        while (std::getline(items, item, ',')) {
            std::size_t a = item.find_first_not_of(" \tv");
            std::size_t b = item.find_last_not_of(" \t");
            if (a == std::string::npos) continue;
            std::string digits = item.substr(a, b - a + 1);
            std::size_t used = 0;
            int id = -1;
            try {
                id = std::stoi(digits, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != digits.size()) throw CLI::ValidationError("--groups", "cannot parse '" + item + "'");
            ids.push_back(id);
        }
        out.push_back(std::move(ids));
    }
    if (out.empty()) throw CLI::ValidationError("--groups", "no groups given");
    return out;
}

json gamma_json(const ptv::GammaSignature& g)
{
    json nodes = json::array();
    for (const auto& n : g.nodes) {
        nodes.push_back({{"kind", n.circle ? "circle" : "x0"}, {"vertex", n.vertex}, {"label", n.label}});
    }
    json arcs = json::array();
    for (const auto& a : g.arcs) {
        arcs.push_back({{"endpoints", json::array({a.from, a.to})}, {"interiorVertices", a.interior_vertices()}, {"k", a.k}, {"edges", a.edges}});
    }
    return {{"nodes", nodes}, {"arcs", arcs}, {"canonical", g.canonical}, {"labeled", g.labeled}};
}

json analysis_json(const ptv::Triangulation& t, const ptv::SkeletonReport& rep)
{
    json verts = json::array();
    for (int v = 0; v < t.vertex_count(); ++v) {
        verts.push_back({{"id", v}, {"label", t.vertex_label(v)}, {"nature", std::string(to_string(rep.nature[static_cast<std::size_t>(v)]))}});
    }
    return {{"tets", t.tet_count()},
            {"vertices", t.vertex_count()},
            {"edges", t.edge_count()},
            {"euler", t.euler_characteristic()},
            {"x0", rep.x0_vertices},
            {"x1_vertices", rep.x1_vertices},
            {"x1_edges", rep.x1_edges},
            {"vertex_natures", verts},
            {"gamma", gamma_json(rep.gamma)}};
}

void print_analysis(const ptv::Triangulation& t, const ptv::SkeletonReport& rep)
{
    std::cout << "tetrahedra " << t.tet_count() << ", vertices " << t.vertex_count() << ", edges " << t.edge_count() << ", euler " << t.euler_characteristic()
              << "\n\n";
    std::cout << "vertex  label  nature\n";
    for (int v = 0; v < t.vertex_count(); ++v) {
        std::cout << std::setw(6) << v << ' ' << std::setw(6) << t.vertex_label(v) << "  " << to_string(rep.nature[static_cast<std::size_t>(v)]) << '\n';
    }
    std::cout << "\nedge  tail  head  circles\n";
    for (int e : rep.x1_edges) {
        const auto& info = t.edge(e);
        std::cout << std::setw(4) << e << ' ' << std::setw(5) << info.tail << ' ' << std::setw(5) << info.head << ' ' << std::setw(8)
                  << info.circle_count() << '\n';
    }
    if (rep.x1_edges.empty()) std::cout << "(no singular edges)\n";
    std::cout << "\ngamma " << rep.gamma.labeled << '\n';
}

struct Flags {
    std::string input, output;
    int r = 3, root = 1, jobs = 1, steps = 10, component = 0, k = 1, m = 3;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    bool json_out = false, check_invariant = false, verbose = false;
    std::string groups, name, mode = "check";
};

int run(CLI::App& app, const Flags& f)
{
    auto emit = [&](const json& j) { std::cout << j.dump(2) << '\n'; };
    if (app.got_subcommand("validate")) {
        auto res = ptv::validate(ptv::load_triangulation(f.input));
        if (f.json_out) {
            emit({{"status", std::string(to_string(res.status))}, {"reason", res.reason}});
        } else {
            std::cout << to_string(res.status);
            if (!res.reason.empty()) std::cout << ": " << res.reason;
            std::cout << '\n';
        }
        return 0;
    }
    if (app.got_subcommand("analyze")) {
        auto t = ptv::load_triangulation(f.input);
        auto rep = ptv::skeletons(t);
        if (f.json_out) {
            emit(analysis_json(t, rep));
        } else {
            print_analysis(t, rep);
        }
        return 0;
    }
    if (app.got_subcommand("invariant")) {
        auto t = ptv::load_triangulation(f.input);
        ptv::QuantumParams p(f.r, f.root, f.tol);
        ptv::StateSumOptions opt;
        opt.jobs = f.jobs;
        auto res = ptv::state_sum(t, p, opt);
        if (f.verbose) {
            std::cerr << "frontier " << res.max_frontier << ", states " << res.max_states << ", transitions " << res.transitions << ", "
                      << res.seconds << " s\n";
        }
        if (f.json_out) {
            emit({{"value", complex_json(res.value)},
                  {"a", res.a},
                  {"colorings", res.colorings},
                  {"pruned", res.pruned},
                  {"r", f.r},
                  {"root", f.root},
                  {"magnitude", res.magnitude}});
        } else {
            std::cout.precision(15);
            std::cout << res.value.real();
            if (std::abs(res.value.imag()) > f.tol) std::cout << (res.value.imag() < 0 ? " - " : " + ") << std::abs(res.value.imag()) << "i";
            std::cout << '\n';
        }
        return 0;
    }
    if (app.got_subcommand("walk")) {
        auto t = ptv::load_triangulation(f.input);
        std::optional<ptv::QuantumParams> p;
        std::optional<ptv::StateSumResult> initial;
        if (f.check_invariant) {
            p.emplace(f.r, f.root, f.tol);
            initial = ptv::state_sum(t, *p);
        }
        double worst = 0.0;
        std::cout.precision(17);
        ptv::random_walk(t, f.steps, f.seed, {}, [&](const ptv::WalkStep& s, const ptv::Triangulation& snap) {
            json line{{"step", s.step}, {"kind", std::string(to_string(s.move.kind))}, {"target", s.move.target}, {"tets", s.tets}, {"edges", s.edges}};
            if (p) {
                auto res = ptv::state_sum(snap, *p);
                double dev = ptv::state_sum_deviation(res, *initial);
                worst = std::max(worst, dev);
                line["value"] = complex_json(res.value);
                line["deviation"] = dev;
            }
            std::cout << line.dump() << '\n';
        });
        if (p && worst >= f.tol) {
            std::cerr << "invariant deviated by " << worst << " (tolerance " << f.tol << ")\n";
            return 1;
        }
        return 0;
    }
    if (app.got_subcommand("algebra")) {
        ptv::QuantumParams p(f.r, f.root, f.tol);
        if (f.mode == "table") {
            json qd = json::array();
            for (int i = 0; i < p.color_count(); ++i) qd.push_back(complex_json(p.qdim(i)));
            json adm = json::array();
            for (int i = 0; i < p.color_count(); ++i) {
                for (int j = i; j < p.color_count(); ++j) {
                    for (int k = j; k < p.color_count(); ++k) {
                        if (p.admissible(i, j, k)) adm.push_back({i, j, k});
                    }
                }
            }
            emit({{"r", p.r()}, {"root", p.root()}, {"a", complex_json(p.a())}, {"qdim", qd}, {"rank_squared", complex_json(p.rank_squared())}, {"admissible", adm}});
            return 0;
        }
        auto chk = ptv::check_identities(p, 100, f.seed);
        emit({{"r", p.r()},
              {"root", p.root()},
              {"rank_deviation", chk.rank_deviation},
              {"gate_ok", chk.gate_ok},
              {"accidental_zeros", chk.accidental_zeros},
              {"symmetry_deviation", chk.symmetry_deviation},
              {"pentagon", {{"samples", chk.pentagon.samples}, {"nonzero", chk.pentagon.nonzero}, {"max_deviation", chk.pentagon.max_deviation}}},
              {"passed", chk.passed}});
        return chk.passed ? 0 : 1;
    }
    if (app.got_subcommand("example")) {
        auto e = ptv::example(f.name);
        std::visit([&](const auto& x) { ptv::save(f.output, x); }, e);
        return 0;
    }
    if (app.got_subcommand("cone")) {
        ptv::save(f.output, ptv::cone_boundary(ptv::load_triangulation(f.input), parse_groups(f.groups)));
        return 0;
    }
    if (app.got_subcommand("pinch")) {
        ptv::save(f.output, ptv::identify_vertices(ptv::load_triangulation(f.input), parse_groups(f.groups)));
        return 0;
    }
    if (app.got_subcommand("suspend")) {
        ptv::save(f.output, ptv::suspension(ptv::load_complex2(f.input)));
        return 0;
    }
    if (app.got_subcommand("mapcyl")) {
        ptv::save(f.output, ptv::mapping_cylinder_attach(ptv::load_triangulation(f.input), f.component, f.k, f.m));
        return 0;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Triangulated 3-pseudomanifolds: singular skeletons, bistellar moves and quantum state sums"};
    app.require_subcommand(1);
    Flags f;
    auto json_flag = [&](CLI::App* c) { c->add_flag("--json", f.json_out, "machine-readable output"); };

    auto* validate = app.add_subcommand("validate", "check that a ptri-1 file is a pseudomanifold");
    validate->add_option("file", f.input)->required();
    json_flag(validate);

    auto* analyze = app.add_subcommand("analyze", "singular skeletons X(1), X(0) and the Gamma signature");
    analyze->add_option("file", f.input)->required();
    json_flag(analyze);

    auto* invariant = app.add_subcommand("invariant", "state-sum invariant of a closed complex");
    invariant->add_option("file", f.input)->required();
    invariant->add_option("--r", f.r, "level r >= 2")->required();
    invariant->add_option("--root", f.root, "root exponent, coprime to 4r");
    invariant->add_option("--tol", f.tol, "numerical tolerance");
    invariant->add_option("--jobs", f.jobs, "worker threads")->check(CLI::Range(1, 256));
    invariant->add_flag("-v,--verbose", f.verbose, "contraction statistics on stderr");
    json_flag(invariant);

    auto* walk = app.add_subcommand("walk", "seeded random walk of bistellar moves, trace as JSON lines");
    walk->add_option("file", f.input)->required();
    walk->add_option("--steps", f.steps)->required()->check(CLI::NonNegativeNumber);
    walk->add_option("--seed", f.seed)->required();
    walk->add_flag("--check-invariant", f.check_invariant, "evaluate the state sum after every step");
    walk->add_option("--r", f.r);
    walk->add_option("--root", f.root);
    walk->add_option("--tol", f.tol);
    json_flag(walk);

    auto* algebra = app.add_subcommand("algebra", "quantum dimension tables or the identity suite");
    algebra->add_option("--r", f.r)->required();
    algebra->add_option("--root", f.root);
    algebra->add_option("--tol", f.tol);
    algebra->add_option("--seed", f.seed);
    algebra->add_option("mode", f.mode)->check(CLI::IsMember({"table", "check"}));
    json_flag(algebra);

    auto* example = app.add_subcommand("example", "write a built-in example");
    example->add_option("name", f.name)->required()->check(CLI::IsMember(ptv::example_names()));
    example->add_option("-o,--output", f.output)->required();
    json_flag(example);

    auto* cone = app.add_subcommand("cone", "cone groups of boundary components to new apexes");
    cone->add_option("file", f.input)->required();
    cone->add_option("--groups", f.groups, "component groups, e.g. \"0;1,2\"")->required();
    cone->add_option("-o,--output", f.output)->required();
    json_flag(cone);

    auto* pinch = app.add_subcommand("pinch", "identify groups of vertices");
    pinch->add_option("file", f.input)->required();
    pinch->add_option("--groups", f.groups, "vertex groups, e.g. \"v0,v5\"")->required();
    pinch->add_option("-o,--output", f.output)->required();
    json_flag(pinch);

    auto* suspend = app.add_subcommand("suspend", "suspension of a closed 2-complex (ptri2-1)");
    suspend->add_option("file", f.input)->required();
    suspend->add_option("-o,--output", f.output)->required();
    json_flag(suspend);

    auto* mapcyl = app.add_subcommand("mapcyl", "attach the mapping cylinder of a torus-to-circle map");
    mapcyl->add_option("file", f.input)->required();
    mapcyl->add_option("--component", f.component)->required();
    mapcyl->add_option("--k", f.k)->required();
    mapcyl->add_option("--m", f.m)->required();
    mapcyl->add_option("-o,--output", f.output)->required();
    json_flag(mapcyl);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return run(app, f);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const ptv::Error& e) {
        if (f.json_out) {
            std::cerr << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump() << '\n';
        } else {
            std::cerr << "error: " << e.what() << '\n';
        }
        return 1;
    }
}

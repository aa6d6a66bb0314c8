#include <CLI11.hpp>

#include <iostream>
#include <random>

#include "matglue/base_build.hpp"
#include "matglue/io.hpp"

using namespace matglue;
using io::Json;
using io::Report;

namespace {

constexpr int kOk = 0;
constexpr int kVerdictFailure = 1;
constexpr int kUsage = 2;
constexpr int kCapExceeded = 3;

EdgeSet parse_edge_list(const std::string& text) {
    EdgeSet out;
    std::string token;
    for (char c : text) {
        if (c == ',') {
            if (!token.empty()) out.insert(token);
            token.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            token.push_back(c);
        }
    }
    if (!token.empty()) out.insert(token);
    return out;
}

SparseVec parse_vec_spec(const Field& f, const std::string& text) {
    SparseVec v(f);
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        auto eq = token.find('=');
        if (eq == std::string::npos) throw io::ParseError("vector entries look like edge=scalar");
        v.set(token.substr(0, eq), f.parse(token.substr(eq + 1)));
        token.clear();
    };
    for (char c : text) {
        if (c == ',') {
            flush();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            token.push_back(c);
        }
    }
    flush();
    return v;
}

Presentation presentation_of(const io::Instance& inst) {
    if (const auto* p = std::get_if<Presentation>(&inst)) return *p;
    if (const auto* t = std::get_if<TreeOfPresentations>(&inst)) return glue(*t);
    throw io::ParseError("this command needs a presentation or tree file");
}

const TreeOfPresentations& tree_of(const io::Instance& inst) {
    if (const auto* t = std::get_if<TreeOfPresentations>(&inst)) return *t;
    throw io::ParseError("this command needs a tree file");
}

std::string sarah_colin(const CircuitGame& cg, Player digraph_winner) {
    // In the dual digraph the first mover is Colin.
    bool first = digraph_winner == Player::first;
    if (cg.dual) return first ? "Colin" : "Sarah";
    return first ? "Sarah" : "Colin";
}

struct CommonOpts {
    std::string file;
    std::string out;
    std::uint64_t seed = 0;
    bool seed_given = false;
    Budget budget;

    /// The file's own seed is the default; --seed overrides it.
    std::uint64_t effective_seed(const io::Json& j) const {
        return seed_given ? seed : io::seed_of(j);
    }
};

void attach_budget(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--seed", opts.seed, "seed for sampled checks (overrides the file's)")
        ->each([&opts](const std::string&) { opts.seed_given = true; });
    cmd->add_option("--max-enum", opts.budget.max_enumeration, "enumeration work cap");
    cmd->add_option("--oracle-cap", opts.budget.oracle_ground_cap,
                    "ground size cap for the brute-force matroid oracle");
    cmd->add_option("--o2-cap", opts.budget.max_o2_partitions, "partition cap for (O2) sweeps");
}

int cmd_verify_presentation(const CommonOpts& opts) {
    Report report;
    report.add("command", "verify-presentation");
    report.add("file", opts.file);
    try {
        Json j = io::parse_file(opts.file);
        Presentation p = io::presentation_from_json(j);
        report.add("ground", format(p.ground().as_set()));
        report.add("vectors-dim", p.vspace().dim());
        report.add("covectors-dim", p.wspace().dim());
        report.add("valid", "yes");
        std::cout << report.str();
        return kOk;
    } catch (const io::ParseError&) {
        throw;
    } catch (const Error& e) {
        report.add("valid", "no");
        report.witness(e.what());
        std::cout << report.str();
        return kVerdictFailure;
    }
}

int cmd_circuits(const CommonOpts& opts) {
    io::Instance inst = io::load_instance(opts.file);
    Presentation p = presentation_of(inst);
    MatroidCert cert = presented_matroid(p, opts.budget);
    Report report;
    report.add("command", "circuits");
    report.add("file", opts.file);
    report.add("ground", format(p.ground().as_set()));
    report.add("circuits", cert.circuits.size());
    for (const auto& c : cert.circuits) report.add("circuit", format(c));
    report.add("cocircuits", cert.cocircuits.size());
    for (const auto& d : cert.cocircuits) report.add("cocircuit", format(d));
    report.add("oracle", "ok");
    std::cout << report.str();
    return kOk;
}

int cmd_minor(const CommonOpts& opts, const std::string& contract, const std::string& del) {
    Presentation p = presentation_of(io::load_instance(opts.file));
    Presentation m = p.minor(parse_edge_list(contract), parse_edge_list(del));
    Report report;
    report.add("command", "minor");
    report.add("ground", format(m.ground().as_set()));
    report.add("vectors-dim", m.vspace().dim());
    report.add("covectors-dim", m.wspace().dim());
    if (!opts.out.empty()) {
        io::save_file(opts.out, io::presentation_to_json(m));
        report.add("out", opts.out);
    }
    std::cout << report.str();
    return kOk;
}

int cmd_adjoin(const CommonOpts& opts, const std::string& x_spec, const std::string& star) {
    Presentation p = presentation_of(io::load_instance(opts.file));
    SparseVec x = parse_vec_spec(p.field(), x_spec);
    Presentation adjoined = p.adjoin(x, star);
    Report report;
    report.add("command", "adjoin");
    report.add("x", x.str());
    report.add("ground", format(adjoined.ground().as_set()));
    report.add("vectors-dim", adjoined.vspace().dim());
    if (!opts.out.empty()) {
        io::save_file(opts.out, io::presentation_to_json(adjoined));
        report.add("out", opts.out);
    }
    std::cout << report.str();
    return kOk;
}

int cmd_glue(const CommonOpts& opts) {
    io::Instance inst = io::load_instance(opts.file);
    const TreeOfPresentations& t = tree_of(inst);
    Presentation p = glue(t);
    Report report;
    report.add("command", "glue");
    report.add("nodes", static_cast<std::uint64_t>(t.node_count()));
    report.add("dummy-edges", format(t.dummy_edges()));
    report.add("ground", format(p.ground().as_set()));
    report.add("vectors-dim", p.vspace().dim());
    report.add("covectors-dim", p.wspace().dim());
    if (!opts.out.empty()) {
        io::save_file(opts.out, io::presentation_to_json(p));
        report.add("out", opts.out);
    }
    std::cout << report.str();
    return kOk;
}

int cmd_enumerate_prevectors(const CommonOpts& opts, bool covectors) {
    io::Instance inst = io::load_instance(opts.file);
    const TreeOfPresentations& t = tree_of(inst);
    std::vector<PreVector> pvs = enumerate_prevectors(t, covectors, opts.budget);
    Report report;
    report.add("command", "enumerate-prevectors");
    report.add("kind", covectors ? "pre-covectors" : "pre-vectors");
    report.add("count", pvs.size());
    std::vector<std::string> lines;
    for (const auto& pv : pvs) {
        std::string nodes;
        for (int n : pv.subtree) nodes += (nodes.empty() ? "" : ",") + std::to_string(n);
        lines.push_back("subtree={" + nodes + "} support=" + format(underlying(t, pv).support()));
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& line : lines) report.witness(line);
    std::cout << report.str();
    return kOk;
}

int cmd_check_axioms(const CommonOpts& opts) {
    io::Json j = io::parse_file(opts.file);
    std::uint64_t seed = opts.effective_seed(j);
    Presentation p = presentation_of(io::instance_from_json(j));
    SetSystemPair sys = [&] {
        if (p.field().is_prime_field()) return supports_of(p, opts.budget);
        MatroidCert cert = presented_matroid(p, opts.budget);
        return cert.as_system();
    }();
    Report report;
    report.add("command", "check-axioms");
    report.add("families", p.field().is_prime_field() ? "supports" : "min-supports");
    bool all = true;
    for (Axiom a : {Axiom::O1, Axiom::O2, Axiom::O3, Axiom::O3star, Axiom::Tame, Axiom::IM}) {
        AxiomVerdict v = check_axiom(sys, a, opts.budget, seed);
        report.add(axiom_name(a), v.holds ? "ok" : "fail");
        if (!v.holds) {
            report.witness(axiom_name(a) + ": " + v.witness);
            all = false;
        }
    }
    try {
        std::vector<EdgeSet> comps = components(sys);
        report.add("components", comps.size());
    } catch (const Error& e) {
        report.add("components", "fail");
        report.witness(e.what());
        all = false;
    }
    MatroidVerdict oracle = verify_matroid(
        MatroidCert{p.ground(), minimal_nonempty(sys.cee), minimal_nonempty(sys.dee)}, opts.budget);
    report.add("matroid-oracle", oracle.valid ? "ok" : "fail");
    if (!oracle.valid) {
        report.witness(oracle.failure);
        all = false;
    }
    std::cout << report.str();
    return all ? kOk : kVerdictFailure;
}

int cmd_o2_witness(const CommonOpts& opts) {
    io::Instance inst = io::load_instance(opts.file);
    const auto* o2 = std::get_if<O2Instance>(&inst);
    if (!o2) throw io::ParseError("o2-witness needs an o2-instance file");
    O2Witness w = o2_witness(*o2);
    Report report;
    report.add("command", "o2-witness");
    report.add("e", o2->e);
    report.add("kind", w.is_vector ? "vector" : "covector");
    report.add("support", format(underlying(o2->tree, w.carrier).support()));
    std::string nodes;
    for (int n : w.carrier.subtree) nodes += (nodes.empty() ? "" : ",") + std::to_string(n);
    report.add("subtree", "{" + nodes + "}");
    for (const auto& [node, vec] : w.carrier.local)
        report.witness("node " + std::to_string(node) + ": " + vec.str());
    std::cout << report.str();
    return kOk;
}

struct GameBundle {
    PositionalGame game;
    std::optional<CircuitGame> circuit;  // set when built from an o2-instance
    std::optional<O2Instance> inst;
};

GameBundle game_of(const io::Instance& inst, bool dual, bool projective, const Budget& budget) {
    if (const auto* g = std::get_if<PositionalGame>(&inst)) return {*g, std::nullopt, std::nullopt};
    if (const auto* o2 = std::get_if<O2Instance>(&inst)) {
        CircuitGame cg = build_circuit_game(*o2, dual, budget, projective);
        return {cg.game, std::move(cg), *o2};
    }
    throw io::ParseError("this command needs a game or o2-instance file");
}

int cmd_solve_game(const CommonOpts& opts, bool dual, bool projective, bool dump) {
    GameBundle bundle = game_of(io::load_instance(opts.file), dual, projective, opts.budget);
    SolveResult r = solve_game(bundle.game, opts.budget);
    Report report;
    report.add("command", "solve-game");
    report.add("positions", bundle.game.size());
    report.add("winner", player_name(r.winner));
    if (bundle.circuit) report.add("player", sarah_colin(*bundle.circuit, r.winner));
    report.add("plays", r.strategy.plays.size());
    std::cout << report.str();
    if (dump) std::cout << dump_strategy(bundle.game, r.strategy);
    return kOk;
}

int cmd_reduce_strategy(const CommonOpts& opts, bool dual, bool dump) {
    GameBundle bundle = game_of(io::load_instance(opts.file), dual, true, opts.budget);
    SolveResult r = solve_game(bundle.game, opts.budget);
    Report report;
    report.add("command", "reduce-strategy");
    report.add("winner", player_name(r.winner));
    if (r.winner != Player::first) {
        report.add("reduced", "n/a (the first player has no winning strategy)");
        std::cout << report.str();
        return kOk;
    }
    PositionOrder ord = default_order(bundle.game);
    Strategy reduced = reduce_strategy(bundle.game, r.strategy, ord, opts.budget);
    StrategyReport check = check_strategy(bundle.game, reduced, &ord);
    report.add("plays", reduced.plays.size());
    report.add("is-winning", check.is_winning ? "yes" : "no");
    report.add("is-reduced", *check.is_reduced ? "yes" : "no");
    report.add("splice-closed", *check.splice_closed ? "yes" : "no");
    std::cout << report.str();
    if (dump) std::cout << dump_strategy(bundle.game, reduced);
    return check.is_winning && *check.is_reduced && *check.splice_closed ? kOk : kVerdictFailure;
}

int cmd_sigma_analysis(const CommonOpts& opts) {
    io::Instance inst_v = io::load_instance(opts.file);
    const auto* o2 = std::get_if<O2Instance>(&inst_v);
    if (!o2) throw io::ParseError("sigma-analysis needs an o2-instance file");
    CircuitGame cg = build_circuit_game(*o2, false, opts.budget);
    SolveResult r = solve_game(cg.game, opts.budget);
    Report report;
    report.add("command", "sigma-analysis");
    report.add("winner", sarah_colin(cg, r.winner));
    if (r.winner != Player::first) {
        report.add("analysis", "n/a (Sarah does not win this instance)");
        std::cout << report.str();
        return kOk;
    }
    Strategy reduced = reduce_strategy(cg.game, r.strategy, default_order(cg.game), opts.budget);
    SigmaReport sr = sigma_analysis(*o2, cg, reduced);
    std::string nodes;
    for (int n : sr.sigma_subtree) nodes += (nodes.empty() ? "" : ",") + std::to_string(n);
    report.add("sigma-subtree", "{" + nodes + "}");
    report.add("max-extensions", sr.max_extensions);
    report.add("within-bounds", sr.within_bounds ? "yes" : "no");
    for (const auto& v : sr.violations) report.witness(v);
    std::cout << report.str();
    return sr.within_bounds ? kOk : kVerdictFailure;
}

int cmd_im_star(const CommonOpts& opts, int center, const std::string& x, const std::string& y) {
    io::Instance inst = io::load_instance(opts.file);
    const TreeOfPresentations& star = tree_of(inst);
    StarBaseInput input{star, center, parse_edge_list(x), parse_edge_list(y)};
    StarBaseResult r = im_star(input, opts.budget);
    Report report;
    report.add("command", "im-star");
    report.add("x", format(r.x));
    report.add("y", format(r.y));
    report.add("bullets", "ok");
    for (const auto& [e, witness] : r.circuit_witness)
        report.witness("spanning " + e + " via " + format(witness.support()));
    for (const auto& [e, witness] : r.cocircuit_witness)
        report.witness("cospanning " + e + " via " + format(witness.support()));
    std::cout << report.str();
    return kOk;
}

int cmd_build_base(const CommonOpts& opts, int root) {
    io::Instance inst = io::load_instance(opts.file);
    const TreeOfPresentations& tree = tree_of(inst);
    BaseResult r = build_base(tree, root, opts.budget);
    Report report;
    report.add("command", "build-base");
    report.add("root", static_cast<std::uint64_t>(root));
    report.add("base", format(r.x));
    report.add("cobase", format(r.y));
    for (const auto& cert : r.certs) {
        std::string bits;
        for (bool b : cert.conditions) bits += b ? '1' : '0';
        report.add("node-" + std::to_string(cert.node), bits + (cert.all_ok() ? " ok" : " FAIL"));
        if (!cert.all_ok()) report.witness(cert.detail);
    }
    MatroidCert cert = presented_matroid(glue(tree), opts.budget);
    BaseCheck bc = is_base(cert.as_system(), r.x);
    report.add("is-base", bc.is_base ? "yes" : "no");
    if (!bc.is_base) report.witness(bc.failure);
    report.add("certified", r.certified ? "yes" : "no");
    std::cout << report.str();
    return r.certified && bc.is_base ? kOk : kVerdictFailure;
}

int cmd_graph_verify(const CommonOpts& opts, std::uint64_t partitions) {
    io::Json j = io::parse_file(opts.file);
    io::Instance inst = io::instance_from_json(j);
    const auto* gi = std::get_if<io::GraphInstance>(&inst);
    if (!gi) throw io::ParseError("graph-verify needs a graph or td file");
    const Graph& g = gi->graph;
    TreeDecomposition td = gi->td.value_or(generate_td(g));
    validate_td(g, td);

    Report report;
    report.add("command", "graph-verify");
    report.add("vertices", static_cast<std::uint64_t>(g.vertex_count));
    report.add("edges", g.edges.size());
    report.add("td-nodes", static_cast<std::uint64_t>(td.node_count));

    std::set<EdgeSet> circuits = cycle_circuits(g, opts.budget);
    std::set<EdgeSet> bonds = graph_bonds(g, opts.budget);
    bool pre_ok = minimal_underlying(enumerate_precircuits(g, td, false, opts.budget)) == circuits;
    bool copre_ok = minimal_underlying(enumerate_precircuits(g, td, true, opts.budget)) == bonds;
    report.add("precircuits-match-cycles", pre_ok ? "yes" : "no");
    report.add("precocircuits-match-bonds", copre_ok ? "yes" : "no");

    // Seeded sweep of partitions: game winner vs witness existence.
    EdgeSet id_set = g.edge_ids();
    std::vector<EdgeId> ids(id_set.begin(), id_set.end());
    std::mt19937_64 rng(opts.effective_seed(j));
    std::uint64_t checked = 0, mismatches = 0;
    std::uint64_t total = ids.size() * (std::uint64_t{1} << (ids.size() - 1));
    for (std::uint64_t trial = 0; trial < std::min<std::uint64_t>(partitions, total); ++trial) {
        std::size_t ei = rng() % ids.size();
        EdgeSet p, q;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (i == ei) continue;
            (rng() % 2 ? p : q).insert(ids[i]);
        }
        Player winner = solve_game(build_graph_game(g, td, ids[ei], p, q, opts.budget).game).winner;
        bool has_circuit = false;
        for (const auto& c : circuits)
            if (c.count(ids[ei]) && is_subset(c, set_union(p, {ids[ei]}))) has_circuit = true;
        if ((winner == Player::first) != has_circuit) {
            ++mismatches;
            report.witness("winner/witness mismatch at e=" + ids[ei] + " P=" + format(p));
        }
        ++checked;
    }
    report.add("partitions-checked", checked);
    report.add("winner-matches-witness", mismatches == 0 ? "yes" : "no");
    std::cout << report.str();
    return pre_ok && copre_ok && mismatches == 0 ? kOk : kVerdictFailure;
}

int cmd_gen_cex(const CommonOpts& opts, int n) {
    CexInstance cex = gen_cex(n);
    Report report;
    report.add("command", "gen-cex");
    report.add("n", static_cast<std::uint64_t>(n));
    report.add("intersection-size", cex.intersection.size());
    report.add("intersection", format(cex.intersection));
    report.add("neat-count-at-center",
               static_cast<std::uint64_t>(neat_count(cex.tree, cex.prevec, cex.precov, 0)));
    if (!opts.out.empty()) {
        io::save_file(opts.out, io::tree_to_json(cex.tree));
        report.add("out", opts.out);
    }
    std::cout << report.str();
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"matglue: matroids from orthogonal subspace pairs glued along trees"};
    app.require_subcommand(1);

    CommonOpts opts;
    int exit_code = kOk;
    auto run = [&](auto&& fn) {
        return [&, fn]() {
            try {
                exit_code = fn();
            } catch (const io::ParseError& e) {
                std::cerr << "error: " << e.what() << "\n";
                exit_code = kUsage;
            } catch (const CapExceeded& e) {
                std::cerr << "cap exceeded: " << e.what() << "\n";
                exit_code = kCapExceeded;
            } catch (const Error& e) {
                std::cerr << "error: " << e.what() << "\n";
                exit_code = kVerdictFailure;
            }
        };
    };

    auto with_file = [&](CLI::App* cmd) {
        cmd->add_option("file", opts.file, "instance file")->required();
        attach_budget(cmd, opts);
    };

    {
        CLI::App* cmd = app.add_subcommand("verify-presentation", "validate a presentation file");
        with_file(cmd);
        cmd->callback(run([&] { return cmd_verify_presentation(opts); }));
    }
    {
        CLI::App* cmd = app.add_subcommand("circuits", "circuits and cocircuits of a presentation or glued tree");
        with_file(cmd);
        cmd->callback(run([&] { return cmd_circuits(opts); }));
    }
    static std::string contract, del;
    {
        CLI::App* cmd = app.add_subcommand("minor", "contract and delete edges of a presentation");
        with_file(cmd);
        cmd->add_option("--contract", contract, "comma-separated edges to contract");
        cmd->add_option("--delete", del, "comma-separated edges to delete");
        cmd->add_option("--out", opts.out, "write the minor to this file");
        cmd->callback(run([&] { return cmd_minor(opts, contract, del); }));
    }
    static std::string x_spec, star_name = "*";
    {
        CLI::App* cmd = app.add_subcommand("adjoin", "adjoin the element * along a vector x");
        with_file(cmd);
        cmd->add_option("--x", x_spec, "vector spec, e.g. a=1,b=2/3")->required();
        cmd->add_option("--star", star_name, "name of the adjoined element");
        cmd->add_option("--out", opts.out, "write the extension to this file");
        cmd->callback(run([&] { return cmd_adjoin(opts, x_spec, star_name); }));
    }
    {
        CLI::App* cmd = app.add_subcommand("glue", "glue a tree of presentations");
        with_file(cmd);
        cmd->add_option("--out", opts.out, "write the glued presentation to this file");
        cmd->callback(run([&] { return cmd_glue(opts); }));
    }
    static bool covectors = false;
    {
        CLI::App* cmd = app.add_subcommand("enumerate-prevectors", "list pre-vectors of a tree");
        with_file(cmd);
        cmd->add_flag("--covectors", covectors, "enumerate pre-covectors instead");
        cmd->callback(run([&] { return cmd_enumerate_prevectors(opts, covectors); }));
    }
    {
        CLI::App* cmd = app.add_subcommand("check-axioms", "orthogonality axiom scans and the matroid oracle");
        with_file(cmd);
        cmd->callback(run([&] { return cmd_check_axioms(opts); }));
    }
    {
        CLI::App* cmd = app.add_subcommand("o2-witness", "decide (O2) for a partitioned tree");
        with_file(cmd);
        cmd->callback(run([&] { return cmd_o2_witness(opts); }));
    }
    static bool dual = false, no_projective = false, dump = false;
    {
        CLI::App* cmd = app.add_subcommand("solve-game", "solve a positional game or circuit game");
        with_file(cmd);
        cmd->add_flag("--dual", dual, "build the cocircuit game");
        cmd->add_flag("--no-projective", no_projective, "enumerate functionals without the scalar quotient");
        cmd->add_flag("--dump-strategy", dump, "print the winning play tree");
        cmd->callback(run([&] { return cmd_solve_game(opts, dual, !no_projective, dump); }));
    }
    {
        CLI::App* cmd = app.add_subcommand("reduce-strategy", "solve and reduce the winning strategy");
        with_file(cmd);
        cmd->add_flag("--dual", dual, "build the cocircuit game");
        cmd->add_flag("--dump-strategy", dump, "print the reduced play tree");
        cmd->callback(run([&] { return cmd_reduce_strategy(opts, dual, dump); }));
    }
    {
        CLI::App* cmd = app.add_subcommand("sigma-analysis", "sigma subtree and extension bounds");
        with_file(cmd);
        cmd->callback(run([&] { return cmd_sigma_analysis(opts); }));
    }
    static int center = 0, root = 0;
    static std::string x_list, y_list;
    {
        CLI::App* cmd = app.add_subcommand("im-star", "one star step of the base construction");
        with_file(cmd);
        cmd->add_option("--center", center, "center node id");
        cmd->add_option("--x", x_list, "seed independent set");
        cmd->add_option("--y", y_list, "seed coindependent set");
        cmd->callback(run([&] { return cmd_im_star(opts, center, x_list, y_list); }));
    }
    {
        CLI::App* cmd = app.add_subcommand("build-base", "recursive base/cobase construction");
        with_file(cmd);
        cmd->add_option("--root", root, "root node id");
        cmd->callback(run([&] { return cmd_build_base(opts, root); }));
    }
    static std::uint64_t partitions = 50;
    {
        CLI::App* cmd = app.add_subcommand("graph-verify", "cycle/bond pipeline and game sweep for a graph");
        with_file(cmd);
        cmd->add_option("--partitions", partitions, "number of sampled game partitions");
        cmd->callback(run([&] { return cmd_graph_verify(opts, partitions); }));
    }
    static int cex_n = 1;
    {
        CLI::App* cmd = app.add_subcommand("gen-cex", "finite truncation of the infinite-intersection star");
        cmd->add_option("--n", cex_n, "number of leaves")->required();
        cmd->add_option("--out", opts.out, "write the tree to this file");
        attach_budget(cmd, opts);
        cmd->callback(run([&] { return cmd_gen_cex(opts, cex_n); }));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    return exit_code;
}

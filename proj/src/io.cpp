#include "matglue/io.hpp"

#include <fstream>
#include <sstream>

namespace matglue::io {

namespace {

const Json& need(const Json& j, const std::string& key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError("missing field: " + key);
    return j.at(key);
}

std::string need_string(const Json& j, const std::string& key) {
    const Json& v = need(j, key);
    if (!v.is_string()) throw ParseError("field " + key + " must be a string");
    return v.get<std::string>();
}

}  // namespace

Json field_to_json(const Field& f) {
    Json j;
    if (f.is_prime_field()) {
        j["kind"] = "gf";
        j["modulus"] = f.modulus();
    } else {
        j["kind"] = "rationals";
    }
    return j;
}

Field field_from_json(const Json& j) {
    std::string kind = need_string(j, "kind");
    if (kind == "rationals") return Field::rationals();
    if (kind != "gf") throw ParseError("unknown field kind: " + kind);
    const Json& m = need(j, "modulus");
    if (!m.is_number_integer()) throw ParseError("modulus must be an integer");
    try {
        return Field::gf(m.get<std::int64_t>());
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

Json vec_to_json(const SparseVec& v) {
    Json j = Json::object();
    for (const auto& [e, s] : v.entries()) j[e] = s.str();
    return j;
}

SparseVec vec_from_json(const Field& f, const Json& j) {
    if (!j.is_object()) throw ParseError("vector must be an object of edge: scalar");
    SparseVec v(f);
    for (const auto& [e, s] : j.items()) {
        if (!s.is_string()) throw ParseError("scalar entries are strings like \"2\" or \"1/2\"");
        try {
            v.set(e, f.parse(s.get<std::string>()));
        } catch (const Error& err) {
            throw ParseError(err.what());
        }
    }
    return v;
}

namespace {

Json presentation_payload(const Presentation& p) {
    Json j;
    j["ground"] = p.ground().order();
    Json vb = Json::array();
    for (const auto& v : p.vspace().basis()) vb.push_back(vec_to_json(v));
    j["v_basis"] = vb;
    Json wb = Json::array();
    for (const auto& w : p.wspace().basis()) wb.push_back(vec_to_json(w));
    j["w_basis"] = wb;
    return j;
}

Presentation presentation_payload_from(const Field& f, const Json& j) {
    const Json& ground_json = need(j, "ground");
    if (!ground_json.is_array()) throw ParseError("ground must be an array");
    std::vector<EdgeId> order;
    for (const auto& e : ground_json) order.push_back(e.get<std::string>());
    Ground ground;
    try {
        ground = Ground(order);
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
    auto read_basis = [&](const char* key) {
        std::vector<SparseVec> out;
        for (const auto& v : need(j, key)) out.push_back(vec_from_json(f, v));
        return out;
    };
    // Shape problems above are parse errors; failures below (support outside
    // the ground, a non-complement pair) are semantic verdicts.
    Subspace v = Subspace::span(f, ground, read_basis("v_basis"));
    if (j.contains("w_basis")) {
        Subspace w = Subspace::span(f, ground, read_basis("w_basis"));
        return Presentation::checked(ground, v, w);
    }
    return Presentation::from_vspace(ground, v);
}

}  // namespace

Json presentation_to_json(const Presentation& p) {
    Json j;
    j["kind"] = "presentation";
    j["field"] = field_to_json(p.field());
    j.update(presentation_payload(p));
    return j;
}

Presentation presentation_from_json(const Json& j) {
    Field f = field_from_json(need(j, "field"));
    return presentation_payload_from(f, j);
}

Json tree_to_json(const TreeOfPresentations& t) {
    Json j;
    j["kind"] = "tree";
    j["field"] = field_to_json(t.field());
    Json nodes = Json::array();
    for (int i = 0; i < t.node_count(); ++i) nodes.push_back(presentation_payload(t.node(i)));
    j["nodes"] = nodes;
    Json edges = Json::array();
    for (auto [a, b] : t.edges()) edges.push_back(Json::array({a, b}));
    j["edges"] = edges;
    return j;
}

TreeOfPresentations tree_from_json(const Json& j) {
    Field f = field_from_json(need(j, "field"));
    std::vector<Presentation> nodes;
    for (const auto& n : need(j, "nodes")) nodes.push_back(presentation_payload_from(f, n));
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : need(j, "edges")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("tree edges are [a, b] pairs");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    try {
        return TreeOfPresentations::make(std::move(nodes), std::move(edges));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

namespace {

EdgeSet edge_set_from(const Json& j, const std::string& key) {
    EdgeSet out;
    for (const auto& e : need(j, key)) out.insert(e.get<std::string>());
    return out;
}

Json edge_set_to(const EdgeSet& s) {
    Json out = Json::array();
    for (const auto& e : s) out.push_back(e);
    return out;
}

}  // namespace

Json o2_instance_to_json(const O2Instance& inst) {
    Json j;
    j["kind"] = "o2-instance";
    j["tree"] = tree_to_json(inst.tree);
    j["e"] = inst.e;
    j["p"] = edge_set_to(inst.p);
    j["q"] = edge_set_to(inst.q);
    return j;
}

O2Instance o2_instance_from_json(const Json& j) {
    TreeOfPresentations tree = tree_from_json(need(j, "tree"));
    try {
        return O2Instance::make(std::move(tree), need_string(j, "e"), edge_set_from(j, "p"),
                                edge_set_from(j, "q"));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

Json graph_to_json(const Graph& g) {
    Json j;
    j["kind"] = "graph";
    j["vertices"] = g.vertex_count;
    Json edges = Json::array();
    for (const auto& e : g.edges) {
        Json je;
        je["id"] = e.id;
        je["ends"] = Json::array({e.u, e.v});
        edges.push_back(je);
    }
    j["edges"] = edges;
    return j;
}

Graph graph_from_json(const Json& j) {
    Graph g;
    g.vertex_count = need(j, "vertices").get<int>();
    for (const auto& e : need(j, "edges")) {
        const Json& ends = need(e, "ends");
        Graph::Edge edge{need_string(e, "id"), ends[0].get<int>(), ends[1].get<int>()};
        if (edge.u < 0 || edge.v < 0 || edge.u >= g.vertex_count || edge.v >= g.vertex_count)
            throw ParseError("edge end out of range in " + edge.id);
        g.edges.push_back(std::move(edge));
    }
    return g;
}

Json td_to_json(const Graph& g, const TreeDecomposition& td) {
    Json j;
    j["kind"] = "td";
    j["graph"] = graph_to_json(g);
    j["nodes"] = td.node_count;
    Json edges = Json::array();
    for (auto [a, b] : td.tree_edges) edges.push_back(Json::array({a, b}));
    j["tree_edges"] = edges;
    Json parts = Json::array();
    for (const auto& part : td.parts) {
        Json p = Json::array();
        for (int v : part) p.push_back(v);
        parts.push_back(p);
    }
    j["parts"] = parts;
    Json assignment = Json::object();
    for (const auto& [e, t] : td.edge_part) assignment[e] = t;
    j["edge_part"] = assignment;
    return j;
}

std::pair<Graph, TreeDecomposition> td_from_json(const Json& j) {
    Graph g = graph_from_json(need(j, "graph"));
    TreeDecomposition td;
    td.node_count = need(j, "nodes").get<int>();
    for (const auto& e : need(j, "tree_edges")) td.tree_edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    for (const auto& part : need(j, "parts")) {
        std::set<int> p;
        for (const auto& v : part) p.insert(v.get<int>());
        td.parts.push_back(std::move(p));
    }
    for (const auto& [e, t] : need(j, "edge_part").items()) td.edge_part[e] = t.get<int>();
    try {
        validate_td(g, td);
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
    return {std::move(g), std::move(td)};
}

Json game_to_json(const PositionalGame& g) {
    Json j;
    j["kind"] = "game";
    j["start"] = g.start;
    j["positions"] = g.label;
    Json edges = Json::array();
    for (std::size_t i = 0; i < g.out.size(); ++i)
        for (Pos to : g.out[i]) edges.push_back(Json::array({static_cast<int>(i), to}));
    j["edges"] = edges;
    return j;
}

PositionalGame game_from_json(const Json& j) {
    PositionalGame g;
    for (const auto& label : need(j, "positions")) {
        g.label.push_back(label.get<std::string>());
        g.out.emplace_back();
    }
    g.start = need(j, "start").get<int>();
    if (g.start < 0 || static_cast<std::size_t>(g.start) >= g.out.size())
        throw ParseError("start position out of range");
    for (const auto& e : need(j, "edges")) {
        int a = e[0].get<int>(), b = e[1].get<int>();
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= g.out.size() ||
            static_cast<std::size_t>(b) >= g.out.size())
            throw ParseError("game edge out of range");
        g.out[a].push_back(b);
    }
    return g;
}

Instance instance_from_json(const Json& j) {
    std::string kind = need_string(j, "kind");
    if (kind == "presentation") return presentation_from_json(j);
    if (kind == "tree") return tree_from_json(j);
    if (kind == "o2-instance") return o2_instance_from_json(j);
    if (kind == "graph") return GraphInstance{graph_from_json(j), std::nullopt};
    if (kind == "td") {
        auto [g, td] = td_from_json(j);
        return GraphInstance{std::move(g), std::move(td)};
    }
    if (kind == "game") return game_from_json(j);
    throw ParseError("unknown instance kind: " + kind);
}

Instance load_instance(const std::string& path) { return instance_from_json(parse_file(path)); }

std::uint64_t seed_of(const Json& j) {
    if (j.is_object() && j.contains("seed")) return j.at("seed").get<std::uint64_t>();
    return 0;
}

Json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("json: ") + e.what());
    }
}

std::string serialize(const Json& j) { return j.dump(2) + "\n"; }

void save_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << serialize(j);
}

void Report::add(const std::string& key, const std::string& value) { lines_.emplace_back(key, value); }

void Report::add(const std::string& key, std::uint64_t value) {
    lines_.emplace_back(key, std::to_string(value));
}

void Report::witness(const std::string& line) { witness_.push_back(line); }

std::string Report::str() const {
    std::ostringstream out;
    for (const auto& [k, v] : lines_) out << k << ": " << v << "\n";
    if (!witness_.empty()) {
        out << "WITNESS\n";
        for (const auto& line : witness_) out << "  " << line << "\n";
    }
    return out.str();
}

}  // namespace matglue::io

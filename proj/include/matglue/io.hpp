#pragma once

#include <json.hpp>
#include <variant>

#include "matglue/graph_td.hpp"
#include "matglue/o2_game.hpp"

namespace matglue::io {

using Json = nlohmann::ordered_json;

/// Raised for malformed input files; maps to the usage exit code.
struct ParseError : Error {
    using Error::Error;
};

Json field_to_json(const Field& f);
Field field_from_json(const Json& j);

Json vec_to_json(const SparseVec& v);
SparseVec vec_from_json(const Field& f, const Json& j);

Json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const Json& j);

Json tree_to_json(const TreeOfPresentations& t);
TreeOfPresentations tree_from_json(const Json& j);

Json o2_instance_to_json(const O2Instance& inst);
O2Instance o2_instance_from_json(const Json& j);

Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

Json td_to_json(const Graph& g, const TreeDecomposition& td);
std::pair<Graph, TreeDecomposition> td_from_json(const Json& j);

Json game_to_json(const PositionalGame& g);
PositionalGame game_from_json(const Json& j);

struct GraphInstance {
    Graph graph;
    std::optional<TreeDecomposition> td;
};

using Instance = std::variant<Presentation, TreeOfPresentations, O2Instance, GraphInstance,
                              PositionalGame>;

/// Dispatches on the "kind" field: presentation | tree | o2-instance |
/// graph | td | game.
Instance instance_from_json(const Json& j);
Instance load_instance(const std::string& path);
std::uint64_t seed_of(const Json& j);

Json parse_file(const std::string& path);
/// Canonical text: two-space indent, ordered keys, trailing newline.
std::string serialize(const Json& j);
void save_file(const std::string& path, const Json& j);

/// key: value lines followed by an optional WITNESS block.
class Report {
  public:
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, std::uint64_t value);
    void witness(const std::string& line);
    std::string str() const;

  private:
    std::vector<std::pair<std::string, std::string>> lines_;
    std::vector<std::string> witness_;
};

}  // namespace matglue::io

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "matglue/budget.hpp"
#include "matglue/field.hpp"

namespace matglue {

using Pos = int;

/// A positional game: a digraph with a marked starting position. Play
/// alternates, the first player moving from the start; a player who cannot
/// move loses. Solving requires the reachable part to be acyclic.
struct PositionalGame {
    Pos start = 0;
    std::vector<std::vector<Pos>> out;   // adjacency, by position id
    std::vector<std::string> label;      // printable position names

    std::size_t size() const { return out.size(); }
    bool legal(Pos from, Pos to) const;
};

enum class Player { first, second };
Player opponent(Player p);
std::string player_name(Player p);

/// A strategy as a set of finite plays, each ending with a move of its
/// owner, closed under 2-truncation, with exactly one recorded response to
/// every legal opponent continuation.
struct Strategy {
    Player for_player = Player::first;
    std::set<std::vector<Pos>> plays;

    /// Plays extending `prefix` by exactly two moves.
    std::vector<std::vector<Pos>> children(const std::vector<Pos>& prefix) const;
};

/// A total order on positions: rank[p] is the rank of position p. All ranks
/// distinct. The default order is construction order (rank = id).
using PositionOrder = std::vector<int>;
PositionOrder default_order(const PositionalGame& g);

struct SolveResult {
    Player winner = Player::first;
    Strategy strategy;  // a winning strategy for the winner
};

/// Exact solve by backward induction over (position, player-to-move). The
/// winner's strategy is materialized as a play tree, choosing the least
/// winning successor in construction order. Throws on cycles.
SolveResult solve_game(const PositionalGame& g, const Budget& budget = {});

/// The reduction construction: replays sigma against an auxiliary play,
/// always answering with the order-least reachable response. The result is
/// winning and reduced with respect to `ord`.
Strategy reduce_strategy(const PositionalGame& g, const Strategy& sigma, const PositionOrder& ord,
                         const Budget& budget = {});

struct StrategyReport {
    bool is_strategy = false;
    bool is_winning = false;
    std::optional<bool> is_reduced;      // present when an order was supplied
    std::optional<bool> splice_closed;   // likewise
    std::string detail;
};

/// Exhaustive predicates over the finite play tree.
StrategyReport check_strategy(const PositionalGame& g, const Strategy& sigma,
                              const PositionOrder* ord = nullptr);

/// Indented play-tree dump, one move per line.
std::string dump_strategy(const PositionalGame& g, const Strategy& sigma);

}  // namespace matglue

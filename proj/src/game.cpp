#include "matglue/game.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace matglue {

bool PositionalGame::legal(Pos from, Pos to) const {
    const auto& succ = out.at(from);
    return std::find(succ.begin(), succ.end(), to) != succ.end();
}

Player opponent(Player p) { return p == Player::first ? Player::second : Player::first; }

std::string player_name(Player p) { return p == Player::first ? "first" : "second"; }

PositionOrder default_order(const PositionalGame& g) {
    PositionOrder ord(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) ord[i] = static_cast<int>(i);
    return ord;
}

std::vector<std::vector<Pos>> Strategy::children(const std::vector<Pos>& prefix) const {
    std::vector<std::vector<Pos>> out;
    for (const auto& p : plays) {
        if (p.size() != prefix.size() + 2) continue;
        if (std::equal(prefix.begin(), prefix.end(), p.begin())) out.push_back(p);
    }
    return out;
}

namespace {

// Game value from a state: does the player to move win?
struct Solver {
    const PositionalGame& g;
    // 0 unknown, 1 mover wins, 2 mover loses, 3 on stack (cycle detection)
    std::vector<std::array<char, 2>> memo;

    explicit Solver(const PositionalGame& game) : g(game), memo(game.size(), {0, 0}) {}

    bool mover_wins(Pos pos, int parity) {
        char& slot = memo[pos][parity];
        if (slot == 3) throw Error("solve_game: cycle reachable from the start");
        if (slot != 0) return slot == 1;
        slot = 3;
        bool wins = false;
        for (Pos next : g.out[pos])
            if (!mover_wins(next, 1 - parity)) {
                wins = true;
                break;
            }
        slot = wins ? 1 : 2;
        return wins;
    }
};

}  // namespace

SolveResult solve_game(const PositionalGame& g, const Budget& budget) {
    if (g.start < 0 || static_cast<std::size_t>(g.start) >= g.size())
        throw Error("solve_game: bad start position");
    Solver solver(g);
    bool first_wins = solver.mover_wins(g.start, 0);

    SolveResult result;
    result.winner = first_wins ? Player::first : Player::second;
    result.strategy.for_player = result.winner;

    // The winner's positional choice: the least winning successor.
    auto choice = [&](Pos pos, int parity) -> Pos {
        for (Pos next : g.out[pos])
            if (!solver.mover_wins(next, 1 - parity)) return next;
        throw Error("solve_game: no winning move from a winning position");
    };

    // Materialize the play tree; parity 0 is the first player's turn.
    std::deque<std::vector<Pos>> queue;
    auto emit = [&](std::vector<Pos> play) {
        if (result.strategy.plays.size() >= budget.max_plays)
            throw CapExceeded("solve_game: strategy play budget exceeded");
        queue.push_back(play);
        result.strategy.plays.insert(std::move(play));
    };

    if (first_wins) {
        emit({choice(g.start, 0)});
        while (!queue.empty()) {
            std::vector<Pos> play = std::move(queue.front());
            queue.pop_front();
            Pos last = play.back();
            for (Pos m : g.out[last]) {  // opponent options
                std::vector<Pos> next = play;
                next.push_back(m);
                next.push_back(choice(m, 0));
                emit(std::move(next));
            }
        }
    } else {
        for (Pos m : g.out[g.start]) emit({m, choice(m, 1)});
        while (!queue.empty()) {
            std::vector<Pos> play = std::move(queue.front());
            queue.pop_front();
            Pos last = play.back();
            for (Pos m : g.out[last]) {
                std::vector<Pos> next = play;
                next.push_back(m);
                next.push_back(choice(m, 1));
                emit(std::move(next));
            }
        }
    }
    return result;
}

namespace {

bool walk_legal(const PositionalGame& g, const std::vector<Pos>& play) {
    if (play.empty()) return false;
    if (!g.legal(g.start, play[0])) return false;
    for (std::size_t i = 0; i + 1 < play.size(); ++i)
        if (!g.legal(play[i], play[i + 1])) return false;
    return true;
}

// Equal first-player moves: equality at even 0-based indices.
bool sim1(const std::vector<Pos>& a, const std::vector<Pos>& b, std::size_t len) {
    for (std::size_t i = 0; i < len; i += 2)
        if (a[i] != b[i]) return false;
    return true;
}

}  // namespace

StrategyReport check_strategy(const PositionalGame& g, const Strategy& sigma,
                              const PositionOrder* ord) {
    StrategyReport rep;
    const bool first = sigma.for_player == Player::first;

    for (const auto& p : sigma.plays) {
        if (p.size() % 2 != (first ? 1u : 0u)) {
            rep.detail = "a play does not end with the owner's move";
            return rep;
        }
        if (!walk_legal(g, p)) {
            rep.detail = "a stored play is not a legal walk";
            return rep;
        }
        std::size_t trunc_floor = first ? 1 : 2;
        if (p.size() > trunc_floor) {
            std::vector<Pos> shorter(p.begin(), p.end() - 2);
            if (!sigma.plays.count(shorter)) {
                rep.detail = "not closed under 2-truncation";
                return rep;
            }
        }
    }

    // Root coverage.
    if (first) {
        std::size_t roots = 0;
        for (const auto& p : sigma.plays)
            if (p.size() == 1) ++roots;
        if (roots != 1) {
            rep.detail = "expected exactly one first move, found " + std::to_string(roots);
            return rep;
        }
    } else {
        for (Pos m : g.out[g.start]) {
            std::size_t responses = 0;
            for (const auto& p : sigma.plays)
                if (p.size() == 2 && p[0] == m) ++responses;
            if (responses != 1) {
                rep.detail = "first move " + std::to_string(m) + " has " +
                             std::to_string(responses) + " responses";
                return rep;
            }
        }
        for (const auto& p : sigma.plays)
            if (p.size() == 2 && !g.legal(g.start, p[0])) {
                rep.detail = "response to an illegal first move";
                return rep;
            }
    }

    // Response totality and uniqueness at every stored play.
    for (const auto& p : sigma.plays) {
        for (Pos m : g.out[p.back()]) {
            std::size_t responses = 0;
            for (const auto& q : sigma.plays) {
                if (q.size() != p.size() + 2) continue;
                if (!std::equal(p.begin(), p.end(), q.begin())) continue;
                if (q[p.size()] == m) ++responses;
            }
            if (responses != 1) {
                rep.detail = "play of length " + std::to_string(p.size()) + " has " +
                             std::to_string(responses) + " responses to opponent move " +
                             std::to_string(m);
                return rep;
            }
        }
    }

    rep.is_strategy = true;
    // Finite acyclic play: totality of responses means every maximal play
    // strands the opponent, so a valid strategy is winning.
    rep.is_winning = true;

    if (ord && first) {  // the reduced and splice predicates are first-player notions
        const PositionOrder& rank = *ord;
        bool reduced = true;
        std::string why;
        for (const auto& p : sigma.plays) {
            if (p.size() % 2 == 0) continue;
            for (const auto& q : sigma.plays) {
                if (q.size() != p.size()) continue;
                if (p.size() >= 3 && !sim1(p, q, p.size() - 2)) continue;
                // p_1..p_{2n} q_{2n+1} must be a legal play to constrain the pair.
                Pos from = p.size() == 1 ? g.start : p[p.size() - 2];
                if (!g.legal(from, q.back())) continue;
                if (rank[p.back()] > rank[q.back()]) {
                    reduced = false;
                    why = "response " + std::to_string(p.back()) + " outranks " +
                          std::to_string(q.back());
                    break;
                }
            }
            if (!reduced) break;
        }
        rep.is_reduced = reduced;
        if (!reduced && rep.detail.empty()) rep.detail = why;

        bool splice = true;
        for (const auto& p : sigma.plays) {
            for (const auto& q : sigma.plays) {
                for (std::size_t i = 1; i <= std::min(p.size(), q.size()) && splice; i += 2) {
                    if (!sim1(p, q, i)) continue;
                    std::vector<Pos> spliced(p.begin(), p.begin() + static_cast<long>(i));
                    spliced.insert(spliced.end(), q.begin() + static_cast<long>(i), q.end());
                    if (spliced.size() % 2 == 1 && !sigma.plays.count(spliced)) splice = false;
                }
                if (!splice) break;
            }
            if (!splice) break;
        }
        rep.splice_closed = splice;
    }
    return rep;
}

Strategy reduce_strategy(const PositionalGame& g, const Strategy& sigma, const PositionOrder& ord,
                         const Budget& budget) {
    if (sigma.for_player != Player::first)
        throw Error("reduce_strategy: defined for first-player strategies");
    StrategyReport pre = check_strategy(g, sigma);
    if (!pre.is_winning) throw Error("reduce_strategy: sigma is not winning: " + pre.detail);
    if (ord.size() != g.size()) throw Error("reduce_strategy: order size mismatch");

    Strategy reduced;
    reduced.for_player = Player::first;
    std::map<std::vector<Pos>, std::vector<Pos>> aux;

    std::vector<Pos> root;
    for (const auto& p : sigma.plays)
        if (p.size() == 1) root = p;
    reduced.plays.insert(root);
    aux[root] = root;

    std::deque<std::vector<Pos>> queue = {root};
    while (!queue.empty()) {
        std::vector<Pos> s = std::move(queue.front());
        queue.pop_front();
        const std::vector<Pos>& s_aux = aux.at(s);
        Pos last = s.back();  // equals s_aux.back(), maintained below
        for (Pos m : g.out[last]) {
            // X: pairs (m', u) with s'm'u in sigma and s m u legal.
            std::optional<std::pair<Pos, Pos>> best;
            for (const auto& ext : sigma.children(s_aux)) {
                Pos m_prime = ext[ext.size() - 2];
                Pos u = ext.back();
                if (!g.legal(m, u)) continue;
                if (!best ||
                    std::pair(ord[u], ord[m_prime]) < std::pair(ord[best->second], ord[best->first]))
                    best = {m_prime, u};
            }
            if (!best) throw Error("reduce_strategy: sigma has no transferable response");
            std::vector<Pos> next = s;
            next.push_back(m);
            next.push_back(best->second);
            if (reduced.plays.size() >= budget.max_plays)
                throw CapExceeded("reduce_strategy: play budget exceeded");
            if (reduced.plays.insert(next).second) {
                std::vector<Pos> next_aux = s_aux;
                next_aux.push_back(best->first);
                next_aux.push_back(best->second);
                aux[next] = std::move(next_aux);
                queue.push_back(std::move(next));
            }
        }
    }
    return reduced;
}

std::string dump_strategy(const PositionalGame& g, const Strategy& sigma) {
    std::ostringstream out;
    out << "strategy for " << player_name(sigma.for_player) << " player\n";
    std::set<std::vector<Pos>> prefixes;
    for (const auto& p : sigma.plays)
        for (std::size_t len = 1; len <= p.size(); ++len)
            prefixes.insert(std::vector<Pos>(p.begin(), p.begin() + static_cast<long>(len)));
    for (const auto& pre : prefixes) {
        for (std::size_t i = 1; i < pre.size(); ++i) out << "  ";
        Pos last = pre.back();
        out << (pre.size() % 2 == 1 ? "^ " : "v ")
            << (static_cast<std::size_t>(last) < g.label.size() ? g.label[last]
                                                                : std::to_string(last))
            << "\n";
    }
    return out.str();
}

}  // namespace matglue

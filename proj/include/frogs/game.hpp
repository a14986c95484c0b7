#pragma once

#include "frogs/geometry.hpp"
#include "frogs/matching.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace frogs {

enum class Player : std::uint8_t { alice, bob };

constexpr Player other(Player p) noexcept { return p == Player::alice ? Player::bob : Player::alice; }
std::string_view to_string(Player p);

struct Ruleset {
    enum class Kind { plain, colored, shy, colored_points, misere, fussy, k_stone };

    Kind kind = Kind::plain;
    double shy_radius = 0.0;   // shy: Bob's opening placement must be at least this far away
    bool shy_colored = false;  // shy: played with player-owned frogs
    int stones = 0;            // k_stone: number of stones

    static Ruleset plain() { return {}; }
    static Ruleset colored() { return {Kind::colored}; }
    static Ruleset shy(double c, bool colored = false);
    static Ruleset colored_points() { return {Kind::colored_points}; }
    static Ruleset misere() { return {Kind::misere}; }
    static Ruleset fussy() { return {Kind::fussy}; }
    static Ruleset k_stone(int k);

    /// Positions are ordered pairs (x, y) with y the frog of the player to move.
    bool ordered() const noexcept;
    bool misere_play() const noexcept { return kind == Kind::misere; }
    bool needs_colors() const noexcept { return kind == Kind::colored_points || kind == Kind::fussy; }
    /// Stones placed with every move: min(k, free points).
    std::size_t stone_count(std::size_t free_points) const noexcept;

    MatchingVariant certificate_variant() const;

    /// "plain", "colored", "shy:2.5", "shy-colored:2.5", "colored_points",
    /// "misere", "fussy", "k_stone:1".
    std::string name() const;
    static Ruleset parse(const std::string& text);

    friend bool operator==(const Ruleset&, const Ruleset&) = default;
};

/// Game state. With 0 or 1 frogs the opening is still in progress; the
/// single frog (always Alice's) sits at `x`. With two frogs, `y` is the frog
/// of the player to move (ordered rulesets); unordered rulesets keep x < y.
struct Position {
    int frogs = 0;
    int x = -1;
    int y = -1;
    std::vector<int> stones;  // sorted; k_stone only
    Player to_move = Player::alice;

    static Position start() { return {}; }
    static Position pair(int a, int b, Player to_move = Player::alice);          // unordered
    static Position ordered_pair(int x, int y, Player to_move = Player::alice);  // y moves next

    bool occupied(int p) const noexcept { return (frogs >= 1 && x == p) || (frogs >= 2 && y == p); }
    bool blocked(int p) const;

    /// Equality of game states; ignores whose turn it is.
    bool same_state(const Position& o) const noexcept { return frogs == o.frogs && x == o.x && y == o.y && stones == o.stones; }
    friend bool operator==(const Position&, const Position&) = default;
};

/// Orders positions by state, ignoring whose turn it is.
struct StateLess {
    bool operator()(const Position& a, const Position& b) const
    {
        return std::tie(a.frogs, a.x, a.y, a.stones) < std::tie(b.frogs, b.x, b.y, b.stones);
    }
};

std::string to_string(const Position& p);

/// Stable 64-bit hash of a position including the player to move; lets a
/// client check that a resumed session is where it left off.
std::uint64_t position_hash(const Position& p);

enum class Status : std::uint8_t { P, N };

struct Outcome {
    Status status = Status::P;
    Player winner = Player::alice;
    std::optional<Position> witness;  // for N: a move to a P-position (absent at misère terminals)
};

class GameError : public std::runtime_error {
public:
    enum class Kind { imperfect_certificate, set_too_large, illegal_move_by_strategy, wrong_certificate, invalid_position, missing_colors };
    GameError(Kind kind, std::string message) : std::runtime_error(std::move(message)), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Checks the position's shape for the ruleset (indices, stones, colour rules).
void check_position(const PointSet& set, const Ruleset& ruleset, const Position& position);

/// All successor positions: placements during the opening, otherwise single
/// frog jumps that strictly shrink the frog distance onto a free point. With
/// stones, every choice of stone set is a separate successor.
std::vector<Position> legal_moves(const PointSet& set, const Ruleset& ruleset, const Position& position);

bool is_terminal(const PointSet& set, const Ruleset& ruleset, const Position& position);

/// Certificate matching for the ruleset (compute_matching of its variant).
Matching certificate(const PointSet& set, const Ruleset& ruleset);

/// P/N classification straight from the certificate matching:
///   plain, shy, fussy, misère: P iff the frogs are partners;
///   colored, colored_points:   P iff x desires y;
///   k_stone:                   P iff x desires y and every partner of x
///                              closer than y carries a stone.
/// Opening states are classified by scanning placements. k_stone requires a
/// perfect (k+1)-matching and throws GameError(imperfect_certificate) otherwise.
Outcome classify(const PointSet& set, const Ruleset& ruleset, const Position& position, const Matching& certificate);

struct Placement {
    Position result;
    bool winning = false;  // false: no known winning placement; `result` is a fallback
};

/// Opening placement for the player to move in `position` (0 or 1 frogs).
Placement opening_move(const PointSet& set, const Ruleset& ruleset, const Position& position,
                       const Matching& certificate);

} // namespace frogs

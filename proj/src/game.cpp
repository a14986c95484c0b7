#include "frogs/game.hpp"

#include <algorithm>
#include <sstream>

namespace frogs {

std::string_view to_string(Player p)
{
    return p == Player::alice ? "alice" : "bob";
}

Ruleset Ruleset::shy(double c, bool colored)
{
    if (!(c > 0.0))
        throw std::invalid_argument("shy radius must be positive");
    Ruleset r{Kind::shy};
    r.shy_radius = c;
    r.shy_colored = colored;
    return r;
}

Ruleset Ruleset::k_stone(int k)
{
    if (k < 1)
        throw std::invalid_argument("k_stone needs k >= 1");
    Ruleset r{Kind::k_stone};
    r.stones = k;
    return r;
}

bool Ruleset::ordered() const noexcept
{
    switch (kind) {
    case Kind::colored:
    case Kind::colored_points:
    case Kind::k_stone:
        return true;
    case Kind::shy:
        return shy_colored;
    default:
        return false;
    }
}

std::size_t Ruleset::stone_count(std::size_t free_points) const noexcept
{
    if (kind != Kind::k_stone)
        return 0;
    return std::min(static_cast<std::size_t>(stones), free_points);
}

MatchingVariant Ruleset::certificate_variant() const
{
    switch (kind) {
    case Kind::colored_points: return MatchingVariant::two_color();
    case Kind::misere: return MatchingVariant::misere();
    case Kind::fussy: return MatchingVariant::fussy();
    case Kind::k_stone: return MatchingVariant::multi(stones + 1);
    default: return MatchingVariant::plain();
    }
}

std::string Ruleset::name() const
{
    std::ostringstream os;
    switch (kind) {
    case Kind::plain: os << "plain"; break;
    case Kind::colored: os << "colored"; break;
    case Kind::shy: os << (shy_colored ? "shy-colored:" : "shy:") << shy_radius; break;
    case Kind::colored_points: os << "colored_points"; break;
    case Kind::misere: os << "misere"; break;
    case Kind::fussy: os << "fussy"; break;
    case Kind::k_stone: os << "k_stone:" << stones; break;
    }
    return os.str();
}

Ruleset Ruleset::parse(const std::string& text)
{
    auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto need_arg = [&] {
        if (arg.empty())
            throw std::invalid_argument("ruleset '" + head + "' needs a parameter, e.g. " + head + ":2");
    };
    if (head == "plain") return plain();
    if (head == "colored") return colored();
    if (head == "colored_points" || head == "colored-points") return colored_points();
    if (head == "misere") return misere();
    if (head == "fussy") return fussy();
    if (head == "shy") { need_arg(); return shy(std::stod(arg), false); }
    if (head == "shy-colored" || head == "shy_colored") { need_arg(); return shy(std::stod(arg), true); }
    if (head == "k_stone" || head == "k-stone") { need_arg(); return k_stone(std::stoi(arg)); }
    throw std::invalid_argument("unknown ruleset '" + text + "'");
}

Position Position::pair(int a, int b, Player to_move)
{
    Position p;
    p.frogs = 2;
    p.x = std::min(a, b);
    p.y = std::max(a, b);
    p.to_move = to_move;
    return p;
}

Position Position::ordered_pair(int x, int y, Player to_move)
{
    Position p;
    p.frogs = 2;
    p.x = x;
    p.y = y;
    p.to_move = to_move;
    return p;
}

bool Position::blocked(int p) const
{
    return std::binary_search(stones.begin(), stones.end(), p);
}

std::string to_string(const Position& p)
{
    std::ostringstream os;
    os << '[';
    if (p.frogs == 0)
        os << "no frogs";
    else if (p.frogs == 1)
        os << "frog " << p.x;
    else
        os << p.x << ',' << p.y;
    if (!p.stones.empty()) {
        os << " stones";
        for (int s : p.stones)
            os << ' ' << s;
    }
    os << "; " << to_string(p.to_move) << " to move]";
    return os.str();
}

std::uint64_t position_hash(const Position& p)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::int64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= static_cast<std::uint64_t>(v >> (8 * b)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    mix(p.frogs);
    mix(p.x);
    mix(p.y);
    mix(static_cast<std::int64_t>(p.stones.size()));
    for (int s : p.stones)
        mix(s);
    mix(p.to_move == Player::alice ? 0 : 1);
    return h;
}

// ---------------------------------------------------------------------------

namespace {

bool is_red(const PointSet& set, int i) { return set.color(i) == Color::red; }

void invalid(const std::string& what)
{
    throw GameError(GameError::Kind::invalid_position, what);
}

/// Calls fn(stones) for every `count`-subset of points outside `exclude`.
template <typename Fn>
void for_each_stone_set(std::size_t n, std::initializer_list<int> exclude, std::size_t count, Fn&& fn)
{
    std::vector<int> candidates;
    for (int i = 0; i < static_cast<int>(n); ++i)
        if (std::find(exclude.begin(), exclude.end(), i) == exclude.end())
            candidates.push_back(i);
    count = std::min(count, candidates.size());
    std::vector<int> chosen;
    auto recurse = [&](auto&& self, std::size_t from) -> void {
        if (chosen.size() == count) {
            fn(chosen);
            return;
        }
        for (std::size_t k = from; k + (count - chosen.size()) <= candidates.size(); ++k) {
            chosen.push_back(candidates[k]);
            self(self, k + 1);
            chosen.pop_back();
        }
    };
    recurse(recurse, 0);
}

/// Pads `stones` with the lowest-index points outside `exclude` up to `count`.
std::vector<int> pad_stones(std::vector<int> stones, std::size_t n, std::initializer_list<int> exclude, std::size_t count)
{
    for (int i = 0; i < static_cast<int>(n) && stones.size() < count; ++i) {
        if (std::find(exclude.begin(), exclude.end(), i) != exclude.end())
            continue;
        if (std::find(stones.begin(), stones.end(), i) != stones.end())
            continue;
        stones.push_back(i);
    }
    std::sort(stones.begin(), stones.end());
    return stones;
}

bool placement_allowed(const PointSet& set, const Ruleset& rules, const Position& pos, int p)
{
    if (pos.frogs == 0)
        return rules.kind != Ruleset::Kind::colored_points || set.color(p) == Color::amber;
    const int a = pos.x;
    if (p == a || pos.blocked(p))
        return false;
    switch (rules.kind) {
    case Ruleset::Kind::colored_points:
        return set.color(p) == Color::blue;
    case Ruleset::Kind::shy:
        return set.squared_distance(a, p) >= rules.shy_radius * rules.shy_radius;
    case Ruleset::Kind::fussy:
        return !(is_red(set, a) && is_red(set, p));
    default:
        return true;
    }
}

Position placed_pair(const Ruleset& rules, int alice_frog, int bob_frog)
{
    // After both placements Alice moves next, so her frog is the mover's.
    return rules.ordered() ? Position::ordered_pair(bob_frog, alice_frog, Player::alice)
                           : Position::pair(alice_frog, bob_frog, Player::alice);
}

/// Successor after the frog at `from` jumps to `to`, the other frog staying at `stay`.
Position jumped(const Ruleset& rules, int stay, int to, Player mover)
{
    return rules.ordered() ? Position::ordered_pair(to, stay, other(mover)) : Position::pair(stay, to, other(mover));
}

/// Partners of `b` strictly closer to b than `a` is.
std::vector<int> closer_partners(const PointSet& set, const Matching& m, int b, int a)
{
    std::vector<int> out;
    const double limit = set.squared_distance(b, a);
    for (int p : m.partners(b))
        if (p != a && set.squared_distance(b, p) < limit)
            out.push_back(p);
    return out;
}

void require_certificate(const PointSet& set, const Ruleset& rules, const Matching& cert)
{
    if (cert.size() != set.size() || !(cert.variant() == rules.certificate_variant()))
        throw GameError(GameError::Kind::wrong_certificate,
                        "certificate must be the " + rules.certificate_variant().name() + " matching of this set");
    if (rules.kind == Ruleset::Kind::k_stone && !cert.perfect())
        throw GameError(GameError::Kind::imperfect_certificate,
                        "k_stone classification needs a perfect stable " + std::to_string(rules.stones + 1) +
                            "-matching; this set's is imperfect");
}

Outcome make_outcome(Status s, Player to_move, std::optional<Position> witness = std::nullopt)
{
    return {s, s == Status::N ? to_move : other(to_move), std::move(witness)};
}

// Two-frog classification straight from the certificate.
Outcome classify_pair(const PointSet& set, const Ruleset& rules, const Position& pos, const Matching& cert)
{
    const int x = pos.x, y = pos.y;
    const Player mover = pos.to_move;
    const double dxy = set.squared_distance(x, y);

    if (rules.kind == Ruleset::Kind::k_stone) {
        const auto n = set.size();
        const auto nstones = rules.stone_count(n - 2);
        const bool desire = desires(set, cert, x, y);
        bool all_blocked = true;
        for (int p : cert.partners(x))
            if (set.squared_distance(x, p) < dxy && !pos.blocked(p))
                all_blocked = false;
        if (desire && all_blocked)
            return make_outcome(Status::P, mover);
        // Jump to an unblocked partner of x (closer than y), then block the
        // partners of the new square that are closer than x.
        std::optional<int> target;
        double best = kInfinity;
        for (int p : cert.partners(x)) {
            const double d = set.squared_distance(x, p);
            if (d < dxy && !pos.blocked(p) && d < best) {
                best = d;
                target = p;
            }
        }
        if (!target)
            throw GameError(GameError::Kind::wrong_certificate, "no winning jump found; certificate is inconsistent");
        auto stones = pad_stones(closer_partners(set, cert, *target, x), n, {*target, x}, nstones);
        Position w = Position::ordered_pair(*target, x, other(mover));
        w.stones = std::move(stones);
        return make_outcome(Status::N, mover, std::move(w));
    }

    if (rules.ordered()) {
        if (desires(set, cert, x, y))
            return make_outcome(Status::P, mover);
        const auto w = cert.partner(x);
        if (!w || set.squared_distance(x, *w) >= dxy)
            throw GameError(GameError::Kind::wrong_certificate, "no winning jump found; certificate is inconsistent");
        return make_outcome(Status::N, mover, Position::ordered_pair(*w, x, other(mover)));
    }

    if (rules.misere_play() && set.mutually_nearest(x, y))
        return make_outcome(Status::N, mover);  // terminal: the player unable to move wins
    if (cert.are_partners(x, y))
        return make_outcome(Status::P, mover);
    if (auto w = cert.partner(x); w && set.squared_distance(x, *w) < dxy)
        return make_outcome(Status::N, mover, Position::pair(x, *w, other(mover)));
    if (auto w = cert.partner(y); w && set.squared_distance(y, *w) < dxy)
        return make_outcome(Status::N, mover, Position::pair(y, *w, other(mover)));
    throw GameError(GameError::Kind::wrong_certificate, "unmatched pair without a closer partner; certificate is not stable");
}

/// Points b from which Bob, facing Alice's frog at a, reaches a k_stone
/// P-position: b desires a and its partners closer than a fit under the stones.
std::vector<int> stone_replies(const PointSet& set, const Ruleset& rules, const Matching& cert, int a)
{
    std::vector<int> out;
    const auto nstones = rules.stone_count(set.size() - 2);
    for (int b = 0; b < static_cast<int>(set.size()); ++b) {
        if (b == a || !desires(set, cert, b, a))
            continue;
        if (closer_partners(set, cert, b, a).size() <= nstones)
            out.push_back(b);
    }
    return out;
}

Position stone_reply(const PointSet& set, const Ruleset& rules, const Matching& cert, int a, int b)
{
    Position w = Position::ordered_pair(b, a, Player::alice);
    w.stones = pad_stones(closer_partners(set, cert, b, a), set.size(), {a, b}, rules.stone_count(set.size() - 2));
    return w;
}

} // namespace

void check_position(const PointSet& set, const Ruleset& rules, const Position& pos)
{
    const int n = static_cast<int>(set.size());
    if (rules.needs_colors() && !set.has_colors())
        throw GameError(GameError::Kind::missing_colors, "ruleset " + rules.name() + " needs coloured points");
    auto valid = [n](int i) { return i >= 0 && i < n; };
    switch (pos.frogs) {
    case 0:
        if (pos.x != -1 || pos.y != -1 || !pos.stones.empty())
            invalid("empty board cannot carry frogs or stones");
        return;
    case 1:
        if (!valid(pos.x) || pos.y != -1)
            invalid("one-frog position needs x only");
        break;
    case 2:
        if (!valid(pos.x) || !valid(pos.y) || pos.x == pos.y)
            invalid("two frogs must sit on distinct valid points");
        if (!rules.ordered() && pos.x > pos.y)
            invalid("unordered positions keep x < y");
        if (rules.kind == Ruleset::Kind::fussy && is_red(set, pos.x) && is_red(set, pos.y))
            invalid("fussy frogs cannot both sit on red points");
        if (rules.kind == Ruleset::Kind::colored_points) {
            const auto cx = set.color(pos.x), cy = set.color(pos.y);
            const bool ok = (cx == Color::amber && cy == Color::blue) || (cx == Color::blue && cy == Color::amber);
            if (!ok)
                invalid("colored_points frogs sit on one amber and one blue point");
        }
        break;
    default:
        invalid("a position holds 0, 1 or 2 frogs");
    }
    if (pos.frogs == 1 && rules.kind == Ruleset::Kind::colored_points && set.color(pos.x) != Color::amber)
        invalid("Alice's frog must sit on an amber point");
    if (!pos.stones.empty()) {
        if (rules.kind != Ruleset::Kind::k_stone)
            invalid("stones only exist in k_stone");
        if (pos.stones.size() > static_cast<std::size_t>(rules.stones))
            invalid("too many stones");
        if (!std::is_sorted(pos.stones.begin(), pos.stones.end()) ||
            std::adjacent_find(pos.stones.begin(), pos.stones.end()) != pos.stones.end())
            invalid("stones must be sorted and distinct");
        for (int s : pos.stones)
            if (!valid(s) || pos.occupied(s))
                invalid("stones must sit on free valid points");
    }
}

std::vector<Position> legal_moves(const PointSet& set, const Ruleset& rules, const Position& pos)
{
    check_position(set, rules, pos);
    const auto n = set.size();
    const int ni = static_cast<int>(n);
    std::vector<Position> out;

    if (pos.frogs == 0) {
        for (int a = 0; a < ni; ++a) {
            if (!placement_allowed(set, rules, pos, a))
                continue;
            Position next;
            next.frogs = 1;
            next.x = a;
            next.to_move = Player::bob;
            if (rules.kind == Ruleset::Kind::k_stone) {
                for_each_stone_set(n, {a}, rules.stone_count(n - 1), [&](const std::vector<int>& s) {
                    next.stones = s;
                    out.push_back(next);
                });
            } else {
                out.push_back(next);
            }
        }
        return out;
    }

    if (pos.frogs == 1) {
        const int a = pos.x;
        for (int b = 0; b < ni; ++b) {
            if (!placement_allowed(set, rules, pos, b))
                continue;
            Position next = placed_pair(rules, a, b);
            if (rules.kind == Ruleset::Kind::k_stone) {
                for_each_stone_set(n, {a, b}, rules.stone_count(n - 2), [&](const std::vector<int>& s) {
                    next.stones = s;
                    out.push_back(next);
                });
            } else {
                out.push_back(next);
            }
        }
        return out;
    }

    auto jumps = [&](int from, int stay) {
        const double limit = set.squared_distance(from, stay);
        for (int z = 0; z < ni; ++z) {
            if (z == from || z == stay || pos.blocked(z))
                continue;
            if (set.squared_distance(stay, z) >= limit)
                continue;
            if (rules.kind == Ruleset::Kind::colored_points && set.color(z) != set.color(from))
                continue;
            if (rules.kind == Ruleset::Kind::fussy && is_red(set, z) && is_red(set, stay))
                continue;
            Position next = jumped(rules, stay, z, pos.to_move);
            if (rules.kind == Ruleset::Kind::k_stone) {
                for_each_stone_set(n, {z, stay}, rules.stone_count(n - 2), [&](const std::vector<int>& s) {
                    next.stones = s;
                    out.push_back(next);
                });
            } else {
                out.push_back(next);
            }
        }
    };
    if (rules.ordered()) {
        jumps(pos.y, pos.x);
    } else {
        jumps(pos.x, pos.y);
        jumps(pos.y, pos.x);
    }
    return out;
}

bool is_terminal(const PointSet& set, const Ruleset& rules, const Position& pos)
{
    return legal_moves(set, rules, pos).empty();
}

Matching certificate(const PointSet& set, const Ruleset& rules)
{
    if (rules.needs_colors() && !set.has_colors())
        throw GameError(GameError::Kind::missing_colors, "ruleset " + rules.name() + " needs coloured points");
    return compute_matching(set, rules.certificate_variant());
}

Outcome classify(const PointSet& set, const Ruleset& rules, const Position& pos, const Matching& cert)
{
    check_position(set, rules, pos);
    require_certificate(set, rules, cert);

    if (pos.frogs == 2)
        return classify_pair(set, rules, pos, cert);

    if (rules.kind == Ruleset::Kind::k_stone) {
        const auto n = set.size();
        if (pos.frogs == 1) {
            for (int b : stone_replies(set, rules, cert, pos.x))
                if (!pos.blocked(b))
                    return make_outcome(Status::N, pos.to_move, stone_reply(set, rules, cert, pos.x, b));
            return make_outcome(Status::P, pos.to_move);
        }
        // Alice wins by placing at a when she can stone every good reply.
        const auto nstones = rules.stone_count(n - 1);
        for (int a = 0; a < static_cast<int>(n); ++a) {
            auto replies = stone_replies(set, rules, cert, a);
            if (replies.size() <= nstones) {
                Position w;
                w.frogs = 1;
                w.x = a;
                w.to_move = Player::bob;
                w.stones = pad_stones(std::move(replies), n, {a}, nstones);
                return make_outcome(Status::N, pos.to_move, std::move(w));
            }
        }
        return make_outcome(Status::P, pos.to_move);
    }

    // Opening states: the mover wins iff some placement reaches a P-position.
    auto moves = legal_moves(set, rules, pos);
    if (moves.empty())
        return make_outcome(rules.misere_play() ? Status::N : Status::P, pos.to_move);
    for (auto& next : moves)
        if (classify(set, rules, next, cert).status == Status::P)
            return make_outcome(Status::N, pos.to_move, std::move(next));
    return make_outcome(Status::P, pos.to_move);
}

Placement opening_move(const PointSet& set, const Ruleset& rules, const Position& pos, const Matching& cert)
{
    check_position(set, rules, pos);
    require_certificate(set, rules, cert);
    if (pos.frogs >= 2)
        throw GameError(GameError::Kind::invalid_position, "opening is over");
    const auto n = set.size();
    const int ni = static_cast<int>(n);

    auto fallback = [&]() -> Placement {
        auto moves = legal_moves(set, rules, pos);
        if (moves.empty())
            throw GameError(GameError::Kind::invalid_position, "no legal placement");
        return {moves.front(), false};
    };
    auto first_frog = [&](int a) {
        Position p;
        p.frogs = 1;
        p.x = a;
        p.to_move = Player::bob;
        return p;
    };

    if (pos.frogs == 0) {
        switch (rules.kind) {
        case Ruleset::Kind::k_stone: {
            const auto nstones = rules.stone_count(n - 1);
            for (int a = 0; a < ni; ++a) {
                auto replies = stone_replies(set, rules, cert, a);
                if (replies.size() <= nstones) {
                    Position p = first_frog(a);
                    p.stones = pad_stones(std::move(replies), n, {a}, nstones);
                    return {p, true};
                }
            }
            return fallback();
        }
        case Ruleset::Kind::shy: {
            const double c2 = rules.shy_radius * rules.shy_radius;
            for (int a = 0; a < ni; ++a) {
                bool bob_has_reply = false;
                if (rules.shy_colored) {
                    for (int b = 0; b < ni && !bob_has_reply; ++b)
                        bob_has_reply = b != a && set.squared_distance(a, b) >= c2 && desires(set, cert, b, a);
                } else if (auto partner = cert.partner(a)) {
                    bob_has_reply = set.squared_distance(a, *partner) >= c2;
                }
                if (!bob_has_reply)
                    return {first_frog(a), true};
            }
            return fallback();
        }
        case Ruleset::Kind::colored_points:
            for (int a : cert.incomplete_points())
                if (set.color(a) == Color::amber)
                    return {first_frog(a), true};
            return fallback();
        case Ruleset::Kind::misere:
            // A lone frog leaves Bob stuck, and in misère play that wins for him.
            if (set.size() < 2)
                return fallback();
            [[fallthrough]];
        default: {
            auto open = cert.incomplete_points();
            if (!open.empty())
                return {first_frog(open.front()), true};
            return fallback();
        }
        }
    }

    const int a = pos.x;
    switch (rules.kind) {
    case Ruleset::Kind::k_stone:
        for (int b : stone_replies(set, rules, cert, a))
            if (!pos.blocked(b))
                return {stone_reply(set, rules, cert, a, b), true};
        return fallback();
    case Ruleset::Kind::shy:
        if (rules.shy_colored) {
            // Nearest admissible point that desires Alice's frog.
            std::optional<int> best;
            for (int b = 0; b < ni; ++b) {
                if (!placement_allowed(set, rules, pos, b) || !desires(set, cert, b, a))
                    continue;
                if (!best || set.squared_distance(a, b) < set.squared_distance(a, *best))
                    best = b;
            }
            if (best)
                return {placed_pair(rules, a, *best), true};
            return fallback();
        }
        break;
    case Ruleset::Kind::colored_points:
        for (int b : cert.incomplete_points())
            if (set.color(b) == Color::blue)
                return {placed_pair(rules, a, b), true};
        break;
    default:
        break;
    }
    if (auto b = cert.partner(a); b && placement_allowed(set, rules, pos, *b))
        return {placed_pair(rules, a, *b), true};
    return fallback();
}

} // namespace frogs

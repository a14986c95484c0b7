#include "frogs/session.hpp"

#include "frogs/playout.hpp"
#include "frogs/pointset_io.hpp"
#include "frogs/seeding.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace frogs {

using Json = nlohmann::ordered_json;

std::string_view to_string(SessionError::Kind kind)
{
    using K = SessionError::Kind;
    switch (kind) {
    case K::bad_request: return "BadRequest";
    case K::validation_failed: return "ValidationFailed";
    case K::unsupported_ruleset: return "UnsupportedRuleset";
    case K::unknown_session: return "UnknownSession";
    case K::not_your_turn: return "NotYourTurn";
    case K::illegal_move: return "IllegalMove";
    case K::session_finished: return "SessionFinished";
    case K::hints_disabled: return "HintsDisabled";
    }
    return "BadRequest";
}

namespace {

[[noreturn]] void illegal(std::string reason, const std::string& message)
{
    throw SessionError(SessionError::Kind::illegal_move, message, std::move(reason));
}

Player parse_player(const std::string& s)
{
    if (s == "alice") return Player::alice;
    if (s == "bob") return Player::bob;
    throw SessionError(SessionError::Kind::bad_request, "player must be 'alice' or 'bob', got '" + s + "'");
}

std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

double parse_coordinate(const Json& j)
{
    if (j.is_number())
        return j.get<double>();
    if (!j.is_string())
        throw SessionError(SessionError::Kind::bad_request, "coordinates must be numbers or decimal strings");
    const auto s = j.get<std::string>();
    double v = 0.0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size())
        throw SessionError(SessionError::Kind::bad_request, "'" + s + "' is not a decimal number");
    return v;
}

std::uint64_t parse_seed(const Json& j)
{
    if (j.is_number_unsigned())
        return j.get<std::uint64_t>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        std::uint64_t v = 0;
        auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && end == s.data() + s.size())
            return v;
    }
    throw SessionError(SessionError::Kind::bad_request, "seed must be a non-negative integer");
}

Json move_to_json(const MoveRequest& m)
{
    return {{"frog", m.frog}, {"to", m.destination}, {"stones", m.stones}};
}

Json points_json(const PointSet& set)
{
    Json points = Json::array();
    for (int i = 0; i < static_cast<int>(set.size()); ++i) {
        Json coords = Json::array();
        for (double c : set.point(i).coords)
            coords.push_back(format_decimal(c));
        Json p = {{"id", i}, {"coords", coords}};
        if (set.has_colors())
            p["color"] = std::string(to_string(set.color(i)));
        points.push_back(p);
    }
    return points;
}

PointSet points_from_json(const Json& points, const Region& region)
{
    if (!points.is_array())
        throw SessionError(SessionError::Kind::bad_request, "points must be an array");
    std::vector<Point> pts;
    std::vector<Color> colors;
    for (const auto& p : points) {
        const Json& coords = p.is_object() ? p.at("coords") : p;
        if (!coords.is_array())
            throw SessionError(SessionError::Kind::bad_request, "each point needs a coordinate array");
        Point pt;
        for (const auto& c : coords)
            pt.coords.push_back(parse_coordinate(c));
        pts.push_back(std::move(pt));
        Color color = Color::none;
        if (p.is_object() && p.contains("color")) {
            auto parsed = parse_color(p.at("color").get<std::string>());
            if (!parsed)
                throw SessionError(SessionError::Kind::bad_request, "unknown colour '" + p.at("color").get<std::string>() + "'");
            color = *parsed;
        }
        colors.push_back(color);
    }
    try {
        return PointSet::validate(std::move(pts), region, std::move(colors));
    } catch (const ValidationError& e) {
        throw SessionError(SessionError::Kind::validation_failed, e.what(), std::string(to_string(e.kind())));
    }
}

bool is_session_id(const std::string& id)
{
    return !id.empty() && id.size() <= 64 &&
           std::all_of(id.begin(), id.end(), [](char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'); });
}

} // namespace

// ---------------------------------------------------------------------------
// Moves on the wire

MoveRequest describe_move(const Ruleset& rules, const Position& before, const Position& after)
{
    auto [from, to] = frog_move(rules, before, after);
    return {from, to, after.stones};
}

Position resolve_move(const Engine& engine, const Position& current, const MoveRequest& move)
{
    const auto& set = engine.set();
    const auto& rules = engine.rules();
    const int n = static_cast<int>(set.size());
    auto options = engine.moves(current);
    std::vector<int> stones = move.stones;
    std::sort(stones.begin(), stones.end());
    for (const auto& next : options) {
        if (describe_move(rules, current, next) == MoveRequest{current.frogs < 2 ? -1 : move.frog, move.destination, stones})
            return next;
    }

    // Not legal: work out why, most specific first.
    const int z = move.destination;
    if (z < 0 || z >= n)
        illegal("no-such-point", "point " + std::to_string(z) + " does not exist");
    if (current.occupied(z))
        illegal("occupied", "point " + std::to_string(z) + " already holds a frog");
    if (current.blocked(z))
        illegal("blocked", "point " + std::to_string(z) + " carries a stone");

    int stay = -1;
    if (current.frogs == 2) {
        if (move.frog != current.x && move.frog != current.y)
            illegal("not-a-frog", "no frog sits on point " + std::to_string(move.frog));
        if (rules.ordered() && move.frog != current.y)
            illegal("color", "the frog on " + std::to_string(move.frog) + " belongs to the other player");
        stay = move.frog == current.x ? current.y : current.x;
    } else if (current.frogs == 1) {
        stay = current.x;
    }

    const bool red_red = rules.kind == Ruleset::Kind::fussy && stay >= 0 && set.color(stay) == Color::red &&
                         set.color(z) == Color::red;
    if (rules.kind == Ruleset::Kind::colored_points) {
        const Color want = current.frogs == 0 ? Color::amber
                         : current.frogs == 1 ? Color::blue
                                              : set.color(move.frog);
        if (set.color(z) != want)
            illegal("color", "this frog may only land on " + std::string(to_string(want)) + " points");
    }
    if (red_red)
        illegal("color", "two red points may not hold both frogs");
    if (current.frogs == 2 && set.squared_distance(stay, z) >= set.squared_distance(stay, move.frog))
        illegal("distance-not-decreased", "the jump must bring the frogs strictly closer");
    if (current.frogs == 1 && rules.kind == Ruleset::Kind::shy &&
        set.squared_distance(stay, z) < rules.shy_radius * rules.shy_radius)
        illegal("shy-radius", "Bob's frog must be placed at least " + format_decimal(rules.shy_radius) + " away");
    if (rules.kind == Ruleset::Kind::k_stone)
        illegal("bad-stones", "stones must be " + std::to_string(rules.stone_count(static_cast<std::size_t>(n) - 2)) +
                                  " distinct free points other than the frogs");
    illegal("illegal", "move is not legal here");
}

// ---------------------------------------------------------------------------
// Persistence

Json record_to_json(const SessionRecord& r)
{
    Json j;
    j["schema"] = kSessionSchema;
    j["id"] = r.id;
    j["ruleset"] = r.rules.name();
    j["engine_side"] = std::string(to_string(r.engine_side));
    j["seed"] = std::to_string(r.seed);
    j["hints"] = r.hints;
    j["region"] = r.set->region().to_string();
    j["points"] = points_json(*r.set);
    Json history = Json::array();
    for (const auto& m : r.history)
        history.push_back(move_to_json(m));
    j["history"] = history;
    return j;
}

SessionRecord record_from_json(const Json& j)
{
    if (j.value("schema", std::string()) != kSessionSchema)
        throw std::runtime_error("session record has an unknown schema");
    SessionRecord r;
    r.id = j.at("id").get<std::string>();
    r.rules = Ruleset::parse(j.at("ruleset").get<std::string>());
    r.engine_side = parse_player(j.at("engine_side").get<std::string>());
    r.seed = parse_seed(j.at("seed"));
    r.hints = j.at("hints").get<bool>();
    r.set = std::make_shared<const PointSet>(points_from_json(j.at("points"), Region::parse(j.at("region").get<std::string>())));
    for (const auto& m : j.at("history"))
        r.history.push_back({m.at("frog").get<int>(), m.at("to").get<int>(), m.at("stones").get<std::vector<int>>()});
    return r;
}

void MemoryStore::save(const SessionRecord& record)
{
    std::lock_guard lock(mutex_);
    records_[record.id] = record;
}

std::optional<SessionRecord> MemoryStore::load(const std::string& id)
{
    std::lock_guard lock(mutex_);
    auto it = records_.find(id);
    if (it == records_.end())
        return std::nullopt;
    return it->second;
}

bool MemoryStore::contains(const std::string& id)
{
    std::lock_guard lock(mutex_);
    return records_.count(id) != 0;
}

FileStore::FileStore(std::filesystem::path dir) : dir_(std::move(dir))
{
    std::filesystem::create_directories(dir_);
}

std::filesystem::path FileStore::path_for(const std::string& id) const
{
    return dir_ / (id + ".json");
}

void FileStore::save(const SessionRecord& record)
{
    std::lock_guard lock(mutex_);
    const auto target = path_for(record.id);
    auto tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << record_to_json(record).dump(2) << '\n';
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

std::optional<SessionRecord> FileStore::load(const std::string& id)
{
    std::lock_guard lock(mutex_);
    std::ifstream in(path_for(id), std::ios::binary);
    if (!in)
        return std::nullopt;
    return record_from_json(Json::parse(in));
}

bool FileStore::contains(const std::string& id)
{
    std::lock_guard lock(mutex_);
    return std::filesystem::exists(path_for(id));
}

// ---------------------------------------------------------------------------
// Service

struct SessionService::Live {
    std::mutex mutex;
    SessionRecord record;
    Engine engine;
    Position current;

    Live(SessionRecord r, Engine e) : record(std::move(r)), engine(std::move(e)) {}

    bool finished() const { return engine.moves(current).empty(); }

    Json view() const
    {
        const auto& rules = engine.rules();
        const auto options = engine.moves(current);
        Json v;
        v["schema"] = kSessionSchema;
        v["id"] = record.id;
        v["ruleset"] = rules.name();
        v["region"] = engine.set().region().to_string();
        v["engine_side"] = std::string(to_string(record.engine_side));
        v["human_side"] = std::string(to_string(other(record.engine_side)));
        v["hints"] = record.hints;
        v["points"] = points_json(engine.set());
        Json frogs = Json::array();
        if (current.frogs >= 1)
            frogs.push_back(current.x);
        if (current.frogs == 2)
            frogs.push_back(current.y);
        v["frogs"] = frogs;
        // Ordered rulesets: the mover's frog is the second one listed.
        v["ordered"] = rules.ordered();
        v["stones"] = current.stones;
        v["turn"] = std::string(to_string(current.to_move));
        Json legal = Json::array();
        for (const auto& next : options)
            legal.push_back(move_to_json(describe_move(rules, current, next)));
        v["legal_moves"] = legal;
        if (options.empty()) {
            v["status"] = "finished";
            v["winner"] = std::string(to_string(engine.stuck_winner(current)));
        } else {
            v["status"] = "live";
            v["winner"] = nullptr;
        }
        if (record.hints) {
            const auto outcome = engine.evaluate(current);
            v["annotation"] = outcome.status == Status::P ? "P" : "N";
        }
        Json history = Json::array();
        for (const auto& m : record.history)
            history.push_back(move_to_json(m));
        v["history"] = history;
        v["position_hash"] = hex64(position_hash(current));
        return v;
    }

    void play(const MoveRequest& m)
    {
        auto next = resolve_move(engine, current, m);
        record.history.push_back(describe_move(engine.rules(), current, next));
        current = std::move(next);
    }
};

SessionService::SessionService(std::shared_ptr<SessionStore> store) : store_(std::move(store))
{
    std::random_device rd;
    nonce_ = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::vector<std::string> SessionService::rulesets()
{
    return {"plain", "colored", "shy:<c>", "shy-colored:<c>", "colored_points", "misere", "fussy", "k_stone:<k>"};
}

std::string SessionService::fresh_id()
{
    for (;;) {
        const std::string id = hex64(derive_seed(nonce_, ++counter_));
        if (live_.count(id) == 0 && !store_->contains(id))
            return id;
    }
}

namespace {

Engine make_engine(std::shared_ptr<const PointSet> set, const Ruleset& rules)
{
    if (rules.needs_colors() && !set->has_colors())
        throw SessionError(SessionError::Kind::validation_failed, "ruleset " + rules.name() + " needs coloured points",
                           "bad_colors");
    try {
        return Engine(std::move(set), rules);
    } catch (const UnsupportedRuleset& e) {
        throw SessionError(SessionError::Kind::unsupported_ruleset, e.what());
    }
}

void engine_reply(Engine const& engine, SessionRecord& record, Position& current)
{
    Rng rng(derive_seed(record.seed, record.history.size()));
    auto next = engine.choose(current, rng);
    if (!next)
        throw SessionError(SessionError::Kind::session_finished, "the game is over");
    record.history.push_back(describe_move(engine.rules(), current, *next));
    current = *next;
}

} // namespace

Json SessionService::create(const SessionConfig& config)
{
    if (config.sample_size.has_value() == config.upload.has_value())
        throw SessionError(SessionError::Kind::bad_request, "give either a sample size or an uploaded point set");

    std::shared_ptr<const PointSet> set;
    if (config.upload) {
        set = std::make_shared<const PointSet>(*config.upload);
    } else {
        if (*config.sample_size < 1)
            throw SessionError(SessionError::Kind::bad_request, "sample size must be at least 1");
        const auto seed = derive_seed(config.seed, 0x5a3b1e);
        try {
            if (config.rules.kind == Ruleset::Kind::colored_points)
                set = std::make_shared<const PointSet>(
                    sample_uniform_colored(*config.sample_size, config.region, seed, Color::amber, Color::blue));
            else if (config.rules.kind == Ruleset::Kind::fussy)
                set = std::make_shared<const PointSet>(
                    sample_uniform_colored(*config.sample_size, config.region, seed, Color::green, Color::red));
            else
                set = std::make_shared<const PointSet>(sample_uniform(*config.sample_size, config.region, seed));
        } catch (const SamplingError& e) {
            throw SessionError(SessionError::Kind::bad_request, e.what());
        }
    }

    SessionRecord record;
    record.rules = config.rules;
    record.engine_side = config.engine_side;
    record.seed = config.seed;
    record.hints = config.hints;
    record.set = set;

    auto live = std::make_shared<Live>(record, make_engine(set, config.rules));
    if (live->engine.moves(live->current).size() > 0 && live->current.to_move == config.engine_side)
        engine_reply(live->engine, live->record, live->current);

    std::lock_guard lock(mutex_);
    live->record.id = fresh_id();
    store_->save(live->record);
    live_[live->record.id] = live;
    return live->view();
}

std::shared_ptr<SessionService::Live> SessionService::find(const std::string& id)
{
    std::lock_guard lock(mutex_);
    if (auto it = live_.find(id); it != live_.end())
        return it->second;
    if (!is_session_id(id))
        throw SessionError(SessionError::Kind::unknown_session, "no session '" + id + "'");
    auto record = store_->load(id);
    if (!record)
        throw SessionError(SessionError::Kind::unknown_session, "no session '" + id + "'");
    auto moves = std::move(record->history);
    record->history.clear();
    auto live = std::make_shared<Live>(*record, make_engine(record->set, record->rules));
    for (const auto& m : moves)
        live->play(m);
    live_[id] = live;
    return live;
}

Json SessionService::state(const std::string& id)
{
    auto live = find(id);
    std::lock_guard lock(live->mutex);
    return live->view();
}

Json SessionService::apply_move(const std::string& id, const MoveRequest& move)
{
    auto live = find(id);
    std::lock_guard lock(live->mutex);
    if (live->finished())
        throw SessionError(SessionError::Kind::session_finished, "the game is over");
    if (live->current.to_move == live->record.engine_side)
        throw SessionError(SessionError::Kind::not_your_turn, "it is the engine's turn");
    auto record = live->record;
    const auto before = live->current;
    live->play(move);
    try {
        store_->save(live->record);
    } catch (...) {
        live->record = std::move(record);
        live->current = before;
        throw;
    }
    return live->view();
}

Json SessionService::engine_move(const std::string& id)
{
    auto live = find(id);
    std::lock_guard lock(live->mutex);
    if (live->finished())
        throw SessionError(SessionError::Kind::session_finished, "the game is over");
    if (live->current.to_move != live->record.engine_side)
        throw SessionError(SessionError::Kind::not_your_turn, "it is the human's turn");
    auto record = live->record;
    const auto before = live->current;
    engine_reply(live->engine, live->record, live->current);
    try {
        store_->save(live->record);
    } catch (...) {
        live->record = std::move(record);
        live->current = before;
        throw;
    }
    return live->view();
}

Json SessionService::hint(const std::string& id)
{
    auto live = find(id);
    std::lock_guard lock(live->mutex);
    if (!live->record.hints)
        throw SessionError(SessionError::Kind::hints_disabled, "hints were not enabled for this session");
    const auto& engine = live->engine;
    const auto& current = live->current;
    Json h;
    h["schema"] = kSessionSchema;
    h["id"] = live->record.id;
    h["position_hash"] = hex64(position_hash(current));
    if (engine.moves(current).empty()) {
        h["status"] = engine.rules().misere_play() ? "N" : "P";
        h["winner"] = std::string(to_string(engine.stuck_winner(current)));
        h["witness"] = nullptr;
        return h;
    }
    const auto outcome = engine.evaluate(current);
    h["status"] = outcome.status == Status::P ? "P" : "N";
    h["winner"] = std::string(to_string(outcome.winner));
    std::optional<Position> witness = outcome.witness;
    if (!witness && current.frogs < 2 && !engine.uses_oracle()) {
        auto placement = opening_move(engine.set(), engine.rules(), current, engine.certificate());
        if (placement.winning)
            witness = placement.result;
    }
    if (outcome.status == Status::N && witness)
        h["witness"] = move_to_json(describe_move(engine.rules(), current, *witness));
    else
        h["witness"] = nullptr;
    return h;
}

// Wire helpers shared with the HTTP layer.

SessionConfig session_config_from_json(const Json& body)
{
    SessionConfig c;
    try {
        c.rules = Ruleset::parse(body.value("ruleset", std::string("plain")));
    } catch (const std::exception& e) {
        throw SessionError(SessionError::Kind::bad_request, e.what());
    }
    c.engine_side = parse_player(body.value("engine_side", std::string("bob")));
    if (body.contains("seed"))
        c.seed = parse_seed(body.at("seed"));
    c.hints = body.value("hints", false);
    try {
        c.region = Region::parse(body.value("region", std::string("box:1:2")));
    } catch (const std::exception& e) {
        throw SessionError(SessionError::Kind::bad_request, e.what());
    }
    if (body.contains("points"))
        c.upload = points_from_json(body.at("points"), c.region);
    if (body.contains("n")) {
        const auto& n = body.at("n");
        if (!n.is_number_unsigned())
            throw SessionError(SessionError::Kind::bad_request, "n must be a positive integer");
        c.sample_size = n.get<std::size_t>();
    }
    return c;
}

MoveRequest move_from_json(const Json& body)
{
    MoveRequest m;
    if (!body.is_object() || !body.contains("to") || !body.at("to").is_number_integer())
        throw SessionError(SessionError::Kind::bad_request, "a move needs an integer 'to'");
    m.destination = body.at("to").get<int>();
    if (body.contains("frog") && !body.at("frog").is_null()) {
        if (!body.at("frog").is_number_integer())
            throw SessionError(SessionError::Kind::bad_request, "'frog' must be an integer");
        m.frog = body.at("frog").get<int>();
    }
    if (body.contains("stones")) {
        const auto& s = body.at("stones");
        if (!s.is_array() || !std::all_of(s.begin(), s.end(), [](const Json& v) { return v.is_number_integer(); }))
            throw SessionError(SessionError::Kind::bad_request, "'stones' must be an array of point ids");
        m.stones = s.get<std::vector<int>>();
    }
    return m;
}

} // namespace frogs

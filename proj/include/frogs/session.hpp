#pragma once

#include "frogs/engine.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace frogs {

inline constexpr const char* kSessionSchema = "frogmatch.session/1";

class SessionError : public std::runtime_error {
public:
    enum class Kind {
        bad_request,
        validation_failed,
        unsupported_ruleset,
        unknown_session,
        not_your_turn,
        illegal_move,
        session_finished,
        hints_disabled
    };

    SessionError(Kind kind, std::string message, std::string reason = {})
        : std::runtime_error(std::move(message)), kind_(kind), reason_(std::move(reason))
    {
    }
    Kind kind() const noexcept { return kind_; }
    /// IllegalMove reason ("distance-not-decreased", "occupied", "blocked",
    /// "color", ...) or the ValidationError kind; empty otherwise.
    const std::string& reason() const noexcept { return reason_; }

private:
    Kind kind_;
    std::string reason_;
};

/// "IllegalMove", "NotYourTurn", ...
std::string_view to_string(SessionError::Kind kind);

/// One move as submitted on the wire. `frog` is the point the moving frog
/// sits on, -1 for a placement.
struct MoveRequest {
    int frog = -1;
    int destination = -1;
    std::vector<int> stones;

    friend bool operator==(const MoveRequest&, const MoveRequest&) = default;
};

struct SessionConfig {
    Ruleset rules;
    Player engine_side = Player::bob;
    std::uint64_t seed = 0;
    bool hints = false;

    // Exactly one of these: a sample size (with region) or an uploaded set.
    std::optional<std::size_t> sample_size;
    Region region = Region::box(1.0, 2);
    std::optional<PointSet> upload;
};

/// Everything needed to rebuild a session: its configuration, point set and
/// the moves played so far.
struct SessionRecord {
    std::string id;
    Ruleset rules;
    Player engine_side = Player::bob;
    std::uint64_t seed = 0;
    bool hints = false;
    std::shared_ptr<const PointSet> set;
    std::vector<MoveRequest> history;
};

nlohmann::ordered_json record_to_json(const SessionRecord& record);
SessionRecord record_from_json(const nlohmann::ordered_json& j);

class SessionStore {
public:
    virtual ~SessionStore() = default;
    virtual void save(const SessionRecord& record) = 0;
    virtual std::optional<SessionRecord> load(const std::string& id) = 0;
    virtual bool contains(const std::string& id) = 0;
};

class MemoryStore final : public SessionStore {
public:
    void save(const SessionRecord& record) override;
    std::optional<SessionRecord> load(const std::string& id) override;
    bool contains(const std::string& id) override;

private:
    std::mutex mutex_;
    std::map<std::string, SessionRecord> records_;
};

/// One JSON file per session, `<dir>/<id>.json`, replaced atomically.
class FileStore final : public SessionStore {
public:
    explicit FileStore(std::filesystem::path dir);
    void save(const SessionRecord& record) override;
    std::optional<SessionRecord> load(const std::string& id) override;
    bool contains(const std::string& id) override;

private:
    std::filesystem::path path_for(const std::string& id) const;
    std::filesystem::path dir_;
    std::mutex mutex_;
};

/// Game sessions between a human and the engine.
///
/// Requests on one session are serialized by a per-session lock; distinct
/// sessions proceed independently. Views are JSON documents with schema
/// kSessionSchema; coordinates are decimal strings.
class SessionService {
public:
    explicit SessionService(std::shared_ptr<SessionStore> store = std::make_shared<MemoryStore>());

    nlohmann::ordered_json create(const SessionConfig& config);
    nlohmann::ordered_json state(const std::string& id);
    nlohmann::ordered_json apply_move(const std::string& id, const MoveRequest& move);
    nlohmann::ordered_json engine_move(const std::string& id);
    nlohmann::ordered_json hint(const std::string& id);

    /// Ruleset names accepted by create().
    static std::vector<std::string> rulesets();

private:
    struct Live;
    std::shared_ptr<Live> find(const std::string& id);
    std::string fresh_id();

    std::shared_ptr<SessionStore> store_;
    std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Live>> live_;
    std::uint64_t nonce_;
    std::uint64_t counter_ = 0;
};

/// Translates a wire move into the successor position, or throws
/// SessionError(illegal_move) with the reason it was refused.
Position resolve_move(const Engine& engine, const Position& current, const MoveRequest& move);

/// The wire form of a successor of `before`.
MoveRequest describe_move(const Ruleset& rules, const Position& before, const Position& after);

/// Request bodies of POST /sessions and POST /sessions/{id}/moves; throw
/// SessionError(bad_request | validation_failed).
SessionConfig session_config_from_json(const nlohmann::ordered_json& body);
MoveRequest move_from_json(const nlohmann::ordered_json& body);

} // namespace frogs

#pragma once

#include "frogs/session.hpp"

#include <string>

namespace httplib {
class Server;
}

namespace frogs {

/// Registers the session routes on `server`:
///
///   GET  /rulesets
///   POST /sessions                   body: ruleset, engine_side, seed, hints, region, n | points
///   GET  /sessions/{id}
///   POST /sessions/{id}/moves        body: frog, to, stones
///   POST /sessions/{id}/engine-move
///   GET  /sessions/{id}/hint
///
/// Errors come back as {"error": kind, "reason": ..., "message": ...} with
/// 400 (BadRequest), 403 (HintsDisabled), 404 (UnknownSession),
/// 409 (NotYourTurn, SessionFinished) or 422 (IllegalMove, ValidationFailed,
/// UnsupportedRuleset).
void install_routes(httplib::Server& server, SessionService& service);

int http_status(SessionError::Kind kind);

/// Blocks serving on host:port until the server is stopped.
bool serve(SessionService& service, const std::string& host, int port);

} // namespace frogs

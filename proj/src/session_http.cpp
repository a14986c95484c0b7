#include "frogs/session_http.hpp"

#include <httplib.h>

namespace frogs {

using Json = nlohmann::ordered_json;

int http_status(SessionError::Kind kind)
{
    using K = SessionError::Kind;
    switch (kind) {
    case K::bad_request: return 400;
    case K::hints_disabled: return 403;
    case K::unknown_session: return 404;
    case K::not_your_turn:
    case K::session_finished: return 409;
    case K::illegal_move:
    case K::validation_failed:
    case K::unsupported_ruleset: return 422;
    }
    return 400;
}

namespace {

void reply(httplib::Response& res, int status, const Json& body)
{
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

template <class Fn>
httplib::Server::Handler guarded(Fn fn)
{
    return [fn](const httplib::Request& req, httplib::Response& res) {
        try {
            reply(res, 200, fn(req));
        } catch (const SessionError& e) {
            Json err = {{"schema", kSessionSchema}, {"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
            if (!e.reason().empty())
                err["reason"] = e.reason();
            reply(res, http_status(e.kind()), err);
        } catch (const Json::exception& e) {
            reply(res, 400, {{"schema", kSessionSchema}, {"error", "BadRequest"}, {"message", e.what()}});
        } catch (const std::exception& e) {
            reply(res, 500, {{"schema", kSessionSchema}, {"error", "Internal"}, {"message", e.what()}});
        }
    };
}

Json body_of(const httplib::Request& req)
{
    if (req.body.empty())
        return Json::object();
    auto j = Json::parse(req.body, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw SessionError(SessionError::Kind::bad_request, "request body must be a JSON object");
    return j;
}

} // namespace

void install_routes(httplib::Server& server, SessionService& service)
{
    server.Get("/rulesets", guarded([](const httplib::Request&) {
        return Json{{"schema", kSessionSchema}, {"rulesets", SessionService::rulesets()}};
    }));
    server.Post("/sessions", guarded([&service](const httplib::Request& req) {
        return service.create(session_config_from_json(body_of(req)));
    }));
    server.Get(R"(/sessions/([0-9a-zA-Z]+))", guarded([&service](const httplib::Request& req) {
        return service.state(req.matches[1]);
    }));
    server.Post(R"(/sessions/([0-9a-zA-Z]+)/moves)", guarded([&service](const httplib::Request& req) {
        return service.apply_move(req.matches[1], move_from_json(body_of(req)));
    }));
    server.Post(R"(/sessions/([0-9a-zA-Z]+)/engine-move)", guarded([&service](const httplib::Request& req) {
        return service.engine_move(req.matches[1]);
    }));
    server.Get(R"(/sessions/([0-9a-zA-Z]+)/hint)", guarded([&service](const httplib::Request& req) {
        return service.hint(req.matches[1]);
    }));
}

bool serve(SessionService& service, const std::string& host, int port)
{
    httplib::Server server;
    install_routes(server, service);
    return server.listen(host, port);
}

} // namespace frogs

#pragma once

#include "polarsim/core/json.hpp"
#include "polarsim/feed/service.hpp"

namespace httplib {
class Server;
}

namespace polarsim {

// Participant-facing renderers. None of them emit stance metadata, opinion
// values, personalities or roles.
Json render_message(const Session& session, const Message& message);
Json render_feed(const Session& session, const FeedPage& page);
Json render_profile(const Session& session, AgentId agent);
Json render_events(const Session& session);

/// HTTP status for an error code: 404 unknown session/target, 409 expired
/// session or duplicate like, 400 for malformed requests, 500 otherwise.
int http_status(ErrorCode code) noexcept;

/// Registers the REST routes on `server`:
///   POST   /sessions                              {condition?: {polarization, bias}}
///   GET    /sessions/:id/feed?page=P
///   POST   /sessions/:id/posts                    {text}
///   POST   /sessions/:id/messages/:mid/likes
///   POST   /sessions/:id/messages/:mid/comments   {text}
///   POST   /sessions/:id/messages/:mid/reposts    {text?}
///   POST   /sessions/:id/follows                  {agent_id}
///   DELETE /sessions/:id/follows/:agent_id
///   GET    /users/:handle?session=ID
///   GET    /sessions/:id/suggested-users
///   GET    /sessions/:id/events
/// Errors are returned as {code, message}.
void mount_routes(httplib::Server& server, SessionManager& manager);

}  // namespace polarsim

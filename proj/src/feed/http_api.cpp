#include "polarsim/feed/http_api.hpp"

#include <charconv>

#include <httplib.h>

namespace polarsim {
namespace {

constexpr const char* kJson = "application/json";

Json render_author(const Session& session, AgentId id) {
  const Agent& a = session.state().agent(id);
  return Json{{"id", a.id.value}, {"username", a.username}};
}

Json optional_value(const auto& v) { return v ? Json(*v) : Json(nullptr); }

template <typename T>
T parse_number(const std::string& text, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::BadRequest, std::string("invalid ") + what + ": '" + text + "'");
  }
  return value;
}

Json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  Json body = Json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    throw Error(ErrorCode::BadRequest, "request body must be a JSON object");
  }
  return body;
}

std::optional<std::string> text_field(const Json& body, bool required) {
  const auto it = body.find("text");
  if (it == body.end() || it->is_null()) {
    if (required) throw Error(ErrorCode::BadRequest, "missing field 'text'");
    return std::nullopt;
  }
  if (!it->is_string()) throw Error(ErrorCode::BadRequest, "'text' must be a string");
  return it->get<std::string>();
}

void reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void reply_error(httplib::Response& res, ErrorCode code, const std::string& message) {
  reply(res, http_status(code), Json{{"code", to_string(code)}, {"message", message}});
}

/// Wraps a handler so library errors map onto {code, message} responses.
template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      reply_error(res, e.code(), e.what());
    } catch (const Json::exception& e) {
      reply_error(res, ErrorCode::BadRequest, e.what());
    }
  };
}

const std::string& path_param(const httplib::Request& req, const char* name) {
  return req.path_params.at(name);
}

MessageId message_param(const httplib::Request& req) {
  return MessageId{parse_number<std::uint64_t>(path_param(req, "mid"), "message id")};
}

Json interaction_result(const Session& s, const std::optional<SessionEvent>& event) {
  Json out{{"changed", event.has_value()}};
  if (event) {
    Json e = *event;
    e.erase("stance");
    out["event"] = std::move(e);
    if (event->created) out["message"] = render_message(s, s.state().message(*event->created));
    if (const auto* mid = std::get_if<MessageId>(&event->target)) {
      out["target"] = render_message(s, s.state().message(*mid));
    }
  }
  return out;
}

}  // namespace

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownSession:
    case ErrorCode::UnknownTarget:
    case ErrorCode::UnknownAgent:
      return 404;
    case ErrorCode::SessionExpired:
    case ErrorCode::DuplicateLike:
      return 409;
    case ErrorCode::BadRequest:
    case ErrorCode::InvalidConfig:
    case ErrorCode::OpinionOutOfRange:
    case ErrorCode::MissingReplyContext:
      return 400;
    default:
      return 500;
  }
}

Json render_message(const Session& session, const Message& m) {
  Json j{{"id", m.id.value},
         {"kind", to_string(m.kind)},
         {"author", render_author(session, m.author)},
         {"parent", m.parent ? Json(m.parent->value) : Json(nullptr)},
         {"text", m.text},
         {"created_iteration", optional_value(m.created_iteration)},
         {"created_at_ms", optional_value(m.created_at_ms)},
         {"likes", m.likes},
         {"comments", m.comments},
         {"reposts", m.reposts}};
  if (m.kind == MessageKind::Repost && m.parent) {
    const Message& original = session.state().message(*m.parent);
    j["original"] = Json{{"id", original.id.value},
                         {"author", render_author(session, original.author)},
                         {"text", original.text}};
  }
  return j;
}

Json render_feed(const Session& session, const FeedPage& page) {
  Json posts = Json::array();
  for (const FeedEntry& entry : page.posts) {
    Json post = render_message(session, session.state().message(entry.id));
    post["own"] = entry.own;
    Json comments = Json::array();
    for (MessageId c : entry.comments) {
      comments.push_back(render_message(session, session.state().message(c)));
    }
    post["comment_thread"] = std::move(comments);
    posts.push_back(std::move(post));
  }
  return Json{{"page", page.page},
              {"has_more", page.has_more},
              {"posts", std::move(posts)},
              {"remaining_s", std::max<std::int64_t>(0, session.remaining_ms() / 1000)}};
}

Json render_profile(const Session& session, AgentId id) {
  const SimulationState& s = session.state();
  const Agent& a = s.agent(id);
  Json posts = Json::array();
  for (auto it = s.messages.rbegin(); it != s.messages.rend(); ++it) {
    if (it->author == id) posts.push_back(render_message(session, *it));
  }
  return Json{{"id", a.id.value},
              {"username", a.username},
              {"biography", a.biography},
              {"followers", s.graph.follower_count(id)},
              {"followees", s.graph.followee_count(id)},
              {"followed_by_you", s.graph.follows(session.participant(), id)},
              {"posts", std::move(posts)}};
}

Json render_events(const Session& session) {
  Json events = Json::array();
  for (const SessionEvent& e : session.session_events()) {
    Json j = e;
    j.erase("stance");
    events.push_back(std::move(j));
  }
  return Json{{"session_id", session.id()},
              {"condition", session.condition()},
              {"seed", session.seed()},
              {"participant_id", session.participant().value},
              {"started_at_ms", session.started_at_ms()},
              {"events", std::move(events)}};
}

void mount_routes(httplib::Server& server, SessionManager& manager) {
  server.Post("/sessions", guarded([&](const httplib::Request& req, httplib::Response& res) {
    const Json body = parse_body(req);
    std::optional<ConditionTag> condition;
    if (const auto it = body.find("condition"); it != body.end() && !it->is_null()) {
      condition = it->get<ConditionTag>();
    }
    const std::string id = manager.create(condition);
    manager.with_session(id, [&](Session& s) {
      reply(res, 200,
            Json{{"session_id", id},
                 {"duration_s", s.options().duration_s},
                 {"condition", s.condition()},
                 {"participant", render_author(s, s.participant())}});
    });
  }));

  server.Get("/sessions/:id/feed", guarded([&](const httplib::Request& req, httplib::Response& res) {
    std::size_t page = 1;
    if (req.has_param("page")) page = parse_number<std::size_t>(req.get_param_value("page"), "page");
    manager.with_session(path_param(req, "id"), [&](Session& s) {
      reply(res, 200, render_feed(s, s.get_feed(page)));
    });
  }));

  server.Post("/sessions/:id/posts", guarded([&](const httplib::Request& req, httplib::Response& res) {
    const Json body = parse_body(req);
    manager.with_session(path_param(req, "id"), [&](Session& s) {
      const auto event = s.record_interaction(Action::CreatePost, {}, text_field(body, true));
      reply(res, 200, interaction_result(s, event));
    });
  }));

  const auto message_action = [&](Action action) {
    return guarded([&manager, action](const httplib::Request& req, httplib::Response& res) {
      const Json body = parse_body(req);
      const MessageId mid = message_param(req);
      std::optional<std::string> text;
      if (action == Action::CreateComment) text = text_field(body, true);
      if (action == Action::CreateRepost) text = text_field(body, false);
      manager.with_session(path_param(req, "id"), [&](Session& s) {
        reply(res, 200, interaction_result(s, s.record_interaction(action, mid, text)));
      });
    });
  };
  server.Post("/sessions/:id/messages/:mid/likes", message_action(Action::Like));
  server.Post("/sessions/:id/messages/:mid/comments", message_action(Action::CreateComment));
  server.Post("/sessions/:id/messages/:mid/reposts", message_action(Action::CreateRepost));

  server.Post("/sessions/:id/follows", guarded([&](const httplib::Request& req, httplib::Response& res) {
    const Json body = parse_body(req);
    const auto it = body.find("agent_id");
    if (it == body.end() || !it->is_number_unsigned()) {
      throw Error(ErrorCode::BadRequest, "missing or invalid field 'agent_id'");
    }
    const AgentId target{it->get<std::uint32_t>()};
    manager.with_session(path_param(req, "id"), [&](Session& s) {
      reply(res, 200, interaction_result(s, s.record_interaction(Action::Follow, target)));
    });
  }));

  server.Delete("/sessions/:id/follows/:agent_id",
                guarded([&](const httplib::Request& req, httplib::Response& res) {
                  const AgentId target{
                      parse_number<std::uint32_t>(path_param(req, "agent_id"), "agent id")};
                  manager.with_session(path_param(req, "id"), [&](Session& s) {
                    reply(res, 200,
                          interaction_result(s, s.record_interaction(Action::Unfollow, target)));
                  });
                }));

  server.Get("/users/:handle", guarded([&](const httplib::Request& req, httplib::Response& res) {
    if (!req.has_param("session")) {
      throw Error(ErrorCode::BadRequest, "query parameter 'session' is required");
    }
    const std::string& handle = path_param(req, "handle");
    manager.with_session(req.get_param_value("session"), [&](Session& s) {
      const auto id = s.find_user(handle);
      if (!id) throw Error(ErrorCode::UnknownTarget, "unknown user '" + handle + "'");
      reply(res, 200, render_profile(s, *id));
    });
  }));

  server.Get("/sessions/:id/suggested-users",
             guarded([&](const httplib::Request& req, httplib::Response& res) {
               manager.with_session(path_param(req, "id"), [&](Session& s) {
                 Json users = Json::array();
                 for (AgentId id : s.suggested_users()) {
                   const Agent& a = s.state().agent(id);
                   users.push_back(Json{{"id", id.value},
                                        {"username", a.username},
                                        {"biography", a.biography},
                                        {"followers", s.state().graph.follower_count(id)}});
                 }
                 reply(res, 200, Json{{"users", std::move(users)}});
               });
             }));

  server.Get("/sessions/:id/events", guarded([&](const httplib::Request& req, httplib::Response& res) {
    manager.with_session(path_param(req, "id"), [&](Session& s) {
      reply(res, 200, render_events(s));
    });
  }));

  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      res.set_content(Json{{"code", "NotFound"}, {"message", "no such route"}}.dump(), kJson);
    }
  });
}

}  // namespace polarsim

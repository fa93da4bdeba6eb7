#include <httplib.h>

#include <regex>

#include "polarsim/llm/transport.hpp"

namespace polarsim {
namespace {

class HttplibTransport final : public Transport {
 public:
  HttpResponse post(const HttpRequest& request) override {
    static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
    std::smatch parts;
    if (!std::regex_match(request.url, parts, kUrl)) {
      return HttpResponse{0, "", "malformed url " + request.url};
    }
    const std::string origin = parts[1].str();
    const std::string path = parts[2].matched ? parts[2].str() : "/";

    httplib::Client client(origin);
    const auto seconds = static_cast<time_t>(request.timeout_s);
    const auto micros = static_cast<time_t>((request.timeout_s - static_cast<double>(seconds)) * 1e6);
    client.set_connection_timeout(seconds, micros);
    client.set_read_timeout(seconds, micros);
    client.set_write_timeout(seconds, micros);

    httplib::Headers headers;
    std::string content_type = "application/json";
    for (const auto& [name, value] : request.headers) {
      if (name == "Content-Type") {
        content_type = value;
      } else {
        headers.emplace(name, value);
      }
    }
    auto result = client.Post(path, headers, request.body, content_type);
    if (!result) return HttpResponse{0, "", httplib::to_string(result.error())};
    return HttpResponse{result->status, result->body, ""};
  }
};

}  // namespace

std::shared_ptr<Transport> make_http_transport() { return std::make_shared<HttplibTransport>(); }

}  // namespace polarsim

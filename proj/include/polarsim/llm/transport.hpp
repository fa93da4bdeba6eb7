#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace polarsim {

struct HttpRequest {
  std::string url;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
  double timeout_s = 30.0;
};

struct HttpResponse {
  int status = 0;  // 0: no response (connection failure, timeout)
  std::string body;
  std::string error;
};

/// Minimal POST-only HTTP client seam so the live gateway can be exercised
/// against fakes.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResponse post(const HttpRequest& request) = 0;
};

/// cpp-httplib backed transport. https URLs need the OpenSSL build.
std::shared_ptr<Transport> make_http_transport();

}  // namespace polarsim

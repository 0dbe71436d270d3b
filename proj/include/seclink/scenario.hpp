#pragma once

// Scripted worlds loaded from JSON:
//
//   { "files": { "/temp/index.html": "<base64>" },
//     "requests": [ { "client_id": 1, "raw_request_bytes": "GET / HTTP/1.1\r\n\r\n" } ],
//     "max_iterations": 64,
//     "policy": "webserver" }
//
// Only "files" and "requests" are required.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "seclink/world.hpp"

namespace seclink {

class ScenarioError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Request {
  int client_id = 0;
  Bytes raw;
};

struct Scenario {
  std::string name;
  std::vector<std::pair<std::string, Bytes>> files;
  std::vector<Request> requests;
  int max_iterations = 64;
  std::optional<std::string> policy;

  World world() const;
};

Bytes base64_decode(const std::string& text);
std::string base64_encode(const Bytes& data);

Scenario parse_scenario(const std::string& json_text, std::string name = "inline");
Scenario load_scenario(const std::string& path);
/// Every *.json under dir, sorted by file name.
std::vector<Scenario> load_scenarios(const std::string& dir);

}  // namespace seclink

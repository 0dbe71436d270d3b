#include "seclink/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <boost/archive/iterators/base64_from_binary.hpp>
#include <boost/archive/iterators/binary_from_base64.hpp>
#include <boost/archive/iterators/transform_width.hpp>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace seclink {

namespace {

namespace bai = boost::archive::iterators;
using json = nlohmann::json;

}  // namespace

Bytes base64_decode(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != '\n' && c != '\r' && c != ' ') s += c;
  }
  if (s.size() % 4 != 0) throw ScenarioError("base64 length is not a multiple of 4");
  std::size_t pad = 0;
  while (!s.empty() && s.back() == '=') {
    s.pop_back();
    ++pad;
  }
  if (pad > 2) throw ScenarioError("bad base64 padding");
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '/') {
      throw ScenarioError(std::string("bad base64 character '") + c + "'");
    }
  }
  using It = bai::transform_width<bai::binary_from_base64<std::string::const_iterator>, 8, 6>;
  std::string out(It(s.begin()), It(s.end()));
  // transform_width may emit a trailing partial byte built from padding bits.
  std::size_t expected = (s.size() * 6) / 8;
  out.resize(expected);
  return out;
}

std::string base64_encode(const Bytes& data) {
  using It = bai::base64_from_binary<bai::transform_width<Bytes::const_iterator, 6, 8>>;
  std::string out(It(data.begin()), It(data.end()));
  out.append((3 - data.size() % 3) % 3, '=');
  return out;
}

World Scenario::world() const {
  World w;
  for (const auto& [path, content] : files) w.add_file(path, content);
  for (const Request& r : requests) w.add_connection(r.client_id, r.raw);
  return w;
}

Scenario parse_scenario(const std::string& json_text, std::string name) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(name + ": " + e.what());
  }
  Scenario s;
  s.name = std::move(name);
  auto fail = [&](const std::string& msg) { throw ScenarioError(s.name + ": " + msg); };
  if (!j.is_object()) fail("top level must be an object");
  for (const auto& [key, v] : j.items()) {
    if (key != "files" && key != "requests" && key != "max_iterations" && key != "policy") fail("unknown key " + key);
  }
  if (!j.contains("files") || !j["files"].is_object()) fail("\"files\" must be an object of path -> base64");
  if (!j.contains("requests") || !j["requests"].is_array()) fail("\"requests\" must be an array");
  for (const auto& [path, content] : j["files"].items()) {
    if (path.empty() || path[0] != '/') fail("file path must be absolute: " + path);
    if (!content.is_string()) fail("file content must be a base64 string: " + path);
    try {
      s.files.emplace_back(path, base64_decode(content.get<std::string>()));
    } catch (const ScenarioError& e) {
      fail(path + ": " + e.what());
    }
  }
  std::vector<int> ids;
  for (const auto& r : j["requests"]) {
    if (!r.is_object() || !r.contains("client_id") || !r["client_id"].is_number_integer() ||
        !r.contains("raw_request_bytes") || !r["raw_request_bytes"].is_string()) {
      fail("each request needs an integer client_id and a string raw_request_bytes");
    }
    int id = r["client_id"].get<int>();
    if (std::find(ids.begin(), ids.end(), id) != ids.end()) fail("duplicate client_id " + std::to_string(id));
    ids.push_back(id);
    s.requests.push_back(Request{id, r["raw_request_bytes"].get<std::string>()});
  }
  if (j.contains("max_iterations")) {
    if (!j["max_iterations"].is_number_integer() || j["max_iterations"].get<int>() < 0) {
      fail("max_iterations must be a non-negative integer");
    }
    s.max_iterations = j["max_iterations"].get<int>();
  }
  if (j.contains("policy")) {
    if (!j["policy"].is_string()) fail("policy must be a string");
    s.policy = j["policy"].get<std::string>();
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), std::filesystem::path(path).stem().string());
}

std::vector<Scenario> load_scenarios(const std::string& dir) {
  std::vector<std::string> paths;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() == ".json") paths.push_back(e.path().string());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<Scenario> out;
  for (const auto& p : paths) out.push_back(load_scenario(p));
  return out;
}

}  // namespace seclink

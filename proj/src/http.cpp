#include "seclink/demos/http.hpp"

#include <cctype>

namespace seclink::http {

namespace {

constexpr std::string_view kEnd = "\r\n\r\n";

bool has_version(std::string_view v) { return v == "HTTP/1.0" || v == "HTTP/1.1"; }

std::string_view first_line(std::string_view s) {
  auto pos = s.find("\r\n");
  return pos == std::string_view::npos ? std::string_view{} : s.substr(0, pos);
}

bool headers_terminated(std::string_view s) { return s.find(kEnd) != std::string_view::npos; }

bool printable(std::string_view s) {
  for (unsigned char c : s) {
    if (c < 0x21 || c > 0x7e) return false;
  }
  return true;
}

}  // namespace

bool valid_http_request(std::string_view req) {
  if (!headers_terminated(req)) return false;
  std::string_view line = first_line(req);
  auto sp1 = line.find(' ');
  if (sp1 == std::string_view::npos || sp1 == 0) return false;
  auto sp2 = line.find(' ', sp1 + 1);
  if (sp2 == std::string_view::npos) return false;
  std::string_view method = line.substr(0, sp1);
  std::string_view target = line.substr(sp1 + 1, sp2 - sp1 - 1);
  std::string_view version = line.substr(sp2 + 1);
  for (char c : method) {
    if (!std::isupper(static_cast<unsigned char>(c))) return false;
  }
  return !target.empty() && target.front() == '/' && printable(target) && has_version(version);
}

bool valid_http_response(std::string_view res) {
  if (!headers_terminated(res)) return false;
  std::string_view line = first_line(res);
  if (line.size() < 12 || !has_version(line.substr(0, 8)) || line[8] != ' ') return false;
  for (std::size_t i = 9; i < 12; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(line[i]))) return false;
  }
  if (line[9] < '1' || line[9] > '5') return false;
  return line.size() == 12 || line[12] == ' ';
}

std::string request_path(std::string_view req) {
  if (!valid_http_request(req)) return {};
  std::string_view line = first_line(req);
  auto sp1 = line.find(' ');
  auto sp2 = line.find(' ', sp1 + 1);
  std::string_view target = line.substr(sp1 + 1, sp2 - sp1 - 1);
  return std::string(target.substr(0, target.find('?')));
}

std::string reason_phrase(int code) {
  switch (code) {
    case 200: return "OK";
    case 400: return "Bad Request";
    case 403: return "Forbidden";
    case 404: return "Not Found";
    case 500: return "Internal Server Error";
    default: return "Unknown";
  }
}

std::string http_response(int code, std::string_view body) {
  std::string out = "HTTP/1.1 " + std::to_string(code) + " " + reason_phrase(code) + "\r\n";
  out += "Content-Length: " + std::to_string(body.size()) + "\r\n\r\n";
  out += body;
  return out;
}

}  // namespace seclink::http

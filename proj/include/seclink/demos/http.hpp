#pragma once

#include <string>
#include <string_view>

namespace seclink::http {

/// Request line `METHOD SP /path SP HTTP/1.x CRLF`, then headers up to an
/// empty line.
bool valid_http_request(std::string_view req);

/// Status line `HTTP/1.x DDD reason CRLF`, then headers up to an empty line.
bool valid_http_response(std::string_view res);

/// Path of a valid request without its query string; empty otherwise.
std::string request_path(std::string_view req);

std::string reason_phrase(int code);

/// Complete response with a Content-Length header.
std::string http_response(int code, std::string_view body);

}  // namespace seclink::http

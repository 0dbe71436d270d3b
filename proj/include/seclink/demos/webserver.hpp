#pragma once

// The file-serving web server and its request handlers.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "seclink/boundary.hpp"
#include "seclink/constraints.hpp"
#include "seclink/linker.hpp"

namespace seclink::web {

using SendFn = Fn<Bytes, Unit>;
using HandlerArg = std::pair<Fd, std::pair<Bytes, SendFn>>;
using Handler = Fn<HandlerArg, Unit>;

/// fd * (bytes * (bytes -> unit)) -> unit, errors implicit.
Type handler_type();

ArrowSpec handler_spec();
ArrowSpec send_spec();

/// (Inr? r) || (client not in s0.written && client in s1.written)
Check<WebState> handler_check();
/// not s0.responded && valid_http_response(res)
Check<WebState> send_check();

CheckTree<WebState> handler_cks();
/// handler_cks with the handler check weakened to `true`.
CheckTree<WebState> weakened_handler_cks();

PostCond psi();

SourceInterface<WebState> interface(Diagnostics diag = {});

/// The interface as seen by the constraint suite.
Bundle<WebState> bundle(CheckTree<WebState> cks = handler_cks());

struct ServerConfig {
  int max_iterations = 64;
  int port = 3000;
};

/// What the handler returned for one client, as seen by the server.
struct HandlerOutcome {
  Fd client;
  Either<Unit> result;
};
using OutcomeLog = std::shared_ptr<std::vector<HandlerOutcome>>;

/// Socket setup, then a select loop bounded by `max_iterations`.  Valid
/// requests go to the handler; a handler error or an invalid request is
/// answered with 400 unless the client already got an answer.  Returns the
/// number of requests served.
SourceProg web_server(ServerConfig cfg = {}, OutcomeLog outcomes = nullptr);

/// The response the server sends when the handler fails.
Bytes bad_request_response();

// Hand-written handlers, as untrusted contexts.
TargetCtx adversarial_handler(int k);  // k in 1..5
TargetCtx benign_handler();

/// adv1..adv5 and benign, by name.
std::vector<std::pair<std::string, TargetCtx>> handlers();

}  // namespace seclink::web

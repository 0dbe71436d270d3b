#include "seclink/traces.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace seclink {

std::string quote_bytes(std::string_view b) {
  return nlohmann::json(std::string(b)).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

std::string format_args(const IoArgs& a) {
  std::ostringstream os;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Unit>) {
          os << "()";
        } else if constexpr (std::is_same_v<T, Fd>) {
          os << v.value;
        } else if constexpr (std::is_same_v<T, OpenfileArgs>) {
          os << "(" << quote_bytes(v.path) << ", " << v.flags << ", " << v.mode << ")";
        } else if constexpr (std::is_same_v<T, WriteArgs>) {
          os << "(" << v.fd.value << ", " << quote_bytes(v.data) << ")";
        } else if constexpr (std::is_same_v<T, SetsockoptArgs>) {
          os << "(" << v.fd.value << ", " << v.option << ", " << (v.value ? "true" : "false") << ")";
        } else if constexpr (std::is_same_v<T, BindArgs>) {
          os << "(" << v.fd.value << ", " << quote_bytes(v.address) << ", " << v.port << ")";
        } else if constexpr (std::is_same_v<T, ListenArgs>) {
          os << "(" << v.fd.value << ", " << v.backlog << ")";
        } else {
          os << "[";
          for (std::size_t i = 0; i < v.fds.size(); ++i) os << (i ? ", " : "") << v.fds[i].value;
          os << "]";
        }
      },
      a);
  return os.str();
}

std::string format_result(const IoResult& r) {
  if (r.is_inr()) return "Inr " + std::string(errc_name(r.right().code));
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Unit>) {
          return "Inl ()";
        } else if constexpr (std::is_same_v<T, Fd>) {
          return "Inl " + std::to_string(v.value);
        } else {
          return "Inl " + quote_bytes(v);
        }
      },
      r.left());
}

std::string format_event(const Event& e) {
  return std::string(caller_name(e.caller)) + " " + std::string(op_name(e.op)) + " " + format_args(e.args) +
         " -> " + format_result(e.result);
}

std::string format_trace(const Trace& lt) {
  std::string out;
  for (const Event& e : lt) out += format_event(e) + "\n";
  return out;
}

bool enforced_locally(const PolicySpec& sigma, const Trace& h, const Trace& lt) {
  Trace hist = h;
  for (const Event& e : lt) {
    if (!sigma(hist, e.caller, e.op, e.args)) return false;
    hist.insert(hist.begin(), e);
  }
  return true;
}

bool every_request_gets_a_response(const Trace& lt) {
  std::vector<Fd> read_fds;
  for (const Event& e : lt) {
    if (e.op == IoOp::Read && e.caller == Caller::Prog && e.succeeded()) {
      read_fds.push_back(std::get<Fd>(e.args));
    } else if (e.op == IoOp::Write) {
      Fd fd = std::get<WriteArgs>(e.args).fd;
      read_fds.erase(std::remove(read_fds.begin(), read_fds.end(), fd), read_fds.end());
    }
  }
  return read_fds.empty();
}

static bool creates_fd(const Event& e) {
  switch (e.op) {
    case IoOp::Openfile:
    case IoOp::Socket:
    case IoOp::Accept: return e.succeeded();
    default: return false;
  }
}

bool is_opened_by_Ctx(Fd fd, const Trace& h) {
  for (const Event& e : h) {
    if (creates_fd(e) && std::get<Fd>(e.result.left()) == fd) {
      return e.caller == Caller::Ctx && e.op == IoOp::Openfile;
    }
    if (e.op == IoOp::Close && e.succeeded() && std::get<Fd>(e.args) == fd) return false;
  }
  return false;
}

bool is_opened_by_Prog(Fd fd, const Trace& h) {
  for (const Event& e : h) {
    if (creates_fd(e) && std::get<Fd>(e.result.left()) == fd) {
      return e.caller == Caller::Prog && e.op == IoOp::Openfile;
    }
    if (e.op == IoOp::Close && e.succeeded() && std::get<Fd>(e.args) == fd) return false;
  }
  return false;
}

bool did_not_respond(const Trace& h) {
  for (const Event& e : h) {
    if (e.op == IoOp::Write && e.caller == Caller::Prog) return false;
    if (e.op == IoOp::Read && e.succeeded()) return true;
  }
  return true;
}

bool wrote_to(Fd fd, const Trace& t) {
  return std::any_of(t.begin(), t.end(), [fd](const Event& e) {
    return e.op == IoOp::Write && std::get<WriteArgs>(e.args).fd == fd;
  });
}

bool in_folder(std::string_view path, std::string_view folder) {
  std::string prefix(folder);
  if (prefix.empty() || prefix.back() != '/') prefix += '/';
  if (path.substr(0, prefix.size()) != prefix || path.size() == prefix.size()) return false;
  std::string_view rest = path.substr(prefix.size());
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    std::size_t next = rest.find('/', pos);
    if (next == std::string_view::npos) next = rest.size();
    std::string_view seg = rest.substr(pos, next - pos);
    if (seg == ".." || seg == "." || seg.empty()) return false;
    pos = next + 1;
  }
  return true;
}

Behavior beh(const Comp<int>& c, const std::vector<World>& worlds, const AnyMState& desc) {
  Behavior out;
  for (const World& w : worlds) {
    auto run = interpret(c, w, desc);
    std::pair<Trace, int> p{std::move(run.local), run.result};
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  }
  return out;
}

bool satisfies(const Behavior& b, const PostCond& psi) {
  return std::all_of(b.begin(), b.end(), [&](const auto& p) { return psi({}, p.second, p.first); });
}

}  // namespace seclink

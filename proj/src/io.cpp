#include "seclink/io.hpp"

#include <algorithm>

namespace seclink {

std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::contract_failure: return "Contract_failure";
    case Errc::no_entry: return "ENOENT";
    case Errc::bad_fd: return "EBADF";
    case Errc::would_block: return "EAGAIN";
    case Errc::not_socket: return "ENOTSOCK";
    case Errc::invalid: return "EINVAL";
  }
  return "?";
}

std::string_view caller_name(Caller c) { return c == Caller::Prog ? "Prog" : "Ctx"; }

std::string_view op_name(IoOp op) {
  switch (op) {
    case IoOp::Openfile: return "Openfile";
    case IoOp::Read: return "Read";
    case IoOp::Write: return "Write";
    case IoOp::Close: return "Close";
    case IoOp::Socket: return "Socket";
    case IoOp::Setsockopt: return "Setsockopt";
    case IoOp::Bind: return "Bind";
    case IoOp::Listen: return "Listen";
    case IoOp::Accept: return "Accept";
    case IoOp::Select: return "Select";
    case IoOp::SetNonblock: return "SetNonblock";
  }
  return "?";
}

std::optional<IoOp> op_from_name(std::string_view name) {
  for (IoOp op : kAllIoOps) {
    if (op_name(op) == name) return op;
  }
  return std::nullopt;
}

bool args_match(IoOp op, const IoArgs& args) {
  switch (op) {
    case IoOp::Openfile: return std::holds_alternative<OpenfileArgs>(args);
    case IoOp::Read:
    case IoOp::Close:
    case IoOp::Accept:
    case IoOp::SetNonblock: return std::holds_alternative<Fd>(args);
    case IoOp::Write: return std::holds_alternative<WriteArgs>(args);
    case IoOp::Socket: return std::holds_alternative<Unit>(args);
    case IoOp::Setsockopt: return std::holds_alternative<SetsockoptArgs>(args);
    case IoOp::Bind: return std::holds_alternative<BindArgs>(args);
    case IoOp::Listen: return std::holds_alternative<ListenArgs>(args);
    case IoOp::Select: return std::holds_alternative<SelectArgs>(args);
  }
  return false;
}

bool result_matches(IoOp op, const IoResult& r) {
  if (r.is_inr()) return true;
  const IoValue& v = r.left();
  switch (op) {
    case IoOp::Openfile:
    case IoOp::Socket:
    case IoOp::Accept:
    case IoOp::Select: return std::holds_alternative<Fd>(v);
    case IoOp::Read: return std::holds_alternative<Bytes>(v);
    default: return std::holds_alternative<Unit>(v);
  }
}

std::optional<Fd> target_fd(const IoArgs& args) {
  return std::visit(
      [](const auto& a) -> std::optional<Fd> {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Fd>) {
          return a;
        } else if constexpr (std::is_same_v<T, WriteArgs> || std::is_same_v<T, SetsockoptArgs> ||
                             std::is_same_v<T, BindArgs> || std::is_same_v<T, ListenArgs>) {
          return a.fd;
        } else {
          return std::nullopt;
        }
      },
      args);
}

Trace extend_history(const Trace& history, const Trace& local) {
  Trace out;
  out.reserve(history.size() + local.size());
  out.insert(out.end(), local.rbegin(), local.rend());
  out.insert(out.end(), history.begin(), history.end());
  return out;
}

Trace cons_history(const Event& e, const Trace& history) {
  Trace out;
  out.reserve(history.size() + 1);
  out.push_back(e);
  out.insert(out.end(), history.begin(), history.end());
  return out;
}

Event ev_openfile(Caller c, std::string path, IoResult r, int flags, int mode) {
  return Event{c, IoOp::Openfile, OpenfileArgs{std::move(path), flags, mode}, std::move(r)};
}
Event ev_read(Caller c, Fd fd, IoResult r) { return Event{c, IoOp::Read, fd, std::move(r)}; }
Event ev_write(Caller c, Fd fd, Bytes data, IoResult r) {
  return Event{c, IoOp::Write, WriteArgs{fd, std::move(data)}, std::move(r)};
}
Event ev_close(Caller c, Fd fd, IoResult r) { return Event{c, IoOp::Close, fd, std::move(r)}; }

IoResult ok_fd(Fd fd) { return IoResult::inl(fd); }
IoResult ok_bytes(Bytes b) { return IoResult::inl(std::move(b)); }
IoResult ok_unit() { return IoResult::inl(Unit{}); }
IoResult io_error(Errc code) { return IoResult::inr(Err{code, {}}); }

}  // namespace seclink

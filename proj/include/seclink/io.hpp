#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "seclink/core.hpp"

namespace seclink {

enum class Caller { Prog, Ctx };

/// The IO subset of the operation signature.  GetMState is not an IoOp: it
/// has its own computation node and never produces an event.
enum class IoOp {
  Openfile,
  Read,
  Write,
  Close,
  Socket,
  Setsockopt,
  Bind,
  Listen,
  Accept,
  Select,
  SetNonblock,
};

inline constexpr std::array<IoOp, 11> kAllIoOps = {
    IoOp::Openfile, IoOp::Read,   IoOp::Write,  IoOp::Close,
    IoOp::Socket,   IoOp::Setsockopt, IoOp::Bind, IoOp::Listen,
    IoOp::Accept,   IoOp::Select, IoOp::SetNonblock};

std::string_view caller_name(Caller c);
std::string_view op_name(IoOp op);
std::optional<IoOp> op_from_name(std::string_view name);

// Open flags, POSIX-style bit values.
inline constexpr int kReadOnly = 0;
inline constexpr int kWriteOnly = 1;
inline constexpr int kReadWrite = 2;
inline constexpr int kCreate = 0100;
inline constexpr int kAppend = 02000;

struct OpenfileArgs {
  std::string path;
  int flags = kReadOnly;
  int mode = 0;
  friend bool operator==(const OpenfileArgs&, const OpenfileArgs&) = default;
};

struct WriteArgs {
  Fd fd;
  Bytes data;
  friend bool operator==(const WriteArgs&, const WriteArgs&) = default;
};

struct SetsockoptArgs {
  Fd fd;
  std::string option;
  bool value = false;
  friend bool operator==(const SetsockoptArgs&, const SetsockoptArgs&) = default;
};

struct BindArgs {
  Fd fd;
  std::string address;
  int port = 0;
  friend bool operator==(const BindArgs&, const BindArgs&) = default;
};

struct ListenArgs {
  Fd fd;
  int backlog = 0;
  friend bool operator==(const ListenArgs&, const ListenArgs&) = default;
};

struct SelectArgs {
  std::vector<Fd> fds;
  friend bool operator==(const SelectArgs&, const SelectArgs&) = default;
};

/// Argument of an IO call.  Which alternative is legal is fixed by the op:
///   Openfile -> OpenfileArgs        Write -> WriteArgs
///   Read/Close/Accept/SetNonblock -> Fd
///   Socket -> Unit                  Setsockopt -> SetsockoptArgs
///   Bind -> BindArgs                Listen -> ListenArgs
///   Select -> SelectArgs
using IoArgs = std::variant<Unit, Fd, OpenfileArgs, WriteArgs, SetsockoptArgs,
                            BindArgs, ListenArgs, SelectArgs>;

/// Success payload of an IO call: Fd for Openfile/Socket/Accept/Select,
/// Bytes for Read, Unit otherwise.
using IoValue = std::variant<Unit, Fd, Bytes>;
using IoResult = Either<IoValue>;

bool args_match(IoOp op, const IoArgs& args);
bool result_matches(IoOp op, const IoResult& r);

/// The descriptor an op acts on, when it has one.
std::optional<Fd> target_fd(const IoArgs& args);

struct Event {
  Caller caller = Caller::Prog;
  IoOp op = IoOp::Read;
  IoArgs args;
  IoResult result = IoResult::inl(Unit{});

  bool succeeded() const { return result.is_inl(); }
  friend bool operator==(const Event&, const Event&) = default;
};

/// A sequence of events.  Used in two orientations: a *history* is stored
/// most-recent-first, a *local trace* is chronological.
using Trace = std::vector<Event>;

/// reverse(lt) ++ h
Trace extend_history(const Trace& history, const Trace& local);

/// e :: h
Trace cons_history(const Event& e, const Trace& history);

// Event constructors, mostly for tests and demos.
Event ev_openfile(Caller c, std::string path, IoResult r, int flags = kReadOnly, int mode = 0);
Event ev_read(Caller c, Fd fd, IoResult r);
Event ev_write(Caller c, Fd fd, Bytes data, IoResult r);
Event ev_close(Caller c, Fd fd, IoResult r);

IoResult ok_fd(Fd fd);
IoResult ok_bytes(Bytes b);
IoResult ok_unit();
IoResult io_error(Errc code);

}  // namespace seclink

#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>

#include "seclink/io.hpp"

namespace seclink {

/// Deterministic in-memory world the interpreter runs IO against.
///
/// Descriptors 0-2 are the console.  New descriptors are numbered from 3 and
/// never reused within a run.  Reads return the whole pending buffer; writes
/// are total.  Select returns the lowest-numbered ready descriptor among its
/// arguments.  Failures come back in-band as error results.
class World {
 public:
  enum class Kind { Console, File, Socket, ListenSocket, Client };

  struct Descriptor {
    Kind kind = Kind::File;
    Caller owner = Caller::Prog;
    std::string path;
    std::size_t cursor = 0;
    int flags = kReadOnly;
    int client_id = -1;
    Bytes pending;
    bool nonblocking = false;
    friend bool operator==(const Descriptor&, const Descriptor&) = default;
  };

  struct Connection {
    int client_id = 0;
    Bytes request;
    friend bool operator==(const Connection&, const Connection&) = default;
  };

  World();

  void add_file(std::string path, Bytes content);
  void add_connection(int client_id, Bytes request);

  IoResult perform(Caller caller, IoOp op, const IoArgs& args);

  bool is_open(Fd fd) const { return open_.count(fd.value) != 0; }
  const Descriptor* descriptor(Fd fd) const;
  const std::map<std::string, Bytes>& files() const { return files_; }
  const std::map<int, Bytes>& responses() const { return responses_; }
  const Bytes& console() const { return console_; }
  std::size_t pending_connections() const { return pending_.size(); }

  friend bool operator==(const World&, const World&) = default;

 private:
  IoResult openfile(Caller caller, const OpenfileArgs& a);
  IoResult read(Fd fd);
  IoResult write(const WriteArgs& a);
  IoResult close(Fd fd);
  IoResult socket(Caller caller);
  IoResult configure_socket(Fd fd);
  IoResult listen(const ListenArgs& a);
  IoResult accept(Caller caller, Fd fd);
  IoResult select(const SelectArgs& a) const;
  IoResult set_nonblock(Fd fd);
  Fd allocate(Descriptor d);
  bool ready(const Descriptor& d) const;

  std::map<std::string, Bytes> files_;
  std::map<int, Descriptor> open_;
  std::deque<Connection> pending_;
  std::map<int, Bytes> responses_;
  Bytes console_;
  int next_fd_ = 3;
};

}  // namespace seclink

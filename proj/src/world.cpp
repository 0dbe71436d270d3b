#include "seclink/world.hpp"

#include <algorithm>

namespace seclink {

World::World() {
  for (int fd = 0; fd < 3; ++fd) {
    Descriptor d;
    d.kind = Kind::Console;
    d.flags = fd == 0 ? kReadOnly : kWriteOnly;
    open_.emplace(fd, d);
  }
}

void World::add_file(std::string path, Bytes content) { files_[std::move(path)] = std::move(content); }

void World::add_connection(int client_id, Bytes request) {
  pending_.push_back(Connection{client_id, std::move(request)});
}

const World::Descriptor* World::descriptor(Fd fd) const {
  auto it = open_.find(fd.value);
  return it == open_.end() ? nullptr : &it->second;
}

IoResult World::perform(Caller caller, IoOp op, const IoArgs& args) {
  if (!args_match(op, args)) return io_error(Errc::invalid);
  switch (op) {
    case IoOp::Openfile: return openfile(caller, std::get<OpenfileArgs>(args));
    case IoOp::Read: return read(std::get<Fd>(args));
    case IoOp::Write: return write(std::get<WriteArgs>(args));
    case IoOp::Close: return close(std::get<Fd>(args));
    case IoOp::Socket: return socket(caller);
    case IoOp::Setsockopt: return configure_socket(std::get<SetsockoptArgs>(args).fd);
    case IoOp::Bind: return configure_socket(std::get<BindArgs>(args).fd);
    case IoOp::Listen: return listen(std::get<ListenArgs>(args));
    case IoOp::Accept: return accept(caller, std::get<Fd>(args));
    case IoOp::Select: return select(std::get<SelectArgs>(args));
    case IoOp::SetNonblock: return set_nonblock(std::get<Fd>(args));
  }
  return io_error(Errc::invalid);
}

Fd World::allocate(Descriptor d) {
  Fd fd{next_fd_++};
  open_.emplace(fd.value, std::move(d));
  return fd;
}

IoResult World::openfile(Caller caller, const OpenfileArgs& a) {
  if (files_.count(a.path) == 0) {
    if ((a.flags & kCreate) == 0) return io_error(Errc::no_entry);
    files_.emplace(a.path, Bytes{});
  }
  Descriptor d;
  d.kind = Kind::File;
  d.owner = caller;
  d.path = a.path;
  d.flags = a.flags;
  return ok_fd(allocate(std::move(d)));
}

static bool readable(int flags) { return (flags & 3) != kWriteOnly; }
static bool writable(int flags) { return (flags & 3) != kReadOnly; }

IoResult World::read(Fd fd) {
  auto it = open_.find(fd.value);
  if (it == open_.end()) return io_error(Errc::bad_fd);
  Descriptor& d = it->second;
  switch (d.kind) {
    case Kind::Console:
      return readable(d.flags) ? ok_bytes({}) : io_error(Errc::bad_fd);
    case Kind::File: {
      if (!readable(d.flags)) return io_error(Errc::bad_fd);
      const Bytes& content = files_[d.path];
      Bytes out = d.cursor < content.size() ? content.substr(d.cursor) : Bytes{};
      d.cursor = content.size();
      return ok_bytes(std::move(out));
    }
    case Kind::Client: {
      if (d.pending.empty()) return io_error(Errc::would_block);
      Bytes out = std::move(d.pending);
      d.pending.clear();
      return ok_bytes(std::move(out));
    }
    case Kind::Socket:
    case Kind::ListenSocket: return io_error(Errc::invalid);
  }
  return io_error(Errc::invalid);
}

IoResult World::write(const WriteArgs& a) {
  auto it = open_.find(a.fd.value);
  if (it == open_.end()) return io_error(Errc::bad_fd);
  Descriptor& d = it->second;
  switch (d.kind) {
    case Kind::Console:
      if (!writable(d.flags)) return io_error(Errc::bad_fd);
      console_ += a.data;
      return ok_unit();
    case Kind::File:
      if (!writable(d.flags)) return io_error(Errc::bad_fd);
      files_[d.path] += a.data;
      return ok_unit();
    case Kind::Client:
      responses_[d.client_id] += a.data;
      return ok_unit();
    case Kind::Socket:
    case Kind::ListenSocket: return io_error(Errc::invalid);
  }
  return io_error(Errc::invalid);
}

IoResult World::close(Fd fd) {
  if (open_.erase(fd.value) == 0) return io_error(Errc::bad_fd);
  return ok_unit();
}

IoResult World::socket(Caller caller) {
  Descriptor d;
  d.kind = Kind::Socket;
  d.owner = caller;
  return ok_fd(allocate(std::move(d)));
}

IoResult World::configure_socket(Fd fd) {
  const Descriptor* d = descriptor(fd);
  if (d == nullptr) return io_error(Errc::bad_fd);
  if (d->kind != Kind::Socket && d->kind != Kind::ListenSocket) return io_error(Errc::not_socket);
  return ok_unit();
}

IoResult World::listen(const ListenArgs& a) {
  auto it = open_.find(a.fd.value);
  if (it == open_.end()) return io_error(Errc::bad_fd);
  Descriptor& d = it->second;
  if (d.kind != Kind::Socket && d.kind != Kind::ListenSocket) return io_error(Errc::not_socket);
  d.kind = Kind::ListenSocket;
  return ok_unit();
}

IoResult World::accept(Caller caller, Fd fd) {
  const Descriptor* d = descriptor(fd);
  if (d == nullptr) return io_error(Errc::bad_fd);
  if (d->kind == Kind::Socket) return io_error(Errc::invalid);
  if (d->kind != Kind::ListenSocket) return io_error(Errc::not_socket);
  if (pending_.empty()) return io_error(Errc::would_block);
  Connection conn = std::move(pending_.front());
  pending_.pop_front();
  Descriptor client;
  client.kind = Kind::Client;
  client.owner = caller;
  client.client_id = conn.client_id;
  client.pending = std::move(conn.request);
  return ok_fd(allocate(std::move(client)));
}

bool World::ready(const Descriptor& d) const {
  if (d.kind == Kind::ListenSocket) return !pending_.empty();
  if (d.kind == Kind::Client) return !d.pending.empty();
  return false;
}

IoResult World::select(const SelectArgs& a) const {
  std::vector<Fd> fds = a.fds;
  std::sort(fds.begin(), fds.end());
  for (Fd fd : fds) {
    if (!is_open(fd)) return io_error(Errc::bad_fd);
  }
  for (Fd fd : fds) {
    if (ready(*descriptor(fd))) return ok_fd(fd);
  }
  return io_error(Errc::would_block);
}

IoResult World::set_nonblock(Fd fd) {
  auto it = open_.find(fd.value);
  if (it == open_.end()) return io_error(Errc::bad_fd);
  it->second.nonblocking = true;
  return ok_unit();
}

}  // namespace seclink

#pragma once

// Free computation trees over the monitored-IO signature.
//
// A Comp<A> is either a finished value or a caller-tagged operation call
// whose continuation receives the operation's result.  Building a Comp
// performs no effects; only the interpreter walks the tree.

#include <any>
#include <functional>
#include <memory>
#include <type_traits>
#include <utility>
#include <variant>

#include "seclink/io.hpp"

namespace seclink {

template <class A>
class Comp;

namespace detail {

template <class A>
struct ReturnNode {
  A value;
};

template <class A>
struct IoNode {
  Caller caller;
  IoOp op;
  IoArgs args;
  bool mediated;  // emitted through a SecureIoLib
  std::function<Comp<A>(const IoResult&)> cont;
};

/// GetMState.  The state is passed type-erased; get_mstate<S>() casts it back.
template <class A>
struct StateNode {
  std::function<Comp<A>(const std::any&)> cont;
};

template <class T>
struct is_comp : std::false_type {};
template <class T>
struct is_comp<Comp<T>> : std::true_type {};

}  // namespace detail

template <class A>
class Comp {
 public:
  using value_type = A;
  using Node = std::variant<detail::ReturnNode<A>, detail::IoNode<A>, detail::StateNode<A>>;

  explicit Comp(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

  const Node& node() const { return *node_; }
  bool is_return() const { return node_->index() == 0; }
  const A& value() const { return std::get<0>(*node_).value; }

 private:
  std::shared_ptr<const Node> node_;
};

template <class A>
Comp<std::decay_t<A>> ret(A&& value) {
  using V = std::decay_t<A>;
  return Comp<V>(detail::ReturnNode<V>{std::forward<A>(value)});
}

/// Monadic sequencing.  `f` is invoked with the result of `m` and must
/// return a Comp.
template <class A, class F>
auto and_then(const Comp<A>& m, F f) -> std::invoke_result_t<F&, const A&> {
  using CB = std::invoke_result_t<F&, const A&>;
  static_assert(detail::is_comp<CB>::value, "bind continuation must return a Comp");
  using B = typename CB::value_type;
  return std::visit(
      [&](const auto& n) -> CB {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, detail::ReturnNode<A>>) {
          return f(n.value);
        } else if constexpr (std::is_same_v<N, detail::IoNode<A>>) {
          auto k = n.cont;
          return CB(detail::IoNode<B>{n.caller, n.op, n.args, n.mediated,
                                      [k, f](const IoResult& r) { return and_then(k(r), f); }});
        } else {
          auto k = n.cont;
          return CB(detail::StateNode<B>{[k, f](const std::any& s) { return and_then(k(s), f); }});
        }
      },
      m.node());
}

template <class A, class F>
auto fmap(const Comp<A>& m, F f) {
  using B = std::decay_t<std::invoke_result_t<F&, const A&>>;
  return and_then(m, [f](const A& a) { return ret<B>(f(a)); });
}

/// m >> n
template <class A, class B>
Comp<B> then(const Comp<A>& m, Comp<B> n) {
  return and_then(m, [n](const A&) { return n; });
}

/// Raw IO call.  Program code and the monitor/contract machinery may use
/// this; untrusted contexts only ever see a SecureIoLib.
inline Comp<IoResult> call_io(Caller caller, IoOp op, IoArgs args) {
  return Comp<IoResult>(detail::IoNode<IoResult>{caller, op, std::move(args), false,
                                                 [](const IoResult& r) { return ret(r); }});
}

class SecureIoLib;

/// Capability that only SecureIoLib can mint.  Calls made with it are
/// counted by the interpreter's capability audit.
class MonitorKey {
  friend class SecureIoLib;
  MonitorKey() = default;
};

inline Comp<IoResult> call_io_mediated(MonitorKey, IoOp op, IoArgs args) {
  return Comp<IoResult>(detail::IoNode<IoResult>{Caller::Ctx, op, std::move(args), true,
                                                 [](const IoResult& r) { return ret(r); }});
}

/// Reads the current monitor state; records no event.
template <class S>
Comp<S> get_mstate() {
  return Comp<S>(detail::StateNode<S>{[](const std::any& s) { return ret(std::any_cast<const S&>(s)); }});
}

/// Type-erased variant used by machinery that does not know S.
inline Comp<std::any> get_mstate_any() {
  return Comp<std::any>(detail::StateNode<std::any>{[](const std::any& s) { return ret(s); }});
}

// Typed program-side wrappers around call_io.
namespace io {

template <class T>
Comp<Either<T>> narrow(const Comp<IoResult>& c) {
  return fmap(c, [](const IoResult& r) {
    if (r.is_inr()) return Either<T>::inr(r.right());
    if (const T* v = std::get_if<T>(&r.left())) return Either<T>::inl(*v);
    return Either<T>::inr(Err{Errc::invalid, "result shape"});
  });
}

inline Comp<Either<Fd>> openfile(Caller c, std::string path, int flags = kReadOnly, int mode = 0) {
  return narrow<Fd>(call_io(c, IoOp::Openfile, OpenfileArgs{std::move(path), flags, mode}));
}
inline Comp<Either<Bytes>> read(Caller c, Fd fd) { return narrow<Bytes>(call_io(c, IoOp::Read, fd)); }
inline Comp<Either<Unit>> write(Caller c, Fd fd, Bytes data) {
  return narrow<Unit>(call_io(c, IoOp::Write, WriteArgs{fd, std::move(data)}));
}
inline Comp<Either<Unit>> close(Caller c, Fd fd) { return narrow<Unit>(call_io(c, IoOp::Close, fd)); }
inline Comp<Either<Fd>> socket(Caller c) { return narrow<Fd>(call_io(c, IoOp::Socket, Unit{})); }
inline Comp<Either<Unit>> setsockopt(Caller c, Fd fd, std::string option, bool value) {
  return narrow<Unit>(call_io(c, IoOp::Setsockopt, SetsockoptArgs{fd, std::move(option), value}));
}
inline Comp<Either<Unit>> bind_addr(Caller c, Fd fd, std::string address, int port) {
  return narrow<Unit>(call_io(c, IoOp::Bind, BindArgs{fd, std::move(address), port}));
}
inline Comp<Either<Unit>> listen(Caller c, Fd fd, int backlog) {
  return narrow<Unit>(call_io(c, IoOp::Listen, ListenArgs{fd, backlog}));
}
inline Comp<Either<Fd>> accept(Caller c, Fd fd) { return narrow<Fd>(call_io(c, IoOp::Accept, fd)); }
inline Comp<Either<Fd>> select(Caller c, std::vector<Fd> fds) {
  return narrow<Fd>(call_io(c, IoOp::Select, SelectArgs{std::move(fds)}));
}
inline Comp<Either<Unit>> set_nonblock(Caller c, Fd fd) {
  return narrow<Unit>(call_io(c, IoOp::SetNonblock, fd));
}

}  // namespace io

}  // namespace seclink

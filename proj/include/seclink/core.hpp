#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace seclink {

struct Unit {
  friend bool operator==(Unit, Unit) { return true; }
};

/// File descriptor handed out by the world.  Never reused within one run.
struct Fd {
  int value = -1;
  friend auto operator<=>(Fd, Fd) = default;
};

using Bytes = std::string;

enum class Errc {
  contract_failure,
  no_entry,      // ENOENT
  bad_fd,        // EBADF
  would_block,   // EAGAIN
  not_socket,    // ENOTSOCK
  invalid,       // EINVAL
};

std::string_view errc_name(Errc c);

/// Error value carried in the right branch of every boundary result.
/// `provenance` names the contract or monitor that produced a
/// Contract_failure; it is diagnostic only.
struct Err {
  Errc code = Errc::invalid;
  std::string provenance;

  static Err contract_failure(std::string why) {
    return Err{Errc::contract_failure, std::move(why)};
  }
  bool is_contract_failure() const { return code == Errc::contract_failure; }
  friend bool operator==(const Err&, const Err&) = default;
};

/// `either T err`.
template <class T>
class Either {
 public:
  static Either inl(T v) { return Either(std::in_place_index<0>, std::move(v)); }
  static Either inr(Err e) { return Either(std::in_place_index<1>, std::move(e)); }

  bool is_inl() const { return v_.index() == 0; }
  bool is_inr() const { return v_.index() == 1; }
  const T& left() const {
    assert(is_inl());
    return std::get<0>(v_);
  }
  const Err& right() const {
    assert(is_inr());
    return std::get<1>(v_);
  }

  friend bool operator==(const Either&, const Either&) = default;

 private:
  template <std::size_t I, class V>
  Either(std::in_place_index_t<I> tag, V&& v) : v_(tag, std::forward<V>(v)) {}
  std::variant<T, Err> v_;
};

}  // namespace seclink

#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace pwq {

/// Exact half-integer, stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;

  static constexpr HalfInt from_doubled(std::int64_t doubled) {
    HalfInt h;
    h.doubled_ = doubled;
    return h;
  }
  static constexpr HalfInt from_int(std::int64_t value) { return from_doubled(2 * value); }
  static constexpr HalfInt half() { return from_doubled(1); }

  constexpr std::int64_t doubled() const { return doubled_; }
  constexpr bool is_integer() const { return doubled_ % 2 == 0; }
  constexpr double value() const { return static_cast<double>(doubled_) / 2.0; }

  constexpr HalfInt operator-() const { return from_doubled(-doubled_); }
  constexpr HalfInt operator+(HalfInt o) const { return from_doubled(doubled_ + o.doubled_); }
  constexpr HalfInt operator-(HalfInt o) const { return from_doubled(doubled_ - o.doubled_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    doubled_ += o.doubled_;
    return *this;
  }

  constexpr auto operator<=>(const HalfInt&) const = default;

  std::string to_string() const {
    if (is_integer()) return std::to_string(doubled_ / 2);
    return std::to_string(doubled_) + "/2";
  }

 private:
  std::int64_t doubled_ = 0;
};

}  // namespace pwq

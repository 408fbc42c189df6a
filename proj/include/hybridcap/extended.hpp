#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace hybridcap {

// A value of T extended with -inf and +inf. T only needs the field
// operations and a total order, so exact rational types work as well as
// double.
template <typename T>
class Extended {
 public:
  enum class Kind { neg_inf, finite, pos_inf };

  Extended() = default;
  Extended(T v) : kind_(Kind::finite), value_(v) {}  // NOLINT: implicit by intent

  static Extended pos_inf() { return Extended(Kind::pos_inf); }
  static Extended neg_inf() { return Extended(Kind::neg_inf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
  bool is_neg_inf() const { return kind_ == Kind::neg_inf; }

  const T& value() const {
    if (!is_finite()) throw std::logic_error("Extended::value() on an infinite value");
    return value_;
  }

  friend bool operator==(const Extended& a, const Extended& b) {
    if (a.kind_ != b.kind_) return false;
    return !a.is_finite() || a.value_ == b.value_;
  }

  friend bool operator<(const Extended& a, const Extended& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
    return a.is_finite() && a.value_ < b.value_;
  }
  friend bool operator>(const Extended& a, const Extended& b) { return b < a; }
  friend bool operator<=(const Extended& a, const Extended& b) { return !(b < a); }
  friend bool operator>=(const Extended& a, const Extended& b) { return !(a < b); }

  // Adding a finite offset keeps infinities.
  friend Extended operator+(const Extended& a, const T& b) {
    if (!a.is_finite()) return a;
    return Extended(a.value_ + b);
  }
  friend Extended operator+(const T& a, const Extended& b) { return b + a; }
  friend Extended operator-(const Extended& a, const T& b) {
    if (!a.is_finite()) return a;
    return Extended(a.value_ - b);
  }

 private:
  explicit Extended(Kind k) : kind_(k), value_() {}

  Kind kind_ = Kind::finite;
  T value_{};
};

template <typename T>
Extended<T> min(const Extended<T>& a, const Extended<T>& b) {
  return b < a ? b : a;
}

template <typename T>
Extended<T> max(const Extended<T>& a, const Extended<T>& b) {
  return a < b ? b : a;
}

// Printable form used in reports: "inf", "-inf" or the value via to_string_fn.
template <typename T, typename F>
std::string to_string(const Extended<T>& e, F&& to_string_fn) {
  if (e.is_pos_inf()) return "inf";
  if (e.is_neg_inf()) return "-inf";
  return to_string_fn(e.value());
}

}  // namespace hybridcap

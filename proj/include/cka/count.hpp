#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

#include "cka/errors.hpp"

namespace cka {

/// A finite nonnegative count or the symbolic value omega, with
/// omega-absorbing arithmetic.  Used for edge multiplicities, out-degrees,
/// and path-family sizes, where "infinitely many" must stay exact instead of
/// saturating some integer type.
class Count {
 public:
  constexpr Count() : value_(0) {}
  constexpr explicit Count(std::uint64_t n) : value_(n) {
    if (n == kOmega) throw InternalError("finite Count out of range");
  }

  static constexpr Count omega() {
    Count c;
    c.value_ = kOmega;
    return c;
  }

  constexpr bool is_omega() const { return value_ == kOmega; }
  constexpr bool is_zero() const { return value_ == 0; }

  /// The finite value; throws if omega.
  constexpr std::uint64_t finite() const {
    if (is_omega()) throw InternalError("Count::finite() called on omega");
    return value_;
  }

  friend constexpr bool operator==(Count a, Count b) { return a.value_ == b.value_; }
  /// Total order with omega greater than every finite value.
  friend constexpr auto operator<=>(Count a, Count b) { return a.value_ <=> b.value_; }

  friend constexpr Count operator+(Count a, Count b) {
    if (a.is_omega() || b.is_omega()) return omega();
    internal_check(a.value_ <= kOmega - 1 - b.value_, "Count addition overflow");
    return Count(a.value_ + b.value_);
  }
  Count& operator+=(Count o) { return *this = *this + o; }

  /// Product; 0 * omega is 0 (an empty family of infinite bundles is empty).
  friend constexpr Count operator*(Count a, Count b) {
    if (a.is_zero() || b.is_zero()) return Count(0);
    if (a.is_omega() || b.is_omega()) return omega();
    internal_check(a.value_ <= (kOmega - 1) / b.value_, "Count product overflow");
    return Count(a.value_ * b.value_);
  }
  Count& operator*=(Count o) { return *this = *this * o; }

  /// "inf" for omega, decimal digits otherwise (matches the file format's
  /// multiplicity token without the leading 'x').
  std::string str() const { return is_omega() ? "inf" : std::to_string(value_); }

 private:
  static constexpr std::uint64_t kOmega = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t value_;
};

}  // namespace cka

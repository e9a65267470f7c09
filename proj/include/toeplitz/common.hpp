#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace toeplitz {

using i64 = long long;

// Cells are single characters; the hole marks a coordinate that is not yet
// determined by the substitution process.
inline constexpr char kZero = '0';
inline constexpr char kOne = '1';
inline constexpr char kHole = '_';

inline bool is_letter(char c) { return c == kZero || c == kOne; }
inline bool is_cell(char c) { return is_letter(c) || c == kHole; }
inline char flip_letter(char c) { return c == kZero ? kOne : kZero; }

enum class Err {
  AssumptionViolated,
  NoAnchor,
  InsufficientFill,
  RangeTooLarge,
  DepthCapExceeded,
  Unstable,
  PhaseMismatch,
  WindowTooShort,
  NotVerified,
  Inconsistent,
  UnknownWord,
  ClosureFailure,
  NotFound,
  WindowArithmetic,
  RoundTripFailure,
  NotInGroup,
  IterationCap,
  NotMember,
  MissingEntry,
  BudgetExceeded,
  NoHoles,
  BadInput,
};

class Error : public std::runtime_error {
 public:
  Error(Err kind, const std::string& msg, std::string witness = "")
      : std::runtime_error(msg), kind_(kind), witness_(std::move(witness)) {}
  Err kind() const { return kind_; }
  const std::string& witness() const { return witness_; }

 private:
  Err kind_;
  std::string witness_;
};

[[noreturn]] inline void fail(Err k, const std::string& msg,
                              const std::string& witness = "") {
  throw Error(k, msg, witness);
}

inline i64 floor_div(i64 a, i64 b) {
  i64 d = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? d - 1 : d;
}

inline i64 mod_floor(i64 a, i64 b) { return a - floor_div(a, b) * b; }

inline i64 ipow(i64 base, int e) {
  i64 r = 1;
  while (e-- > 0) r *= base;
  return r;
}

// Power with an overflow guard; the cap keeps the result usable as a window
// size or modulus.
inline i64 checked_power(i64 base, int e, i64 cap = i64{1} << 50) {
  i64 r = 1;
  while (e-- > 0) {
    if (r > cap / base)
      fail(Err::RangeTooLarge, "power exceeds the supported range");
    r *= base;
  }
  return r;
}

inline i64 ceil_div(i64 a, i64 b) { return floor_div(a + b - 1, b); }

// Residue of a finite rotation system Z_m; modulus is a prime power here.
struct Phase {
  i64 value = 0;
  i64 modulus = 1;
  friend bool operator==(const Phase&, const Phase&) = default;
};

// A finite block of a (possibly partial) bi-infinite point. The cell at
// absolute index i is cells[i - offset].
struct PartialWindow {
  i64 offset = 0;
  std::string cells;

  i64 lo() const { return offset; }
  i64 hi() const { return offset + static_cast<i64>(cells.size()) - 1; }
  i64 size() const { return static_cast<i64>(cells.size()); }
  bool covers(i64 i) const { return i >= lo() && i <= hi(); }
  char at(i64 i) const { return cells[static_cast<size_t>(i - offset)]; }
  char& at(i64 i) { return cells[static_cast<size_t>(i - offset)]; }

  bool hole_free() const {
    return cells.find(kHole) == std::string::npos;
  }

  std::string to_text() const;
  std::string to_json() const;
  static PartialWindow from_text(const std::string& text);
  static PartialWindow from_json(const std::string& json);

  friend bool operator==(const PartialWindow&, const PartialWindow&) = default;
};

}  // namespace toeplitz

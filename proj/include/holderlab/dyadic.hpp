#pragma once

// Exact dyadic rationals: value = num / 2^exp with num odd (or num == 0, exp == 0).
// exp may be negative (even integers normalize to negative exponents), and is
// capped by a configurable bit budget so runaway subdivision fails loudly
// instead of eating the machine.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace holderlab {

using BigInt = boost::multiprecision::cpp_int;

struct DyadicBudgetError : std::runtime_error {
  explicit DyadicBudgetError(const std::string& what) : std::runtime_error(what) {}
};

class Dyadic {
 public:
  Dyadic() : num_(0), exp_(0) {}
  Dyadic(long long n) : num_(n), exp_(0) { normalize(); }           // NOLINT: implicit on purpose
  Dyadic(BigInt n, std::int64_t exp) : num_(std::move(n)), exp_(exp) { normalize(); }

  static Dyadic zero() { return Dyadic(); }
  static Dyadic one() { return Dyadic(1); }
  // n / 2^k without pre-normalized inputs, e.g. fromParts(6, 4) == 3/2^3
  static Dyadic fromParts(BigInt n, std::int64_t k) { return Dyadic(std::move(n), k); }

  const BigInt& num() const { return num_; }
  std::int64_t exp() const { return exp_; }
  bool isZero() const { return num_.is_zero(); }
  bool isInteger() const { return exp_ <= 0; }

  Dyadic operator-() const { return Dyadic(-num_, exp_, NoNorm{}); }
  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator-(const Dyadic& o) const { return *this + (-o); }
  Dyadic operator*(const Dyadic& o) const;
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
  Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

  // exact division by 2^k (k may be negative)
  Dyadic shiftedRight(std::int64_t k) const { return Dyadic(num_, exp_ + k); }
  Dyadic halved() const { return shiftedRight(1); }

  int cmp(const Dyadic& o) const;
  bool operator==(const Dyadic& o) const { return exp_ == o.exp_ && num_ == o.num_; }
  bool operator!=(const Dyadic& o) const { return !(*this == o); }
  bool operator<(const Dyadic& o) const { return cmp(o) < 0; }
  bool operator<=(const Dyadic& o) const { return cmp(o) <= 0; }
  bool operator>(const Dyadic& o) const { return cmp(o) > 0; }
  bool operator>=(const Dyadic& o) const { return cmp(o) >= 0; }

  int sign() const { return num_.sign(); }
  double toDouble() const;

  // "n/2^k" with k >= 0 (integers render as "n/2^0"); parse() accepts that
  // form, a bare integer, and negative k
  std::string str() const;
  static Dyadic parse(const std::string& text);

  // global exponent budget (bits); ops whose result exceeds it throw
  static std::int64_t budgetBits();
  static void setBudgetBits(std::int64_t bits);

 private:
  struct NoNorm {};
  Dyadic(BigInt n, std::int64_t exp, NoNorm) : num_(std::move(n)), exp_(exp) {}
  void normalize();
  void checkBudget() const;

  BigInt num_;
  std::int64_t exp_;
};

inline Dyadic midpointValue(const Dyadic& a, const Dyadic& b) { return (a + b).halved(); }

}  // namespace holderlab

#include "holderlab/dyadic.hpp"

#include <cmath>
#include <cstdio>

namespace holderlab {

namespace {
std::int64_t g_budgetBits = 4096;
}

std::int64_t Dyadic::budgetBits() { return g_budgetBits; }

void Dyadic::setBudgetBits(std::int64_t bits) {
  if (bits < 64) throw std::invalid_argument("Dyadic budget must be at least 64 bits");
  g_budgetBits = bits;
}

void Dyadic::normalize() {
  if (num_.is_zero()) {
    exp_ = 0;
    return;
  }
  std::size_t tz = boost::multiprecision::lsb(boost::multiprecision::abs(num_));
  if (tz > 0) {
    num_ >>= tz;
    exp_ -= static_cast<std::int64_t>(tz);
  }
  checkBudget();
}

void Dyadic::checkBudget() const {
  if (exp_ > g_budgetBits || exp_ < -g_budgetBits)
    throw DyadicBudgetError("dyadic exponent " + std::to_string(exp_) +
                            " exceeds the configured budget of " + std::to_string(g_budgetBits) +
                            " bits");
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
  if (isZero()) return o;
  if (o.isZero()) return *this;
  if (exp_ >= o.exp_) return Dyadic(num_ + (o.num_ << static_cast<unsigned>(exp_ - o.exp_)), exp_);
  return Dyadic((num_ << static_cast<unsigned>(o.exp_ - exp_)) + o.num_, o.exp_);
}

Dyadic Dyadic::operator*(const Dyadic& o) const { return Dyadic(num_ * o.num_, exp_ + o.exp_); }

int Dyadic::cmp(const Dyadic& o) const {
  int sa = num_.sign(), sb = o.num_.sign();
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  // same sign: compare num_ * 2^{o.exp_} with o.num_ * 2^{exp_}
  if (exp_ >= o.exp_) {
    BigInt rhs = o.num_ << static_cast<unsigned>(exp_ - o.exp_);
    return num_ < rhs ? -1 : (num_ == rhs ? 0 : 1);
  }
  BigInt lhs = num_ << static_cast<unsigned>(o.exp_ - exp_);
  return lhs < o.num_ ? -1 : (lhs == o.num_ ? 0 : 1);
}

double Dyadic::toDouble() const {
  if (num_.is_zero()) return 0.0;
  // keep the top 64 bits and fold the rest into the exponent
  BigInt a = boost::multiprecision::abs(num_);
  std::int64_t bits = static_cast<std::int64_t>(boost::multiprecision::msb(a)) + 1;
  std::int64_t drop = bits > 64 ? bits - 64 : 0;
  std::uint64_t top = static_cast<std::uint64_t>(a >> static_cast<unsigned>(drop));
  double d = std::ldexp(static_cast<double>(top), static_cast<int>(drop - exp_));
  return num_.sign() < 0 ? -d : d;
}

std::string Dyadic::str() const {
  if (exp_ <= 0) return BigInt(num_ << static_cast<unsigned>(-exp_)).str() + "/2^0";
  return num_.str() + "/2^" + std::to_string(exp_);
}

Dyadic Dyadic::parse(const std::string& text) {
  auto bad = [&] { return std::invalid_argument("bad dyadic literal: '" + text + "'"); };
  if (text.empty()) throw bad();
  std::size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) return Dyadic(BigInt(text), 0);
    if (text.compare(slash, 3, "/2^") != 0) throw bad();
    BigInt n(text.substr(0, slash));
    std::int64_t k = std::stoll(text.substr(slash + 3));
    return Dyadic(std::move(n), k);
  } catch (const DyadicBudgetError&) {
    throw;
  } catch (const std::exception&) {
    throw bad();
  }
}

}  // namespace holderlab

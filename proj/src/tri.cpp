#include "holderlab/tri.hpp"

#include <stdexcept>

namespace holderlab {

TriAddress TriAddress::child(int d) const {
  if (len >= kMaxLen) throw std::length_error("TriAddress: depth limit exceeded");
  if (d < 0 || d > 2) throw std::invalid_argument("TriAddress: digit must be 0, 1 or 2");
  TriAddress r = *this;
  r.bits |= static_cast<std::uint64_t>(d) << (2 * len);
  r.len = static_cast<std::uint8_t>(len + 1);
  return r;
}

TriAddress TriAddress::parent() const {
  if (len == 0) throw std::logic_error("TriAddress: root has no parent");
  return prefix(len - 1);
}

TriAddress TriAddress::prefix(int newLen) const {
  if (newLen < 0 || newLen > len) throw std::out_of_range("TriAddress::prefix");
  TriAddress r;
  r.len = static_cast<std::uint8_t>(newLen);
  r.bits = newLen == 0 ? 0 : (bits & ((~0ull) >> (64 - 2 * newLen)));
  return r;
}

bool TriAddress::isPrefixOf(const TriAddress& o) const {
  return len <= o.len && o.prefix(len).bits == bits;
}

std::uint64_t TriAddress::levelIndex() const {
  std::uint64_t idx = 0;
  for (int i = 0; i < len; ++i) idx = idx * 3 + static_cast<std::uint64_t>(digit(i));
  return idx;
}

TriAddress TriAddress::fromLevelIndex(int level, std::uint64_t index) {
  if (level < 0 || level > kMaxLen) throw std::out_of_range("TriAddress::fromLevelIndex");
  TriAddress r;
  r.len = static_cast<std::uint8_t>(level);
  for (int i = level - 1; i >= 0; --i) {
    r.bits |= (index % 3) << (2 * i);
    index /= 3;
  }
  if (index != 0) throw std::out_of_range("TriAddress::fromLevelIndex: index too large");
  return r;
}

std::string TriAddress::str() const {
  std::string s;
  for (int i = 0; i < len; ++i) {
    if (i) s += ',';
    s += static_cast<char>('0' + digit(i));
  }
  return s;
}

TriAddress TriAddress::parse(const std::string& text) {
  TriAddress r;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c < '0' || c > '2')
      throw std::invalid_argument("TriAddress::parse: bad digit in '" + text + "'");
    r = r.child(c - '0');
    ++i;
    if (i < text.size()) {
      if (text[i] != ',')
        throw std::invalid_argument("TriAddress::parse: expected ',' in '" + text + "'");
      ++i;
      if (i == text.size())
        throw std::invalid_argument("TriAddress::parse: trailing ',' in '" + text + "'");
    }
  }
  return r;
}

std::array<Point, 3> realizeCorners(const TriAddress& a) {
  std::array<Point, 3> q = {Point{Dyadic(0), Dyadic(0)},   // A
                            Point{Dyadic(1), Dyadic(0)},   // B
                            Point{Dyadic(0), Dyadic(1)}};  // C
  for (int i = 0; i < a.len; ++i) {
    int d = a.digit(i);
    for (int j = 0; j < 3; ++j)
      if (j != d) q[j] = midpoint(q[d], q[j]);
  }
  return q;
}

KappaWalk KappaWalk::ofAddress(const TriAddress& a) {
  KappaWalk w;
  if (a.len == 0) return w;  // kappa(tau_0) = 1; the root counts as scheme index 0
  for (int i = 1; i < a.len; ++i) {
    if (w.schemeState && a.digit(i) != a.digit(i - 1)) {
      w.schemeState = false;  // run broken: conductivity halves, leaves the family
      ++w.kExp;
    } else {
      w.schemeState = true;   // repeated digit, or re-entry below a broken run
    }
  }
  w.schemeIndex = w.schemeState ? a.len - w.kExp : -1;
  return w;
}

}  // namespace holderlab

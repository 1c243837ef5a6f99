#pragma once

// Addresses in the dyadic triangle subdivision tree.
//
// tau_0 = {ABC}; each cell splits into three half-scale children, digit d in
// {0,1,2} = the parent corner the child keeps.  realizeCorners() returns the
// three corners in the inherited labelling: corner j of child d is the parent
// corner j for j == d and the midpoint (Q_d + Q_j)/2 otherwise.

#include "holderlab/geometry.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace holderlab {

struct TriAddress {
  static constexpr int kMaxLen = 31;

  std::uint64_t bits = 0;  // 2 bits per digit, root-first from the LSB
  std::uint8_t len = 0;

  int digit(int i) const { return static_cast<int>((bits >> (2 * i)) & 3u); }
  int lastDigit() const { return digit(len - 1); }
  int level() const { return len; }
  bool isRoot() const { return len == 0; }

  TriAddress child(int d) const;
  TriAddress parent() const;
  TriAddress prefix(int newLen) const;
  bool isPrefixOf(const TriAddress& o) const;

  bool operator==(const TriAddress& o) const { return bits == o.bits && len == o.len; }
  bool operator!=(const TriAddress& o) const { return !(*this == o); }

  // canonical enumeration index of the address among level-`len` cells:
  // digits read as a base-3 number, root digit most significant
  std::uint64_t levelIndex() const;
  static TriAddress fromLevelIndex(int level, std::uint64_t index);

  std::string str() const;                       // "0,2,1" ("" for the root)
  static TriAddress parse(const std::string&);   // inverse of str()
};

struct TriAddressHash {
  std::size_t operator()(const TriAddress& a) const {
    return std::hash<std::uint64_t>()(a.bits * 0x9e3779b97f4a7c15ull ^ a.len);
  }
};

// exact corners of the cell, labelled 0/1/2 as inherited from A/B/C
std::array<Point, 3> realizeCorners(const TriAddress& a);

// ---------------------------------------------------------------------------
// conductivity exponent on the full subdivision tree
//
// kappa(tau_0) = kappa(tau_1 cells) = 1 and, walking down an address, the
// conductivity halves exactly when a run of repeated digits is broken while
// the walk sits on a "scheme" cell; the very next step restores scheme state
// at unchanged conductivity.  KappaWalk scans digits in one pass and yields
// kappa(T) = 2^{-kExp} for *every* cell, plus scheme membership: T belongs to
// the n-th scheme family iff the walk ends in scheme state, with
// n = level - kExp.

struct KappaWalk {
  int kExp = 0;         // kappa(T) = 2^{-kExp}
  bool schemeState = true;
  int schemeIndex = 0;  // n with T in the n-th family when schemeState, else -1

  static KappaWalk ofAddress(const TriAddress& a);
};

}  // namespace holderlab

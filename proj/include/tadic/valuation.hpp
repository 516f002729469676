#pragma once

#include "tadic/rational.hpp"

namespace tadic {

/// A valuation that is either known exactly or only bounded below
/// (value is then the cap reached by the working precision).
struct Valuation {
  Rational value{0};
  bool exact = true;

  static Valuation at_least(Rational cap) { return {cap, false}; }
};

inline bool operator==(const Valuation& a, const Valuation& b) {
  return a.value == b.value && a.exact == b.exact;
}

}  // namespace tadic

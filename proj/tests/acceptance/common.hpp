#pragma once

#include "../oracles.hpp"
#include "../test_charts.hpp"

#include "fedq/cotangent.hpp"

#include <string>
#include <vector>

namespace fedq::acceptance {

/// A secondary line printed under a criterion.  It never changes the verdict.
struct Note {
  std::string label;
  bool pass = true;
  std::string detail;
};

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<Note> notes;

  /// Records the first failure only; later ones add nothing useful.
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

inline bool equal_to_cap(const PolyJet& a, const PolyJet& b) {
  int cap = std::min(a.cap(), b.cap());
  return a.truncated(cap) == b.truncated(cap);
}

inline std::string show(const PolyJet& f) { return print_canonical(f); }

Outcome moyal_recovery();
Outcome fedosov_flatness();
Outcome golden_low_orders();
Outcome star_axioms();
Outcome associativity();
Outcome cotangent_lift();
Outcome compatibility_qdegree();
Outcome geometric_operators();
Outcome kinetic_coefficient();
Outcome metaplectic_suite();
Outcome kahler_report();

}  // namespace fedq::acceptance

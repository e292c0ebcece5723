#pragma once

#include "modasym/errors.hpp"

namespace modasym {

/// Working precision for every numeric evaluation.
struct PrecisionContext {
  long bits = 256;
  double target_rel_tol = 1e-12;

  void validate() const {
    if (bits < 64) throw DomainError("PrecisionContext: bits must be >= 64");
    if (!(target_rel_tol > 0.0)) throw DomainError("PrecisionContext: target_rel_tol must be > 0");
  }
};

}  // namespace modasym

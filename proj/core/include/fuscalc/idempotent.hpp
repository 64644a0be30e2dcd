#pragma once

#include <optional>
#include <vector>

#include "fuscalc/burnside.hpp"
#include "fuscalc/fusion.hpp"

namespace fuscalc {

// A candidate characteristic idempotent with per-property verdicts.
// characteristic() is true exactly when every verdict holds, in which case
// omega is the characteristic idempotent of the fusion system.
struct IdempotentReport {
  BurnsideElement omega;
  BurnsideElement omega_top;     // classes with full-size source subgroup
  BurnsideElement omega_strict;  // the strictly subconjugate remainder

  bool property_a = false;   // support inside the fusion classes
  bool property_b1 = false;  // right stability
  bool property_b2 = false;  // left stability
  bool property_c = false;   // augmentation 1
  bool idempotent = false;
  bool p_integral = false;
  bool top_form = false;  // omega_top = (1/|Out_F(S)|) sum of [S,phi]

  std::optional<Pair> a_counterexample;
  std::optional<GroupHom> b1_counterexample;
  std::optional<GroupHom> b2_counterexample;

  bool characteristic() const {
    return property_a && property_b1 && property_b2 && property_c && idempotent && p_integral &&
           top_form;
  }
};

// The basis of A_F(S,S) in the order the linear system wants: subgroup
// classes by decreasing order (S first), within each class the inclusion
// class first, the rest by canonical class order.
struct FusionClassBasis {
  struct Entry {
    int subgroup_class;  // index i of the source subgroup class
    int basis_index;     // index into pair_basis(S, S)
    bool inclusion;      // the class of [P_i, incl]
  };
  std::vector<Subgroup> class_reps;        // P_0 = S, decreasing order
  std::vector<std::vector<int>> by_class;  // entry indices per subgroup class
  std::vector<Entry> entries;              // flattened, lexicographic (i, j)
};

FusionClassBasis fusion_class_basis(const FusionSystem& F);

/// Solves the marks/chi linear system for the characteristic idempotent and
/// verifies every property. The system is always uniquely solvable; a
/// verification failure is a report outcome, not an error.
IdempotentReport char_idempotent_solve(const FusionSystem& F);

/// Runs every characteristic-idempotent check against a given candidate.
IdempotentReport verify_lw(const BurnsideElement& omega, const FusionSystem& F);

/// Smallest M in t, 2t, 3t, ... with Omega^M idempotent mod p, where t is
/// the period found by the pigeonhole scan of powers mod p.
int find_M(const BurnsideElement& omega, int p);

/// p-adic iteration: normalizes the augmentation to 1 mod p by powering,
/// raises to find_M's exponent, then takes p-th powers mod p^precision until
/// stable. start must lie in A_F(S,S) with integer coefficients, be F-stable
/// on both sides, and have augmentation coprime to p.
BurnsideElement char_idempotent_iterate(const BurnsideElement& start, const FusionSystem& F,
                                        int precision);

/// Coefficient-wise canonical residues mod p^precision.
BurnsideElement reduce_mod(const BurnsideElement& e, int p, int precision);

}  // namespace fuscalc

#pragma once

#include "fuscalc/burnside.hpp"
#include "fuscalc/group.hpp"

namespace fuscalc {

// A finite set with a right S1-action and a free left S2-action that
// commute. The explicit counterpart of an element of A^+(S1,S2); used for
// orbit decomposition and as the independent model of composition.
struct ExplicitBiset {
  Group right;  // S1
  Group left;   // S2
  int size = 0;
  std::vector<std::vector<int>> act_right;  // [x][g]
  std::vector<std::vector<int>> act_left;   // [h][x]
};

/// The transitive biset S2 x_{(P,psi)} S1 of a pair.
ExplicitBiset biset_of_pair(const Group& S1, const Group& S2, const Pair& q);

/// The balanced product over the middle group: outer x_{S2} inner, for
/// outer an (S2,S3)-biset and inner an (S1,S2)-biset.
ExplicitBiset biset_product(const ExplicitBiset& outer, const ExplicitBiset& inner);

/// G with S acting by translation on both sides, as an (S,S)-biset over the
/// standalone subgroup group.
ExplicitBiset group_biset(const Group& G, const Subgroup& S);

/// Orbit decomposition into pair classes. Validates the commuting actions
/// and freeness of the left action.
BurnsideElement decompose_biset(const ExplicitBiset& X);

/// |S2 \ X|: the number of left orbits (the augmentation, counted directly).
long orbit_count_left(const ExplicitBiset& X);

/// |X^{Graph(q)}| counted directly on X.
long fixed_points(const ExplicitBiset& X, const Pair& q);

/// [G] in A(S,S): decompose_biset(group_biset(G, S)).
BurnsideElement group_as_biset(const Group& G, const Subgroup& S);

}  // namespace fuscalc

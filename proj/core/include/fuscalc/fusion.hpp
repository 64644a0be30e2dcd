#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fuscalc/group.hpp"

namespace fuscalc {

// A fusion system over a finite p-group S. Morphism sets are stored
// extensionally as the master sets Hom_F(P, S); the set Hom_F(P, Q) is the
// subset of maps whose image lies in Q, which is equivalent by the closure
// axioms (every morphism factors as an isomorphism followed by an inclusion).
class FusionSystem {
 public:
  FusionSystem() = default;

  const Group& S() const { return d_->S; }
  int p() const { return d_->p; }

  int size() const { return static_cast<int>(d_->subs.size()); }
  const Subgroup& subgroup(int i) const { return d_->subs[i]; }
  int subgroup_index(const std::vector<int>& sorted_members) const;

  /// Hom_F(P_i, S), sorted by hom_less. Always contains the inclusion.
  const std::vector<GroupHom>& morphisms_from(int i) const { return d_->morphs[i]; }

  /// Hom_F(P_i, P_j): morphisms from P_i whose image lies inside P_j.
  std::vector<GroupHom> hom_set(int i, int j) const;

  /// Membership of a map-into-S in Hom_F(dom, S).
  bool contains(const GroupHom& f) const;

  bool valid() const { return static_cast<bool>(d_); }
  bool same(const FusionSystem& o) const { return d_ == o.d_; }

  /// Extensional equality: same underlying group handle, same prime, same
  /// morphism sets.
  bool operator==(const FusionSystem& o) const;

 private:
  struct Data {
    Group S;
    int p = 0;
    std::vector<Subgroup> subs;             // canonical order; index 0 is S
    std::vector<std::vector<GroupHom>> morphs;
  };
  std::shared_ptr<const Data> d_;
  friend FusionSystem make_fusion_system(const Group&, int, std::vector<std::vector<GroupHom>>);
};

/// Assembles a fusion system from per-subgroup master morphism sets (indexed
/// like subgroups(S)). Checks basic well-formedness, not the closure axioms.
FusionSystem make_fusion_system(const Group& S, int p,
                                std::vector<std::vector<GroupHom>> morphisms);

/// F_S(G): morphisms are the conjugations induced by elements of G.
/// S must be a Sylow p-subgroup of G.
FusionSystem fusion_of_group(const Group& G, const Subgroup& S, int p);

/// F_S = fusion_of_group(S, S, p).
FusionSystem inner_fusion(const Group& S, int p);

/// Smallest fusion system containing Hom_S and the generators; closed under
/// composition, restriction, inversion of isomorphisms and corestriction.
FusionSystem generate_fusion(const Group& S, int p, const std::vector<GroupHom>& generators);

/// The inner fusion system of F's group, cached.
const FusionSystem& inner_of(const FusionSystem& F);

/// Checks the closure axioms on an assembled fusion system.
bool validate_fusion(const FusionSystem& F);

struct SaturationWitness {
  std::string axiom;                   // "I" or "II"
  std::vector<int> subgroup;           // members of the offending P
  std::optional<GroupHom> morphism;    // axiom II: the non-extending phi
  std::vector<int> n_phi;              // axiom II: members of N_phi
  std::string detail;
};

struct SaturationReport {
  bool saturated = true;
  std::vector<SaturationWitness> witnesses;
};

SaturationReport is_saturated(const FusionSystem& F);

struct FConjugacy {
  std::vector<int> class_of;                 // subgroup index -> class id
  std::vector<std::vector<int>> classes;     // class id -> subgroup indices
  std::vector<std::vector<char>> class_leq;  // class_leq[a][b]: a is F-subconjugate to b
};

FConjugacy f_conjugacy(const FusionSystem& F);

struct OuterAutData {
  int order = 0;
  std::vector<GroupHom> reps;  // coset representatives of Aut_S(S) in Aut_F(S)
};

OuterAutData out_f_s(const FusionSystem& F);

struct FusionPreserving {
  bool preserving = false;
  std::optional<GroupHom> counterexample;  // F1-morphism with no F2 companion
};

/// Whether gamma : S1 -> S2 carries every F1-morphism to an F2-morphism
/// compatibly. The companion of each morphism is pointwise determined.
FusionPreserving is_fusion_preserving(const GroupHom& gamma, const FusionSystem& F1,
                                      const FusionSystem& F2);

/// The pointwise-induced companion of phi under gamma, if well defined.
std::optional<GroupHom> push_morphism(const GroupHom& gamma, const GroupHom& phi);

/// Hom-set-wise inclusion of fusion systems over the same group.
bool subsystem_of(const FusionSystem& F1, const FusionSystem& F2);

}  // namespace fuscalc

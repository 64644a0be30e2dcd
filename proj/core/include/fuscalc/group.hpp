#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fuscalc/error.hpp"

namespace fuscalc {

// Order caps. The p-group cap bounds the groups fusion systems live on,
// the ambient cap everything else. Configuration, not a hard limit.
struct Caps {
  int p_group = 64;
  int ambient = 1024;
};

Caps& caps();

// A finite group with dense element labels 0..order-1 and a precomputed
// multiplication table. Immutable once built; handles share the data and
// compare by identity (label spaces of distinct handles are unrelated).
class Group {
 public:
  struct Data {
    std::vector<std::vector<int>> table;
    std::vector<int> inv;
    int identity = 0;
    std::string name;
    std::uint64_t uid = 0;
    // Permutation realization (0-based image vectors), present only when the
    // group was built from permutation generators. Sorted; defines the labels.
    std::vector<std::vector<int>> perms;
  };

  Group() = default;

  int order() const { return static_cast<int>(d_->table.size()); }
  int mul(int a, int b) const { return d_->table[a][b]; }
  int inv(int a) const { return d_->inv[a]; }
  int identity() const { return d_->identity; }
  const std::string& name() const { return d_->name; }
  std::uint64_t id() const { return d_->uid; }
  bool valid() const { return static_cast<bool>(d_); }
  bool same(const Group& o) const { return d_ == o.d_; }

  int element_order(int a) const;
  int power(int a, long n) const;
  int conjugate(int g, int x) const {  // g x g^{-1}
    return mul(mul(g, x), inv(g));
  }

  const std::vector<std::vector<int>>& permutations() const { return d_->perms; }

  /// Builds from a full multiplication table. Validates associativity,
  /// identity and inverses. Throws InputError / CapError.
  static Group from_table(std::vector<std::vector<int>> table, std::string name = "");

  /// Builds the group generated by permutations given in cycle form
  /// (1-based points). Labels follow the lexicographic order of the
  /// generated permutations, so they are stable across runs.
  static Group from_permutation_cycles(int degree,
                                       const std::vector<std::vector<std::vector<int>>>& generators,
                                       std::string name = "");

  /// Same, with generators given as 0-based image vectors.
  static Group from_permutations(int degree, std::vector<std::vector<int>> generators,
                                 std::string name = "");

  /// Internal: adopts an already-validated table (used for subgroup groups).
  static Group adopt(Data&& data);

 private:
  std::shared_ptr<const Data> d_;
};

struct GroupSpec {
  enum class Kind { table, permutation };
  Kind kind = Kind::table;
  std::vector<std::vector<int>> table;
  int degree = 0;
  std::vector<std::vector<std::vector<int>>> generators;  // cycles, 1-based points
  std::string name;
};

Group make_group(const GroupSpec& spec);

// A subgroup is its sorted member-label set inside a parent group.
struct Subgroup {
  Group parent;
  std::vector<int> members;

  int order() const { return static_cast<int>(members.size()); }
  bool contains(int x) const;
};

bool is_prime(int p);
int p_part(int n, int p);

std::vector<int> closure(const Group& G, std::vector<int> seed);
bool is_subgroup_set(const Group& G, const std::vector<int>& sorted_members);
Subgroup make_subgroup(const Group& G, std::vector<int> members);
Subgroup generated_subgroup(const Group& G, const std::vector<int>& gens);
Subgroup trivial_subgroup(const Group& G);
Subgroup full_subgroup(const Group& G);

/// Project-wide canonical order on subgroups of one group: decreasing order,
/// then lexicographic member list. Basis orderings everywhere rely on it.
bool subgroup_canonical_less(const std::vector<int>& a, const std::vector<int>& b);

/// All subgroups, each exactly once, in canonical order. Cached per group.
const std::vector<Subgroup>& subgroups(const Group& G);

std::vector<int> conjugate_members(const Group& G, const std::vector<int>& members, int g);

/// N_G(H, K) = { g in G | g H g^{-1} <= K }.
std::vector<int> transporter(const Group& G, const Subgroup& H, const Subgroup& K);
std::vector<int> normalizer_of(const Group& G, const Subgroup& H);
std::vector<int> centralizer_of(const Group& G, const Subgroup& H);

// A homomorphism from a subgroup of src into dst, stored extensionally:
// dom is the sorted member list, img the parallel images.
struct GroupHom {
  Group src;
  Group dst;
  std::vector<int> dom;
  std::vector<int> img;

  int apply(int x) const;
  bool injective() const;
  bool trivial() const;  // constant at the identity of dst
  std::vector<int> image_members() const;
};

bool operator==(const GroupHom& a, const GroupHom& b);
bool hom_less(const GroupHom& a, const GroupHom& b);

GroupHom inclusion_hom(const Subgroup& P);
GroupHom trivial_hom(const Subgroup& P, const Group& T);
GroupHom conjugation_hom(const Group& G, const Subgroup& P, int g);
GroupHom restrict_hom(const GroupHom& f, const std::vector<int>& sub_members);
GroupHom compose_homs(const GroupHom& outer, const GroupHom& inner);
std::optional<GroupHom> inverse_hom(const GroupHom& f);
bool is_multiplicative(const GroupHom& f);

/// Hom_G(H, K): the distinct conjugation maps c_g : H -> K, g in N_G(H,K).
/// Returned homs have dst = G with image inside K.
std::vector<GroupHom> hom_classes(const Group& G, const Subgroup& H, const Subgroup& K);

/// A Sylow p-subgroup; deterministic: first in canonical subgroup order
/// among all Sylow p-subgroups.
Subgroup sylow(const Group& G, int p);

/// All homomorphisms P -> T (monomorphisms only when injective_only), found
/// by generator-image search; every candidate is validated by checking
/// multiplicativity on all of P.
std::vector<GroupHom> enumerate_homs(const Subgroup& P, const Group& T, bool injective_only);

// A subgroup repackaged as a standalone group. Labels 0..|P|-1 follow the
// sorted member order; embed sends them back into the parent.
struct SubgroupGroup {
  Group group;
  GroupHom embed;  // group -> parent
};

/// Cached; repeated calls for the same subgroup return the same Group handle.
const SubgroupGroup& as_group(const Subgroup& P);

}  // namespace fuscalc

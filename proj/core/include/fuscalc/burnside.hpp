#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "fuscalc/fusion.hpp"
#include "fuscalc/group.hpp"
#include "fuscalc/linalg.hpp"
#include "fuscalc/rational.hpp"

namespace fuscalc {

// An (S1,S2)-pair: a subgroup P <= S1 together with a homomorphism
// psi : P -> S2 (any homomorphism, not necessarily injective).
// dom holds the sorted members of P, img the parallel images.
struct Pair {
  std::vector<int> dom;
  std::vector<int> img;
};

bool operator==(const Pair& a, const Pair& b);
bool operator<(const Pair& a, const Pair& b);

Pair pair_of_hom(const GroupHom& psi);

/// Full-subgroup pair (S, id) over (S, S).
Pair identity_pair(const Group& S);

/// Canonical representative: minimum (dom, img) over the whole
/// (S1,S2)-conjugation orbit of the pair.
Pair canonical_pair(const Group& src, const Group& dst, const Pair& q);

bool pair_is_trivial(const Group& dst, const Pair& q);

struct PairClass {
  Pair rep;      // canonical representative
  bool trivial;  // psi constant at the identity
};

// Canonical basis of the Burnside module A(S1,S2): one class per
// (S1,S2)-conjugacy class of pairs, ordered by the canonical order on the
// representatives (decreasing |P|, then dom, then img lexicographically).
class PairBasis {
 public:
  PairBasis(Group src, Group dst);

  const Group& source() const { return src_; }
  const Group& target() const { return dst_; }
  int size() const { return static_cast<int>(classes_.size()); }
  const PairClass& at(int i) const { return classes_[i]; }

  /// Index of the class of q; canonicalizes first. Throws on foreign pairs.
  int index_of(const Pair& q) const;

 private:
  Group src_, dst_;
  std::vector<PairClass> classes_;
  std::map<Pair, int> index_;
};

/// Cached per ordered group pair.
const PairBasis& pair_basis(const Group& src, const Group& dst);

// A sparse exact-rational combination of pair classes over a fixed group
// pair. Zero coefficients are never stored.
class BurnsideElement {
 public:
  BurnsideElement() = default;
  BurnsideElement(Group src, Group dst) : src_(std::move(src)), dst_(std::move(dst)) {}

  const Group& source() const { return src_; }
  const Group& target() const { return dst_; }
  const std::map<int, Rational>& coefficients() const { return c_; }
  bool zero() const { return c_.empty(); }

  Rational coefficient(int class_index) const;
  void set_coefficient(int class_index, const Rational& v);
  void add_coefficient(int class_index, const Rational& v);

  BurnsideElement& operator+=(const BurnsideElement& o);
  BurnsideElement& operator-=(const BurnsideElement& o);
  BurnsideElement& operator*=(const Rational& s);
  friend BurnsideElement operator+(BurnsideElement a, const BurnsideElement& b) { return a += b; }
  friend BurnsideElement operator-(BurnsideElement a, const BurnsideElement& b) { return a -= b; }
  friend BurnsideElement operator*(const Rational& s, BurnsideElement a) { return a *= s; }
  bool operator==(const BurnsideElement& o) const;

  bool integral() const;

 private:
  Group src_, dst_;
  std::map<int, Rational> c_;
};

BurnsideElement zero_element(const Group& src, const Group& dst);
BurnsideElement basis_element(const Group& src, const Group& dst, const Pair& q);

/// [S, id], the identity of A(S,S).
BurnsideElement identity_element(const Group& S);

/// Composition pairing A(S2,S3) x A(S1,S2) -> A(S1,S3), computed by the
/// double coset formula on basis classes and extended bilinearly.
BurnsideElement compose(const BurnsideElement& outer, const BurnsideElement& inner);

/// The double coset formula on basis pairs, as (class index, multiplicity)
/// over basis(S1, S3). outer is a class of A(S2,S3), inner of A(S1,S2).
const std::vector<std::pair<int, long>>& basis_product(const Group& S1, const Group& S2,
                                                       const Group& S3, int outer_index,
                                                       int inner_index);

/// epsilon: linear extension of [P,psi] -> |S1| / |P|. Multiplicative under
/// composition.
Rational augmentation(const BurnsideElement& e);

/// Fixed-point functional of the class of q: linear extension of
/// [P,psi] -> |N_{S1 x S2}(Graph(q), Graph(P,psi))| / |P|.
Rational marks(const BurnsideElement& e, const Pair& q);
Rational marks_on_class(const Group& src, const Group& dst, int class_index, const Pair& q);

/// Rows and columns indexed by basis(S1,S2) in canonical order;
/// entry(r, c) = marks of basis class c at class r. Invertible over Q.
Matrix mark_matrix(const Group& S1, const Group& S2);

/// Exact invertibility check; uses the subconjugacy triangularization for
/// large bases and plain elimination otherwise.
bool mark_matrix_invertible(const Group& S1, const Group& S2);

enum class PairRelation { conjugate, strictly_subconjugate, strictly_superconjugate, incomparable };

/// Whether q is (F1,F2)-subconjugate to t: some phi1 in Hom_F1(Q, P) and
/// phi2 in Hom_F2(rho(Q), psi(P)) close the square psi . phi1 = phi2 . rho.
bool pair_subconjugate(const Pair& q, const Pair& t, const FusionSystem& F1,
                       const FusionSystem& F2);

/// Both directions of pair_subconjugate folded into one verdict for q vs t.
PairRelation pair_relation(const Pair& q, const Pair& t, const FusionSystem& F1,
                           const FusionSystem& F2);

/// Coefficient-extraction functional chi_{[P,psi]}.
Rational chi(const BurnsideElement& e, const Pair& key);

/// chi_{[P]}^F: sum of coefficients over classes (F_S, F)-conjugate to
/// [P, incl]. chi^{[P]}_F sums over classes (F, F_S)-conjugate to [P, incl].
Rational chi_class_right(const BurnsideElement& e, const Subgroup& P, const FusionSystem& F);
Rational chi_class_left(const BurnsideElement& e, const Subgroup& P, const FusionSystem& F);

enum class Side { right, left };

struct StabilityResult {
  bool stable = true;
  std::optional<GroupHom> counterexample;
};

/// Right: Omega . [P,phi]_P^S = Omega . [P,incl]_P^S in A(P,S) for all P and
/// phi in Hom_F(P,S). Left: [phi P, phi^{-1}]_S^P . Omega = [P, id]_S^P . Omega.
StabilityResult is_f_stable(const BurnsideElement& e, const FusionSystem& F, Side side);

/// Drops all trivial classes (the quotient to the reduced module).
BurnsideElement reduce_trivial(const BurnsideElement& e);

/// Restriction of e to classes with full-size source subgroup (|P| = |S1|)
/// and its complement. For elements supported on fusion classes these are
/// the conjugate-to-[S,id] part and the strictly subconjugate part.
std::pair<BurnsideElement, BurnsideElement> split_top(const BurnsideElement& e);

// Basis pairs for restriction and stability tests, over (P-as-group, S) and
// (S, P-as-group).
Pair restriction_pair(const Subgroup& P, const GroupHom& phi);  // [P, phi]_P^S
Pair restriction_pair_incl(const Subgroup& P);                  // [P, incl]_P^S
Pair corestriction_pair(const Subgroup& P);                     // [P, id]_S^P
Pair transfer_pair(const Subgroup& P, const GroupHom& phi);     // [phi P, phi^{-1}]_S^P

}  // namespace fuscalc

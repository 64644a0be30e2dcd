#include "fuscalc/burnside.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <set>

namespace fuscalc {

bool operator==(const Pair& a, const Pair& b) { return a.dom == b.dom && a.img == b.img; }

bool operator<(const Pair& a, const Pair& b) {
  if (a.dom.size() != b.dom.size()) return a.dom.size() > b.dom.size();
  if (a.dom != b.dom) return a.dom < b.dom;
  return a.img < b.img;
}

Pair pair_of_hom(const GroupHom& psi) { return Pair{psi.dom, psi.img}; }

Pair identity_pair(const Group& S) {
  std::vector<int> all(S.order());
  for (int i = 0; i < S.order(); ++i) all[i] = i;
  return Pair{all, all};
}

bool pair_is_trivial(const Group& dst, const Pair& q) {
  const int e = dst.identity();
  return std::all_of(q.img.begin(), q.img.end(), [&](int y) { return y == e; });
}

namespace {

int pair_apply(const Pair& q, int x) {
  auto it = std::lower_bound(q.dom.begin(), q.dom.end(), x);
  return q.img[it - q.dom.begin()];
}

}  // namespace

Pair canonical_pair(const Group& src, const Group& dst, const Pair& q) {
  const int k = static_cast<int>(q.dom.size());
  Pair best;
  bool have = false;
  std::vector<int> dom2(k), img2(k);
  for (int g = 0; g < src.order(); ++g) {
    const int gi = src.inv(g);
    for (int i = 0; i < k; ++i) dom2[i] = src.conjugate(g, q.dom[i]);
    std::sort(dom2.begin(), dom2.end());
    for (int h = 0; h < dst.order(); ++h) {
      for (int i = 0; i < k; ++i) {
        int x = src.conjugate(gi, dom2[i]);  // back in q.dom
        img2[i] = dst.conjugate(h, pair_apply(q, x));
      }
      if (!have || dom2 < best.dom || (dom2 == best.dom && img2 < best.img)) {
        best.dom = dom2;
        best.img = img2;
        have = true;
      }
    }
  }
  return best;
}

PairBasis::PairBasis(Group src, Group dst) : src_(std::move(src)), dst_(std::move(dst)) {
  if (src_.order() > caps().p_group || dst_.order() > caps().p_group)
    throw CapError("pair basis beyond p-group cap " + std::to_string(caps().p_group));

  // source-subgroup conjugacy class representatives (canonical-first)
  const auto& subs = subgroups(src_);
  std::set<std::vector<int>> seen_sub;
  std::vector<Subgroup> reps;
  for (const auto& P : subs) {
    if (seen_sub.count(P.members)) continue;
    reps.push_back(P);
    for (int g = 0; g < src_.order(); ++g)
      seen_sub.insert(conjugate_members(src_, P.members, g));
  }

  std::map<Pair, int> found;
  for (const auto& P : reps) {
    for (const auto& psi : enumerate_homs(P, dst_, false)) {
      Pair canon = canonical_pair(src_, dst_, pair_of_hom(psi));
      found.emplace(std::move(canon), 0);
    }
  }
  for (auto& [rep, idx] : found) {
    idx = static_cast<int>(classes_.size());
    classes_.push_back(PairClass{rep, pair_is_trivial(dst_, rep)});
    index_.emplace(rep, idx);
  }
}

int PairBasis::index_of(const Pair& q) const {
  Pair canon = canonical_pair(src_, dst_, q);
  auto it = index_.find(canon);
  if (it == index_.end()) throw PreconditionError("pair does not belong to this Burnside module");
  return it->second;
}

namespace {

std::mutex basis_mutex;
std::map<std::pair<std::uint64_t, std::uint64_t>, std::unique_ptr<PairBasis>>& basis_cache() {
  static std::map<std::pair<std::uint64_t, std::uint64_t>, std::unique_ptr<PairBasis>> c;
  return c;
}

std::mutex product_mutex;
using ProductKey = std::array<std::uint64_t, 5>;
std::map<ProductKey, std::unique_ptr<std::vector<std::pair<int, long>>>>& product_cache() {
  static std::map<ProductKey, std::unique_ptr<std::vector<std::pair<int, long>>>> c;
  return c;
}

}  // namespace

const PairBasis& pair_basis(const Group& src, const Group& dst) {
  auto key = std::make_pair(src.id(), dst.id());
  {
    std::lock_guard lock(basis_mutex);
    auto it = basis_cache().find(key);
    if (it != basis_cache().end()) return *it->second;
  }
  auto built = std::make_unique<PairBasis>(src, dst);
  std::lock_guard lock(basis_mutex);
  auto [it, inserted] = basis_cache().emplace(key, std::move(built));
  return *it->second;
}

Rational BurnsideElement::coefficient(int class_index) const {
  auto it = c_.find(class_index);
  return it == c_.end() ? Rational(0) : it->second;
}

void BurnsideElement::set_coefficient(int class_index, const Rational& v) {
  Rational c = v;
  c.canonicalize();  // mpq comparisons require canonical form
  if (c == 0)
    c_.erase(class_index);
  else
    c_[class_index] = std::move(c);
}

void BurnsideElement::add_coefficient(int class_index, const Rational& v) {
  Rational c = v;
  c.canonicalize();
  auto it = c_.emplace(class_index, 0).first;
  it->second += c;
  if (it->second == 0) c_.erase(it);
}

BurnsideElement& BurnsideElement::operator+=(const BurnsideElement& o) {
  if (!src_.same(o.src_) || !dst_.same(o.dst_))
    throw PreconditionError("Burnside element group mismatch");
  for (const auto& [k, v] : o.c_) add_coefficient(k, v);
  return *this;
}

BurnsideElement& BurnsideElement::operator-=(const BurnsideElement& o) {
  if (!src_.same(o.src_) || !dst_.same(o.dst_))
    throw PreconditionError("Burnside element group mismatch");
  for (const auto& [k, v] : o.c_) add_coefficient(k, -v);
  return *this;
}

BurnsideElement& BurnsideElement::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& [k, v] : c_) v *= s;
  return *this;
}

bool BurnsideElement::operator==(const BurnsideElement& o) const {
  return src_.same(o.src_) && dst_.same(o.dst_) && c_ == o.c_;
}

bool BurnsideElement::integral() const {
  return std::all_of(c_.begin(), c_.end(),
                     [](const auto& kv) { return is_integral(kv.second); });
}

BurnsideElement zero_element(const Group& src, const Group& dst) {
  return BurnsideElement(src, dst);
}

BurnsideElement basis_element(const Group& src, const Group& dst, const Pair& q) {
  BurnsideElement e(src, dst);
  e.set_coefficient(pair_basis(src, dst).index_of(q), 1);
  return e;
}

BurnsideElement identity_element(const Group& S) {
  return basis_element(S, S, identity_pair(S));
}

const std::vector<std::pair<int, long>>& basis_product(const Group& S1, const Group& S2,
                                                       const Group& S3, int outer_index,
                                                       int inner_index) {
  ProductKey key{S1.id(), S2.id(), S3.id(), static_cast<std::uint64_t>(outer_index),
                 static_cast<std::uint64_t>(inner_index)};
  {
    std::lock_guard lock(product_mutex);
    auto it = product_cache().find(key);
    if (it != product_cache().end()) return *it->second;
  }

  const Pair& outer = pair_basis(S2, S3).at(outer_index).rep;  // (K, rho), K <= S2
  const Pair& inner = pair_basis(S1, S2).at(inner_index).rep;  // (H, psi), H <= S1
  const PairBasis& target = pair_basis(S1, S3);

  std::vector<int> psi_image = inner.img;
  std::sort(psi_image.begin(), psi_image.end());
  psi_image.erase(std::unique(psi_image.begin(), psi_image.end()), psi_image.end());

  std::map<int, long> counts;
  std::vector<char> visited(S2.order(), 0);
  for (int x = 0; x < S2.order(); ++x) {
    if (visited[x]) continue;
    for (int k : outer.dom)
      for (int w : psi_image) visited[S2.mul(S2.mul(k, x), w)] = 1;

    // term [psi^{-1}(psi(H) cap K^x), rho . c_x . psi]
    Pair term;
    for (size_t i = 0; i < inner.dom.size(); ++i) {
      int conj = S2.conjugate(x, inner.img[i]);  // x psi(h) x^{-1}
      if (!std::binary_search(outer.dom.begin(), outer.dom.end(), conj)) continue;
      term.dom.push_back(inner.dom[i]);
      term.img.push_back(pair_apply(outer, conj));
    }
    ++counts[target.index_of(term)];
  }

  auto out = std::make_unique<std::vector<std::pair<int, long>>>(counts.begin(), counts.end());
  std::lock_guard lock(product_mutex);
  auto [it, inserted] = product_cache().emplace(key, std::move(out));
  return *it->second;
}

BurnsideElement compose(const BurnsideElement& outer, const BurnsideElement& inner) {
  if (!inner.target().same(outer.source()))
    throw PreconditionError("composition group mismatch");
  const Group& S1 = inner.source();
  const Group& S2 = inner.target();
  const Group& S3 = outer.target();
  BurnsideElement out(S1, S3);
  for (const auto& [i, ci] : outer.coefficients())
    for (const auto& [j, cj] : inner.coefficients()) {
      Rational f = ci * cj;
      for (const auto& [k, n] : basis_product(S1, S2, S3, i, j))
        out.add_coefficient(k, f * n);
    }
  return out;
}

Rational augmentation(const BurnsideElement& e) {
  Rational sum = 0;
  const auto& basis = pair_basis(e.source(), e.target());
  const int n1 = e.source().order();
  for (const auto& [k, v] : e.coefficients())
    sum += v * Rational(n1, static_cast<int>(basis.at(k).rep.dom.size()));
  sum.canonicalize();
  return sum;
}

Rational marks_on_class(const Group& src, const Group& dst, int class_index, const Pair& q) {
  const Pair& rep = pair_basis(src, dst).at(class_index).rep;
  const int kq = static_cast<int>(q.dom.size());
  long count = 0;
  for (int g = 0; g < src.order(); ++g) {
    for (int h = 0; h < dst.order(); ++h) {
      bool ok = true;
      for (int i = 0; i < kq && ok; ++i) {
        int gx = src.conjugate(g, q.dom[i]);
        auto it = std::lower_bound(rep.dom.begin(), rep.dom.end(), gx);
        if (it == rep.dom.end() || *it != gx)
          ok = false;
        else
          ok = rep.img[it - rep.dom.begin()] == dst.conjugate(h, q.img[i]);
      }
      if (ok) ++count;
    }
  }
  Rational r(count, static_cast<long>(rep.dom.size()));
  r.canonicalize();
  return r;
}

Rational marks(const BurnsideElement& e, const Pair& q) {
  Rational sum = 0;
  for (const auto& [k, v] : e.coefficients())
    sum += v * marks_on_class(e.source(), e.target(), k, q);
  sum.canonicalize();
  return sum;
}

Matrix mark_matrix(const Group& S1, const Group& S2) {
  const auto& basis = pair_basis(S1, S2);
  const int n = basis.size();
  Matrix M(n, std::vector<Rational>(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) M[r][c] = marks_on_class(S1, S2, c, basis.at(r).rep);
  return M;
}

bool mark_matrix_invertible(const Group& S1, const Group& S2) {
  const auto& basis = pair_basis(S1, S2);
  const int n = basis.size();
  Matrix M = mark_matrix(S1, S2);
  if (n <= 120) return determinant(std::move(M)) != 0;

  // Strict pair subconjugacy lowers (|P|, |psi(P)|) lexicographically, so
  // sorting by that key decreasing makes the matrix lower triangular with
  // nonzero diagonal; permutation similarity does not change invertibility.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  auto key = [&](int i) {
    const Pair& r = basis.at(i).rep;
    std::vector<int> img = r.img;
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    return std::make_pair(r.dom.size(), img.size());
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return key(a) > key(b); });
  for (int r = 0; r < n; ++r) {
    if (M[order[r]][order[r]] == 0) return determinant(std::move(M)) != 0;
    for (int c = r + 1; c < n; ++c)
      if (M[order[r]][order[c]] != 0) return determinant(std::move(M)) != 0;
  }
  return true;
}

bool pair_subconjugate(const Pair& q, const Pair& t, const FusionSystem& F1,
                       const FusionSystem& F2) {
  // phi1 in Hom_F1(Q, P), and the induced map rho(Q) -> psi(P) must be an
  // F2-morphism
  const Group& S2 = F2.S();
  int qi = F1.subgroup_index(q.dom);
  if (qi < 0) throw PreconditionError("pair subgroup unknown to the fusion system");
  std::vector<int> rhoQ = q.img;
  std::sort(rhoQ.begin(), rhoQ.end());
  rhoQ.erase(std::unique(rhoQ.begin(), rhoQ.end()), rhoQ.end());

  for (const auto& phi1 : F1.morphisms_from(qi)) {
    bool into = std::all_of(phi1.img.begin(), phi1.img.end(), [&](int y) {
      return std::binary_search(t.dom.begin(), t.dom.end(), y);
    });
    if (!into) continue;
    // phi2(rho(x)) := psi(phi1(x)); must be constant on rho's fibers
    std::map<int, int> phi2;
    bool ok = true;
    for (size_t i = 0; i < q.dom.size() && ok; ++i) {
      int from = q.img[i];
      int to = pair_apply(t, phi1.img[i]);
      auto it = phi2.find(from);
      if (it == phi2.end())
        phi2[from] = to;
      else
        ok = it->second == to;
    }
    if (!ok) continue;
    GroupHom cand{S2, S2, {}, {}};
    for (auto& [x, y] : phi2) {
      cand.dom.push_back(x);
      cand.img.push_back(y);
    }
    if (F2.contains(cand)) return true;
  }
  return false;
}

PairRelation pair_relation(const Pair& q, const Pair& t, const FusionSystem& F1,
                           const FusionSystem& F2) {
  bool down = pair_subconjugate(q, t, F1, F2);
  bool up = pair_subconjugate(t, q, F1, F2);
  if (down && up) return PairRelation::conjugate;
  if (down) return PairRelation::strictly_subconjugate;
  if (up) return PairRelation::strictly_superconjugate;
  return PairRelation::incomparable;
}

Rational chi(const BurnsideElement& e, const Pair& key) {
  return e.coefficient(pair_basis(e.source(), e.target()).index_of(key));
}

namespace {

Rational chi_class(const BurnsideElement& e, const Subgroup& P, const FusionSystem& F,
                   Side side) {
  if (!e.source().same(F.S()) || !e.target().same(F.S()))
    throw PreconditionError("chi class functional needs an element of A(S,S)");
  const FusionSystem& FS = inner_of(F);
  Pair incl{P.members, P.members};
  const auto& basis = pair_basis(e.source(), e.target());
  Rational sum = 0;
  for (const auto& [k, v] : e.coefficients()) {
    const Pair& rep = basis.at(k).rep;
    PairRelation rel = side == Side::right ? pair_relation(rep, incl, FS, F)
                                           : pair_relation(rep, incl, F, FS);
    if (rel == PairRelation::conjugate) sum += v;
  }
  sum.canonicalize();
  return sum;
}

}  // namespace

Rational chi_class_right(const BurnsideElement& e, const Subgroup& P, const FusionSystem& F) {
  return chi_class(e, P, F, Side::right);
}

Rational chi_class_left(const BurnsideElement& e, const Subgroup& P, const FusionSystem& F) {
  return chi_class(e, P, F, Side::left);
}

Pair restriction_pair(const Subgroup& P, const GroupHom& phi) {
  Pair q;
  q.dom.resize(P.order());
  q.img.resize(P.order());
  for (int i = 0; i < P.order(); ++i) {
    q.dom[i] = i;
    q.img[i] = phi.apply(P.members[i]);
  }
  return q;
}

Pair restriction_pair_incl(const Subgroup& P) {
  Pair q;
  q.dom.resize(P.order());
  q.img = P.members;
  for (int i = 0; i < P.order(); ++i) q.dom[i] = i;
  return q;
}

Pair corestriction_pair(const Subgroup& P) {
  Pair q;
  q.dom = P.members;
  q.img.resize(P.order());
  for (int i = 0; i < P.order(); ++i) q.img[i] = i;
  return q;
}

Pair transfer_pair(const Subgroup& P, const GroupHom& phi) {
  Pair q;
  q.dom = phi.image_members();
  auto inv = inverse_hom(phi);
  if (!inv) throw PreconditionError("transfer pair needs an injective morphism");
  for (int y : q.dom) {
    int x = inv->apply(y);
    auto it = std::lower_bound(P.members.begin(), P.members.end(), x);
    q.img.push_back(static_cast<int>(it - P.members.begin()));
  }
  return q;
}

StabilityResult is_f_stable(const BurnsideElement& e, const FusionSystem& F, Side side) {
  if (!e.source().same(F.S()) || !e.target().same(F.S()))
    throw PreconditionError("stability requires an element of A(S,S)");
  const Group& S = F.S();
  for (int i = 0; i < F.size(); ++i) {
    const Subgroup& P = F.subgroup(i);
    const Group& Pg = as_group(P).group;
    BurnsideElement base =
        side == Side::right
            ? compose(e, basis_element(Pg, S, restriction_pair_incl(P)))
            : compose(basis_element(S, Pg, corestriction_pair(P)), e);
    for (const auto& phi : F.morphisms_from(i)) {
      if (phi.img == P.members) continue;  // the inclusion itself
      BurnsideElement cand =
          side == Side::right
              ? compose(e, basis_element(Pg, S, restriction_pair(P, phi)))
              : compose(basis_element(S, Pg, transfer_pair(P, phi)), e);
      if (!(cand == base)) return {false, phi};
    }
  }
  return {true, std::nullopt};
}

BurnsideElement reduce_trivial(const BurnsideElement& e) {
  const auto& basis = pair_basis(e.source(), e.target());
  BurnsideElement out(e.source(), e.target());
  for (const auto& [k, v] : e.coefficients())
    if (!basis.at(k).trivial) out.set_coefficient(k, v);
  return out;
}

std::pair<BurnsideElement, BurnsideElement> split_top(const BurnsideElement& e) {
  const auto& basis = pair_basis(e.source(), e.target());
  const size_t full = static_cast<size_t>(e.source().order());
  BurnsideElement top(e.source(), e.target()), rest(e.source(), e.target());
  for (const auto& [k, v] : e.coefficients()) {
    if (basis.at(k).rep.dom.size() == full)
      top.set_coefficient(k, v);
    else
      rest.set_coefficient(k, v);
  }
  return {top, rest};
}

}  // namespace fuscalc

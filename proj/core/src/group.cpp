#include "fuscalc/group.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace fuscalc {

namespace {

std::atomic<std::uint64_t> next_uid{1};

std::vector<int> compute_inverses(const std::vector<std::vector<int>>& table, int id_elt) {
  const int n = static_cast<int>(table.size());
  std::vector<int> inv(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table[a][b] == id_elt && table[b][a] == id_elt) inv[a] = b;
  for (int a = 0; a < n; ++a)
    if (inv[a] < 0) throw InputError("element without inverse in multiplication table");
  return inv;
}

int find_identity(const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
    if (ok) return e;
  }
  throw InputError("multiplication table has no identity element");
}

std::vector<int> permutation_compose(const std::vector<int>& f, const std::vector<int>& g) {
  // apply f first, then g
  std::vector<int> r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = g[f[i]];
  return r;
}

}  // namespace

Caps& caps() {
  static Caps c;
  return c;
}

int Group::element_order(int a) const {
  int e = identity(), x = a, n = 1;
  while (x != e) {
    x = mul(x, a);
    ++n;
  }
  return n;
}

int Group::power(int a, long n) const {
  int e = identity();
  if (n < 0) return power(inv(a), -n);
  int r = e, x = a;
  while (n > 0) {
    if (n & 1) r = mul(r, x);
    x = mul(x, x);
    n >>= 1;
  }
  return r;
}

Group Group::adopt(Data&& data) {
  data.uid = next_uid.fetch_add(1);
  Group g;
  g.d_ = std::make_shared<const Data>(std::move(data));
  return g;
}

Group Group::from_table(std::vector<std::vector<int>> table, std::string name) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw InputError("empty multiplication table");
  if (n > caps().ambient)
    throw CapError("group order " + std::to_string(n) + " exceeds cap " +
                   std::to_string(caps().ambient));
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw InputError("multiplication table not square");
    for (int v : row)
      if (v < 0 || v >= n) throw InputError("multiplication table entry out of range");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw InputError("multiplication table is not associative");
  Data d;
  d.identity = find_identity(table);
  d.table = std::move(table);
  d.inv = compute_inverses(d.table, d.identity);
  d.name = std::move(name);
  return adopt(std::move(d));
}

Group Group::from_permutations(int degree, std::vector<std::vector<int>> generators,
                               std::string name) {
  if (degree <= 0) throw InputError("permutation degree must be positive");
  for (const auto& p : generators) {
    if (static_cast<int>(p.size()) != degree) throw InputError("generator degree mismatch");
    std::vector<char> seen(degree, 0);
    for (int v : p) {
      if (v < 0 || v >= degree || seen[v]) throw InputError("generator is not a permutation");
      seen[v] = 1;
    }
  }
  std::vector<int> id(degree);
  for (int i = 0; i < degree; ++i) id[i] = i;

  std::set<std::vector<int>> seen;
  seen.insert(id);
  std::vector<std::vector<int>> todo{id};
  for (const auto& g : generators)
    if (seen.insert(g).second) todo.push_back(g);
  while (!todo.empty()) {
    auto cur = todo.back();
    todo.pop_back();
    for (const auto& g : generators) {
      auto prod = permutation_compose(cur, g);
      if (seen.insert(prod).second) {
        if (static_cast<int>(seen.size()) > caps().ambient)
          throw CapError("generated permutation group exceeds cap " +
                         std::to_string(caps().ambient));
        todo.push_back(prod);
      }
    }
  }

  std::vector<std::vector<int>> elements(seen.begin(), seen.end());  // sorted
  const int n = static_cast<int>(elements.size());
  std::map<std::vector<int>, int> label;
  for (int i = 0; i < n; ++i) label[elements[i]] = i;

  Data d;
  d.table.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      d.table[a][b] = label.at(permutation_compose(elements[b], elements[a]));
  d.identity = label.at(id);
  d.inv = compute_inverses(d.table, d.identity);
  d.perms = std::move(elements);
  d.name = std::move(name);
  return adopt(std::move(d));
}

Group Group::from_permutation_cycles(int degree,
                                     const std::vector<std::vector<std::vector<int>>>& generators,
                                     std::string name) {
  std::vector<std::vector<int>> gens;
  for (const auto& cycles : generators) {
    std::vector<int> p(degree);
    for (int i = 0; i < degree; ++i) p[i] = i;
    for (const auto& cyc : cycles) {
      std::vector<char> used(degree, 0);
      std::vector<int> c;
      for (int pt : cyc) {
        if (pt < 1 || pt > degree) throw InputError("cycle point out of range");
        if (used[pt - 1]) throw InputError("repeated point in cycle");
        used[pt - 1] = 1;
        c.push_back(pt - 1);
      }
      if (c.size() < 2) continue;
      std::vector<int> step(degree);
      for (int i = 0; i < degree; ++i) step[i] = i;
      for (size_t i = 0; i < c.size(); ++i) step[c[i]] = c[(i + 1) % c.size()];
      p = permutation_compose(p, step);
    }
    gens.push_back(std::move(p));
  }
  return from_permutations(degree, std::move(gens), std::move(name));
}

Group make_group(const GroupSpec& spec) {
  if (spec.kind == GroupSpec::Kind::table) return Group::from_table(spec.table, spec.name);
  return Group::from_permutation_cycles(spec.degree, spec.generators, spec.name);
}

bool Subgroup::contains(int x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int p_part(int n, int p) {
  int q = 1;
  while (n % p == 0) {
    n /= p;
    q *= p;
  }
  return q;
}

std::vector<int> closure(const Group& G, std::vector<int> seed) {
  std::vector<char> in(G.order(), 0);
  std::vector<int> work;
  auto add = [&](int x) {
    if (!in[x]) {
      in[x] = 1;
      work.push_back(x);
    }
  };
  add(G.identity());
  for (int x : seed) add(x);
  // products of a worklist element with everything known so far; the worklist
  // grows in place, so the fixpoint is reached in one pass
  for (size_t i = 0; i < work.size(); ++i) {
    for (size_t j = 0; j < work.size(); ++j) {
      add(G.mul(work[i], work[j]));
      add(G.mul(work[j], work[i]));
    }
  }
  std::sort(work.begin(), work.end());
  return work;
}

bool is_subgroup_set(const Group& G, const std::vector<int>& m) {
  if (m.empty()) return false;
  if (!std::binary_search(m.begin(), m.end(), G.identity())) return false;
  for (int a : m)
    for (int b : m)
      if (!std::binary_search(m.begin(), m.end(), G.mul(a, b))) return false;
  return true;
}

Subgroup make_subgroup(const Group& G, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (!is_subgroup_set(G, members)) throw InputError("member set is not a subgroup");
  return Subgroup{G, std::move(members)};
}

Subgroup generated_subgroup(const Group& G, const std::vector<int>& gens) {
  return Subgroup{G, closure(G, gens)};
}

Subgroup trivial_subgroup(const Group& G) { return Subgroup{G, {G.identity()}}; }

Subgroup full_subgroup(const Group& G) {
  std::vector<int> all(G.order());
  for (int i = 0; i < G.order(); ++i) all[i] = i;
  return Subgroup{G, std::move(all)};
}

bool subgroup_canonical_less(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  return a < b;
}

namespace {

std::mutex cache_mutex;
std::map<std::uint64_t, std::unique_ptr<std::vector<Subgroup>>>& subgroup_cache() {
  static std::map<std::uint64_t, std::unique_ptr<std::vector<Subgroup>>> c;
  return c;
}
std::map<std::pair<std::uint64_t, std::vector<int>>, std::unique_ptr<SubgroupGroup>>&
as_group_cache() {
  static std::map<std::pair<std::uint64_t, std::vector<int>>, std::unique_ptr<SubgroupGroup>> c;
  return c;
}

std::vector<Subgroup> enumerate_subgroups(const Group& G) {
  // Bottom-up: every subgroup arises from a smaller one by adjoining one
  // element, starting from the trivial subgroup.
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> work;
  std::vector<int> triv{G.identity()};
  found.insert(triv);
  work.push_back(triv);
  while (!work.empty()) {
    auto h = work.back();
    work.pop_back();
    for (int g = 0; g < G.order(); ++g) {
      if (std::binary_search(h.begin(), h.end(), g)) continue;
      auto bigger = h;
      bigger.push_back(g);
      auto cl = closure(G, bigger);
      if (found.insert(cl).second) work.push_back(cl);
    }
  }
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (auto& m : found) out.push_back(Subgroup{G, m});
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    return subgroup_canonical_less(a.members, b.members);
  });
  return out;
}

}  // namespace

const std::vector<Subgroup>& subgroups(const Group& G) {
  if (G.order() > caps().ambient)
    throw CapError("subgroup enumeration beyond cap " + std::to_string(caps().ambient));
  {
    std::lock_guard lock(cache_mutex);
    auto it = subgroup_cache().find(G.id());
    if (it != subgroup_cache().end()) return *it->second;
  }
  auto subs = std::make_unique<std::vector<Subgroup>>(enumerate_subgroups(G));
  std::lock_guard lock(cache_mutex);
  auto [it, inserted] = subgroup_cache().emplace(G.id(), std::move(subs));
  return *it->second;
}

std::vector<int> conjugate_members(const Group& G, const std::vector<int>& members, int g) {
  std::vector<int> out;
  out.reserve(members.size());
  for (int x : members) out.push_back(G.conjugate(g, x));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> transporter(const Group& G, const Subgroup& H, const Subgroup& K) {
  if (!H.parent.same(G) || !K.parent.same(G))
    throw PreconditionError("transporter arguments must live in the given group");
  std::vector<int> out;
  for (int g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (int h : H.members)
      if (!K.contains(G.conjugate(g, h))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(g);
  }
  return out;
}

std::vector<int> normalizer_of(const Group& G, const Subgroup& H) {
  return transporter(G, H, H);
}

std::vector<int> centralizer_of(const Group& G, const Subgroup& H) {
  std::vector<int> out;
  for (int g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (int h : H.members)
      if (G.mul(g, h) != G.mul(h, g)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(g);
  }
  return out;
}

int GroupHom::apply(int x) const {
  auto it = std::lower_bound(dom.begin(), dom.end(), x);
  if (it == dom.end() || *it != x) throw PreconditionError("element outside hom domain");
  return img[it - dom.begin()];
}

bool GroupHom::injective() const {
  std::vector<int> v = img;
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

bool GroupHom::trivial() const {
  const int e = dst.identity();
  return std::all_of(img.begin(), img.end(), [&](int y) { return y == e; });
}

std::vector<int> GroupHom::image_members() const {
  std::vector<int> v = img;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool operator==(const GroupHom& a, const GroupHom& b) {
  return a.src.same(b.src) && a.dst.same(b.dst) && a.dom == b.dom && a.img == b.img;
}

bool hom_less(const GroupHom& a, const GroupHom& b) {
  if (a.dom != b.dom) return subgroup_canonical_less(a.dom, b.dom);
  return a.img < b.img;
}

GroupHom inclusion_hom(const Subgroup& P) {
  return GroupHom{P.parent, P.parent, P.members, P.members};
}

GroupHom trivial_hom(const Subgroup& P, const Group& T) {
  return GroupHom{P.parent, T, P.members, std::vector<int>(P.members.size(), T.identity())};
}

GroupHom conjugation_hom(const Group& G, const Subgroup& P, int g) {
  GroupHom f{G, G, P.members, {}};
  f.img.reserve(P.members.size());
  for (int x : P.members) f.img.push_back(G.conjugate(g, x));
  return f;
}

GroupHom restrict_hom(const GroupHom& f, const std::vector<int>& sub_members) {
  GroupHom r{f.src, f.dst, sub_members, {}};
  r.img.reserve(sub_members.size());
  for (int x : sub_members) r.img.push_back(f.apply(x));
  return r;
}

GroupHom compose_homs(const GroupHom& outer, const GroupHom& inner) {
  if (!inner.dst.same(outer.src)) throw PreconditionError("hom composition group mismatch");
  GroupHom r{inner.src, outer.dst, inner.dom, {}};
  r.img.reserve(inner.dom.size());
  for (int y : inner.img) r.img.push_back(outer.apply(y));
  return r;
}

std::optional<GroupHom> inverse_hom(const GroupHom& f) {
  if (!f.injective()) return std::nullopt;
  std::vector<std::pair<int, int>> rev;
  rev.reserve(f.dom.size());
  for (size_t i = 0; i < f.dom.size(); ++i) rev.emplace_back(f.img[i], f.dom[i]);
  std::sort(rev.begin(), rev.end());
  GroupHom r{f.dst, f.src, {}, {}};
  for (auto& [y, x] : rev) {
    r.dom.push_back(y);
    r.img.push_back(x);
  }
  return r;
}

bool is_multiplicative(const GroupHom& f) {
  for (size_t i = 0; i < f.dom.size(); ++i)
    for (size_t j = 0; j < f.dom.size(); ++j) {
      int xy = f.src.mul(f.dom[i], f.dom[j]);
      auto it = std::lower_bound(f.dom.begin(), f.dom.end(), xy);
      if (it == f.dom.end() || *it != xy) return false;  // domain not closed
      if (f.img[it - f.dom.begin()] != f.dst.mul(f.img[i], f.img[j])) return false;
    }
  return true;
}

std::vector<GroupHom> hom_classes(const Group& G, const Subgroup& H, const Subgroup& K) {
  std::vector<GroupHom> out;
  std::set<std::vector<int>> seen;
  for (int g : transporter(G, H, K)) {
    auto f = conjugation_hom(G, H, g);
    if (seen.insert(f.img).second) out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), hom_less);
  return out;
}

Subgroup sylow(const Group& G, int p) {
  if (!is_prime(p)) throw PreconditionError("sylow requires a prime");
  const int target = p_part(G.order(), p);
  Subgroup H = trivial_subgroup(G);
  while (H.order() < target) {
    auto norm = normalizer_of(G, H);
    bool grown = false;
    for (int x : norm) {
      if (H.contains(x)) continue;
      int ord = G.element_order(x);
      if (p_part(ord, p) != ord) continue;  // not of p-power order
      auto bigger = H.members;
      bigger.push_back(x);
      H = Subgroup{G, closure(G, bigger)};
      grown = true;
      break;
    }
    if (!grown) throw Error("internal: Sylow growth step failed");
  }
  // all Sylow p-subgroups are conjugate; pick the canonical-first one
  std::vector<int> best = H.members;
  for (int g = 0; g < G.order(); ++g) {
    auto c = conjugate_members(G, H.members, g);
    if (subgroup_canonical_less(c, best)) best = c;
  }
  return Subgroup{G, std::move(best)};
}

namespace {

// Greedy generating sequence: each element enlarges the generated subgroup.
std::vector<int> generating_sequence(const Group& G, const std::vector<int>& members) {
  std::vector<int> gens;
  std::vector<int> have{G.identity()};
  for (int x : members) {
    if (std::binary_search(have.begin(), have.end(), x)) continue;
    gens.push_back(x);
    auto seed = have;
    seed.push_back(x);
    have = closure(G, seed);
    if (have.size() == members.size()) break;
  }
  return gens;
}

// Extends a partial map (on a closed subgroup) by one generator image and
// closes multiplicatively; returns false on any conflict.
bool extend_map(const Group& P, const Group& T, std::vector<int>& map, int gen, int image) {
  if (map[gen] != -1) return map[gen] == image;
  std::vector<int> known;
  for (int x = 0; x < P.order(); ++x)
    if (map[x] != -1) known.push_back(x);
  map[gen] = image;
  known.push_back(gen);
  bool grew = true;
  while (grew) {
    grew = false;
    const size_t m = known.size();
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j) {
        int z = P.mul(known[i], known[j]);
        int fz = T.mul(map[known[i]], map[known[j]]);
        if (map[z] == -1) {
          map[z] = fz;
          known.push_back(z);
          grew = true;
        } else if (map[z] != fz) {
          return false;
        }
      }
  }
  return true;
}

void hom_search(const Group& Pg, const Group& T, const std::vector<int>& gens, size_t level,
                const std::vector<int>& map, bool injective_only,
                std::vector<std::vector<int>>& out) {
  if (level == gens.size()) {
    for (int x = 0; x < Pg.order(); ++x)
      if (map[x] == -1) throw Error("internal: hom search left the domain uncovered");
    out.push_back(map);
    return;
  }
  const int g = gens[level];
  const int g_order = Pg.element_order(g);
  for (int t = 0; t < T.order(); ++t) {
    if (g_order % T.element_order(t) != 0) continue;
    if (injective_only && T.element_order(t) != g_order) continue;
    auto next = map;
    if (!extend_map(Pg, T, next, g, t)) continue;
    if (injective_only) {
      std::vector<char> hit(T.order(), 0);
      bool inj = true;
      for (int x = 0; x < Pg.order() && inj; ++x)
        if (next[x] != -1) {
          if (hit[next[x]]) inj = false;
          hit[next[x]] = 1;
        }
      if (!inj) continue;
    }
    hom_search(Pg, T, gens, level + 1, next, injective_only, out);
  }
}

}  // namespace

std::vector<GroupHom> enumerate_homs(const Subgroup& P, const Group& T, bool injective_only) {
  const auto& pg = as_group(P);
  const Group& Pg = pg.group;
  auto gens_parent = generating_sequence(P.parent, P.members);
  std::vector<int> gens;
  for (int x : gens_parent) {
    auto it = std::lower_bound(P.members.begin(), P.members.end(), x);
    gens.push_back(static_cast<int>(it - P.members.begin()));
  }
  std::vector<int> map(Pg.order(), -1);
  map[Pg.identity()] = T.identity();
  std::vector<std::vector<int>> raw;
  hom_search(Pg, T, gens, 0, map, injective_only, raw);

  std::vector<GroupHom> out;
  out.reserve(raw.size());
  for (auto& m : raw) {
    GroupHom f{P.parent, T, P.members, {}};
    f.img.resize(P.members.size());
    for (size_t i = 0; i < P.members.size(); ++i) f.img[i] = m[i];
    if (!is_multiplicative(f)) throw Error("internal: hom search produced a non-homomorphism");
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), hom_less);
  return out;
}

const SubgroupGroup& as_group(const Subgroup& P) {
  auto key = std::make_pair(P.parent.id(), P.members);
  {
    std::lock_guard lock(cache_mutex);
    auto it = as_group_cache().find(key);
    if (it != as_group_cache().end()) return *it->second;
  }
  const int k = P.order();
  if (k == P.parent.order()) {
    // the full subgroup is the parent itself
    auto sg = std::make_unique<SubgroupGroup>();
    sg->group = P.parent;
    sg->embed = inclusion_hom(P);
    std::lock_guard lock(cache_mutex);
    auto [it, inserted] = as_group_cache().emplace(std::move(key), std::move(sg));
    return *it->second;
  }
  Group::Data d;
  d.table.assign(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      int prod = P.parent.mul(P.members[i], P.members[j]);
      auto it = std::lower_bound(P.members.begin(), P.members.end(), prod);
      if (it == P.members.end() || *it != prod) throw InputError("member set is not a subgroup");
      d.table[i][j] = static_cast<int>(it - P.members.begin());
    }
  auto idit = std::lower_bound(P.members.begin(), P.members.end(), P.parent.identity());
  d.identity = static_cast<int>(idit - P.members.begin());
  d.inv.assign(k, -1);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (d.table[i][j] == d.identity && d.table[j][i] == d.identity) d.inv[i] = j;
  if (!P.parent.name().empty())
    d.name = P.parent.name() + "[" + std::to_string(k) + "]";
  if (!P.parent.permutations().empty()) {
    // members are sorted, so the permutation list stays sorted and the
    // labels agree with a standalone permutation-built copy
    for (int m : P.members) d.perms.push_back(P.parent.permutations()[m]);
  }

  auto sg = std::make_unique<SubgroupGroup>();
  sg->group = Group::adopt(std::move(d));
  std::vector<int> labels(k);
  for (int i = 0; i < k; ++i) labels[i] = i;
  sg->embed = GroupHom{sg->group, P.parent, std::move(labels), P.members};

  std::lock_guard lock(cache_mutex);
  auto [it, inserted] = as_group_cache().emplace(std::move(key), std::move(sg));
  return *it->second;
}

}  // namespace fuscalc

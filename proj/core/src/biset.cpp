#include "fuscalc/biset.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace fuscalc {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[b] = a;
  }
};

// Compacts a union-find partition of raw points into 0..m-1 and transports
// the two actions, which must descend to the quotient.
ExplicitBiset compact(const Group& S1, const Group& S2, UnionFind& uf, int raw_size,
                      const std::function<int(int, int)>& raw_right,
                      const std::function<int(int, int)>& raw_left) {
  std::map<int, int> id_of_root;
  std::vector<int> rep;
  for (int x = 0; x < raw_size; ++x) {
    int r = uf.find(x);
    if (id_of_root.emplace(r, static_cast<int>(rep.size())).second) rep.push_back(r);
  }
  const int m = static_cast<int>(rep.size());
  ExplicitBiset X{S1, S2, m, {}, {}};
  X.act_right.assign(m, std::vector<int>(S1.order()));
  X.act_left.assign(S2.order(), std::vector<int>(m));
  for (int c = 0; c < m; ++c) {
    for (int g = 0; g < S1.order(); ++g)
      X.act_right[c][g] = id_of_root.at(uf.find(raw_right(rep[c], g)));
    for (int h = 0; h < S2.order(); ++h)
      X.act_left[h][c] = id_of_root.at(uf.find(raw_left(h, rep[c])));
  }
  return X;
}

}  // namespace

ExplicitBiset biset_of_pair(const Group& S1, const Group& S2, const Pair& q) {
  // raw points (x, y) in S2 x S1, with (x, g y) ~ (x psi(g), y) for g in P
  const int n1 = S1.order(), n2 = S2.order();
  auto idx = [&](int x, int y) { return x * n1 + y; };
  UnionFind uf(n1 * n2);
  for (int x = 0; x < n2; ++x)
    for (int y = 0; y < n1; ++y)
      for (size_t i = 0; i < q.dom.size(); ++i)
        uf.unite(idx(x, S1.mul(q.dom[i], y)), idx(S2.mul(x, q.img[i]), y));
  auto raw_right = [&](int p, int g) { return idx(p / n1, S1.mul(p % n1, g)); };
  auto raw_left = [&](int h, int p) { return idx(S2.mul(h, p / n1), p % n1); };
  return compact(S1, S2, uf, n1 * n2, raw_right, raw_left);
}

ExplicitBiset biset_product(const ExplicitBiset& outer, const ExplicitBiset& inner) {
  if (!inner.left.same(outer.right))
    throw PreconditionError("biset product middle group mismatch");
  const Group& mid = inner.left;
  const int mo = outer.size, mi = inner.size;
  auto idx = [&](int w, int l) { return w * mi + l; };
  UnionFind uf(mo * mi);
  for (int w = 0; w < mo; ++w)
    for (int l = 0; l < mi; ++l)
      for (int s = 0; s < mid.order(); ++s)
        uf.unite(idx(outer.act_right[w][s], l), idx(w, inner.act_left[s][l]));
  auto raw_right = [&](int p, int g) { return idx(p / mi, inner.act_right[p % mi][g]); };
  auto raw_left = [&](int h, int p) { return idx(outer.act_left[h][p / mi], p % mi); };
  return compact(inner.right, outer.left, uf, mo * mi, raw_right, raw_left);
}

ExplicitBiset group_biset(const Group& G, const Subgroup& S) {
  const auto& sg = as_group(S);
  const Group& Sg = sg.group;
  ExplicitBiset X{Sg, Sg, G.order(), {}, {}};
  X.act_right.assign(G.order(), std::vector<int>(Sg.order()));
  X.act_left.assign(Sg.order(), std::vector<int>(G.order()));
  for (int x = 0; x < G.order(); ++x)
    for (int s = 0; s < Sg.order(); ++s) {
      X.act_right[x][s] = G.mul(x, sg.embed.img[s]);
      X.act_left[s][x] = G.mul(sg.embed.img[s], x);
    }
  return X;
}

BurnsideElement decompose_biset(const ExplicitBiset& X) {
  const Group& S1 = X.right;
  const Group& S2 = X.left;
  const int e2 = S2.identity();

  for (int h = 0; h < S2.order(); ++h) {
    if (h == e2) continue;
    for (int x = 0; x < X.size; ++x)
      if (X.act_left[h][x] == x) throw PreconditionError("left action is not free");
  }
  for (int x = 0; x < X.size; ++x)
    for (int g = 0; g < S1.order(); ++g)
      for (int h = 0; h < S2.order(); ++h)
        if (X.act_left[h][X.act_right[x][g]] != X.act_right[X.act_left[h][x]][g])
          throw PreconditionError("biset actions do not commute");

  BurnsideElement out(S1, S2);
  const auto& basis = pair_basis(S1, S2);
  std::vector<char> seen(X.size, 0);
  for (int x0 = 0; x0 < X.size; ++x0) {
    if (seen[x0]) continue;
    // orbit of the combined action
    std::vector<int> orbit{x0};
    seen[x0] = 1;
    for (size_t i = 0; i < orbit.size(); ++i) {
      for (int g = 0; g < S1.order(); ++g) {
        int y = X.act_right[orbit[i]][g];
        if (!seen[y]) {
          seen[y] = 1;
          orbit.push_back(y);
        }
      }
      for (int h = 0; h < S2.order(); ++h) {
        int y = X.act_left[h][orbit[i]];
        if (!seen[y]) {
          seen[y] = 1;
          orbit.push_back(y);
        }
      }
    }
    // stabilizer pair at x0: H = {g | x0 g in S2 x0}, psi(g) the witness
    std::vector<int> left_orbit_owner(X.size, -1);
    for (int h = 0; h < S2.order(); ++h) left_orbit_owner[X.act_left[h][x0]] = h;
    Pair q;
    for (int g = 0; g < S1.order(); ++g) {
      int y = X.act_right[x0][g];
      if (left_orbit_owner[y] >= 0) {
        q.dom.push_back(g);
        q.img.push_back(left_orbit_owner[y]);
      }
    }
    if (!is_subgroup_set(S1, q.dom)) throw Error("internal: biset stabilizer is not a subgroup");
    const long expected = static_cast<long>(S2.order()) * S1.order() /
                          static_cast<long>(q.dom.size());
    if (static_cast<long>(orbit.size()) != expected)
      throw Error("internal: biset orbit has unexpected size");
    out.add_coefficient(basis.index_of(q), 1);
  }
  return out;
}

long orbit_count_left(const ExplicitBiset& X) {
  std::vector<char> seen(X.size, 0);
  long count = 0;
  for (int x = 0; x < X.size; ++x) {
    if (seen[x]) continue;
    ++count;
    for (int h = 0; h < X.left.order(); ++h) seen[X.act_left[h][x]] = 1;
  }
  return count;
}

long fixed_points(const ExplicitBiset& X, const Pair& q) {
  long count = 0;
  for (int x = 0; x < X.size; ++x) {
    bool ok = true;
    for (size_t i = 0; i < q.dom.size() && ok; ++i)
      ok = X.act_right[x][q.dom[i]] == X.act_left[q.img[i]][x];
    if (ok) ++count;
  }
  return count;
}

BurnsideElement group_as_biset(const Group& G, const Subgroup& S) {
  if (!S.parent.same(G)) throw PreconditionError("S must be a subgroup of G");
  return decompose_biset(group_biset(G, S));
}

}  // namespace fuscalc

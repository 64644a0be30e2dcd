#include "fuscalc/idempotent.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fuscalc/linalg.hpp"

namespace fuscalc {

FusionClassBasis fusion_class_basis(const FusionSystem& F) {
  const Group& S = F.S();
  const auto& subs = subgroups(S);
  const auto& basis = pair_basis(S, S);

  // S-conjugacy class representatives in canonical order (S itself first)
  std::set<std::vector<int>> seen;
  std::vector<int> rep_idx;
  for (size_t i = 0; i < subs.size(); ++i) {
    if (seen.count(subs[i].members)) continue;
    rep_idx.push_back(static_cast<int>(i));
    for (int g = 0; g < S.order(); ++g)
      seen.insert(conjugate_members(S, subs[i].members, g));
  }

  FusionClassBasis out;
  for (size_t ci = 0; ci < rep_idx.size(); ++ci) {
    const Subgroup& P = subs[rep_idx[ci]];
    out.class_reps.push_back(P);
    int incl_class = basis.index_of(Pair{P.members, P.members});
    std::set<int> classes;
    for (const auto& phi : F.morphisms_from(rep_idx[ci]))
      classes.insert(basis.index_of(pair_of_hom(phi)));
    if (!classes.count(incl_class)) throw Error("internal: inclusion missing from fusion classes");
    std::vector<int> ordered{incl_class};
    for (int c : classes)
      if (c != incl_class) ordered.push_back(c);

    std::vector<int> entry_ids;
    for (size_t j = 0; j < ordered.size(); ++j) {
      entry_ids.push_back(static_cast<int>(out.entries.size()));
      out.entries.push_back({static_cast<int>(ci), ordered[j], j == 0});
    }
    out.by_class.push_back(std::move(entry_ids));
  }
  return out;
}

IdempotentReport char_idempotent_solve(const FusionSystem& F) {
  const Group& S = F.S();
  const auto& basis = pair_basis(S, S);
  FusionClassBasis fb = fusion_class_basis(F);
  const int n = static_cast<int>(fb.entries.size());

  Matrix A(n, std::vector<Rational>(n, 0));
  std::vector<Rational> b(n, 0);
  int row = 0;
  for (size_t i = 0; i < fb.by_class.size(); ++i) {
    const auto& ids = fb.by_class[i];
    // Equation (i,0): the chi sum over the class block
    for (int col : ids) A[row][col] = 1;
    b[row] = i == 0 ? 1 : 0;
    ++row;
    // Equations (i,j), j != 0: equal marks at Graph(i,j) and Graph(i,0)
    const Pair& graph_i0 = basis.at(fb.entries[ids[0]].basis_index).rep;
    for (size_t j = 1; j < ids.size(); ++j) {
      const Pair& graph_ij = basis.at(fb.entries[ids[j]].basis_index).rep;
      for (int col = 0; col < n; ++col) {
        int cls = fb.entries[col].basis_index;
        A[row][col] =
            marks_on_class(S, S, cls, graph_ij) - marks_on_class(S, S, cls, graph_i0);
      }
      b[row] = 0;
      ++row;
    }
  }
  if (row != n) throw Error("internal: idempotent system is not square");

  auto solution = solve_linear(std::move(A), std::move(b));
  if (!solution)
    throw std::logic_error("characteristic idempotent system is singular (ordering bug)");

  BurnsideElement omega(S, S);
  for (int col = 0; col < n; ++col)
    omega.set_coefficient(fb.entries[col].basis_index, (*solution)[col]);
  return verify_lw(omega, F);
}

IdempotentReport verify_lw(const BurnsideElement& omega, const FusionSystem& F) {
  if (!omega.source().same(F.S()) || !omega.target().same(F.S()))
    throw PreconditionError("verify_lw needs an element of A(S,S) for F's group");
  const Group& S = F.S();
  const auto& basis = pair_basis(S, S);

  IdempotentReport report;
  report.omega = omega;

  // (a) support inside the fusion classes
  report.property_a = true;
  for (const auto& [k, v] : omega.coefficients()) {
    const Pair& rep = basis.at(k).rep;
    GroupHom as_hom{S, S, rep.dom, rep.img};
    if (!F.contains(as_hom)) {
      report.property_a = false;
      report.a_counterexample = rep;
      break;
    }
  }

  auto right = is_f_stable(omega, F, Side::right);
  report.property_b1 = right.stable;
  report.b1_counterexample = right.counterexample;
  auto left = is_f_stable(omega, F, Side::left);
  report.property_b2 = left.stable;
  report.b2_counterexample = left.counterexample;

  report.property_c = augmentation(omega) == 1;
  report.idempotent = compose(omega, omega) == omega;

  report.p_integral = true;
  for (const auto& [k, v] : omega.coefficients())
    if (!denominator_coprime_to(v, F.p())) {
      report.p_integral = false;
      break;
    }

  auto [top, strict] = split_top(omega);
  report.omega_top = top;
  report.omega_strict = strict;

  // expected top part: (1/|Out_F(S)|) sum over the classes [S, phi]
  auto outer = out_f_s(F);
  BurnsideElement expected(S, S);
  std::set<int> top_classes;
  for (const auto& phi : F.morphisms_from(0))
    top_classes.insert(basis.index_of(pair_of_hom(phi)));
  for (int c : top_classes) expected.set_coefficient(c, Rational(1, outer.order));
  report.top_form =
      static_cast<int>(top_classes.size()) == outer.order && top == expected;

  return report;
}

BurnsideElement reduce_mod(const BurnsideElement& e, int p, int precision) {
  Integer m = integer_power(p, precision);
  BurnsideElement out(e.source(), e.target());
  for (const auto& [k, v] : e.coefficients())
    out.set_coefficient(k, Rational(residue_mod(v, m)));
  return out;
}

namespace {

BurnsideElement compose_mod(const BurnsideElement& a, const BurnsideElement& b, int p,
                            int precision) {
  return reduce_mod(compose(a, b), p, precision);
}

BurnsideElement power_mod(const BurnsideElement& e, long exp, int p, int precision) {
  BurnsideElement result = identity_element(e.source());
  BurnsideElement base = reduce_mod(e, p, precision);
  while (exp > 0) {
    if (exp & 1) result = compose_mod(result, base, p, precision);
    base = compose_mod(base, base, p, precision);
    exp >>= 1;
  }
  return result;
}

}  // namespace

int find_M(const BurnsideElement& omega, int p) {
  if (!omega.integral()) throw PreconditionError("find_M needs integer coefficients");

  // successive powers mod p until the sequence repeats
  std::map<std::map<int, Rational>, int> seen;
  std::vector<BurnsideElement> powers{reduce_mod(omega, p, 1)};  // powers[k] = Omega^{k+1}
  seen.emplace(powers[0].coefficients(), 1);
  int N = 0, t = 0;
  for (int exp = 2;; ++exp) {
    if (exp > 200000) throw Error("internal: power sequence mod p did not cycle");
    BurnsideElement next = compose_mod(powers.back(), powers[0], p, 1);
    auto [it, fresh] = seen.emplace(next.coefficients(), exp);
    powers.push_back(std::move(next));
    if (!fresh) {
      N = it->second;
      t = exp - N;
      break;
    }
  }

  // Omega^n = Omega^{n+t} for n >= N; fold exponents into the stored range
  auto power_at = [&](long e) -> const BurnsideElement& {
    if (e <= static_cast<long>(powers.size())) return powers[e - 1];
    long folded = N + (e - N) % t;
    return powers[folded - 1];
  };
  for (long m = 1;; ++m) {
    long M = m * t;
    if (M > N + t) throw Error("internal: pigeonhole exponent bound exceeded");
    if (power_at(2 * M) == power_at(M)) return static_cast<int>(M);
  }
}

BurnsideElement char_idempotent_iterate(const BurnsideElement& start, const FusionSystem& F,
                                        int precision) {
  if (precision < 1) throw PreconditionError("precision must be at least 1");
  const int p = F.p();
  if (!start.integral())
    throw PreconditionError("iterate precondition failed: integer coefficients");
  {
    auto probe = verify_lw(start, F);
    if (!probe.property_a)
      throw PreconditionError("iterate precondition failed: support outside A_F(S,S)");
    if (!probe.property_b1)
      throw PreconditionError("iterate precondition failed: not right F-stable");
    if (!probe.property_b2)
      throw PreconditionError("iterate precondition failed: not left F-stable");
  }
  Rational eps = augmentation(start);
  if (!is_integral(eps) || residue_mod(eps, Integer(p)) == 0)
    throw PreconditionError("iterate precondition failed: augmentation not coprime to p");

  // power once so the augmentation becomes 1 mod p
  long e_mod = residue_mod(eps, Integer(p)).get_si();
  int unit_order = 1;
  for (long acc = e_mod; acc != 1; acc = acc * e_mod % p) ++unit_order;
  BurnsideElement omega = power_mod(start, unit_order, p, precision);

  const int M = find_M(omega, p);
  BurnsideElement x = power_mod(omega, M, p, precision);

  for (int step = 0; step <= precision + 2; ++step) {
    BurnsideElement next = power_mod(x, p, p, precision);
    if (next == x) return x;
    x = std::move(next);
  }
  throw Error("internal: p-adic iteration failed to stabilize (precondition bug)");
}

}  // namespace fuscalc

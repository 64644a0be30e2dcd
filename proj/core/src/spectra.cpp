#include "fuscalc/spectra.hpp"

#include <algorithm>

#include "fuscalc/linalg.hpp"

namespace fuscalc {

Spectrum spectrum_of(const FusionSystem& F) {
  IdempotentReport report = char_idempotent_solve(F);
  if (!report.characteristic())
    throw PreconditionError("fusion system has no verified characteristic idempotent");
  return Spectrum{F, report.omega};
}

SpectrumMap make_map(const BurnsideElement& x, const Spectrum& from, const Spectrum& to) {
  if (!x.source().same(from.F.S()) || !x.target().same(to.F.S()))
    throw PreconditionError("map element does not match the spectra");
  BurnsideElement absorbed = compose(to.omega, compose(x, from.omega));
  BurnsideElement reduced = reduce_trivial(absorbed);
  return SpectrumMap{from, to, std::move(absorbed), std::move(reduced)};
}

bool map_equal(const SpectrumMap& a, const SpectrumMap& b) {
  return a.from.F.same(b.from.F) && a.to.F.same(b.to.F) && a.reduced == b.reduced;
}

SpectrumMap compose(const SpectrumMap& outer, const SpectrumMap& inner) {
  if (!outer.from.F.same(inner.to.F))
    throw PreconditionError("spectrum map composition mismatch");
  BurnsideElement element = compose(outer.element, inner.element);
  BurnsideElement reduced = reduce_trivial(element);
  return SpectrumMap{inner.from, outer.to, std::move(element), std::move(reduced)};
}

MapBasis map_basis(const Spectrum& from, const Spectrum& to) {
  const Group& S1 = from.F.S();
  const Group& S2 = to.F.S();
  const auto& basis = pair_basis(S1, S2);

  // group the nontrivial pair classes into (F1,F2)-conjugacy classes
  std::vector<int> nontrivial;
  for (int i = 0; i < basis.size(); ++i)
    if (!basis.at(i).trivial) nontrivial.push_back(i);
  std::vector<char> taken(nontrivial.size(), 0);
  MapBasis out;
  for (size_t i = 0; i < nontrivial.size(); ++i) {
    if (taken[i]) continue;
    const Pair& rep = basis.at(nontrivial[i]).rep;
    out.reps.push_back(rep);
    for (size_t j = i; j < nontrivial.size(); ++j) {
      if (taken[j]) continue;
      if (pair_relation(basis.at(nontrivial[j]).rep, rep, from.F, to.F) ==
          PairRelation::conjugate)
        taken[j] = 1;
    }
    out.maps.push_back(make_map(basis_element(S1, S2, rep), from, to));
  }

  // exact rank of the reduced elements
  Matrix rows;
  for (const auto& m : out.maps) {
    std::vector<Rational> row(basis.size(), 0);
    for (const auto& [k, v] : m.reduced.coefficients()) row[k] = v;
    rows.push_back(std::move(row));
  }
  out.rank = matrix_rank(std::move(rows));
  if (out.rank != static_cast<int>(out.maps.size()))
    throw std::logic_error("map basis is linearly dependent (upstream bug)");
  return out;
}

namespace {

FusionSystem reconstruct(const BurnsideElement& omega, int p, bool left_variant) {
  if (!omega.source().same(omega.target()))
    throw PreconditionError("reconstruction needs an element of A(S,S)");
  const Group& S = omega.source();
  const auto& subs = subgroups(S);

  std::vector<std::vector<GroupHom>> morphs(subs.size());
  for (size_t i = 0; i < subs.size(); ++i) {
    const Subgroup& P = subs[i];
    const Group& Pg = as_group(P).group;
    BurnsideElement base =
        left_variant
            ? reduce_trivial(compose(basis_element(S, Pg, corestriction_pair(P)), omega))
            : reduce_trivial(compose(omega, basis_element(Pg, S, restriction_pair_incl(P))));
    for (const auto& psi : enumerate_homs(P, S, left_variant)) {
      BurnsideElement cand =
          left_variant
              ? reduce_trivial(compose(basis_element(S, Pg, transfer_pair(P, psi)), omega))
              : reduce_trivial(compose(omega, basis_element(Pg, S, restriction_pair(P, psi))));
      if (!(cand == base)) continue;
      if (P.order() > 1 && !psi.injective())
        throw Error("internal: non-injective map passed the reconstruction test");
      if (P.order() == 1 || psi.injective()) morphs[i].push_back(psi);
    }
  }
  return make_fusion_system(S, p, std::move(morphs));
}

}  // namespace

FusionSystem reconstruct_fusion(const BurnsideElement& omega, int p) {
  return reconstruct(omega, p, false);
}

FusionSystem reconstruct_fusion_left(const BurnsideElement& omega, int p) {
  return reconstruct(omega, p, true);
}

SpectrumMap induced_map(const GroupHom& gamma, const Spectrum& from, const Spectrum& to) {
  auto check = is_fusion_preserving(gamma, from.F, to.F);
  if (!check.preserving)
    throw PreconditionError("gamma is not fusion-preserving");
  Pair graph{gamma.dom, gamma.img};  // [S1, gamma]
  return make_map(basis_element(from.F.S(), to.F.S(), graph), from, to);
}

SpectrumMap transfer_map(const GroupHom& gamma, const Spectrum& from, const Spectrum& to) {
  if (!gamma.injective()) throw PreconditionError("transfer needs an injective gamma");
  auto check = is_fusion_preserving(gamma, from.F, to.F);
  if (!check.preserving)
    throw PreconditionError("gamma is not fusion-preserving");
  // [gamma(S1), gamma^{-1}] over (S2, S1)
  auto inv = inverse_hom(gamma).value();
  Pair q{inv.dom, inv.img};
  return make_map(basis_element(to.F.S(), from.F.S(), q), to, from);
}

}  // namespace fuscalc

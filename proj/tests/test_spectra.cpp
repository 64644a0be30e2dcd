#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "fuscalc/linalg.hpp"
#include "fuscalc/spectra.hpp"

using namespace fuscalc;
using namespace corpus;

namespace {

Pair inversion_pair(const Group& S) {
  Pair q = identity_pair(S);
  for (int i = 0; i < S.order(); ++i) q.img[i] = S.inv(q.dom[i]);
  return q;
}

const Spectrum& spec_z3_inner() {
  static Spectrum s = spectrum_of(inner_of(f_z3_s3()));
  return s;
}
const Spectrum& spec_z3_s3() {
  static Spectrum s = spectrum_of(f_z3_s3());
  return s;
}
const Spectrum& spec_v4_a4() {
  static Spectrum s = spectrum_of(f_v4_a4());
  return s;
}
const Spectrum& spec_d8_s4() {
  static Spectrum s = spectrum_of(f_d8_s4());
  return s;
}

}  // namespace

TEST_CASE("make_map") {
  SUBCASE("the identity absorbs to omega") {
    const auto& sp = spec_z3_s3();
    auto m = make_map(identity_element(sp.F.S()), sp, sp);
    CHECK(m.element == sp.omega);
  }
  SUBCASE("the inversion absorbs to omega as well (conjugate pairs collapse)") {
    const auto& sp = spec_z3_s3();
    const Group& S = sp.F.S();
    auto m = make_map(basis_element(S, S, inversion_pair(S)), sp, sp);
    CHECK(m.element == sp.omega);
  }
  SUBCASE("trivial classes map to zero") {
    const auto& sp = spec_v4_a4();
    const Group& S = sp.F.S();
    auto m = make_map(basis_element(S, S, Pair{{0}, {0}}), sp, sp);
    CHECK(m.reduced.zero());
    CHECK_FALSE(m.element.zero());  // the trivial coefficient survives absorption
  }
  SUBCASE("absorption is exact: both idempotents fix the element") {
    const auto& sp1 = spec_z3_inner();
    const auto& sp2 = spec_z3_s3();
    const Group& S = sp1.F.S();
    std::mt19937 rng(31);
    const auto& b = pair_basis(S, S);
    std::uniform_int_distribution<int> which(0, b.size() - 1);
    for (int t = 0; t < 10; ++t) {
      BurnsideElement x(S, S);
      x.add_coefficient(which(rng), Rational(1 + t));
      x.add_coefficient(which(rng), Rational(-3));
      auto m = make_map(x, sp1, sp2);
      CHECK(compose(sp2.omega, m.element) == m.element);
      CHECK(compose(m.element, sp1.omega) == m.element);
    }
  }
}

TEST_CASE("absorption characterizes stability") {
  const auto& sp = spec_z3_s3();
  const Group& S = sp.F.S();
  const auto& b = pair_basis(S, S);

  SUBCASE("g . omega is right stable, and stable g satisfies g . omega = g") {
    for (int i = 0; i < b.size(); ++i) {
      auto g = compose(basis_element(S, S, b.at(i).rep), sp.omega);
      CHECK(is_f_stable(g, sp.F, Side::right).stable);
      CHECK(compose(g, sp.omega) == g);
    }
  }
  SUBCASE("left-handed version") {
    for (int i = 0; i < b.size(); ++i) {
      auto g = compose(sp.omega, basis_element(S, S, b.at(i).rep));
      CHECK(is_f_stable(g, sp.F, Side::left).stable);
      CHECK(compose(sp.omega, g) == g);
    }
  }
}

TEST_CASE("subcategory absorption") {
  SUBCASE("inner inside F_{Z3}(S3)") {
    const auto& sp1 = spec_z3_inner();
    const auto& sp2 = spec_z3_s3();
    REQUIRE(subsystem_of(sp1.F, sp2.F));
    CHECK(compose(sp2.omega, sp1.omega) == sp2.omega);
    CHECK(compose(sp1.omega, sp2.omega) == sp2.omega);
  }
  SUBCASE("inner inside F_{D8}(S4)") {
    auto spi = spectrum_of(inner_of(f_d8_s4()));
    const auto& sp2 = spec_d8_s4();
    REQUIRE(subsystem_of(spi.F, sp2.F));
    CHECK(compose(sp2.omega, spi.omega) == sp2.omega);
    CHECK(compose(spi.omega, sp2.omega) == sp2.omega);
  }
}

TEST_CASE("map_basis ranks") {
  SUBCASE("(F_Z3, F_{Z3}(S3)) has rank 1 in both directions") {
    CHECK(map_basis(spec_z3_inner(), spec_z3_s3()).rank == 1);
    CHECK(map_basis(spec_z3_s3(), spec_z3_inner()).rank == 1);
  }
  SUBCASE("(F_Z2, F_Z2) has rank 1") {
    auto sp = spectrum_of(inner_fusion(z2(), 2));
    CHECK(map_basis(sp, sp).rank == 1);
  }
  SUBCASE("(F_Z2, F_{V4}(A4)) has rank 1") {
    auto spz2 = spectrum_of(inner_fusion(z2(), 2));
    CHECK(map_basis(spz2, spec_v4_a4()).rank == 1);
  }
  SUBCASE("rank equals the nontrivial fusion-class count") {
    // map_basis already asserts linear independence internally; spot-check
    // the class count for a couple of pairs
    auto mb = map_basis(spec_v4_a4(), spec_v4_a4());
    CHECK(mb.rank == static_cast<int>(mb.reps.size()));
    auto mb2 = map_basis(spec_z3_s3(), spec_z3_s3());
    CHECK(mb2.rank == static_cast<int>(mb2.reps.size()));
  }
}

TEST_CASE("sandwiched class representatives form a basis (trivial classes too)") {
  // one representative per (F,F)-class of all pairs; the absorbed elements
  // must be linearly independent over the rationals
  for (const Spectrum* spp : {&spec_z3_s3(), &spec_v4_a4()}) {
    const Spectrum& sp = *spp;
    const Group& S = sp.F.S();
    const auto& basis = pair_basis(S, S);
    std::vector<int> reps;
    std::vector<char> taken(basis.size(), 0);
    for (int i = 0; i < basis.size(); ++i) {
      if (taken[i]) continue;
      reps.push_back(i);
      for (int j = i; j < basis.size(); ++j)
        if (!taken[j] &&
            pair_relation(basis.at(j).rep, basis.at(i).rep, sp.F, sp.F) ==
                PairRelation::conjugate)
          taken[j] = 1;
    }
    Matrix rows;
    for (int r : reps) {
      auto sandwich =
          compose(sp.omega, compose(basis_element(S, S, basis.at(r).rep), sp.omega));
      std::vector<Rational> row(basis.size(), 0);
      for (const auto& [k, v] : sandwich.coefficients()) row[k] = v;
      rows.push_back(std::move(row));
    }
    CHECK(matrix_rank(rows) == static_cast<int>(reps.size()));
  }
}

TEST_CASE("reconstruct_fusion") {
  SUBCASE("the identity reconstructs the inner system") {
    for (const Group& S : {z4(), v4(), d8()}) {
      auto F = reconstruct_fusion(identity_element(S), 2);
      CHECK(F == inner_fusion(S, 2));
    }
  }
  SUBCASE("the averaged Z3 idempotent reconstructs F_{Z3}(S3)") {
    const auto& sp = spec_z3_s3();
    CHECK(reconstruct_fusion(sp.omega, 3) == sp.F);
  }
  SUBCASE("round trip for F_{V4}(A4)") {
    const auto& sp = spec_v4_a4();
    CHECK(reconstruct_fusion(sp.omega, 2) == sp.F);
  }
  SUBCASE("round trip for the abstract both-Kleins system over D8") {
    auto sp = spectrum_of(d8_both_kleins_fusion());
    CHECK(reconstruct_fusion(sp.omega, 2) == sp.F);
    CHECK(reconstruct_fusion_left(sp.omega, 2) == sp.F);
  }
  SUBCASE("round trip for F_{D8}(S4), every Hom set") {
    const auto& sp = spec_d8_s4();
    auto rec = reconstruct_fusion(sp.omega, 2);
    REQUIRE(rec.size() == sp.F.size());
    for (int i = 0; i < rec.size(); ++i)
      for (int j = 0; j < rec.size(); ++j)
        CHECK(rec.hom_set(i, j) == sp.F.hom_set(i, j));
    CHECK(rec == sp.F);
  }
}

TEST_CASE("transfer-side reconstruction agrees on injective maps") {
  for (const Spectrum* sp : {&spec_z3_s3(), &spec_v4_a4(), &spec_d8_s4()}) {
    auto right = reconstruct_fusion(sp->omega, sp->F.p());
    auto left = reconstruct_fusion_left(sp->omega, sp->F.p());
    CHECK(left == right);
    CHECK(left == sp->F);
  }
}

TEST_CASE("stable sandwiching collapses fusion-conjugate pairs across groups") {
  // omega_2 . [Q,rho] . omega_1 depends only on the (F1,F2)-class of (Q,rho)
  const auto& sp1 = spec_v4_a4();
  const auto& sp2 = spec_d8_s4();
  const Group& S1 = sp1.F.S();
  const Group& S2 = sp2.F.S();
  const auto& basis = pair_basis(S1, S2);
  for (int i = 0; i < basis.size(); ++i)
    for (int j = i + 1; j < basis.size(); ++j) {
      if (pair_relation(basis.at(i).rep, basis.at(j).rep, sp1.F, sp2.F) !=
          PairRelation::conjugate)
        continue;
      auto a = compose(sp2.omega, compose(basis_element(S1, S2, basis.at(i).rep), sp1.omega));
      auto b = compose(sp2.omega, compose(basis_element(S1, S2, basis.at(j).rep), sp1.omega));
      CHECK(a == b);
    }
}

TEST_CASE("induced maps") {
  SUBCASE("identity induces omega") {
    const auto& sp = spec_z3_s3();
    GroupHom id = inclusion_hom(full_subgroup(sp.F.S()));
    auto m = induced_map(id, sp, sp);
    CHECK(m.element == sp.omega);
  }
  SUBCASE("V4 into D8 has augmentation 1") {
    GroupHom gamma = perm_inclusion(spec_v4_a4().F.S(), spec_d8_s4().F.S());
    auto m = induced_map(gamma, spec_v4_a4(), spec_d8_s4());
    CHECK(augmentation(m.element) == 1);
  }
  SUBCASE("non-preserving gamma is rejected") {
    const auto& spi = spec_z3_inner();
    const auto& sp = spec_z3_s3();
    GroupHom id = inclusion_hom(full_subgroup(sp.F.S()));
    CHECK_THROWS_AS(induced_map(id, sp, spi), PreconditionError);
  }
}

TEST_CASE("fusion automorphisms induce the identity map") {
  const auto& sp = spec_v4_a4();
  const Group& S = sp.F.S();
  GroupHom id = inclusion_hom(full_subgroup(S));
  for (const auto& sigma : sp.F.morphisms_from(0)) {
    REQUIRE(is_fusion_preserving(sigma, sp.F, sp.F).preserving);
    CHECK(map_equal(induced_map(sigma, sp, sp), induced_map(id, sp, sp)));
    CHECK(map_equal(transfer_map(sigma, sp, sp), transfer_map(id, sp, sp)));
  }
}

TEST_CASE("transfer maps") {
  SUBCASE("identity transfers to omega") {
    const auto& sp = spec_v4_a4();
    GroupHom id = inclusion_hom(full_subgroup(sp.F.S()));
    auto m = transfer_map(id, sp, sp);
    CHECK(m.element == sp.omega);
  }
  SUBCASE("V4 into D8: transfer has augmentation |S2|/|S1| = 2") {
    GroupHom gamma = perm_inclusion(spec_v4_a4().F.S(), spec_d8_s4().F.S());
    auto t = transfer_map(gamma, spec_v4_a4(), spec_d8_s4());
    CHECK(augmentation(t.element) == 2);
    SUBCASE("induced . transfer acts with augmentation |S2|/|S1|") {
      auto ind = induced_map(gamma, spec_v4_a4(), spec_d8_s4());
      CHECK(augmentation(compose(ind, t).element) == 2);
    }
  }
}

TEST_CASE("functoriality along Z2 -> V4 -> D8") {
  const Group& V4h = spec_v4_a4().F.S();
  const Group& D8h = spec_d8_s4().F.S();

  // <(12)(34)> sits inside V4h and V4h inside D8h by matching permutations
  GroupHom g1 = perm_inclusion(z2p(), V4h);
  auto spz2p = spectrum_of(inner_fusion(z2p(), 2));
  GroupHom g2 = perm_inclusion(V4h, D8h);
  GroupHom g21 = compose_homs(g2, g1);

  const auto& sp1 = spz2p;
  const auto& sp2 = spec_v4_a4();
  const auto& sp3 = spec_d8_s4();

  REQUIRE(is_fusion_preserving(g1, sp1.F, sp2.F).preserving);
  REQUIRE(is_fusion_preserving(g2, sp2.F, sp3.F).preserving);

  SUBCASE("induced maps compose covariantly") {
    auto lhs = induced_map(g21, sp1, sp3);
    auto rhs = compose(induced_map(g2, sp2, sp3), induced_map(g1, sp1, sp2));
    CHECK(map_equal(lhs, rhs));
  }
  SUBCASE("transfers compose contravariantly") {
    auto lhs = transfer_map(g21, sp1, sp3);
    auto rhs = compose(transfer_map(g1, sp1, sp2), transfer_map(g2, sp2, sp3));
    CHECK(map_equal(lhs, rhs));
  }
  SUBCASE("augmentation shadows of induced . transfer") {
    auto e1 = compose(induced_map(g1, sp1, sp2), transfer_map(g1, sp1, sp2));
    CHECK(augmentation(e1.element) == 2);  // |V4| / |Z2|
    auto e2 = compose(induced_map(g2, sp2, sp3), transfer_map(g2, sp2, sp3));
    CHECK(augmentation(e2.element) == 2);  // |D8| / |V4|
    auto e3 = compose(induced_map(g21, sp1, sp3), transfer_map(g21, sp1, sp3));
    CHECK(augmentation(e3.element) == 4);  // |D8| / |Z2|
  }
  SUBCASE("transfer of the composite is already left-absorbed") {
    auto t = transfer_map(g21, sp1, sp3);
    CHECK(compose(sp1.omega, t.element) == t.element);
  }
}

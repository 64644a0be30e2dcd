#include "fuscalc/fusion.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace fuscalc {

namespace {

void require_p_group(const Group& S, int p) {
  if (!is_prime(p)) throw PreconditionError("p must be prime");
  if (p_part(S.order(), p) != S.order())
    throw PreconditionError("group of order " + std::to_string(S.order()) +
                            " is not a p-group for p = " + std::to_string(p));
  if (S.order() > caps().p_group)
    throw CapError("p-group order exceeds cap " + std::to_string(caps().p_group));
}

std::vector<GroupHom> sorted_unique(std::vector<GroupHom> v) {
  std::sort(v.begin(), v.end(), hom_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

int FusionSystem::subgroup_index(const std::vector<int>& sorted_members) const {
  for (int i = 0; i < size(); ++i)
    if (d_->subs[i].members == sorted_members) return i;
  return -1;
}

std::vector<GroupHom> FusionSystem::hom_set(int i, int j) const {
  const auto& Q = d_->subs[j];
  std::vector<GroupHom> out;
  for (const auto& f : d_->morphs[i]) {
    bool inside = std::all_of(f.img.begin(), f.img.end(), [&](int y) { return Q.contains(y); });
    if (inside) out.push_back(f);
  }
  return out;
}

bool FusionSystem::contains(const GroupHom& f) const {
  if (!f.src.same(d_->S) || !f.dst.same(d_->S)) return false;
  int i = subgroup_index(f.dom);
  if (i < 0) return false;
  const auto& set = d_->morphs[i];
  auto it = std::lower_bound(set.begin(), set.end(), f, hom_less);
  return it != set.end() && *it == f;
}

bool FusionSystem::operator==(const FusionSystem& o) const {
  if (d_ == o.d_) return true;
  if (!d_->S.same(o.d_->S) || d_->p != o.d_->p) return false;
  for (int i = 0; i < size(); ++i)
    if (d_->morphs[i] != o.d_->morphs[i]) return false;
  return true;
}

FusionSystem make_fusion_system(const Group& S, int p,
                                std::vector<std::vector<GroupHom>> morphisms) {
  require_p_group(S, p);
  const auto& subs = subgroups(S);
  if (morphisms.size() != subs.size())
    throw PreconditionError("morphism table size does not match subgroup count");
  for (size_t i = 0; i < subs.size(); ++i) {
    for (auto& f : morphisms[i]) {
      if (!f.src.same(S) || !f.dst.same(S) || f.dom != subs[i].members)
        throw PreconditionError("morphism does not belong to its subgroup slot");
      if (!f.injective() || !is_multiplicative(f))
        throw PreconditionError("fusion morphism must be an injective homomorphism");
    }
    morphisms[i] = sorted_unique(std::move(morphisms[i]));
  }
  auto data = std::make_shared<FusionSystem::Data>();
  data->S = S;
  data->p = p;
  data->subs = subs;
  data->morphs = std::move(morphisms);
  FusionSystem F;
  F.d_ = std::move(data);
  return F;
}

FusionSystem fusion_of_group(const Group& G, const Subgroup& Ssub, int p) {
  if (!Ssub.parent.same(G)) throw PreconditionError("S must be a subgroup of G");
  if (Ssub.order() != p_part(G.order(), p))
    throw PreconditionError("S is not a Sylow p-subgroup of G");
  const auto& sg = as_group(Ssub);
  const Group& S = sg.group;
  require_p_group(S, p);

  // label translation between S and G
  const auto& members = Ssub.members;
  auto to_G = [&](int x) { return members[x]; };
  std::vector<int> to_S(G.order(), -1);
  for (int i = 0; i < Ssub.order(); ++i) to_S[members[i]] = i;

  const auto& subs = subgroups(S);
  std::vector<std::vector<GroupHom>> morphs(subs.size());
  for (size_t i = 0; i < subs.size(); ++i) {
    std::vector<int> P_in_G;
    for (int x : subs[i].members) P_in_G.push_back(to_G(x));
    std::sort(P_in_G.begin(), P_in_G.end());
    Subgroup PG{G, P_in_G};
    std::set<std::vector<int>> seen;
    for (int g : transporter(G, PG, Ssub)) {
      GroupHom f{S, S, subs[i].members, {}};
      f.img.reserve(subs[i].members.size());
      for (int x : subs[i].members) f.img.push_back(to_S[G.conjugate(g, to_G(x))]);
      if (seen.insert(f.img).second) morphs[i].push_back(std::move(f));
    }
  }
  return make_fusion_system(S, p, std::move(morphs));
}

FusionSystem inner_fusion(const Group& S, int p) {
  require_p_group(S, p);
  const auto& subs = subgroups(S);
  std::vector<std::vector<GroupHom>> morphs(subs.size());
  for (size_t i = 0; i < subs.size(); ++i) {
    std::set<std::vector<int>> seen;
    for (int g = 0; g < S.order(); ++g) {
      auto f = conjugation_hom(S, subs[i], g);
      if (seen.insert(f.img).second) morphs[i].push_back(std::move(f));
    }
  }
  return make_fusion_system(S, p, std::move(morphs));
}

FusionSystem generate_fusion(const Group& S, int p, const std::vector<GroupHom>& generators) {
  require_p_group(S, p);
  const auto& subs = subgroups(S);
  const int m = static_cast<int>(subs.size());

  std::map<std::vector<int>, int> sub_idx;
  for (int i = 0; i < m; ++i) sub_idx[subs[i].members] = i;

  // subgroups contained in each subgroup
  std::vector<std::vector<int>> below(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (std::includes(subs[i].members.begin(), subs[i].members.end(),
                        subs[j].members.begin(), subs[j].members.end()))
        below[i].push_back(j);

  std::vector<std::set<std::vector<int>>> sets(m);
  std::vector<std::pair<int, std::vector<int>>> pending;
  auto add = [&](int i, std::vector<int> img) {
    if (sets[i].insert(img).second) pending.emplace_back(i, std::move(img));
  };

  for (int i = 0; i < m; ++i)
    for (int g = 0; g < S.order(); ++g) add(i, conjugation_hom(S, subs[i], g).img);
  for (const auto& gen : generators) {
    if (!gen.src.same(S) || !gen.dst.same(S))
      throw PreconditionError("generator must map between subgroups of S");
    if (!is_subgroup_set(S, gen.dom)) throw PreconditionError("generator domain is not a subgroup");
    if (!is_multiplicative(gen)) throw PreconditionError("generator is not a homomorphism");
    if (!gen.injective()) throw PreconditionError("generator is not injective");
    add(sub_idx.at(gen.dom), gen.img);
  }

  auto hom_of = [&](int i, const std::vector<int>& img) {
    return GroupHom{S, S, subs[i].members, img};
  };

  while (!pending.empty()) {
    auto batch = std::move(pending);
    pending.clear();
    for (auto& [i, img] : batch) {
      GroupHom f = hom_of(i, img);
      // restriction to every subgroup of the domain
      for (int j : below[i])
        if (j != i) add(j, restrict_hom(f, subs[j].members).img);
      // inversion onto the image
      auto image = f.image_members();
      int k = sub_idx.at(image);
      add(k, inverse_hom(f)->img);
      // composition with everything defined on the image subgroup
      std::vector<std::vector<int>> snapshot(sets[k].begin(), sets[k].end());
      for (const auto& gimg : snapshot) add(i, compose_homs(hom_of(k, gimg), f).img);
      // and everything landing in this domain composes with f's family:
      // covered by the symmetric sweep once those morphisms are processed,
      // because each morphism composes against the full set on its image.
      for (int j = 0; j < m; ++j) {
        std::vector<std::vector<int>> in_j(sets[j].begin(), sets[j].end());
        for (const auto& himg : in_j) {
          GroupHom h = hom_of(j, himg);
          if (h.image_members() == subs[i].members) add(j, compose_homs(f, h).img);
        }
      }
    }
  }

  std::vector<std::vector<GroupHom>> morphs(m);
  for (int i = 0; i < m; ++i)
    for (const auto& img : sets[i]) morphs[i].push_back(hom_of(i, img));
  return make_fusion_system(S, p, std::move(morphs));
}

namespace {

std::mutex inner_mutex;
std::map<std::pair<std::uint64_t, int>, std::unique_ptr<FusionSystem>>& inner_cache() {
  static std::map<std::pair<std::uint64_t, int>, std::unique_ptr<FusionSystem>> c;
  return c;
}

}  // namespace

const FusionSystem& inner_of(const FusionSystem& F) {
  auto key = std::make_pair(F.S().id(), F.p());
  {
    std::lock_guard lock(inner_mutex);
    auto it = inner_cache().find(key);
    if (it != inner_cache().end()) return *it->second;
  }
  auto built = std::make_unique<FusionSystem>(inner_fusion(F.S(), F.p()));
  std::lock_guard lock(inner_mutex);
  auto [it, inserted] = inner_cache().emplace(key, std::move(built));
  return *it->second;
}

bool validate_fusion(const FusionSystem& F) {
  const Group& S = F.S();
  for (int i = 0; i < F.size(); ++i) {
    const auto& P = F.subgroup(i);
    // Hom_S(P, S) is contained in every fusion system
    for (int g = 0; g < S.order(); ++g)
      if (!F.contains(conjugation_hom(S, P, g))) return false;
    for (const auto& f : F.morphisms_from(i)) {
      if (!f.injective() || !is_multiplicative(f)) return false;
      // restrictions stay in F
      for (int j = 0; j < F.size(); ++j) {
        const auto& Q = F.subgroup(j);
        if (j == i || !std::includes(P.members.begin(), P.members.end(), Q.members.begin(),
                                     Q.members.end()))
          continue;
        if (!F.contains(restrict_hom(f, Q.members))) return false;
      }
      // the factoring isomorphism is invertible in F
      auto inv = inverse_hom(f);
      if (!inv || !F.contains(*inv)) return false;
      // compositions stay in F
      auto image = f.image_members();
      int k = F.subgroup_index(image);
      if (k < 0) return false;
      for (const auto& g : F.morphisms_from(k))
        if (!F.contains(compose_homs(g, f))) return false;
    }
  }
  return true;
}

namespace {

struct ConjClasses {
  std::vector<int> class_of;
  std::vector<std::vector<int>> classes;
};

// F-conjugacy classes of subgroups: orbits of "is isomorphic in F".
ConjClasses f_classes(const FusionSystem& F) {
  const int m = F.size();
  ConjClasses out;
  out.class_of.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    if (out.class_of[i] >= 0) continue;
    int cid = static_cast<int>(out.classes.size());
    std::vector<int> cls{i};
    out.class_of[i] = cid;
    for (size_t a = 0; a < cls.size(); ++a) {
      for (const auto& f : F.morphisms_from(cls[a])) {
        auto image = f.image_members();  // every morphism is an iso onto it
        int j = F.subgroup_index(image);
        if (out.class_of[j] < 0) {
          out.class_of[j] = cid;
          cls.push_back(j);
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    out.classes.push_back(std::move(cls));
  }
  return out;
}

}  // namespace

FConjugacy f_conjugacy(const FusionSystem& F) {
  auto cc = f_classes(F);
  FConjugacy out;
  out.class_of = cc.class_of;
  out.classes = cc.classes;
  const int nc = static_cast<int>(cc.classes.size());
  out.class_leq.assign(nc, std::vector<char>(nc, 0));
  for (int i = 0; i < F.size(); ++i) {
    for (const auto& f : F.morphisms_from(i)) {
      auto image = f.image_members();
      int j = F.subgroup_index(image);
      // i maps into j and into everything containing j; record on classes
      out.class_leq[cc.class_of[i]][cc.class_of[j]] = 1;
    }
  }
  // a morphism into Q also lands in every subgroup containing Q
  for (int i = 0; i < F.size(); ++i)
    for (int j = 0; j < F.size(); ++j) {
      const auto& A = F.subgroup(i).members;
      const auto& B = F.subgroup(j).members;
      if (std::includes(B.begin(), B.end(), A.begin(), A.end()))
        out.class_leq[cc.class_of[i]][cc.class_of[j]] = 1;
    }
  // transitive closure
  for (int k = 0; k < nc; ++k)
    for (int a = 0; a < nc; ++a)
      for (int b = 0; b < nc; ++b)
        if (out.class_leq[a][k] && out.class_leq[k][b]) out.class_leq[a][b] = 1;
  return out;
}

OuterAutData out_f_s(const FusionSystem& F) {
  const Group& S = F.S();
  const auto& autF = F.morphisms_from(0);  // subgroup 0 is S itself
  std::set<std::vector<int>> inner;
  for (int g = 0; g < S.order(); ++g)
    inner.insert(conjugation_hom(S, full_subgroup(S), g).img);

  OuterAutData out;
  std::set<std::vector<int>> covered;
  for (const auto& phi : autF) {
    if (covered.count(phi.img)) continue;
    out.reps.push_back(phi);
    for (const auto& inn : inner) {
      GroupHom c{S, S, F.subgroup(0).members, inn};
      covered.insert(compose_homs(phi, c).img);
    }
  }
  out.order = static_cast<int>(out.reps.size());
  if (static_cast<int>(autF.size()) != out.order * static_cast<int>(inner.size()))
    throw Error("internal: Aut_F(S) is not a union of Aut_S(S)-cosets");
  return out;
}

SaturationReport is_saturated(const FusionSystem& F) {
  const Group& S = F.S();
  const int p = F.p();
  const int m = F.size();
  SaturationReport report;

  auto cc = f_classes(F);
  std::vector<int> nrm(m), ctr(m);
  for (int i = 0; i < m; ++i) {
    nrm[i] = static_cast<int>(normalizer_of(S, F.subgroup(i)).size());
    ctr[i] = static_cast<int>(centralizer_of(S, F.subgroup(i)).size());
  }
  std::vector<char> fully_normalized(m, 0), fully_centralized(m, 0);
  for (int i = 0; i < m; ++i) {
    int max_n = 0, max_c = 0;
    for (int j : cc.classes[cc.class_of[i]]) {
      max_n = std::max(max_n, nrm[j]);
      max_c = std::max(max_c, ctr[j]);
    }
    fully_normalized[i] = nrm[i] == max_n;
    fully_centralized[i] = ctr[i] == max_c;
  }

  // per-subgroup inner automorphism image vectors
  std::vector<std::set<std::vector<int>>> aut_s(m);
  for (int i = 0; i < m; ++i)
    for (int g : normalizer_of(S, F.subgroup(i)))
      aut_s[i].insert(conjugation_hom(S, F.subgroup(i), g).img);

  // Axiom I
  for (int i = 0; i < m; ++i) {
    if (!fully_normalized[i]) continue;
    const auto& P = F.subgroup(i);
    if (!fully_centralized[i]) {
      report.saturated = false;
      report.witnesses.push_back({"I", P.members, std::nullopt, {},
                                  "fully normalized but not fully centralized"});
    }
    int autF = 0;
    for (const auto& f : F.morphisms_from(i))
      if (f.image_members() == P.members) ++autF;
    int autS = static_cast<int>(aut_s[i].size());
    if (autF % autS != 0) {
      report.saturated = false;
      report.witnesses.push_back(
          {"I", P.members, std::nullopt, {}, "Aut_S(P) index is not integral"});
    } else if ((autF / autS) % p == 0) {
      report.saturated = false;
      report.witnesses.push_back(
          {"I", P.members, std::nullopt, {}, "p divides [Aut_F(P) : Aut_S(P)]"});
    }
  }

  // Axiom II
  for (int i = 0; i < m; ++i) {
    const auto& P = F.subgroup(i);
    for (const auto& phi : F.morphisms_from(i)) {
      auto image = phi.image_members();
      int qi = F.subgroup_index(image);
      if (!fully_centralized[qi]) continue;
      auto phi_inv = inverse_hom(phi).value();
      std::vector<int> n_phi;
      for (int g : normalizer_of(S, P)) {
        // phi . c_g . phi^{-1} on phi(P)
        std::vector<int> img;
        img.reserve(image.size());
        for (int y : image) img.push_back(phi.apply(S.conjugate(g, phi_inv.apply(y))));
        if (aut_s[qi].count(img)) n_phi.push_back(g);
      }
      std::sort(n_phi.begin(), n_phi.end());
      int ni = F.subgroup_index(n_phi);
      if (ni < 0) throw Error("internal: N_phi is not a subgroup");
      bool extends = false;
      for (const auto& bar : F.morphisms_from(ni)) {
        if (restrict_hom(bar, P.members).img == phi.img) {
          extends = true;
          break;
        }
      }
      if (!extends) {
        report.saturated = false;
        report.witnesses.push_back(
            {"II", P.members, phi, n_phi, "phi does not extend over N_phi"});
      }
    }
  }
  return report;
}

std::optional<GroupHom> push_morphism(const GroupHom& gamma, const GroupHom& phi) {
  // gamma-hat on gamma(P): gamma(x) -> gamma(phi(x)); defined when constant on
  // gamma's fibers
  std::map<int, int> out;
  for (size_t i = 0; i < phi.dom.size(); ++i) {
    int gx = gamma.apply(phi.dom[i]);
    int gfx = gamma.apply(phi.img[i]);
    auto it = out.find(gx);
    if (it == out.end())
      out[gx] = gfx;
    else if (it->second != gfx)
      return std::nullopt;
  }
  GroupHom r{gamma.dst, gamma.dst, {}, {}};
  for (auto& [x, y] : out) {
    r.dom.push_back(x);
    r.img.push_back(y);
  }
  return r;
}

FusionPreserving is_fusion_preserving(const GroupHom& gamma, const FusionSystem& F1,
                                      const FusionSystem& F2) {
  if (!gamma.src.same(F1.S()) || !gamma.dst.same(F2.S()))
    throw PreconditionError("gamma must map the group of F1 into the group of F2");
  if (gamma.dom != full_subgroup(F1.S()).members)
    throw PreconditionError("gamma must be defined on all of S1");
  if (!is_multiplicative(gamma)) throw PreconditionError("gamma is not a homomorphism");

  for (int i = 0; i < F1.size(); ++i) {
    for (const auto& phi : F1.morphisms_from(i)) {
      auto pushed = push_morphism(gamma, phi);
      if (!pushed || !F2.contains(*pushed)) return {false, phi};
    }
  }
  return {true, std::nullopt};
}

bool subsystem_of(const FusionSystem& F1, const FusionSystem& F2) {
  if (!F1.S().same(F2.S())) return false;
  for (int i = 0; i < F1.size(); ++i)
    for (const auto& f : F1.morphisms_from(i))
      if (!F2.contains(f)) return false;
  return true;
}

}  // namespace fuscalc

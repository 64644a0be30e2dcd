#include "fuscalc/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fuscalc {

using nlohmann::ordered_json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

ordered_json parse_json(const std::string& text, const std::string& what) {
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw InputError("malformed JSON in " + what + ": " + e.what());
  }
}

}  // namespace

Group group_from_json(const std::string& text, const std::string& fallback_name) {
  ordered_json j = parse_json(text, "group file");
  GroupSpec spec;
  spec.name = j.value("name", fallback_name);
  std::string kind = j.value("kind", "");
  if (kind == "table") {
    if (!j.contains("table") || !j["table"].is_array())
      throw InputError("table group needs a \"table\" array");
    for (const auto& row : j["table"]) {
      std::vector<int> r;
      for (const auto& v : row) r.push_back(v.get<int>());
      spec.table.push_back(std::move(r));
    }
    spec.kind = GroupSpec::Kind::table;
  } else if (kind == "perm") {
    spec.kind = GroupSpec::Kind::permutation;
    spec.degree = j.value("degree", 0);
    if (!j.contains("generators") || !j["generators"].is_array())
      throw InputError("permutation group needs a \"generators\" array");
    for (const auto& gen : j["generators"]) {
      std::vector<std::vector<int>> cycles;
      for (const auto& cyc : gen) {
        std::vector<int> c;
        for (const auto& v : cyc) c.push_back(v.get<int>());
        cycles.push_back(std::move(c));
      }
      spec.generators.push_back(std::move(cycles));
    }
  } else {
    throw InputError("group \"kind\" must be \"table\" or \"perm\"");
  }
  try {
    return make_group(spec);
  } catch (const ordered_json::exception& e) {
    throw InputError(std::string("bad group file: ") + e.what());
  }
}

Group load_group_file(const std::string& path) {
  auto name = std::filesystem::path(path).stem().string();
  return group_from_json(read_text_file(path), name);
}

namespace {

// Matches the permutations of `sub` inside `big`; both must be permutation
// groups on the same points. Returns member labels in big.
std::vector<int> match_permutation_subgroup(const Group& big, const Group& sub) {
  if (big.permutations().empty() || sub.permutations().empty())
    throw InputError("ambient mode requires permutation groups");
  if (!sub.permutations().empty() && !big.permutations().empty() &&
      sub.permutations()[0].size() != big.permutations()[0].size())
    throw InputError("ambient and subgroup act on different point sets");
  std::vector<int> members;
  for (const auto& perm : sub.permutations()) {
    auto it = std::lower_bound(big.permutations().begin(), big.permutations().end(), perm);
    if (it == big.permutations().end() || *it != perm)
      throw InputError("subgroup permutations do not all lie in the ambient group");
    members.push_back(static_cast<int>(it - big.permutations().begin()));
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace

LoadedFusion load_fusion_file(const std::string& path) {
  ordered_json j = parse_json(read_text_file(path), "fusion file");
  auto dir = std::filesystem::path(path).parent_path();
  auto resolve = [&](const std::string& ref) { return (dir / ref).string(); };

  if (!j.contains("p")) throw InputError("fusion file needs a prime \"p\"");
  int p = j["p"].get<int>();
  std::string mode = j.value("mode", "ambient");

  try {
    if (mode == "ambient") {
      if (!j.contains("ambient")) throw InputError("ambient mode needs an \"ambient\" group file");
      Group G = load_group_file(resolve(j["ambient"].get<std::string>()));
      Subgroup Ssub = [&] {
        if (!j.contains("group") || j["group"].is_null()) return sylow(G, p);
        Group Sfile = load_group_file(resolve(j["group"].get<std::string>()));
        return make_subgroup(G, match_permutation_subgroup(G, Sfile));
      }();
      LoadedFusion out{fusion_of_group(G, Ssub, p), G, Ssub};
      return out;
    }
    if (mode == "generators") {
      if (!j.contains("group")) throw InputError("generators mode needs a \"group\" file");
      Group S = load_group_file(resolve(j["group"].get<std::string>()));
      std::vector<GroupHom> gens;
      for (const auto& g : j.value("generators", ordered_json::array())) {
        std::vector<int> domain, images;
        for (const auto& v : g.at("domain")) domain.push_back(v.get<int>());
        for (const auto& v : g.at("images")) images.push_back(v.get<int>());
        if (domain.size() != images.size())
          throw InputError("generator domain/images length mismatch");
        // extend the listed pairs multiplicatively over the generated subgroup
        Subgroup D = generated_subgroup(S, domain);
        std::vector<int> map(S.order(), -1);
        map[S.identity()] = S.identity();
        std::vector<int> known{S.identity()};
        for (size_t i = 0; i < domain.size(); ++i) {
          if (map[domain[i]] != -1 && map[domain[i]] != images[i])
            throw InputError("generator images are inconsistent");
          if (map[domain[i]] == -1) {
            map[domain[i]] = images[i];
            known.push_back(domain[i]);
          }
        }
        bool grew = true;
        while (grew) {
          grew = false;
          const size_t m = known.size();
          for (size_t a = 0; a < m; ++a)
            for (size_t b = 0; b < m; ++b) {
              int z = S.mul(known[a], known[b]);
              int fz = S.mul(map[known[a]], map[known[b]]);
              if (map[z] == -1) {
                map[z] = fz;
                known.push_back(z);
                grew = true;
              } else if (map[z] != fz) {
                throw InputError("generator does not extend to a homomorphism");
              }
            }
        }
        GroupHom hom{S, S, D.members, {}};
        for (int x : D.members) {
          if (map[x] == -1) throw InputError("generator domain not covered");
          hom.img.push_back(map[x]);
        }
        gens.push_back(std::move(hom));
      }
      return LoadedFusion{generate_fusion(S, p, gens), std::nullopt, std::nullopt};
    }
  } catch (const ordered_json::exception& e) {
    throw InputError(std::string("bad fusion file: ") + e.what());
  }
  throw InputError("fusion \"mode\" must be \"ambient\" or \"generators\"");
}

std::string element_to_json(const BurnsideElement& e, int indent) {
  ordered_json j;
  j["source"] = e.source().name().empty() ? "order-" + std::to_string(e.source().order())
                                          : e.source().name();
  j["target"] = e.target().name().empty() ? "order-" + std::to_string(e.target().order())
                                          : e.target().name();
  j["terms"] = ordered_json::array();
  const auto& basis = pair_basis(e.source(), e.target());
  for (const auto& [k, v] : e.coefficients()) {
    const Pair& rep = basis.at(k).rep;
    ordered_json term;
    term["P"] = rep.dom;
    ordered_json psi = ordered_json::object();
    for (size_t i = 0; i < rep.dom.size(); ++i)
      psi[std::to_string(rep.dom[i])] = rep.img[i];
    term["psi"] = std::move(psi);
    term["coeff"] = to_fraction_string(v);
    j["terms"].push_back(std::move(term));
  }
  return j.dump(indent);
}

BurnsideElement element_from_json(const Group& src, const Group& dst, const std::string& text) {
  ordered_json j = parse_json(text, "element file");
  BurnsideElement e(src, dst);
  try {
    for (const auto& term : j.value("terms", ordered_json::array())) {
      Pair q;
      for (const auto& v : term.at("P")) q.dom.push_back(v.get<int>());
      if (!std::is_sorted(q.dom.begin(), q.dom.end()))
        throw InputError("term subgroup members must be sorted");
      const auto& psi = term.at("psi");
      for (int x : q.dom) {
        auto key = std::to_string(x);
        if (!psi.contains(key)) throw InputError("psi is missing member " + key);
        q.img.push_back(psi[key].get<int>());
      }
      if (!is_subgroup_set(src, q.dom)) throw InputError("term P is not a subgroup");
      GroupHom as_hom{src, dst, q.dom, q.img};
      if (!is_multiplicative(as_hom)) throw InputError("term psi is not a homomorphism");
      e.add_coefficient(pair_basis(src, dst).index_of(q), parse_fraction(term.at("coeff")));
    }
  } catch (const ordered_json::exception& ex) {
    throw InputError(std::string("bad element file: ") + ex.what());
  }
  return e;
}

BurnsideElement load_element_file(const Group& src, const Group& dst, const std::string& path) {
  return element_from_json(src, dst, read_text_file(path));
}

}  // namespace fuscalc

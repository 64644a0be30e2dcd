// fuscalc: exact computations with fusion systems over small p-groups:
// Burnside-module algebra, characteristic idempotents (linear solve and
// p-adic iteration), saturation checking, classifying-spectrum map bases,
// fusion reconstruction, and induced/transfer functoriality checks.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fuscalc/biset.hpp"
#include "fuscalc/fusion.hpp"
#include "fuscalc/idempotent.hpp"
#include "fuscalc/io.hpp"
#include "fuscalc/spectra.hpp"
#include "json.hpp"

using namespace fuscalc;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;  // computed, but a verification verdict is negative
constexpr int kExitInput = 2;

struct Output {
  std::string format = "text";
  std::string path;  // empty = stdout

  void emit(const std::string& text, const ordered_json& json) const {
    const std::string body = format == "json" ? json.dump(2) + "\n" : text;
    if (path.empty()) {
      std::cout << body;
    } else {
      std::ofstream out(path);
      if (!out) throw InputError("cannot write output file: " + path);
      out << body;
    }
  }
};

ordered_json element_json(const BurnsideElement& e) {
  return ordered_json::parse(element_to_json(e));
}

std::string pair_text(const Pair& q) {
  std::string s = "[P={";
  for (size_t i = 0; i < q.dom.size(); ++i) s += (i ? "," : "") + std::to_string(q.dom[i]);
  s += "}, psi={";
  for (size_t i = 0; i < q.img.size(); ++i) s += (i ? "," : "") + std::to_string(q.img[i]);
  s += "}]";
  return s;
}

std::string element_text(const BurnsideElement& e) {
  if (e.zero()) return "0";
  const auto& basis = pair_basis(e.source(), e.target());
  std::string s;
  for (const auto& [k, v] : e.coefficients()) {
    if (!s.empty()) s += " + ";
    s += to_fraction_string(v) + "*" + pair_text(basis.at(k).rep);
  }
  return s;
}

ordered_json hom_json(const GroupHom& f) {
  ordered_json j;
  j["domain"] = f.dom;
  j["images"] = f.img;
  return j;
}

struct FusionInput {
  std::string fusion_file;
  std::string group_file;
  int sylow_p = 0;

  void add_flags(CLI::App* cmd) {
    auto* f = cmd->add_option("--fusion", fusion_file, "fusion system JSON file");
    auto* g = cmd->add_option("--group", group_file, "ambient group JSON file");
    cmd->add_option("--sylow", sylow_p, "prime p; uses F_S(G) over the canonical Sylow subgroup")
        ->check(CLI::PositiveNumber);
    f->excludes(g);
  }

  LoadedFusion load() const {
    if (!fusion_file.empty()) return load_fusion_file(fusion_file);
    if (group_file.empty() || sylow_p == 0)
      throw InputError("need either --fusion FILE or --group FILE with --sylow p");
    Group G = load_group_file(group_file);
    Subgroup S = sylow(G, sylow_p);
    return LoadedFusion{fusion_of_group(G, S, sylow_p), G, S};
  }
};

ordered_json report_json(const IdempotentReport& report, const FusionSystem& F) {
  ordered_json j;
  j["group"] = F.S().name();
  j["p"] = F.p();
  j["omega"] = element_json(report.omega);
  j["omega_top"] = element_json(report.omega_top);
  j["omega_strict"] = element_json(report.omega_strict);
  ordered_json verdicts;
  verdicts["property_a"] = report.property_a;
  verdicts["property_b1"] = report.property_b1;
  verdicts["property_b2"] = report.property_b2;
  verdicts["property_c"] = report.property_c;
  verdicts["idempotent"] = report.idempotent;
  verdicts["p_integral"] = report.p_integral;
  verdicts["top_form"] = report.top_form;
  verdicts["characteristic"] = report.characteristic();
  j["verdicts"] = std::move(verdicts);
  ordered_json cex = ordered_json::object();
  if (report.a_counterexample) {
    cex["property_a"]["P"] = report.a_counterexample->dom;
    cex["property_a"]["psi"] = report.a_counterexample->img;
  }
  if (report.b1_counterexample) cex["property_b1"] = hom_json(*report.b1_counterexample);
  if (report.b2_counterexample) cex["property_b2"] = hom_json(*report.b2_counterexample);
  j["counterexamples"] = std::move(cex);
  return j;
}

std::string report_text(const IdempotentReport& report, const FusionSystem& F) {
  std::string s;
  s += "characteristic idempotent report for " + F.S().name() +
       " (p = " + std::to_string(F.p()) + ")\n";
  s += "  omega        = " + element_text(report.omega) + "\n";
  s += "  omega_top    = " + element_text(report.omega_top) + "\n";
  s += "  omega_strict = " + element_text(report.omega_strict) + "\n";
  auto line = [&](const char* name, bool v) {
    s += std::string("  ") + name + ": " + (v ? "pass" : "FAIL") + "\n";
  };
  line("(a) support in A_F  ", report.property_a);
  line("(b1) right stability", report.property_b1);
  line("(b2) left stability ", report.property_b2);
  line("(c) augmentation 1  ", report.property_c);
  line("idempotent          ", report.idempotent);
  line("p-integral          ", report.p_integral);
  line("top part form       ", report.top_form);
  s += std::string("  characteristic: ") + (report.characteristic() ? "yes" : "NO") + "\n";
  return s;
}

int run_group_info(const std::string& file, const Output& out) {
  Group G = load_group_file(file);
  const auto& subs = subgroups(G);
  ordered_json j;
  j["name"] = G.name();
  j["order"] = G.order();
  j["identity"] = G.identity();
  j["subgroups"] = subs.size();
  ordered_json sylows = ordered_json::object();
  std::string sylow_text;
  for (int p = 2; p <= G.order(); ++p) {
    if (!is_prime(p) || G.order() % p != 0) continue;
    auto P = sylow(G, p);
    sylows[std::to_string(p)] = P.members;
    sylow_text += "  sylow " + std::to_string(p) + ": order " + std::to_string(P.order()) + "\n";
  }
  j["sylow"] = std::move(sylows);
  std::string text = "group " + G.name() + ": order " + std::to_string(G.order()) + ", " +
                     std::to_string(subs.size()) + " subgroups\n" + sylow_text;
  out.emit(text, j);
  return kExitOk;
}

int run_fusion(const FusionInput& in, const Output& out) {
  auto loaded = in.load();
  const FusionSystem& F = loaded.F;
  auto fc = f_conjugacy(F);
  auto outer = out_f_s(F);

  ordered_json j;
  j["group"] = F.S().name();
  j["p"] = F.p();
  j["subgroups"] = F.size();
  j["out_f_s"] = outer.order;
  ordered_json homs = ordered_json::array();
  std::string text = "fusion system over " + F.S().name() + " (p = " + std::to_string(F.p()) +
                     "), " + std::to_string(F.size()) + " subgroups, |Out_F(S)| = " +
                     std::to_string(outer.order) + "\n";
  for (int i = 0; i < F.size(); ++i) {
    ordered_json entry;
    entry["members"] = F.subgroup(i).members;
    entry["class"] = fc.class_of[i];
    entry["maps_to_S"] = F.morphisms_from(i).size();
    homs.push_back(std::move(entry));
    text += "  P" + std::to_string(i) + " order " + std::to_string(F.subgroup(i).order()) +
            ", |Hom_F(P,S)| = " + std::to_string(F.morphisms_from(i).size()) + ", class " +
            std::to_string(fc.class_of[i]) + "\n";
  }
  j["subgroup_data"] = std::move(homs);
  // |Hom_F(P_i, P_j)| as a matrix over the subgroup list
  ordered_json matrix = ordered_json::array();
  text += "  |Hom_F(P_i, P_j)|:\n";
  for (int i = 0; i < F.size(); ++i) {
    ordered_json row = ordered_json::array();
    text += "   ";
    for (int jdx = 0; jdx < F.size(); ++jdx) {
      auto n = F.hom_set(i, jdx).size();
      row.push_back(n);
      text += " " + std::to_string(n);
    }
    matrix.push_back(std::move(row));
    text += "\n";
  }
  j["hom_matrix"] = std::move(matrix);
  ordered_json classes = ordered_json::array();
  for (const auto& cls : fc.classes) classes.push_back(cls);
  j["conjugacy_classes"] = std::move(classes);
  text += std::to_string(fc.classes.size()) + " fusion-conjugacy classes of subgroups\n";
  out.emit(text, j);
  return kExitOk;
}

int run_saturation(const FusionInput& in, const Output& out) {
  auto loaded = in.load();
  auto report = is_saturated(loaded.F);
  ordered_json j;
  j["group"] = loaded.F.S().name();
  j["p"] = loaded.F.p();
  j["saturated"] = report.saturated;
  ordered_json witnesses = ordered_json::array();
  std::string text = std::string("saturated: ") + (report.saturated ? "yes" : "no") + "\n";
  for (const auto& w : report.witnesses) {
    ordered_json wj;
    wj["axiom"] = w.axiom;
    wj["subgroup"] = w.subgroup;
    if (w.morphism) wj["morphism"] = hom_json(*w.morphism);
    if (!w.n_phi.empty()) wj["n_phi"] = w.n_phi;
    wj["detail"] = w.detail;
    witnesses.push_back(std::move(wj));
    text += "  axiom " + w.axiom + " failure: " + w.detail + "\n";
  }
  j["witnesses"] = std::move(witnesses);
  out.emit(text, j);
  return report.saturated ? kExitOk : kExitVerdict;
}

int run_idempotent(const FusionInput& in, const Output& out) {
  auto loaded = in.load();
  auto report = char_idempotent_solve(loaded.F);
  out.emit(report_text(report, loaded.F), report_json(report, loaded.F));
  return report.characteristic() ? kExitOk : kExitVerdict;
}

int run_iterate(const FusionInput& in, const std::string& element_file, int precision,
                const Output& out) {
  auto loaded = in.load();
  const FusionSystem& F = loaded.F;
  BurnsideElement start = [&] {
    if (!element_file.empty()) return load_element_file(F.S(), F.S(), element_file);
    if (!loaded.ambient || !loaded.sylow_subgroup)
      throw InputError("iterate needs --element FILE or an ambient-group fusion input");
    return group_as_biset(*loaded.ambient, *loaded.sylow_subgroup);
  }();
  auto result = char_idempotent_iterate(start, F, precision);
  ordered_json j;
  j["group"] = F.S().name();
  j["p"] = F.p();
  j["precision"] = precision;
  j["start"] = element_json(start);
  j["omega_mod_p_k"] = element_json(result);
  std::string text = "start  = " + element_text(start) + "\nomega  = " + element_text(result) +
                     "   (mod " + std::to_string(F.p()) + "^" + std::to_string(precision) +
                     ")\n";
  out.emit(text, j);
  return kExitOk;
}

int run_maps(const std::string& from_file, const std::string& to_file, const Output& out) {
  auto from = load_fusion_file(from_file);
  auto to = load_fusion_file(to_file);
  auto sp_from = spectrum_of(from.F);
  auto sp_to = spectrum_of(to.F);
  auto mb = map_basis(sp_from, sp_to);
  ordered_json j;
  j["from"] = from.F.S().name();
  j["to"] = to.F.S().name();
  j["rank"] = mb.rank;
  ordered_json maps = ordered_json::array();
  std::string text = "map basis rank " + std::to_string(mb.rank) + "\n";
  for (size_t i = 0; i < mb.reps.size(); ++i) {
    ordered_json entry;
    entry["representative"]["P"] = mb.reps[i].dom;
    entry["representative"]["psi"] = mb.reps[i].img;
    entry["element"] = element_json(mb.maps[i].reduced);
    maps.push_back(std::move(entry));
    text += "  " + pair_text(mb.reps[i]) + " -> " + element_text(mb.maps[i].reduced) + "\n";
  }
  j["basis"] = std::move(maps);
  out.emit(text, j);
  return kExitOk;
}

int run_reconstruct(const FusionInput& in, const Output& out) {
  auto loaded = in.load();
  auto report = char_idempotent_solve(loaded.F);
  ordered_json j;
  j["group"] = loaded.F.S().name();
  j["p"] = loaded.F.p();
  j["characteristic"] = report.characteristic();
  if (!report.characteristic()) {
    j["equal"] = false;
    out.emit("idempotent verification failed; nothing to reconstruct\n", j);
    return kExitVerdict;
  }
  auto rec = reconstruct_fusion(report.omega, loaded.F.p());
  bool equal = rec == loaded.F;
  j["equal"] = equal;
  ordered_json sizes = ordered_json::array();
  std::string text = std::string("reconstructed fusion system ") +
                     (equal ? "equals" : "DIFFERS from") + " the reference\n";
  for (int i = 0; i < rec.size(); ++i) {
    ordered_json entry;
    entry["members"] = rec.subgroup(i).members;
    entry["maps_to_S"] = rec.morphisms_from(i).size();
    sizes.push_back(std::move(entry));
    text += "  P" + std::to_string(i) + ": |Hom(P,S)| = " +
            std::to_string(rec.morphisms_from(i).size()) + "\n";
  }
  j["subgroup_data"] = std::move(sizes);
  out.emit(text, j);
  return equal ? kExitOk : kExitVerdict;
}

int run_functor_check(const std::vector<std::string>& files, const Output& out) {
  if (files.size() < 2) throw InputError("functor-check needs at least two fusion files");
  std::vector<Spectrum> spectra;
  for (const auto& f : files) spectra.push_back(spectrum_of(load_fusion_file(f).F));

  // literal inclusions S_i -> S_{i+1} by permutation matching
  auto inclusion = [](const Group& sub, const Group& big) {
    if (sub.permutations().empty() || big.permutations().empty())
      throw InputError("functor-check needs permutation-realized groups");
    GroupHom f{sub, big, {}, {}};
    for (int i = 0; i < sub.order(); ++i) {
      const auto& perm = sub.permutations()[i];
      int label = -1;
      for (int j = 0; j < big.order(); ++j)
        if (big.permutations()[j] == perm) {
          label = j;
          break;
        }
      if (label < 0) throw InputError("chain groups do not include literally");
      f.dom.push_back(i);
      f.img.push_back(label);
    }
    return f;
  };

  bool all_ok = true;
  ordered_json j;
  j["steps"] = ordered_json::array();
  std::string text;
  std::vector<GroupHom> gammas;
  for (size_t i = 0; i + 1 < spectra.size(); ++i) {
    GroupHom gamma = inclusion(spectra[i].F.S(), spectra[i + 1].F.S());
    auto preserving = is_fusion_preserving(gamma, spectra[i].F, spectra[i + 1].F);
    if (!preserving.preserving) throw InputError("chain map is not fusion-preserving");
    gammas.push_back(gamma);

    auto ind = induced_map(gamma, spectra[i], spectra[i + 1]);
    auto tr = transfer_map(gamma, spectra[i], spectra[i + 1]);
    Rational index(spectra[i + 1].F.S().order(), spectra[i].F.S().order());
    index.canonicalize();
    bool eps_ok = augmentation(compose(ind, tr).element) == index;
    all_ok = all_ok && eps_ok;
    ordered_json step;
    step["from"] = spectra[i].F.S().name();
    step["to"] = spectra[i + 1].F.S().name();
    step["index"] = to_fraction_string(index);
    step["epsilon_law"] = eps_ok;
    j["steps"].push_back(std::move(step));
    text += "step " + std::to_string(i) + ": epsilon(induced . transfer) = " +
            to_fraction_string(index) + (eps_ok ? " ok" : " FAIL") + "\n";
  }

  bool functorial = true, cofunctorial = true;
  for (size_t i = 0; i + 2 < spectra.size(); ++i) {
    GroupHom g21 = compose_homs(gammas[i + 1], gammas[i]);
    bool ind = map_equal(induced_map(g21, spectra[i], spectra[i + 2]),
                         compose(induced_map(gammas[i + 1], spectra[i + 1], spectra[i + 2]),
                                 induced_map(gammas[i], spectra[i], spectra[i + 1])));
    bool trf = map_equal(transfer_map(g21, spectra[i], spectra[i + 2]),
                         compose(transfer_map(gammas[i], spectra[i], spectra[i + 1]),
                                 transfer_map(gammas[i + 1], spectra[i + 1], spectra[i + 2])));
    functorial = functorial && ind;
    cofunctorial = cofunctorial && trf;
  }
  all_ok = all_ok && functorial && cofunctorial;
  j["induced_functorial"] = functorial;
  j["transfer_contravariant"] = cofunctorial;
  j["ok"] = all_ok;
  text += std::string("induced functorial: ") + (functorial ? "yes" : "NO") + "\n";
  text += std::string("transfer contravariant: ") + (cofunctorial ? "yes" : "NO") + "\n";
  out.emit(text, j);
  return all_ok ? kExitOk : kExitVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact fusion-system and Burnside-module calculator"};
  app.require_subcommand(1);

  Output out;
  app.add_option("--format", out.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--output", out.path, "write the report to a file instead of stdout");
  int cap = 0;
  app.add_option("--cap", cap, "override both group-order caps");

  std::string group_file, element_file, from_file, to_file;
  int precision = 16;
  FusionInput fusion_in, saturation_in, idem_in, iterate_in, reconstruct_in;
  std::vector<std::string> chain_files;

  auto* cmd_info = app.add_subcommand("group-info", "order, subgroups, Sylow subgroups");
  cmd_info->add_option("--group", group_file, "group JSON file")->required();

  auto* cmd_fusion = app.add_subcommand("fusion", "Hom-set sizes and conjugacy classes");
  fusion_in.add_flags(cmd_fusion);

  auto* cmd_sat = app.add_subcommand("saturation", "check the saturation axioms");
  saturation_in.add_flags(cmd_sat);

  auto* cmd_idem =
      app.add_subcommand("idempotent", "solve for the characteristic idempotent and verify it");
  idem_in.add_flags(cmd_idem);

  auto* cmd_iter = app.add_subcommand("iterate", "p-adic iteration from a biset or element");
  iterate_in.add_flags(cmd_iter);
  cmd_iter->add_option("--element", element_file, "start element JSON (over (S,S))");
  cmd_iter->add_option("--precision", precision, "p-adic precision k (mod p^k)")
      ->check(CLI::PositiveNumber);

  auto* cmd_maps = app.add_subcommand("maps", "basis of maps between classifying spectra");
  cmd_maps->add_option("--from", from_file, "source fusion file")->required();
  cmd_maps->add_option("--to", to_file, "target fusion file")->required();

  auto* cmd_rec = app.add_subcommand("reconstruct", "recover the fusion system from omega");
  reconstruct_in.add_flags(cmd_rec);

  auto* cmd_fc = app.add_subcommand("functor-check",
                                    "verify induced/transfer functoriality along a chain");
  cmd_fc->add_option("--fusion", chain_files, "fusion files, inner to outer")->required();

  // global options (--format, --output, --cap) may follow the subcommand
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cap > 0) {
      caps().p_group = cap;
      caps().ambient = cap;
    }
    if (cmd_info->parsed()) return run_group_info(group_file, out);
    if (cmd_fusion->parsed()) return run_fusion(fusion_in, out);
    if (cmd_sat->parsed()) return run_saturation(saturation_in, out);
    if (cmd_idem->parsed()) return run_idempotent(idem_in, out);
    if (cmd_iter->parsed()) return run_iterate(iterate_in, element_file, precision, out);
    if (cmd_maps->parsed()) return run_maps(from_file, to_file, out);
    if (cmd_rec->parsed()) return run_reconstruct(reconstruct_in, out);
    if (cmd_fc->parsed()) return run_functor_check(chain_files, out);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const PreconditionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

#pragma once

#include <optional>
#include <string>

#include "fuscalc/burnside.hpp"
#include "fuscalc/fusion.hpp"
#include "fuscalc/group.hpp"

namespace fuscalc {

/// Group files: {"kind":"table","table":[[...]]} or
/// {"kind":"perm","degree":n,"generators":[[[cycle]...]...]}, with an
/// optional "name". Cycle points are 1-based.
Group group_from_json(const std::string& text, const std::string& fallback_name = "");
Group load_group_file(const std::string& path);

struct LoadedFusion {
  FusionSystem F;
  std::optional<Group> ambient;           // set in ambient mode
  std::optional<Subgroup> sylow_subgroup; // the chosen Sylow subgroup of ambient
};

/// Fusion files: {"group": <group file>, "p": n, "mode": "ambient"|"generators",
/// "ambient": <group file>, "generators": [{"domain": [...], "images": [...]}]}.
/// File references resolve relative to the fusion file's directory. In
/// ambient mode both groups must be permutation groups on the same points;
/// "group" (when present) names the Sylow subgroup by its permutations, and
/// defaults to the canonical Sylow p-subgroup. Generator entries list domain
/// elements with their images; the map extends multiplicatively.
LoadedFusion load_fusion_file(const std::string& path);

/// Element serialization: {"source":..., "target":..., "terms":[{"P":[...],
/// "psi":{"x":y,...},"coeff":"num/den"}]}. Deterministic: terms follow the
/// canonical basis order, coefficients are canonical fraction strings.
std::string element_to_json(const BurnsideElement& e, int indent = 2);
BurnsideElement element_from_json(const Group& src, const Group& dst, const std::string& text);
BurnsideElement load_element_file(const Group& src, const Group& dst, const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace fuscalc

#pragma once

#include <vector>

#include "fuscalc/burnside.hpp"
#include "fuscalc/fusion.hpp"
#include "fuscalc/idempotent.hpp"

namespace fuscalc {

// A fusion system bundled with its verified characteristic idempotent.
struct Spectrum {
  FusionSystem F;
  BurnsideElement omega;
};

/// Solves for the characteristic idempotent and requires every verdict to
/// pass; throws PreconditionError otherwise.
Spectrum spectrum_of(const FusionSystem& F);

// A map between classifying spectra, modeled by an element absorbed by both
// characteristic idempotents. Two maps are equal exactly when their reduced
// elements (trivial classes dropped) are equal.
struct SpectrumMap {
  Spectrum from;
  Spectrum to;
  BurnsideElement element;  // omega_to . x . omega_from
  BurnsideElement reduced;
};

SpectrumMap make_map(const BurnsideElement& x, const Spectrum& from, const Spectrum& to);

bool map_equal(const SpectrumMap& a, const SpectrumMap& b);

SpectrumMap compose(const SpectrumMap& outer, const SpectrumMap& inner);

struct MapBasis {
  std::vector<Pair> reps;        // one nontrivial pair class per fusion class
  std::vector<SpectrumMap> maps;
  int rank = 0;
};

/// Basis of maps between the classifying spectra: one absorbed element per
/// (F1,F2)-conjugacy class of nontrivial pairs. Verifies that the reduced
/// elements are linearly independent; rank equals the class count.
MapBasis map_basis(const Spectrum& from, const Spectrum& to);

/// Recovers the fusion system from a verified idempotent: phi lands in the
/// fusion system exactly when [P, phi] and [P, incl] have the same absorbed
/// reduced restriction.
FusionSystem reconstruct_fusion(const BurnsideElement& omega, int p);

/// The transfer-side analogue, quantified over injective maps.
FusionSystem reconstruct_fusion_left(const BurnsideElement& omega, int p);

/// The map of classifying spectra induced by a fusion-preserving gamma.
SpectrumMap induced_map(const GroupHom& gamma, const Spectrum& from, const Spectrum& to);

/// The transfer of an injective fusion-preserving gamma : S1 -> S2, as a map
/// from `to`'s spectrum to `from`'s.
SpectrumMap transfer_map(const GroupHom& gamma, const Spectrum& from, const Spectrum& to);

}  // namespace fuscalc

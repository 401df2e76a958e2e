#pragma once

#include "kocalc/polynomial.hpp"
#include "kocalc/presentation.hpp"

namespace kocalc {

/// Sq^1 on Stiefel-Whitney polynomials, extended as a derivation from
/// Sq^1 w_{2i} = w_{2i+1} + w_1 w_{2i} and Sq^1 w_{2i+1} = w_1 w_{2i+1}.
/// Works for every family of a mod-2 scheme whose generators have degree i.
GradedPolynomial sq1_sw(const GradedPolynomial& poly);

/// Mod-2 shadow of the torsion Pontrjagin class: Sq^1(w_{2k} w_{2k+1}).
GradedPolynomial torsion_pontrjagin_mod2(unsigned k);

/// Mod-2 shadow of the Whitney-sum correction for two bundles, in the
/// two-family scheme (w for the first bundle, v for the second):
///   sum_{i+j=k-1} Sq^1(w_{2i} v_{2i+1}) * Sq^1(v_{2j} w_{2j+1}).
GradedPolynomial whitney_correction_mod2(unsigned k);

/// Substitution helpers on w-polynomials.
GradedPolynomial kill_generators(const GradedPolynomial& poly,
                                 const std::vector<std::pair<uint8_t, unsigned>>& gens);

/// Indices made zero in the Spin range: w_1, w_2 and the classes w_{2^j+1}
/// they force to vanish (iterated squares of w_2).
std::vector<unsigned> spin_killed_indices(unsigned max_index);

/// Sq^i via the presentation's action data. Sq^0 is the identity, excess
/// (i > |x|) and targets above the space's dimension vanish; anything else
/// without tabulated data raises UnsupportedOperation.
Mod2Class apply_sq(unsigned i, const Mod2Class& x, const CohomologyPresentation& pres);

/// Wu classes v_1..v_{floor(dim/2)}: each v_k solves
/// <Sq^k(x), [M]> = <v_k cup x, [M]> for all x of degree dim-k, by linear
/// algebra over F2 against the fundamental-class functional.
std::vector<Mod2Class> wu_classes(const CohomologyPresentation& pres, unsigned dimension);

/// Total Stiefel-Whitney class of the tangent bundle via Wu's theorem
/// w = Sq(v); returned per degree, entry d = the degree-d component.
/// Differential refinements of these classes carry no extra computational
/// content at this level: they are the same mod-2 classes read against flat
/// data, so no separate representation is kept.
std::vector<Mod2Class> sw_from_wu(const std::vector<Mod2Class>& v,
                                  const CohomologyPresentation& pres);

}  // namespace kocalc

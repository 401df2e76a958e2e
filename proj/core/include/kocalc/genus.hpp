#pragma once

#include <vector>

#include "kocalc/polynomial.hpp"

namespace kocalc {

/// Coefficients of a one-variable characteristic series Q(z); index k holds
/// the z^k coefficient. A series defining a multiplicative sequence has
/// constant term 1.
struct PowerSeries1D {
    std::vector<Rational> coefficients;

    Rational at(size_t k) const {
        return k < coefficients.size() ? coefficients[k] : Rational(0);
    }
};

/// Q(z) = (sqrt(z)/2) / sinh(sqrt(z)/2), exact through z^max_j.
PowerSeries1D a_hat_series(unsigned max_j);

/// sinh(sqrt(z)/2) / (sqrt(z)/2) = sum_i z^i / (4^i (2i+1)!), through z^max_j.
PowerSeries1D sinh_quotient_series(unsigned max_j);

PowerSeries1D series_reciprocal(const PowerSeries1D& s, unsigned max_j);

enum class NewtonDirection {
    PowerSumsFromElementary,
    ElementaryFromPowerSums,
};

/// Newton's identities. Generator index i of `scheme`'s first family stands
/// for the i-th input symbol (e_i in one direction, s_i in the other); entry
/// k-1 of the result expresses the k-th output symbol, k = 1..n.
std::vector<GradedPolynomial> newton_convert(NewtonDirection direction, unsigned n,
                                             const GeneratorScheme& scheme);

/// The homogeneous pieces K_j of the multiplicative sequence of Q; K_j lives
/// in degree 4j of the Pontrjagin scheme, K_0 = 1.
struct GenusExpansion {
    std::vector<GradedPolynomial> K;  // K[j], 0 <= j <= max_j

    GradedPolynomial total(unsigned max_degree) const;
};

GenusExpansion multiplicative_sequence(const PowerSeries1D& Q, unsigned max_j);

/// Pontrjagin character: rank + sum_k (2/(2k)!) s_k(p) through max_degree.
GradedPolynomial pontrjagin_character(unsigned max_degree, const Rational& rank);

/// A-hat genus expansion through max_degree.
GradedPolynomial a_hat(unsigned max_degree);

/// Substitutes a manifold's total Pontrjagin class into a genus polynomial and
/// pairs the top-degree component with the fundamental class.
Rational evaluate_genus(const GradedPolynomial& genus, const GradedPolynomial& total_p,
                        unsigned top_degree, const std::map<Monomial, Rational>& pairing);

/// Rewrites a symmetric polynomial in the squares of the Chern roots
/// x_1..x_num_roots as a polynomial in p_k = e_k(x^2). Requires enough roots
/// for stability: 4*num_roots >= max_degree.
GradedPolynomial roots_to_pontrjagin(const GradedPolynomial& symmetric, unsigned num_roots,
                                     unsigned max_degree);

/// Formal power-series verification of the Thom/genus compatibility:
/// (i) per root pair, (1-e^x)(1-e^-x) = (-x^2) * (sinh(x/2)/(x/2))^2 as a
///     product over num_root_pairs roots, and
/// (ii) prod_j sinh(x_j/2)/(x_j/2), re-expressed in p_k = e_k(x^2), equals
///     invert_unit(a_hat) through max_degree.
bool verify_thom_genus_identity(unsigned num_root_pairs, unsigned max_degree);

}  // namespace kocalc

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kocalc/polynomial.hpp"

namespace kocalc {

/// Formal (virtual) bundle built from line classes L_1..L_m. The root model
/// stores the class as an integer combination of monomials in the L_i; the
/// lambda model stores the exterior powers as symmetric polynomials in the
/// same ring. Both are elements of Z[L_1..L_m].
class FormalBundle {
public:
    static GeneratorScheme line_scheme();

    /// Honest sum of line bundles: one root per entry, entry (i, power, mult)
    /// contributes mult copies of L_i^power.
    static FormalBundle from_lines(const std::vector<std::tuple<unsigned, unsigned, unsigned>>& lines);

    static FormalBundle from_root_polynomial(GradedPolynomial cls);

    const std::optional<GradedPolynomial>& root_model() const { return root_model_; }
    const std::optional<std::vector<GradedPolynomial>>& lambda_model() const {
        return lambda_model_;
    }

    /// Populates the lambda model from a nonnegative root model.
    void populate_lambda(unsigned max_k);

    /// Direct sum: union of roots.
    FormalBundle plus(const FormalBundle& other) const;

    /// Idempotent reduction for genuine real line bundles: L tensor L is
    /// trivial, so exponents reduce mod 2.
    FormalBundle reduce_real_line() const;

private:
    std::optional<GradedPolynomial> root_model_;
    std::optional<std::vector<GradedPolynomial>> lambda_model_;
};

/// psi^r in the root model: every line monomial is raised to the r-th tensor
/// power. Throws on a lambda-only bundle.
FormalBundle adams_root_model(unsigned r, const FormalBundle& bundle);

enum class AdamsRecursionVariant {
    Newton,     // p_r = e_1 p_{r-1} - e_2 p_{r-2} + ... + (-1)^{r-1} r e_r
    Alternate,  // sum_{i=1}^{r-1} (-1)^i Lambda^i psi^{r-i} + (-1)^r Lambda^r
};

/// The recursive lambda-formula for psi^r, evaluated in the lambda model.
/// Returns the virtual class as a polynomial in the line classes.
GradedPolynomial adams_newton_recursion(unsigned r, const FormalBundle& bundle,
                                        AdamsRecursionVariant variant);

/// Root-model value of psi^r as a polynomial (the comparison oracle).
GradedPolynomial adams_root_value(unsigned r, const FormalBundle& bundle);

/// For which (r, rank) does each recursion variant agree with the root
/// model? One row per pair, rank taken with multiplicity-one distinct lines.
struct DivergenceRow {
    unsigned r = 0, rank = 0;
    bool alternate_matches = false;
    bool newton_matches = false;
};

std::vector<DivergenceRow> adams_divergence_table(unsigned max_r, unsigned max_rank);

}  // namespace kocalc

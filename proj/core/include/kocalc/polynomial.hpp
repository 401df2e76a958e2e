#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kocalc/rational.hpp"

namespace kocalc {

enum class CoeffField : uint8_t { Rationals, Mod2 };

/// One family of graded generators, e.g. p_1, p_2, ... with deg p_i = 4i.
/// Degrees are affine in the index: deg(i) = degree_slope*i + degree_offset.
struct GeneratorFamily {
    std::string prefix;
    unsigned degree_slope = 0;
    unsigned degree_offset = 0;

    unsigned degree(unsigned index) const { return degree_slope * index + degree_offset; }

    friend bool operator==(const GeneratorFamily&, const GeneratorFamily&) = default;
};

/// Generator naming and grading shared by all terms of a polynomial.
struct GeneratorScheme {
    std::vector<GeneratorFamily> families;
    CoeffField field = CoeffField::Rationals;

    static GeneratorScheme pontrjagin();       // p_i, deg 4i, over Q
    static GeneratorScheme chern_roots();      // x_j, deg 2, over Q
    static GeneratorScheme root_squares();     // y_j, deg 4, over Q (y_j = x_j^2)
    static GeneratorScheme stiefel_whitney();  // w_i, deg i, over Z/2
    static GeneratorScheme stiefel_whitney_pair();  // w_i and v_i (two bundles), Z/2

    unsigned degree(uint8_t family, unsigned index) const;

    friend bool operator==(const GeneratorScheme&, const GeneratorScheme&) = default;
};

/// A single generator power inside a monomial.
struct GeneratorPower {
    uint8_t family = 0;
    unsigned index = 0;
    unsigned exponent = 1;

    friend auto operator<=>(const GeneratorPower&, const GeneratorPower&) = default;
};

/// Product of generator powers, kept sorted by (family, index).
/// Total degree is cached so term ordering (degree, then lex) is cheap.
class Monomial {
public:
    Monomial() = default;
    Monomial(std::vector<GeneratorPower> powers, const GeneratorScheme& scheme);

    const std::vector<GeneratorPower>& powers() const { return powers_; }
    unsigned degree() const { return degree_; }
    bool is_constant() const { return powers_.empty(); }

    Monomial times(const Monomial& other, const GeneratorScheme& scheme) const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.powers_ == b.powers_; }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
        return a.powers_ < b.powers_;
    }

private:
    std::vector<GeneratorPower> powers_;
    unsigned degree_ = 0;
};

/// Sparse polynomial in weighted generators with exact coefficients.
/// Invariants: no zero coefficients are stored; over Z/2 every coefficient is 1.
class GradedPolynomial {
public:
    GradedPolynomial() = default;
    explicit GradedPolynomial(GeneratorScheme scheme) : scheme_(std::move(scheme)) {}
    GradedPolynomial(GeneratorScheme scheme, const Rational& constant);

    static GradedPolynomial generator(const GeneratorScheme& scheme, uint8_t family,
                                      unsigned index, unsigned exponent = 1);

    const GeneratorScheme& scheme() const { return scheme_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    unsigned degree() const;  // max degree of a stored term, 0 if zero
    Rational constant_term() const;
    Rational coefficient(const Monomial& m) const;

    void add_term(const Monomial& m, const Rational& c);

    GradedPolynomial operator-() const;
    friend GradedPolynomial operator+(const GradedPolynomial& a, const GradedPolynomial& b);
    friend GradedPolynomial operator-(const GradedPolynomial& a, const GradedPolynomial& b);
    GradedPolynomial scaled(const Rational& c) const;

    friend bool operator==(const GradedPolynomial& a, const GradedPolynomial& b) {
        return a.scheme_ == b.scheme_ && a.terms_ == b.terms_;
    }

    std::string str() const;

private:
    void reduce_coefficient(Rational& c) const;

    GeneratorScheme scheme_;
    std::map<Monomial, Rational> terms_;
};

GradedPolynomial poly_add(const GradedPolynomial& a, const GradedPolynomial& b);
GradedPolynomial poly_mul(const GradedPolynomial& a, const GradedPolynomial& b,
                          unsigned max_degree);

/// Multiplicative inverse of a unit (nonzero constant term), computed by the
/// geometric series on the nilpotent part and truncated above max_degree.
GradedPolynomial invert_unit(const GradedPolynomial& a, unsigned max_degree);

GradedPolynomial homogeneous_component(const GradedPolynomial& a, unsigned degree);
GradedPolynomial truncate(const GradedPolynomial& a, unsigned max_degree);

/// Substitute generators by polynomials of the target scheme. Generators not
/// present in `images` map to themselves only if the schemes agree; otherwise
/// they must all be substituted.
GradedPolynomial substitute(
    const GradedPolynomial& a, const GeneratorScheme& target,
    const std::map<std::pair<uint8_t, unsigned>, GradedPolynomial>& images,
    unsigned max_degree);

}  // namespace kocalc

#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "kocalc/rational.hpp"

namespace kocalc {

/// Finitely generated abelian group, possibly with circle (U(1)) summands.
struct GroupDescriptor {
    unsigned free_rank = 0;
    std::vector<Int> torsion;  // cyclic orders, each >= 2
    unsigned circles = 0;      // number of U(1) summands
    std::vector<std::string> generators;

    bool is_zero() const { return free_rank == 0 && torsion.empty() && circles == 0; }
    bool is_finite() const { return free_rank == 0 && circles == 0; }
    std::string str() const;

    friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) {
        return a.free_rank == b.free_rank && a.torsion == b.torsion && a.circles == b.circles;
    }
};

/// Basis monomial of pi_*(KO) = Z[eta, alpha, beta^{+-1}] / (2 eta, eta^3,
/// eta alpha, alpha^2 - 4 beta):  eta^e alpha^a beta^k with e <= 2, a <= 1,
/// and never both e > 0 and a > 0.
struct KOBasis {
    uint8_t eta = 0;
    uint8_t alpha = 0;
    int beta = 0;

    /// Homotopy degree: eta has degree 1, alpha 4, beta 8.
    int degree() const { return int(eta) + 4 * int(alpha) + 8 * beta; }
    std::string str() const;

    friend auto operator<=>(const KOBasis&, const KOBasis&) = default;
};

/// Element of pi_*(KO) with the torsion relations enforced on construction.
class KOElement {
public:
    KOElement() = default;
    static KOElement unit() { return monomial(KOBasis{}, 1); }
    static KOElement eta() { return monomial({1, 0, 0}, 1); }
    static KOElement alpha() { return monomial({0, 1, 0}, 1); }
    static KOElement beta(int k = 1) { return monomial({0, 0, k}, 1); }
    static KOElement monomial(KOBasis b, Int coeff);

    const std::map<KOBasis, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    KOElement operator-() const;
    friend KOElement operator+(const KOElement& a, const KOElement& b);
    friend KOElement operator-(const KOElement& a, const KOElement& b);
    KOElement scaled(const Int& c) const;

    friend bool operator==(const KOElement& a, const KOElement& b) {
        return a.terms_ == b.terms_;
    }

    std::string str() const;

private:
    void add(KOBasis b, Int coeff);
    std::map<KOBasis, Int> terms_;
};

/// Product in pi_*(KO), rewritten to basis form via 2 eta = 0, eta^3 = 0,
/// eta alpha = 0 and alpha^2 = 4 beta.
KOElement ko_mul(const KOElement& a, const KOElement& b);

/// Element of pi_*(K) = Z[u, u^{-1}].
class KElement {
public:
    KElement() = default;
    static KElement u_power(int i, Int coeff = 1);

    const std::map<int, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend KElement operator+(const KElement& a, const KElement& b);
    friend bool operator==(const KElement& a, const KElement& b) {
        return a.terms_ == b.terms_;
    }

    std::string str() const;

private:
    void add(int i, Int coeff);
    std::map<int, Int> terms_;
};

/// KO^i(pt): Z for i = -8k and i = -(8k+4); Z/2 for i = -(8k+1), -(8k+2);
/// 0 otherwise, with the usual beta-power generator labels.
GroupDescriptor ko_coefficient_group(int i);

/// Coefficients of flat differential KO: U(1){beta^k} at i = 8k-1, Z/2 at
/// i = 8k+1 and 8k+2, U(1){alpha beta^k} + Z/2{eta^2} at i = 8k+3, else 0.
GroupDescriptor flat_coefficient_group(int i);

/// Complexification: ring map with eta -> 0, alpha -> 2u^2, beta -> u^4.
KElement complexify(const KOElement& a);

/// Realification: additive map with r(u^i) given by the residue of i mod 4.
KOElement realify(const KElement& a);

/// Conjugation on K-coefficients, u -> -u.
KElement conjugate(const KElement& a);

/// Checks rc = 2 and cr = 1 + tau^{-1} on basis elements with |beta-exponent|
/// <= range_k and |u-exponent| <= 4*range_k.
bool check_bott_identities(unsigned range_k);

/// Projection formula r(x * c(z)) = r(x) z on basis pairs in range.
bool check_projection_formula(unsigned range_k);

/// Adams operation on coefficients: eta -> k eta, alpha -> k^2 alpha,
/// beta -> k^4 beta, extended multiplicatively and additively.
/// Requires nonnegative beta-exponents for k > 1 (localize otherwise).
KOElement adams_coefficient(unsigned k, const KOElement& a);

/// Verifies psi^r(beta^k x) = r^{4k} beta^k psi^r(x) on coefficient
/// generators x, the Bott-compatibility bookkeeping of the localized theory.
bool localized_extension_check(unsigned r, unsigned k);

/// The form shadow of psi^r on 4-periodic rational coefficients: classes are
/// fixed, alpha^j rescales by r^{-2j}. Exposed only as this coefficient
/// reweighting.
Rational adams_form_scaling(unsigned r, int alpha_power);

/// The 8x8 "Dim. mod 8" table of homotopy groups of the spectrum-level
/// spaces. Row n (0..7), columns O, BO, Sp, BSp, O/U, Sp/U, U/SO, U/Sp.
std::array<std::array<GroupDescriptor, 8>, 8> spectrum_level_table();
extern const std::array<const char*, 8> spectrum_level_names;

}  // namespace kocalc

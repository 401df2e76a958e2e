#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kocalc/abelian.hpp"
#include "kocalc/ko_ring.hpp"

namespace kocalc {

/// Outcome for operations the input data cannot decide. Deliberately distinct
/// from "zero": consumers must not treat missing data as a vanishing result.
class UnsupportedOperation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A class in a fixed degree of the mod-2 cohomology, as coordinates over the
/// presentation's basis in that degree.
struct Mod2Class {
    unsigned degree = 0;
    std::vector<uint8_t> coords;

    bool is_zero() const {
        for (auto c : coords)
            if (c) return false;
        return true;
    }
};

/// A class in a fixed degree of the integral cohomology, as coordinates over
/// the generators in that degree (torsion coordinates taken mod their order).
struct IntegralClass {
    unsigned degree = 0;
    std::vector<Int> coords;

    bool is_zero() const {
        for (const auto& c : coords)
            if (c != 0) return false;
        return true;
    }
};

struct IntegralDegree {
    FgGroup group;                  // orders (0 = Z) and labels
    std::vector<Int> divisibility;  // per generator: known divisor, default 1
};

/// Odd-primary auxiliary data: mod-p bases and reduced power operations.
struct OddPrimaryData {
    unsigned p = 3;
    std::map<unsigned, std::vector<std::string>> basis;  // degree -> names
    std::map<unsigned, IntMat> rho;  // integral gens of degree d -> mod-p coords
    // P^r as a matrix H^d(Z/p) -> H^{d + 2r(p-1)}(Z/p); key (r, d)
    std::map<std::pair<unsigned, unsigned>, IntMat> power_ops;
    // beta_p: H^d(Z/p) -> H^{d+1}(Z) torsion coordinates; key d
    std::map<unsigned, IntMat> bockstein;
};

/// Finite description of a space's cohomology with everything the engine
/// consumes: integral and mod-2 groups, cup products, Steenrod action,
/// reductions, Bocksteins and optional duality data. Immutable after load.
class CohomologyPresentation {
public:
    std::string name;
    std::optional<unsigned> dimension;
    std::map<unsigned, IntegralDegree> integral;
    std::map<unsigned, std::vector<std::string>> mod2_basis;

    // mod-2 cup products: value of basis_i(d1) * basis_j(d2); partial
    std::map<std::tuple<unsigned, unsigned, unsigned, unsigned>, std::vector<uint8_t>> cup2;

    // Sq^i on degree d, as a matrix (rows = dim in degree d+i); partial
    std::map<std::pair<unsigned, unsigned>, F2Mat> sq;

    // rho2[d]: integral generators of degree d -> mod-2 coordinates
    std::map<unsigned, F2Mat> rho2;

    // beta2[d]: mod-2 degree d -> integral torsion coordinates in degree d+1
    std::map<unsigned, IntMat> beta2;

    std::optional<std::vector<uint8_t>> fundamental_mod2;  // top-degree functional
    std::vector<OddPrimaryData> odd_primary;

    unsigned top_degree() const;
    bool degree_known(unsigned d) const;

    unsigned mod2_dim(unsigned d) const;
    const FgGroup* integral_group(unsigned d) const;
    unsigned betti(unsigned d) const;

    /// Connected means H^0 = Z generated by the unit. All built-ins are.
    bool connected() const;

    Mod2Class zero_mod2(unsigned d) const { return {d, std::vector<uint8_t>(mod2_dim(d), 0)}; }

    /// Cup product of two mod-2 classes; UnsupportedOperation when the table
    /// does not cover a needed pair.
    Mod2Class cup(const Mod2Class& a, const Mod2Class& b) const;

    /// rho_2 of an integral class.
    Mod2Class reduce_mod2(const IntegralClass& a) const;

    /// beta_2 of a mod-2 class (lands in integral 2-torsion of degree+1).
    IntegralClass bockstein(const Mod2Class& a) const;

    /// Validates every structural invariant; throws std::invalid_argument
    /// with the failing degree and map named.
    void validate() const;
};

/// Parses and validates a presentation document (JSON, schema_version 1).
CohomologyPresentation load_presentation(const std::string& json_text);
std::string presentation_to_json(const CohomologyPresentation& p);

/// H^k(M; U(1)) via the splitting: torsion of H^{k+1}(M;Z) plus a torus of
/// dimension b_k. Only the isomorphism type is returned; the splitting is
/// noncanonical.
GroupDescriptor u1_cohomology(const CohomologyPresentation& p, unsigned k);

/// Tensor-product presentation of two integrally torsion-free factors with
/// Cartan-extended Sq. Torsion factors are unsupported (no Tor terms).
CohomologyPresentation kunneth_product(const CohomologyPresentation& a,
                                       const CohomologyPresentation& b);

namespace builtin {
CohomologyPresentation point();
CohomologyPresentation sphere(unsigned n);             // n <= 16
CohomologyPresentation real_projective(unsigned n);    // n <= 8
CohomologyPresentation complex_projective(unsigned n); // n <= 4
/// All built-ins by name ("pt", "S8", "RP4", "CP2", ...); throws if unknown.
CohomologyPresentation by_name(const std::string& name);
std::vector<std::string> names();
}  // namespace builtin

}  // namespace kocalc

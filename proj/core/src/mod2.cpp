#include "kocalc/mod2.hpp"

#include <stdexcept>

namespace kocalc {

namespace {

// Sq^1 of a single generator w_index of the given family, as a polynomial.
GradedPolynomial sq1_generator(const GeneratorScheme& scheme, uint8_t family, unsigned index) {
    GradedPolynomial out(scheme);
    if (index % 2 == 0) {
        // Sq^1 w_{2i} = w_{2i+1} + w_1 w_{2i}
        out.add_term(Monomial({{family, index + 1, 1}}, scheme), Rational(1));
        out.add_term(Monomial({{family, 1, 1}, {family, index, 1}}, scheme), Rational(1));
    } else {
        // Sq^1 w_{2i+1} = w_1 w_{2i+1}
        out.add_term(Monomial({{family, 1, 1}, {family, index, 1}}, scheme), Rational(1));
    }
    return out;
}

}  // namespace

GradedPolynomial sq1_sw(const GradedPolynomial& poly) {
    const GeneratorScheme& scheme = poly.scheme();
    if (scheme.field != CoeffField::Mod2)
        throw std::invalid_argument("sq1_sw: requires a mod-2 scheme");
    for (const auto& fam : scheme.families)
        if (fam.degree_slope != 1 || fam.degree_offset != 0)
            throw std::invalid_argument("sq1_sw: requires Stiefel-Whitney grading");

    GradedPolynomial out(scheme);
    for (const auto& [m, c] : poly.terms()) {
        // derivation over the factors of the monomial
        const auto& powers = m.powers();
        for (size_t pos = 0; pos < powers.size(); ++pos) {
            if (powers[pos].exponent % 2 == 0) continue;  // d(x^2) = 0 in char 2
            std::vector<GeneratorPower> rest;
            for (size_t q = 0; q < powers.size(); ++q) {
                GeneratorPower gp = powers[q];
                if (q == pos) {
                    if (gp.exponent == 1) continue;
                    gp.exponent -= 1;
                }
                rest.push_back(gp);
            }
            GradedPolynomial partial(scheme);
            partial.add_term(Monomial(rest, scheme), c);
            GradedPolynomial dgen = sq1_generator(scheme, powers[pos].family, powers[pos].index);
            unsigned bound = m.degree() + 1;
            out = out + poly_mul(partial, dgen, bound);
        }
    }
    return out;
}

GradedPolynomial torsion_pontrjagin_mod2(unsigned k) {
    GeneratorScheme w = GeneratorScheme::stiefel_whitney();
    GradedPolynomial prod(w, Rational(1));
    if (k > 0)
        prod = poly_mul(GradedPolynomial::generator(w, 0, 2 * k),
                        GradedPolynomial::generator(w, 0, 2 * k + 1), 4 * k + 1);
    else
        prod = GradedPolynomial::generator(w, 0, 1);  // w_0 = 1
    return sq1_sw(prod);
}

GradedPolynomial whitney_correction_mod2(unsigned k) {
    if (k < 1) throw std::invalid_argument("whitney_correction_mod2: k >= 1");
    GeneratorScheme ww = GeneratorScheme::stiefel_whitney_pair();
    unsigned bound = 4 * k;
    GradedPolynomial total(ww);
    for (unsigned i = 0; i + 1 <= k; ++i) {
        unsigned j = k - 1 - i;
        // w_{2i}(E) v_{2i+1}(E'), with w_0 = v_0 = 1
        GradedPolynomial left = GradedPolynomial::generator(ww, 1, 2 * i + 1);
        if (i > 0) left = poly_mul(GradedPolynomial::generator(ww, 0, 2 * i), left, bound);
        GradedPolynomial right = GradedPolynomial::generator(ww, 0, 2 * j + 1);
        if (j > 0) right = poly_mul(GradedPolynomial::generator(ww, 1, 2 * j), right, bound);
        total = total + poly_mul(sq1_sw(left), sq1_sw(right), bound);
    }
    return total;
}

GradedPolynomial kill_generators(const GradedPolynomial& poly,
                                 const std::vector<std::pair<uint8_t, unsigned>>& gens) {
    std::map<std::pair<uint8_t, unsigned>, GradedPolynomial> images;
    for (const auto& g : gens) images[g] = GradedPolynomial(poly.scheme());  // zero
    unsigned bound = poly.is_zero() ? 0u : poly.degree();
    return substitute(poly, poly.scheme(), images, bound);
}

std::vector<unsigned> spin_killed_indices(unsigned max_index) {
    // w_1, w_2, then w_3 = Sq^1 w_2, w_5 = Sq^2 w_3, w_9 = Sq^4 w_5, ...
    std::vector<unsigned> out = {1, 2};
    for (unsigned j = 1; (1u << j) + 1 <= max_index; ++j) out.push_back((1u << j) + 1);
    return out;
}

Mod2Class apply_sq(unsigned i, const Mod2Class& x, const CohomologyPresentation& pres) {
    if (i == 0) return x;
    unsigned target = x.degree + i;
    if (x.is_zero()) return pres.zero_mod2(target);
    if (i > x.degree) return pres.zero_mod2(target);  // excess
    if (pres.degree_known(target) && pres.mod2_dim(target) == 0) return pres.zero_mod2(target);
    auto it = pres.sq.find({i, x.degree});
    if (it == pres.sq.end())
        throw UnsupportedOperation(pres.name + ": Sq^" + std::to_string(i) +
                                   " not tabulated on degree " + std::to_string(x.degree));
    return {target, it->second.apply(x.coords)};
}

std::vector<Mod2Class> wu_classes(const CohomologyPresentation& pres, unsigned dimension) {
    if (!pres.fundamental_mod2)
        throw std::invalid_argument("wu_classes: presentation lacks duality data");
    const std::vector<uint8_t>& mu = *pres.fundamental_mod2;
    auto integrate = [&](const Mod2Class& top) -> uint8_t {
        uint8_t acc = 0;
        for (size_t i = 0; i < top.coords.size(); ++i) acc ^= top.coords[i] & mu[i];
        return acc;
    };

    std::vector<Mod2Class> v;
    for (unsigned k = 1; 2 * k <= dimension; ++k) {
        unsigned xd = dimension - k;
        unsigned rows = pres.mod2_dim(xd);
        unsigned cols = pres.mod2_dim(k);
        // <v_k cup x, [M]> = <Sq^k x, [M]> for every basis x
        F2Mat system(rows, cols);
        std::vector<uint8_t> rhs(rows, 0);
        for (unsigned r = 0; r < rows; ++r) {
            Mod2Class x = pres.zero_mod2(xd);
            x.coords[r] = 1;
            rhs[r] = integrate(apply_sq(k, x, pres));
            for (unsigned c = 0; c < cols; ++c) {
                Mod2Class cand = pres.zero_mod2(k);
                cand.coords[c] = 1;
                system.at(r, c) = integrate(pres.cup(cand, x));
            }
        }
        auto sol = system.solve(rhs);
        if (!sol)
            throw std::invalid_argument("wu_classes: duality data inconsistent in degree " +
                                        std::to_string(k));
        v.push_back({k, *sol});
    }
    return v;
}

std::vector<Mod2Class> sw_from_wu(const std::vector<Mod2Class>& v,
                                  const CohomologyPresentation& pres) {
    unsigned top = pres.top_degree();
    std::vector<Mod2Class> w;
    for (unsigned d = 0; d <= top; ++d) w.push_back(pres.zero_mod2(d));
    // w = Sq(v) with v_0 = 1: degree-d part = sum_{i + k = d} Sq^i(v_k)
    if (!w.empty() && !w[0].coords.empty()) w[0].coords[0] = 1;  // Sq(1) = 1
    for (const auto& vk : v) {
        for (unsigned i = 0; i + vk.degree <= top; ++i) {
            if (i > vk.degree) break;
            Mod2Class s = apply_sq(i, vk, pres);
            for (size_t t = 0; t < s.coords.size(); ++t) w[s.degree].coords[t] ^= s.coords[t];
        }
    }
    return w;
}

}  // namespace kocalc

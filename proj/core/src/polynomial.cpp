#include "kocalc/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace kocalc {

GeneratorScheme GeneratorScheme::pontrjagin() {
    return {{{"p", 4, 0}}, CoeffField::Rationals};
}
GeneratorScheme GeneratorScheme::chern_roots() {
    return {{{"x", 0, 2}}, CoeffField::Rationals};
}
GeneratorScheme GeneratorScheme::root_squares() {
    return {{{"y", 0, 4}}, CoeffField::Rationals};
}
GeneratorScheme GeneratorScheme::stiefel_whitney() {
    return {{{"w", 1, 0}}, CoeffField::Mod2};
}
GeneratorScheme GeneratorScheme::stiefel_whitney_pair() {
    return {{{"w", 1, 0}, {"v", 1, 0}}, CoeffField::Mod2};
}

unsigned GeneratorScheme::degree(uint8_t family, unsigned index) const {
    if (family >= families.size()) throw std::invalid_argument("scheme: no such family");
    unsigned d = families[family].degree(index);
    if (d == 0) throw std::invalid_argument("scheme: generator of degree 0");
    return d;
}

Monomial::Monomial(std::vector<GeneratorPower> powers, const GeneratorScheme& scheme) {
    std::sort(powers.begin(), powers.end(), [](const auto& a, const auto& b) {
        return std::pair(a.family, a.index) < std::pair(b.family, b.index);
    });
    for (const auto& gp : powers) {
        if (gp.exponent == 0) continue;
        if (!powers_.empty() && powers_.back().family == gp.family &&
            powers_.back().index == gp.index) {
            powers_.back().exponent += gp.exponent;
        } else {
            powers_.push_back(gp);
        }
    }
    for (const auto& gp : powers_) degree_ += scheme.degree(gp.family, gp.index) * gp.exponent;
}

Monomial Monomial::times(const Monomial& other, const GeneratorScheme& scheme) const {
    std::vector<GeneratorPower> merged = powers_;
    merged.insert(merged.end(), other.powers_.begin(), other.powers_.end());
    return Monomial(std::move(merged), scheme);
}

GradedPolynomial::GradedPolynomial(GeneratorScheme scheme, const Rational& constant)
    : scheme_(std::move(scheme)) {
    add_term(Monomial{}, constant);
}

GradedPolynomial GradedPolynomial::generator(const GeneratorScheme& scheme, uint8_t family,
                                             unsigned index, unsigned exponent) {
    GradedPolynomial p(scheme);
    p.add_term(Monomial({{family, index, exponent}}, scheme), Rational(1));
    return p;
}

unsigned GradedPolynomial::degree() const {
    return terms_.empty() ? 0u : terms_.rbegin()->first.degree();
}

Rational GradedPolynomial::constant_term() const { return coefficient(Monomial{}); }

Rational GradedPolynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void GradedPolynomial::reduce_coefficient(Rational& c) const {
    if (scheme_.field != CoeffField::Mod2) return;
    if (!c.is_integer())
        throw std::domain_error("mod-2 polynomial: non-integer coefficient");
    c = Rational((c.numerator() % 2 + 2) % 2);
}

void GradedPolynomial::add_term(const Monomial& m, const Rational& c) {
    Rational v = c;
    reduce_coefficient(v);
    if (v.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, v);
    if (!inserted) {
        it->second += v;
        reduce_coefficient(it->second);
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GradedPolynomial GradedPolynomial::operator-() const {
    GradedPolynomial r(scheme_);
    for (const auto& [m, c] : terms_) r.add_term(m, -c);
    return r;
}

GradedPolynomial operator+(const GradedPolynomial& a, const GradedPolynomial& b) {
    return poly_add(a, b);
}
GradedPolynomial operator-(const GradedPolynomial& a, const GradedPolynomial& b) {
    return poly_add(a, -b);
}

GradedPolynomial GradedPolynomial::scaled(const Rational& c) const {
    GradedPolynomial r(scheme_);
    for (const auto& [m, coeff] : terms_) r.add_term(m, coeff * c);
    return r;
}

GradedPolynomial poly_add(const GradedPolynomial& a, const GradedPolynomial& b) {
    if (!(a.scheme() == b.scheme()))
        throw std::invalid_argument("poly_add: scheme mismatch");
    GradedPolynomial r = a;
    for (const auto& [m, c] : b.terms()) r.add_term(m, c);
    return r;
}

GradedPolynomial poly_mul(const GradedPolynomial& a, const GradedPolynomial& b,
                          unsigned max_degree) {
    if (!(a.scheme() == b.scheme()))
        throw std::invalid_argument("poly_mul: scheme mismatch");
    GradedPolynomial r(a.scheme());
    for (const auto& [ma, ca] : a.terms()) {
        if (ma.degree() > max_degree) continue;
        for (const auto& [mb, cb] : b.terms()) {
            if (ma.degree() + mb.degree() > max_degree) continue;
            r.add_term(ma.times(mb, a.scheme()), ca * cb);
        }
    }
    return r;
}

GradedPolynomial invert_unit(const GradedPolynomial& a, unsigned max_degree) {
    Rational c0 = a.constant_term();
    if (c0.is_zero()) throw std::domain_error("invert_unit: zero constant term");
    // a = c0(1 + n), inverse = (1/c0) * sum (-n)^k.
    Rational c0_inv = Rational(1) / c0;
    GradedPolynomial one(a.scheme(), Rational(1));
    GradedPolynomial n = truncate(a.scaled(c0_inv) - one, max_degree);
    GradedPolynomial acc = one;
    GradedPolynomial power = one;
    unsigned min_deg = 0;
    for (const auto& [m, c] : n.terms()) {
        min_deg = m.degree();
        break;
    }
    if (!n.is_zero()) {
        for (unsigned k = 1; k * min_deg <= max_degree; ++k) {
            power = poly_mul(power, -n, max_degree);
            if (power.is_zero()) break;
            acc = acc + power;
        }
    }
    return acc.scaled(c0_inv);
}

GradedPolynomial homogeneous_component(const GradedPolynomial& a, unsigned degree) {
    GradedPolynomial r(a.scheme());
    for (const auto& [m, c] : a.terms())
        if (m.degree() == degree) r.add_term(m, c);
    return r;
}

GradedPolynomial truncate(const GradedPolynomial& a, unsigned max_degree) {
    GradedPolynomial r(a.scheme());
    for (const auto& [m, c] : a.terms())
        if (m.degree() <= max_degree) r.add_term(m, c);
    return r;
}

GradedPolynomial substitute(
    const GradedPolynomial& a, const GeneratorScheme& target,
    const std::map<std::pair<uint8_t, unsigned>, GradedPolynomial>& images,
    unsigned max_degree) {
    GradedPolynomial r(target);
    for (const auto& [m, c] : a.terms()) {
        GradedPolynomial term(target, c);
        for (const auto& gp : m.powers()) {
            auto it = images.find({gp.family, gp.index});
            GradedPolynomial base(target);
            if (it != images.end()) {
                base = it->second;
            } else if (a.scheme() == target) {
                base = GradedPolynomial::generator(target, gp.family, gp.index);
            } else {
                throw std::invalid_argument("substitute: missing image for generator");
            }
            for (unsigned e = 0; e < gp.exponent; ++e) {
                term = poly_mul(term, base, max_degree);
                if (term.is_zero()) break;
            }
            if (term.is_zero()) break;
        }
        r = r + term;
    }
    return truncate(r, max_degree);
}

std::string GradedPolynomial::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational abs_c = c < Rational(0) ? -c : c;
        bool negative = c < Rational(0);
        if (first) {
            if (negative) out += "-";
            first = false;
        } else {
            out += negative ? " - " : " + ";
        }
        std::string mono;
        for (const auto& gp : m.powers()) {
            if (!mono.empty()) mono += "*";
            mono += scheme_.families[gp.family].prefix + std::to_string(gp.index);
            if (gp.exponent > 1) mono += "^" + std::to_string(gp.exponent);
        }
        if (mono.empty()) {
            out += abs_c.str();
        } else if (abs_c == Rational(1)) {
            out += mono;
        } else {
            out += abs_c.str() + "*" + mono;
        }
    }
    return out;
}

}  // namespace kocalc

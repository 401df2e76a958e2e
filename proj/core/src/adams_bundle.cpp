#include "kocalc/adams_bundle.hpp"

#include <stdexcept>

namespace kocalc {

namespace {
constexpr unsigned kBound = 4096;  // ample truncation; all ops are exact in range
}

GeneratorScheme FormalBundle::line_scheme() {
    return {{{"L", 0, 2}}, CoeffField::Rationals};
}

FormalBundle FormalBundle::from_lines(
    const std::vector<std::tuple<unsigned, unsigned, unsigned>>& lines) {
    GeneratorScheme scheme = line_scheme();
    GradedPolynomial cls(scheme);
    for (const auto& [index, power, mult] : lines) {
        if (power == 0) {
            cls.add_term(Monomial{}, Rational(mult));
        } else {
            cls.add_term(Monomial({{0, index, power}}, scheme), Rational(mult));
        }
    }
    FormalBundle b;
    b.root_model_ = cls;
    return b;
}

FormalBundle FormalBundle::from_root_polynomial(GradedPolynomial cls) {
    FormalBundle b;
    b.root_model_ = std::move(cls);
    return b;
}

void FormalBundle::populate_lambda(unsigned max_k) {
    if (!root_model_) throw std::invalid_argument("populate_lambda: no root model");
    // expand the roots into a list of line monomials with multiplicity
    GeneratorScheme scheme = line_scheme();
    std::vector<Monomial> roots;
    for (const auto& [m, c] : root_model_->terms()) {
        if (!c.is_integer() || c < Rational(0))
            throw std::invalid_argument("populate_lambda: roots must have nonnegative multiplicity");
        Int reps = c.numerator();
        for (Int i = 0; i < reps; ++i) roots.push_back(m);
    }
    // elementary symmetric polynomials by the standard DP
    std::vector<GradedPolynomial> e(max_k + 1, GradedPolynomial(scheme));
    e[0] = GradedPolynomial(scheme, Rational(1));
    for (const auto& root : roots) {
        GradedPolynomial mono(scheme);
        mono.add_term(root, Rational(1));
        for (unsigned k = std::min<unsigned>(max_k, unsigned(roots.size())); k >= 1; --k) {
            e[k] = e[k] + poly_mul(e[k - 1], mono, kBound);
            if (k == 1) break;
        }
    }
    lambda_model_ = std::vector<GradedPolynomial>(e.begin() + 1, e.end());
}

FormalBundle FormalBundle::plus(const FormalBundle& other) const {
    if (!root_model_ || !other.root_model_)
        throw std::invalid_argument("plus: both bundles need root models");
    return from_root_polynomial(*root_model_ + *other.root_model_);
}

FormalBundle FormalBundle::reduce_real_line() const {
    if (!root_model_) throw std::invalid_argument("reduce_real_line: no root model");
    GeneratorScheme scheme = root_model_->scheme();
    GradedPolynomial out(scheme);
    for (const auto& [m, c] : root_model_->terms()) {
        std::vector<GeneratorPower> powers;
        for (const auto& gp : m.powers()) {
            unsigned e = gp.exponent % 2;  // L tensor L is trivial
            if (e) powers.push_back({gp.family, gp.index, e});
        }
        out.add_term(Monomial(powers, scheme), c);
    }
    return from_root_polynomial(out);
}

FormalBundle adams_root_model(unsigned r, const FormalBundle& bundle) {
    if (r < 1) throw std::invalid_argument("adams_root_model: r >= 1");
    if (!bundle.root_model())
        throw std::invalid_argument("adams_root_model: lambda-only bundle");
    const GradedPolynomial& cls = *bundle.root_model();
    GradedPolynomial out(cls.scheme());
    for (const auto& [m, c] : cls.terms()) {
        std::vector<GeneratorPower> powers;
        for (const auto& gp : m.powers()) powers.push_back({gp.family, gp.index, gp.exponent * r});
        out.add_term(Monomial(powers, cls.scheme()), c);
    }
    return FormalBundle::from_root_polynomial(out);
}

GradedPolynomial adams_root_value(unsigned r, const FormalBundle& bundle) {
    return *adams_root_model(r, bundle).root_model();
}

GradedPolynomial adams_newton_recursion(unsigned r, const FormalBundle& bundle,
                                        AdamsRecursionVariant variant) {
    if (r < 1) throw std::invalid_argument("adams_newton_recursion: r >= 1");
    if (!bundle.lambda_model())
        throw std::invalid_argument("adams_newton_recursion: lambda model not populated");
    const auto& lam = *bundle.lambda_model();
    GeneratorScheme scheme = FormalBundle::line_scheme();
    auto lambda = [&](unsigned i) {
        return i <= lam.size() ? lam[i - 1] : GradedPolynomial(scheme);
    };

    std::vector<GradedPolynomial> psi(r + 1, GradedPolynomial(scheme));
    psi[1] = lambda(1);
    for (unsigned j = 2; j <= r; ++j) {
        GradedPolynomial acc(scheme);
        if (variant == AdamsRecursionVariant::Newton) {
            for (unsigned i = 1; i < j; ++i) {
                GradedPolynomial term = poly_mul(lambda(i), psi[j - i], kBound);
                acc = (i % 2 == 1) ? acc + term : acc - term;
            }
            GradedPolynomial top = lambda(j).scaled(Rational(j));
            acc = (j % 2 == 1) ? acc + top : acc - top;
        } else {
            for (unsigned i = 1; i < j; ++i) {
                GradedPolynomial term = poly_mul(lambda(i), psi[j - i], kBound);
                acc = (i % 2 == 1) ? acc - term : acc + term;
            }
            acc = (j % 2 == 1) ? acc - lambda(j) : acc + lambda(j);
        }
        psi[j] = acc;
    }
    return psi[r];
}

std::vector<DivergenceRow> adams_divergence_table(unsigned max_r, unsigned max_rank) {
    std::vector<DivergenceRow> rows;
    for (unsigned rank = 1; rank <= max_rank; ++rank) {
        std::vector<std::tuple<unsigned, unsigned, unsigned>> lines;
        for (unsigned i = 1; i <= rank; ++i) lines.push_back({i, 1, 1});
        FormalBundle b = FormalBundle::from_lines(lines);
        b.populate_lambda(max_r);
        for (unsigned r = 1; r <= max_r; ++r) {
            DivergenceRow row;
            row.r = r;
            row.rank = rank;
            GradedPolynomial oracle = adams_root_value(r, b);
            row.newton_matches =
                adams_newton_recursion(r, b, AdamsRecursionVariant::Newton) == oracle;
            row.alternate_matches =
                adams_newton_recursion(r, b, AdamsRecursionVariant::Alternate) == oracle;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace kocalc

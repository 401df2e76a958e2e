#include "kocalc/genus.hpp"

#include <stdexcept>

namespace kocalc {

PowerSeries1D sinh_quotient_series(unsigned max_j) {
    PowerSeries1D s;
    s.coefficients.resize(max_j + 1);
    for (unsigned i = 0; i <= max_j; ++i)
        s.coefficients[i] = Rational(1, int_pow(4, i) * factorial(2 * i + 1));
    return s;
}

PowerSeries1D series_reciprocal(const PowerSeries1D& s, unsigned max_j) {
    if (s.at(0).is_zero()) throw std::domain_error("series_reciprocal: zero constant term");
    PowerSeries1D r;
    r.coefficients.resize(max_j + 1);
    r.coefficients[0] = Rational(1) / s.at(0);
    for (unsigned k = 1; k <= max_j; ++k) {
        Rational acc(0);
        for (unsigned i = 1; i <= k; ++i) acc += s.at(i) * r.coefficients[k - i];
        r.coefficients[k] = -acc / s.at(0);
    }
    return r;
}

PowerSeries1D a_hat_series(unsigned max_j) {
    return series_reciprocal(sinh_quotient_series(max_j), max_j);
}

std::vector<GradedPolynomial> newton_convert(NewtonDirection direction, unsigned n,
                                             const GeneratorScheme& scheme) {
    if (n < 1) throw std::invalid_argument("newton_convert: n must be >= 1");
    unsigned max_degree = scheme.degree(0, n) * n;  // ample truncation bound
    auto gen = [&](unsigned i) { return GradedPolynomial::generator(scheme, 0, i); };

    std::vector<GradedPolynomial> out;
    out.reserve(n);
    if (direction == NewtonDirection::PowerSumsFromElementary) {
        // s_k = e_1 s_{k-1} - e_2 s_{k-2} + ... + (-1)^{k-1} k e_k
        for (unsigned k = 1; k <= n; ++k) {
            GradedPolynomial s(scheme);
            for (unsigned i = 1; i < k; ++i) {
                GradedPolynomial term = poly_mul(gen(i), out[k - i - 1], max_degree);
                s = (i % 2 == 1) ? s + term : s - term;
            }
            GradedPolynomial top = gen(k).scaled(Rational(k));
            s = (k % 2 == 1) ? s + top : s - top;
            out.push_back(s);
        }
    } else {
        // k e_k = s_1 e_{k-1} - s_2 e_{k-2} + ... + (-1)^{k-1} s_k
        for (unsigned k = 1; k <= n; ++k) {
            GradedPolynomial e(scheme);
            for (unsigned i = 1; i < k; ++i) {
                GradedPolynomial term = poly_mul(gen(i), out[k - i - 1], max_degree);
                e = (i % 2 == 1) ? e + term : e - term;
            }
            GradedPolynomial top = gen(k);
            e = (k % 2 == 1) ? e + top : e - top;
            out.push_back(e.scaled(Rational(1, k)));
        }
    }
    return out;
}

namespace {

// exp of a polynomial with zero constant term, truncated above max_degree.
GradedPolynomial poly_exp(const GradedPolynomial& a, unsigned max_degree) {
    if (!a.constant_term().is_zero())
        throw std::invalid_argument("poly_exp: nonzero constant term");
    GradedPolynomial acc(a.scheme(), Rational(1));
    GradedPolynomial power(a.scheme(), Rational(1));
    Rational inv_fact(1);
    for (unsigned k = 1; k <= max_degree; ++k) {
        power = poly_mul(power, a, max_degree);
        if (power.is_zero()) break;
        inv_fact /= Rational(k);
        acc = acc + power.scaled(inv_fact);
    }
    return acc;
}

// log of the series Q as a 1-variable series: log Q = sum c_k z^k.
PowerSeries1D series_log(const PowerSeries1D& q, unsigned max_j) {
    if (!(q.at(0) == Rational(1)))
        throw std::invalid_argument("series_log: constant term must be 1");
    // log(1+u) with u = Q-1, computed degree by degree via exp inversion:
    // c_k = q_k - [z^k] exp(sum_{i<k} c_i z^i) restricted to known terms.
    // Simpler: Newton's identity for formal log, c_1..c_max via
    // Q' = Q * (log Q)' termwise.
    PowerSeries1D c;
    c.coefficients.assign(max_j + 1, Rational(0));
    // (log Q)'(z) * Q(z) = Q'(z):  sum_{i+j=k-1} (i+1) c_{i+1} q_j = k q_k
    for (unsigned k = 1; k <= max_j; ++k) {
        Rational acc = q.at(k) * Rational(k);
        for (unsigned i = 1; i < k; ++i) acc -= c.coefficients[i] * Rational(i) * q.at(k - i);
        c.coefficients[k] = acc / Rational(k);
    }
    return c;
}

}  // namespace

GradedPolynomial GenusExpansion::total(unsigned max_degree) const {
    GradedPolynomial t(GeneratorScheme::pontrjagin());
    for (const auto& k : K)
        if (k.degree() <= max_degree || k.is_zero()) t = t + k;
    return truncate(t, max_degree);
}

GenusExpansion multiplicative_sequence(const PowerSeries1D& Q, unsigned max_j) {
    if (!(Q.at(0) == Rational(1)))
        throw std::invalid_argument("multiplicative_sequence: Q(0) must be 1");
    GeneratorScheme p = GeneratorScheme::pontrjagin();
    unsigned max_degree = 4 * max_j;

    // prod_i Q(y_i) = exp(sum_k c_k s_k(y)) with p_j = e_j(y).
    PowerSeries1D c = series_log(Q, max_j);
    std::vector<GradedPolynomial> s =
        max_j >= 1 ? newton_convert(NewtonDirection::PowerSumsFromElementary, max_j, p)
                   : std::vector<GradedPolynomial>{};
    GradedPolynomial log_total(p);
    for (unsigned k = 1; k <= max_j; ++k)
        log_total = log_total + s[k - 1].scaled(c.coefficients[k]);
    GradedPolynomial total = poly_exp(log_total, max_degree);

    GenusExpansion out;
    for (unsigned j = 0; j <= max_j; ++j) out.K.push_back(homogeneous_component(total, 4 * j));
    return out;
}

GradedPolynomial pontrjagin_character(unsigned max_degree, const Rational& rank) {
    GeneratorScheme p = GeneratorScheme::pontrjagin();
    GradedPolynomial ph(p, rank);
    unsigned kmax = max_degree / 4;
    if (kmax >= 1) {
        auto s = newton_convert(NewtonDirection::PowerSumsFromElementary, kmax, p);
        for (unsigned k = 1; k <= kmax; ++k)
            ph = ph + s[k - 1].scaled(Rational(2, factorial(2 * k)));
    }
    return ph;
}

GradedPolynomial a_hat(unsigned max_degree) {
    unsigned max_j = max_degree / 4;
    return multiplicative_sequence(a_hat_series(max_j), max_j).total(max_degree);
}

Rational evaluate_genus(const GradedPolynomial& genus, const GradedPolynomial& total_p,
                        unsigned top_degree, const std::map<Monomial, Rational>& pairing) {
    if (!(total_p.constant_term() == Rational(1)))
        throw std::invalid_argument("evaluate_genus: total class must start with 1");
    std::map<std::pair<uint8_t, unsigned>, GradedPolynomial> images;
    for (unsigned j = 1; 4 * j <= top_degree; ++j)
        images[{0, j}] = homogeneous_component(total_p, 4 * j);
    GradedPolynomial value = substitute(genus, total_p.scheme(), images, top_degree);
    GradedPolynomial top = homogeneous_component(value, top_degree);
    Rational acc(0);
    for (const auto& [m, coeff] : top.terms()) {
        auto it = pairing.find(m);
        if (it == pairing.end())
            throw std::invalid_argument("evaluate_genus: missing pairing entry for " +
                                        top.str());
        acc += coeff * it->second;
    }
    return acc;
}

namespace {

// e^(c*x_j) as a polynomial in the Chern-root scheme, truncated.
GradedPolynomial exp_root(const GeneratorScheme& scheme, unsigned j, const Rational& c,
                          unsigned max_degree) {
    GradedPolynomial acc(scheme, Rational(1));
    Rational coeff(1);
    Rational power(1);
    for (unsigned k = 1; 2 * k <= max_degree; ++k) {
        power *= c;
        coeff /= Rational(k);
        acc.add_term(Monomial({{0, j, k}}, scheme), power * coeff);
    }
    return acc;
}

// sinh(x_j/2)/(x_j/2) = sum_i x_j^{2i} / (4^i (2i+1)!), truncated.
GradedPolynomial sinh_quotient_root(const GeneratorScheme& scheme, unsigned j,
                                    unsigned max_degree) {
    GradedPolynomial acc(scheme, Rational(1));
    for (unsigned i = 1; 4 * i <= max_degree; ++i)
        acc.add_term(Monomial({{0, j, 2 * i}}, scheme),
                     Rational(1, int_pow(4, i) * factorial(2 * i + 1)));
    return acc;
}

// Elementary symmetric polynomial e_k(x_1^2, ..., x_m^2) in the root scheme.
GradedPolynomial elementary_in_squares(const GeneratorScheme& scheme, unsigned k, unsigned m,
                                       unsigned max_degree) {
    // iterate over k-subsets of {1..m}
    GradedPolynomial acc(scheme);
    std::vector<unsigned> idx(k);
    for (unsigned i = 0; i < k; ++i) idx[i] = i + 1;
    while (true) {
        std::vector<GeneratorPower> powers;
        for (unsigned i : idx) powers.push_back({0, i, 2});
        acc.add_term(Monomial(powers, scheme), Rational(1));
        // next subset
        int pos = static_cast<int>(k) - 1;
        while (pos >= 0 && idx[pos] == m - (k - 1 - pos)) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (unsigned i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    return truncate(acc, max_degree);
}

}  // namespace

GradedPolynomial roots_to_pontrjagin(const GradedPolynomial& symmetric, unsigned num_roots,
                                     unsigned max_degree) {
    if (4 * num_roots < max_degree)
        throw std::invalid_argument(
            "roots_to_pontrjagin: need at least max_degree/4 root pairs for stability");
    GeneratorScheme roots = GeneratorScheme::chern_roots();
    GeneratorScheme p = GeneratorScheme::pontrjagin();

    std::vector<GradedPolynomial> e;  // e[k-1] = e_k(x^2) in the root scheme
    for (unsigned k = 1; 4 * k <= max_degree; ++k)
        e.push_back(elementary_in_squares(roots, k, num_roots, max_degree));

    GradedPolynomial rest = truncate(symmetric, max_degree);
    GradedPolynomial result(p);
    // Gauss triangular reduction on the lex-leading monomial.
    while (!rest.is_zero()) {
        auto lead = rest.terms().rbegin();
        const Monomial& m = lead->first;
        Rational c = lead->second;
        if (m.is_constant()) {
            result.add_term(Monomial{}, c);
            rest.add_term(m, -c);
            continue;
        }
        // exponent vector sorted descending by construction of Monomial order?
        // Monomial stores powers by index; read exponents per root.
        std::vector<unsigned> lambda(num_roots + 1, 0);
        for (const auto& gp : m.powers()) {
            if (gp.exponent % 2 != 0 || gp.index > num_roots)
                throw std::domain_error("roots_to_pontrjagin: not symmetric in squares");
            lambda[gp.index] = gp.exponent / 2;
        }
        std::vector<unsigned> sorted(lambda.begin() + 1, lambda.end());
        std::sort(sorted.rbegin(), sorted.rend());
        // candidate: prod_k e_k(x^2)^{sorted_k - sorted_{k+1}}
        GradedPolynomial candidate(roots, Rational(1));
        GradedPolynomial p_mono(p, Rational(1));
        for (unsigned k = 1; k <= sorted.size() && sorted[k - 1] > 0; ++k) {
            unsigned next = k < sorted.size() ? sorted[k] : 0;
            unsigned exp = sorted[k - 1] - next;
            if (exp == 0) continue;
            if (4 * k > max_degree)
                throw std::domain_error("roots_to_pontrjagin: degree exceeds truncation");
            for (unsigned t = 0; t < exp; ++t)
                candidate = poly_mul(candidate, e[k - 1], max_degree);
            p_mono = poly_mul(p_mono, GradedPolynomial::generator(p, 0, k, exp),
                              max_degree);
        }
        rest = rest - candidate.scaled(c);
        result = result + p_mono.scaled(c);
    }
    return result;
}

bool verify_thom_genus_identity(unsigned num_root_pairs, unsigned max_degree) {
    if (num_root_pairs < 1)
        throw std::invalid_argument("verify_thom_genus_identity: need >= 1 root pair");
    GeneratorScheme roots = GeneratorScheme::chern_roots();
    unsigned m = num_root_pairs;
    // Room for the Euler factor prod (-x_j^2) of degree 4m.
    unsigned big = max_degree + 4 * m;

    GradedPolynomial lhs(roots, Rational(1));
    GradedPolynomial euler(roots, Rational(1));
    GradedPolynomial rhs_sq(roots, Rational(1));
    GradedPolynomial rhs(roots, Rational(1));
    for (unsigned j = 1; j <= m; ++j) {
        GradedPolynomial one(roots, Rational(1));
        GradedPolynomial f = one - exp_root(roots, j, Rational(1), big);
        GradedPolynomial g = one - exp_root(roots, j, Rational(-1), big);
        lhs = poly_mul(lhs, poly_mul(f, g, big), big);

        GradedPolynomial x2 = GradedPolynomial::generator(roots, 0, j, 2);
        euler = poly_mul(euler, -x2, big);

        GradedPolynomial sq = sinh_quotient_root(roots, j, big);
        rhs = poly_mul(rhs, sq, big);
        rhs_sq = poly_mul(rhs_sq, poly_mul(sq, sq, big), big);
    }

    // (i)  prod (1-e^{x})(1-e^{-x}) = prod(-x^2) * prod (sinh(x/2)/(x/2))^2
    if (!(truncate(lhs, big) == truncate(poly_mul(euler, rhs_sq, big), big))) return false;

    // (ii) prod sinh(x/2)/(x/2) in p-variables = invert_unit(a_hat)
    if (max_degree == 0) return true;
    GradedPolynomial rhs_p =
        roots_to_pontrjagin(truncate(rhs, max_degree), m, max_degree);
    GradedPolynomial a_inv = invert_unit(a_hat(max_degree), max_degree);
    return rhs_p == a_inv;
}

}  // namespace kocalc

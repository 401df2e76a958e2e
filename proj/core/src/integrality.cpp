#include "kocalc/integrality.hpp"

#include <stdexcept>

#include "kocalc/genus.hpp"

namespace kocalc {

Int phi(const Rational& x) {
    if (!(x > Rational(0))) throw std::domain_error("phi: requires x > 0");
    if (x.is_integer()) return x.numerator() - 1;
    return x.floor();
}

namespace {

std::vector<unsigned> primes_up_to(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned p = 2; p <= n; ++p) {
        bool prime = true;
        for (unsigned d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (prime) out.push_back(p);
    }
    return out;
}

}  // namespace

std::string DenominatorReport::odd_part_factored() const {
    std::string s;
    for (const auto& [p, e] : prime_exponents) {
        if (p == 2 || e == 0) continue;
        if (!s.empty()) s += "*";
        s += std::to_string(p);
        if (e > 1) s += "^" + e.str();
    }
    return s.empty() ? "1" : s;
}

DenominatorReport ph_denominator(unsigned k) {
    if (k < 1) throw std::invalid_argument("ph_denominator: k >= 1");
    DenominatorReport rep;
    rep.k = k;
    for (unsigned p : primes_up_to(k)) {
        Int e = phi(Rational(k, p));
        rep.prime_exponents[p] = e;
        if (p == 2) {
            rep.two_exponent = e;
        } else {
            for (Int i = 0; i < e; ++i) rep.odd_part *= p;
        }
    }
    return rep;
}

SurvivalWitness d4k_survival(const FormSlot& slot, unsigned k,
                             const std::vector<std::vector<Rational>>& incoming_image) {
    SurvivalWitness w;
    w.value = d4k_on_form_slot(slot, k);
    bool literal_zero = true;
    for (const auto& v : w.value) literal_zero = literal_zero && v.is_zero();
    if (incoming_image.empty()) {
        w.survives = literal_zero;
        w.note = literal_zero ? "value is zero"
                              : "conservative mode: killed only if literally zero";
        return w;
    }
    if (literal_zero) {
        w.survives = true;
        w.note = "value is zero";
        return w;
    }
    // membership of the value in the subgroup of (Q/Z)^b generated by the
    // image vectors: clear denominators and test lattice membership.
    size_t b = w.value.size();
    Int lcm = 1;
    auto fold = [&lcm](const Rational& q) {
        Int d = q.denominator();
        Int g = boost::multiprecision::gcd(lcm, d);
        lcm = lcm / g * d;
    };
    for (const auto& q : w.value) fold(q);
    for (const auto& vec : incoming_image)
        for (const auto& q : vec) fold(q);
    // columns: image vectors scaled by lcm, plus lcm * Z^b
    IntMat m(b, incoming_image.size() + b);
    for (size_t j = 0; j < incoming_image.size(); ++j)
        for (size_t i = 0; i < b; ++i) {
            Rational scaled = incoming_image[j][i] * Rational(lcm);
            m.at(i, j) = scaled.numerator();
        }
    for (size_t i = 0; i < b; ++i) m.at(i, incoming_image.size() + i) = lcm;
    std::vector<Int> target(b);
    for (size_t i = 0; i < b; ++i) target[i] = (w.value[i] * Rational(lcm)).numerator();
    w.survives = solve(m, target).has_value();
    w.note = w.survives ? "value lies in the incoming image" : "value survives the quotient";
    return w;
}

Degree8Verdict degree8_criterion(const CohomologyPresentation& pres) {
    Degree8Verdict v;
    if (pres.mod2_dim(1) != 0) {
        v.statement = "criterion inapplicable: H^1(M;Z/2) != 0";
        return v;
    }
    if (pres.mod2_dim(2) != 0) {
        v.statement = "criterion inapplicable: H^2(M;Z/2) != 0";
        return v;
    }
    if (const FgGroup* g = pres.integral_group(4)) {
        const auto& deg = pres.integral.at(4);
        for (size_t i = 0; i < g->orders.size(); ++i) {
            if (g->orders[i] == 0) continue;
            Int div = i < deg.divisibility.size() ? deg.divisibility[i] : Int(1);
            if (div % 2 != 0) {
                v.statement =
                    "criterion inapplicable: torsion of H^4(M;Z) not known 2-divisible";
                return v;
            }
        }
    }
    v.applicable = true;
    v.statement = "Ph_8 lifts iff its periods are integral";
    return v;
}

AdmissibleReport admissible_pairs(unsigned ell, unsigned p,
                                  const CohomologyPresentation& pres,
                                  AdmissibleIndexing indexing) {
    AdmissibleReport rep;
    unsigned weight = indexing == AdmissibleIndexing::ProofConvention ? 4 * (p - 1) : (p - 1);
    const OddPrimaryData* data = nullptr;
    for (const auto& od : pres.odd_primary)
        if (od.p == p) data = &od;

    for (unsigned r = 1; weight * r < ell; ++r) {
        unsigned rest = ell - weight * r;
        if (rest % 4 != 0) continue;
        unsigned k = rest / 4;
        if (k == 0) continue;
        AdmissiblePair pair;
        pair.r = r;
        pair.k = k;

        // condition (1): a p-torsion class divisible by p^{2r-1} but not
        // p^{2r}; equivalently a cyclic factor of order exactly p^{2r}.
        Int need = int_pow(Int(p), 2 * r);
        bool cond1 = false;
        if (const FgGroup* g = pres.integral_group(4 * k))
            for (const auto& o : g->orders) cond1 = cond1 || o == need;
        if (!cond1) {
            pair.status = AdmissiblePair::Status::NotAdmissible;
            pair.reason = "no class of order p^{2r} in H^{4k}";
            rep.pairs.push_back(pair);
            continue;
        }

        // conditions (2) and (3) need P^{2r} and beta_p data
        if (!data || !data->power_ops.count({2 * r, 4 * k}) || !data->rho.count(4 * k)) {
            pair.status = AdmissiblePair::Status::Undetermined;
            pair.reason = "P^{2r} evaluation unsupported";
            rep.has_undetermined = true;
            rep.pairs.push_back(pair);
            continue;
        }
        const IntMat& P = data->power_ops.at({2 * r, 4 * k});
        const IntMat& rho = data->rho.at(4 * k);
        const FgGroup* g = pres.integral_group(4 * k);
        bool cond2 = false;
        bool cond3 = true;
        for (size_t i = 0; i < g->orders.size(); ++i) {
            if (g->orders[i] != need) continue;
            std::vector<Int> x(g->orders.size(), 0);
            x[i] = 1;
            std::vector<Int> y = P.apply(rho.apply(x));
            bool nz = false;
            for (auto& v : y) {
                v = ((v % int(p)) + int(p)) % int(p);
                nz = nz || v != 0;
            }
            if (!nz) continue;
            cond2 = true;
            unsigned target_degree = 4 * k + 2 * (2 * r) * (p - 1);
            auto itb = data->bockstein.find(target_degree);
            if (itb == data->bockstein.end()) {
                // no recorded Bockstein: treat as zero only if the integral
                // group one degree up is trivial
                if (pres.integral_group(target_degree + 1) != nullptr &&
                    !pres.integral_group(target_degree + 1)->torsion().empty()) {
                    pair.status = AdmissiblePair::Status::Undetermined;
                    pair.reason = "beta_p evaluation unsupported";
                    rep.has_undetermined = true;
                    cond3 = false;
                }
            } else {
                std::vector<Int> bz = itb->second.apply(y);
                for (const auto& v : bz)
                    if (v != 0) cond3 = false;
            }
        }
        if (pair.status == AdmissiblePair::Status::Undetermined) {
            rep.pairs.push_back(pair);
            continue;
        }
        if (cond2 && cond3) {
            pair.status = AdmissiblePair::Status::Admissible;
            pair.reason = "conditions (1)-(3) hold";
            rep.admissible_count += 1;
            rep.denominator *= int(p);
        } else {
            pair.status = AdmissiblePair::Status::NotAdmissible;
            pair.reason = cond2 ? "beta_p P^{2r} nonzero" : "P^{2r} vanishes on the class";
        }
        rep.pairs.push_back(pair);
    }
    return rep;
}

std::string ObstructionReport::str() const {
    return "Ph_8 | p_1 = 0: " + ph8_p1_zero.str() +
           "\n(1/2) Ph_12 | p_1 = p_2 = 0: " + half_ph12_p12_zero.str() +
           "\nPh_4: " + ph4.str();
}

ObstructionReport obstruction_examples() {
    ObstructionReport rep;
    GeneratorScheme p = GeneratorScheme::pontrjagin();
    GradedPolynomial ph = pontrjagin_character(12, Rational(0));

    std::map<std::pair<uint8_t, unsigned>, GradedPolynomial> kill_p1{
        {{0, 1}, GradedPolynomial(p)}};
    std::map<std::pair<uint8_t, unsigned>, GradedPolynomial> kill_p12{
        {{0, 1}, GradedPolynomial(p)}, {{0, 2}, GradedPolynomial(p)}};

    rep.ph8_p1_zero = substitute(homogeneous_component(ph, 8), p, kill_p1, 8);
    rep.half_ph12_p12_zero =
        substitute(homogeneous_component(ph, 12), p, kill_p12, 12).scaled(Rational(1, 2));
    rep.ph4 = homogeneous_component(ph, 4);
    return rep;
}

}  // namespace kocalc

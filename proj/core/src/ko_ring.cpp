#include "kocalc/ko_ring.hpp"

#include <stdexcept>

namespace kocalc {

std::string GroupDescriptor::str() const {
    if (is_zero()) return "0";
    std::string out;
    auto append = [&](const std::string& s) {
        if (!out.empty()) out += " + ";
        out += s;
    };
    for (unsigned i = 0; i < circles; ++i) append("U(1)");
    for (unsigned i = 0; i < free_rank; ++i) append("Z");
    for (const auto& t : torsion) append("Z/" + t.str());
    if (!generators.empty()) {
        out += " {";
        for (size_t i = 0; i < generators.size(); ++i) {
            if (i) out += ", ";
            out += generators[i];
        }
        out += "}";
    }
    return out;
}

std::string KOBasis::str() const {
    std::string out;
    auto append = [&](const std::string& s) {
        if (!out.empty()) out += "*";
        out += s;
    };
    if (eta == 1) append("eta");
    if (eta == 2) append("eta^2");
    if (alpha) append("alpha");
    if (beta != 0) append(beta == 1 ? "beta" : "beta^" + std::to_string(beta));
    return out.empty() ? "1" : out;
}

KOElement KOElement::monomial(KOBasis b, Int coeff) {
    KOElement e;
    e.add(b, std::move(coeff));
    return e;
}

void KOElement::add(KOBasis b, Int coeff) {
    if (b.eta >= 3) return;                  // eta^3 = 0
    if (b.eta > 0 && b.alpha > 0) return;    // eta alpha = 0
    while (b.alpha >= 2) {                   // alpha^2 = 4 beta
        b.alpha -= 2;
        b.beta += 1;
        coeff *= 4;
    }
    if (b.eta > 0) coeff = ((coeff % 2) + 2) % 2;  // 2 eta = 0
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(b, coeff);
    if (!inserted) {
        it->second += coeff;
        if (b.eta > 0) it->second = ((it->second % 2) + 2) % 2;
        if (it->second == 0) terms_.erase(it);
    }
}

KOElement KOElement::operator-() const {
    KOElement r;
    for (const auto& [b, c] : terms_) r.add(b, -c);
    return r;
}

KOElement operator+(const KOElement& a, const KOElement& b) {
    KOElement r = a;
    for (const auto& [basis, c] : b.terms_) r.add(basis, c);
    return r;
}

KOElement operator-(const KOElement& a, const KOElement& b) { return a + (-b); }

KOElement KOElement::scaled(const Int& c) const {
    KOElement r;
    for (const auto& [b, coeff] : terms_) r.add(b, coeff * c);
    return r;
}

std::string KOElement::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [b, c] : terms_) {
        if (!out.empty()) out += c < 0 ? " - " : " + ";
        else if (c < 0) out += "-";
        Int a = c < 0 ? Int(-c) : c;
        std::string mono = b.str();
        if (a == 1 && mono != "1") out += mono;
        else if (mono == "1") out += a.str();
        else out += a.str() + "*" + mono;
    }
    return out;
}

KOElement ko_mul(const KOElement& a, const KOElement& b) {
    KOElement r;
    for (const auto& [ba, ca] : a.terms()) {
        for (const auto& [bb, cb] : b.terms()) {
            KOBasis prod{static_cast<uint8_t>(ba.eta + bb.eta),
                         static_cast<uint8_t>(ba.alpha + bb.alpha), ba.beta + bb.beta};
            KOElement term = KOElement::monomial(prod, ca * cb);
            r = r + term;
        }
    }
    return r;
}

KElement KElement::u_power(int i, Int coeff) {
    KElement e;
    e.add(i, std::move(coeff));
    return e;
}

void KElement::add(int i, Int coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(i, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

KElement operator+(const KElement& a, const KElement& b) {
    KElement r = a;
    for (const auto& [i, c] : b.terms_) r.add(i, c);
    return r;
}

std::string KElement::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [i, c] : terms_) {
        if (!out.empty()) out += c < 0 ? " - " : " + ";
        else if (c < 0) out += "-";
        Int a = c < 0 ? Int(-c) : c;
        std::string mono = i == 0 ? "1" : (i == 1 ? "u" : "u^" + std::to_string(i));
        if (a == 1 && mono != "1") out += mono;
        else if (mono == "1") out += a.str();
        else out += a.str() + "*" + mono;
    }
    return out;
}

GroupDescriptor ko_coefficient_group(int i) {
    // KO^i(pt) = pi_{-i}(KO)
    int j = -i;
    int res = ((j % 8) + 8) % 8;
    GroupDescriptor g;
    auto label = [&](uint8_t eta, uint8_t alpha, int off) {
        int k = (j - off) / 8;
        return KOBasis{eta, alpha, k}.str();
    };
    switch (res) {
        case 0:
            g.free_rank = 1;
            g.generators = {label(0, 0, 0)};
            break;
        case 4:
            g.free_rank = 1;
            g.generators = {label(0, 1, 4)};
            break;
        case 1:
            g.torsion = {2};
            g.generators = {label(1, 0, 1)};
            break;
        case 2:
            g.torsion = {2};
            g.generators = {label(2, 0, 2)};
            break;
        default:
            break;
    }
    return g;
}

GroupDescriptor flat_coefficient_group(int i) {
    int res = ((i % 8) + 8) % 8;
    GroupDescriptor g;
    switch (res) {
        case 7: {  // i = 8k - 1
            int k = (i + 1) / 8;
            g.circles = 1;
            g.generators = {KOBasis{0, 0, k}.str()};
            break;
        }
        case 1: {
            int k = (i - 1) / 8;
            g.torsion = {2};
            g.generators = {KOBasis{1, 0, k}.str()};
            break;
        }
        case 2: {
            int k = (i - 2) / 8;
            g.torsion = {2};
            g.generators = {KOBasis{2, 0, k}.str()};
            break;
        }
        case 3: {
            int k = (i - 3) / 8;
            g.circles = 1;
            g.torsion = {2};
            g.generators = {KOBasis{0, 1, k}.str(), KOBasis{2, 0, 0}.str()};
            break;
        }
        default:
            break;
    }
    return g;
}

KElement complexify(const KOElement& a) {
    KElement r;
    for (const auto& [b, c] : a.terms()) {
        if (b.eta > 0) continue;  // c(eta) = 0
        Int coeff = c;
        if (b.alpha) coeff *= 2;  // c(alpha) = 2u^2
        r = r + KElement::u_power(2 * int(b.alpha) + 4 * b.beta, coeff);
    }
    return r;
}

KOElement realify(const KElement& a) {
    KOElement r;
    for (const auto& [i, c] : a.terms()) {
        int res = ((i % 4) + 4) % 4;
        switch (res) {
            case 0:
                r = r + KOElement::monomial({0, 0, i / 4}, c * 2);
                break;
            case 1:
                r = r + KOElement::monomial({2, 0, (i - 1) / 4}, c);
                break;
            case 2:
                r = r + KOElement::monomial({0, 1, (i - 2) / 4}, c);
                break;
            default:  // r(u^i) = 0 for i = 3 mod 4
                break;
        }
    }
    return r;
}

KElement conjugate(const KElement& a) {
    KElement r;
    for (const auto& [i, c] : a.terms())
        r = r + KElement::u_power(i, (i % 2 == 0) ? c : Int(-c));
    return r;
}

bool check_bott_identities(unsigned range_k) {
    if (range_k < 1) throw std::invalid_argument("check_bott_identities: range_k >= 1");
    // rc = 2 on every KO basis element in range
    for (int k = -int(range_k); k <= int(range_k); ++k) {
        const KOElement basis[4] = {KOElement::monomial({0, 0, k}, 1),
                                    KOElement::monomial({0, 1, k}, 1),
                                    KOElement::monomial({1, 0, k}, 1),
                                    KOElement::monomial({2, 0, k}, 1)};
        for (const auto& x : basis)
            if (!(realify(complexify(x)) == x.scaled(2))) return false;
    }
    // cr = 1 + tau^{-1} on u^i in range
    for (int i = -4 * int(range_k); i <= 4 * int(range_k); ++i) {
        KElement u = KElement::u_power(i);
        KElement lhs = complexify(realify(u));
        KElement rhs = u + conjugate(u);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

bool check_projection_formula(unsigned range_k) {
    for (int i = -2 * int(range_k); i <= 2 * int(range_k); ++i) {
        KElement x = KElement::u_power(i);
        for (int k = -int(range_k); k <= int(range_k); ++k) {
            const KOBasis zs[4] = {{0, 0, k}, {0, 1, k}, {1, 0, k}, {2, 0, k}};
            for (const auto& zb : zs) {
                KOElement z = KOElement::monomial(zb, 1);
                // r(x * c(z)) = r(x) z
                KElement cz = complexify(z);
                KElement xc;
                for (const auto& [ci, cc] : cz.terms())
                    xc = xc + KElement::u_power(ci + i, cc);
                if (!(realify(xc) == ko_mul(realify(x), z))) return false;
            }
        }
    }
    return true;
}

KOElement adams_coefficient(unsigned k, const KOElement& a) {
    if (k < 1) throw std::invalid_argument("adams_coefficient: k >= 1 required");
    KOElement r;
    for (const auto& [b, c] : a.terms()) {
        if (k > 1 && b.beta < 0)
            throw std::domain_error(
                "adams_coefficient: negative beta power needs the localized theory");
        Int factor = int_pow(Int(k), b.eta) * int_pow(Int(k), 2u * b.alpha) *
                     int_pow(Int(k), 4u * unsigned(b.beta >= 0 ? b.beta : 0));
        r = r + KOElement::monomial(b, c * factor);
    }
    return r;
}

bool localized_extension_check(unsigned r, unsigned k) {
    if (r < 1 || k < 1)
        throw std::invalid_argument("localized_extension_check: r, k >= 1 required");
    const KOElement gens[4] = {KOElement::unit(), KOElement::eta(),
                               ko_mul(KOElement::eta(), KOElement::eta()),
                               KOElement::alpha()};
    KOElement beta_k = KOElement::beta(int(k));
    Int scale = int_pow(Int(r), 4 * k);
    for (const auto& x : gens) {
        KOElement lhs = adams_coefficient(r, ko_mul(beta_k, x));
        KOElement rhs = ko_mul(beta_k, adams_coefficient(r, x)).scaled(scale);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

Rational adams_form_scaling(unsigned r, int alpha_power) {
    if (r < 1) throw std::invalid_argument("adams_form_scaling: r >= 1 required");
    unsigned e = 2 * unsigned(alpha_power < 0 ? -alpha_power : alpha_power);
    Int pw = int_pow(Int(r), e);
    return alpha_power >= 0 ? Rational(1, pw) : Rational(pw);
}

const std::array<const char*, 8> spectrum_level_names = {"O",   "BO",   "Sp",   "BSp",
                                                         "O/U", "Sp/U", "U/SO", "U/Sp"};

std::array<std::array<GroupDescriptor, 8>, 8> spectrum_level_table() {
    // spectrum levels: the n-th space of the KO spectrum, so that
    // pi_n(space at level m) = pi_{n-m}(KO) = ko_coefficient_group(m - n).
    constexpr std::array<int, 8> level = {7, 0, 3, 4, 6, 2, 1, 5};
    std::array<std::array<GroupDescriptor, 8>, 8> table;
    for (int n = 0; n < 8; ++n)
        for (int c = 0; c < 8; ++c) {
            table[n][c] = ko_coefficient_group(level[c] - n);
            table[n][c].generators.clear();
        }
    return table;
}

}  // namespace kocalc

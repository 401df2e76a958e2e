#include "kocalc/presentation.hpp"

namespace kocalc::builtin {

namespace {

// C(j,i) mod 2 by Lucas: odd iff the bits of i are contained in j.
uint8_t binom2(unsigned j, unsigned i) { return ((j & i) == i) ? 1 : 0; }

void add_unit_row(CohomologyPresentation& p) {
    IntegralDegree h0;
    h0.group.orders = {0};
    h0.group.labels = {"1"};
    p.integral[0] = h0;
    p.mod2_basis[0] = {"1"};
    F2Mat id(1, 1);
    id.at(0, 0) = 1;
    p.rho2[0] = id;
}

// cup with the unit in both orders
void add_unit_products(CohomologyPresentation& p) {
    for (const auto& [d, basis] : p.mod2_basis)
        for (unsigned i = 0; i < basis.size(); ++i) {
            std::vector<uint8_t> v(p.mod2_dim(d), 0);
            v[i] = 1;
            p.cup2[{0u, 0u, d, i}] = v;
            if (d != 0) p.cup2[{d, i, 0u, 0u}] = v;
        }
}

}  // namespace

CohomologyPresentation point() {
    CohomologyPresentation p;
    p.name = "pt";
    p.dimension = 0;
    add_unit_row(p);
    add_unit_products(p);
    p.fundamental_mod2 = std::vector<uint8_t>{1};
    p.validate();
    return p;
}

CohomologyPresentation sphere(unsigned n) {
    if (n < 1 || n > 32) throw std::invalid_argument("builtin sphere: need 1 <= n <= 32");
    CohomologyPresentation p;
    p.name = "S" + std::to_string(n);
    p.dimension = n;
    add_unit_row(p);

    IntegralDegree topd;
    topd.group.orders = {0};
    topd.group.labels = {"s"};
    p.integral[n] = topd;
    p.mod2_basis[n] = {"s"};
    F2Mat id(1, 1);
    id.at(0, 0) = 1;
    p.rho2[n] = id;

    // all positive squares vanish; the cup square of the top class is zero
    for (unsigned i = 1; i <= n; ++i) p.sq[{i, 0u}] = F2Mat(p.mod2_dim(i), 1);
    p.cup2[{n, 0u, n, 0u}] = {};
    const FgGroup* h1 = p.integral_group(1);
    p.beta2[0] = IntMat(h1 ? h1->orders.size() : 0, 1);
    p.beta2[n] = IntMat(0, 1);

    add_unit_products(p);
    p.fundamental_mod2 = std::vector<uint8_t>{1};
    p.validate();
    return p;
}

CohomologyPresentation real_projective(unsigned n) {
    if (n < 1 || n > 8) throw std::invalid_argument("builtin RP^n: need 1 <= n <= 8");
    CohomologyPresentation p;
    p.name = "RP" + std::to_string(n);
    p.dimension = n;

    // mod 2: F_2[a]/(a^{n+1})
    for (unsigned d = 0; d <= n; ++d)
        p.mod2_basis[d] = {d == 0 ? "1" : "a^" + std::to_string(d)};

    // integral: Z in degree 0, Z/2 in positive even degrees, Z on top if n odd
    IntegralDegree h0;
    h0.group.orders = {0};
    h0.group.labels = {"1"};
    p.integral[0] = h0;
    for (unsigned d = 2; d <= n; d += 2) {
        IntegralDegree hd;
        hd.group.orders = {2};
        hd.group.labels = {"t" + std::to_string(d)};
        p.integral[d] = hd;
    }
    if (n % 2 == 1) {
        IntegralDegree hn;
        hn.group.orders = {0};
        hn.group.labels = {"s"};
        p.integral[n] = hn;
    }

    // cup: a^i * a^j = a^{i+j}
    for (unsigned d1 = 0; d1 <= n; ++d1)
        for (unsigned d2 = d1; d2 + d1 <= 2 * n && d2 <= n; ++d2) {
            std::vector<uint8_t> v(p.mod2_dim(d1 + d2), 0);
            if (d1 + d2 <= n) v[0] = 1;
            p.cup2[{d1, 0u, d2, 0u}] = v;
        }

    // Sq^i(a^j) = C(j,i) a^{i+j}
    for (unsigned d = 0; d <= n; ++d)
        for (unsigned i = 1; i <= d; ++i) {
            F2Mat m(p.mod2_dim(d + i), 1);
            if (d + i <= n) m.at(0, 0) = binom2(d, i);
            p.sq[{i, d}] = m;
        }

    // rho2: iso onto even powers (and the top power when n is odd)
    for (unsigned d = 2; d <= n; d += 2) {
        F2Mat m(1, 1);
        m.at(0, 0) = 1;
        p.rho2[d] = m;
    }
    if (n % 2 == 1) {
        F2Mat m(1, 1);
        m.at(0, 0) = 1;
        p.rho2[n] = m;
    }
    F2Mat id(1, 1);
    id.at(0, 0) = 1;
    p.rho2[0] = id;

    // beta2(a^d) = t_{d+1} for d odd (Sq^1 a^d = d a^{d+1})
    for (unsigned d = 0; d <= n; ++d) {
        const FgGroup* g = p.integral_group(d + 1);
        IntMat m(g ? g->orders.size() : 0, 1);
        if (d % 2 == 1 && d + 1 <= n && g && !g->torsion().empty()) m.at(0, 0) = 1;
        p.beta2[d] = m;
    }

    p.fundamental_mod2 = std::vector<uint8_t>{1};
    p.validate();
    return p;
}

CohomologyPresentation complex_projective(unsigned n) {
    if (n < 1 || n > 4) throw std::invalid_argument("builtin CP^n: need 1 <= n <= 4");
    CohomologyPresentation p;
    p.name = "CP" + std::to_string(n);
    p.dimension = 2 * n;

    for (unsigned k = 0; k <= n; ++k) {
        std::string label = k == 0 ? "1" : (k == 1 ? "x" : "x^" + std::to_string(k));
        p.mod2_basis[2 * k] = {label};
        IntegralDegree h;
        h.group.orders = {0};
        h.group.labels = {label};
        p.integral[2 * k] = h;
        F2Mat id(1, 1);
        id.at(0, 0) = 1;
        p.rho2[2 * k] = id;
    }

    for (unsigned k1 = 0; k1 <= n; ++k1)
        for (unsigned k2 = k1; k2 <= n; ++k2) {
            std::vector<uint8_t> v(p.mod2_dim(2 * (k1 + k2)), 0);
            if (k1 + k2 <= n) v[0] = 1;
            p.cup2[{2 * k1, 0u, 2 * k2, 0u}] = v;
        }

    // Sq^{2i}(x^k) = C(k,i) x^{k+i}; odd squares vanish
    for (unsigned k = 0; k <= n; ++k)
        for (unsigned i = 1; i <= 2 * k; ++i) {
            F2Mat m(p.mod2_dim(2 * k + i), 1);
            if (i % 2 == 0 && 2 * k + i <= 2 * n && p.mod2_dim(2 * k + i) > 0)
                m.at(0, 0) = binom2(k, i / 2);
            p.sq[{i, 2 * k}] = m;
        }

    for (unsigned k = 0; k <= n; ++k) p.beta2[2 * k] = IntMat(0, 1);

    p.fundamental_mod2 = std::vector<uint8_t>{1};
    p.validate();
    return p;
}

CohomologyPresentation by_name(const std::string& name) {
    if (name == "pt" || name == "point") return point();
    if (name.size() >= 2 && name[0] == 'S') {
        bool digits = true;
        for (size_t i = 1; i < name.size(); ++i) digits = digits && isdigit(name[i]);
        if (digits) return sphere(std::stoul(name.substr(1)));
    }
    if (name.rfind("RP", 0) == 0) return real_projective(std::stoul(name.substr(2)));
    if (name.rfind("CP", 0) == 0) return complex_projective(std::stoul(name.substr(2)));
    throw std::invalid_argument("unknown built-in space '" + name + "'");
}

std::vector<std::string> names() {
    std::vector<std::string> out = {"pt"};
    for (unsigned n = 1; n <= 16; ++n) out.push_back("S" + std::to_string(n));
    for (unsigned n = 1; n <= 8; ++n) out.push_back("RP" + std::to_string(n));
    for (unsigned n = 1; n <= 4; ++n) out.push_back("CP" + std::to_string(n));
    return out;
}

}  // namespace kocalc::builtin

#include "kocalc/presentation.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace kocalc {

using nlohmann::json;

unsigned CohomologyPresentation::top_degree() const {
    if (dimension) return *dimension;
    unsigned top = 0;
    if (!integral.empty()) top = std::max(top, integral.rbegin()->first);
    if (!mod2_basis.empty()) top = std::max(top, mod2_basis.rbegin()->first);
    return top;
}

bool CohomologyPresentation::degree_known(unsigned d) const {
    if (dimension) return true;  // degrees above the dimension are zero
    return d <= top_degree();
}

unsigned CohomologyPresentation::mod2_dim(unsigned d) const {
    auto it = mod2_basis.find(d);
    return it == mod2_basis.end() ? 0u : unsigned(it->second.size());
}

const FgGroup* CohomologyPresentation::integral_group(unsigned d) const {
    auto it = integral.find(d);
    return it == integral.end() ? nullptr : &it->second.group;
}

unsigned CohomologyPresentation::betti(unsigned d) const {
    const FgGroup* g = integral_group(d);
    return g ? g->free_rank() : 0u;
}

bool CohomologyPresentation::connected() const {
    const FgGroup* g = integral_group(0);
    return g && g->orders.size() == 1 && g->orders[0] == 0;
}

Mod2Class CohomologyPresentation::cup(const Mod2Class& a, const Mod2Class& b) const {
    unsigned d = a.degree + b.degree;
    Mod2Class out = zero_mod2(d);
    for (unsigned i = 0; i < a.coords.size(); ++i) {
        if (!a.coords[i]) continue;
        for (unsigned j = 0; j < b.coords.size(); ++j) {
            if (!b.coords[j]) continue;
            auto it = cup2.find({a.degree, i, b.degree, j});
            if (it == cup2.end()) it = cup2.find({b.degree, j, a.degree, i});
            if (it == cup2.end())
                throw UnsupportedOperation(name + ": cup product not tabulated in degrees " +
                                           std::to_string(a.degree) + "," +
                                           std::to_string(b.degree));
            for (unsigned k = 0; k < out.coords.size(); ++k)
                out.coords[k] ^= it->second.at(k);
        }
    }
    return out;
}

Mod2Class CohomologyPresentation::reduce_mod2(const IntegralClass& a) const {
    auto it = rho2.find(a.degree);
    if (it == rho2.end()) {
        if (mod2_dim(a.degree) == 0 || integral_group(a.degree) == nullptr)
            return zero_mod2(a.degree);
        throw UnsupportedOperation(name + ": rho2 missing in degree " +
                                   std::to_string(a.degree));
    }
    std::vector<uint8_t> x(a.coords.size());
    for (size_t i = 0; i < a.coords.size(); ++i)
        x[i] = uint8_t(((a.coords[i] % 2) + 2) % 2 != 0);
    return {a.degree, it->second.apply(x)};
}

IntegralClass CohomologyPresentation::bockstein(const Mod2Class& a) const {
    const FgGroup* target = integral_group(a.degree + 1);
    size_t tn = target ? target->orders.size() : 0;
    auto it = beta2.find(a.degree);
    if (it == beta2.end()) {
        if (tn == 0 || mod2_dim(a.degree) == 0) return {a.degree + 1, std::vector<Int>(tn, 0)};
        throw UnsupportedOperation(name + ": beta2 missing in degree " +
                                   std::to_string(a.degree));
    }
    std::vector<Int> x(a.coords.begin(), a.coords.end());
    std::vector<Int> y = it->second.apply(x);
    if (target)
        for (size_t i = 0; i < y.size(); ++i)
            if (target->orders[i] != 0) y[i] = ((y[i] % target->orders[i]) + target->orders[i]) % target->orders[i];
    return {a.degree + 1, y};
}

void CohomologyPresentation::validate() const {
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("presentation '" + name + "': " + what);
    };

    if (dimension) {
        for (const auto& [d, g] : integral)
            if (d > *dimension && !g.group.is_zero()) fail("integral data above dimension");
        for (const auto& [d, b] : mod2_basis)
            if (d > *dimension && !b.empty()) fail("mod-2 data above dimension");
    }

    for (const auto& [d, deg] : integral) {
        for (const auto& o : deg.group.orders)
            if (o < 0 || o == 1) fail("bad torsion order in degree " + std::to_string(d));
        if (!deg.group.labels.empty() && deg.group.labels.size() != deg.group.orders.size())
            fail("label count mismatch in integral degree " + std::to_string(d));
        if (!deg.divisibility.empty() && deg.divisibility.size() != deg.group.orders.size())
            fail("divisibility count mismatch in degree " + std::to_string(d));
    }

    // matrix shapes
    for (const auto& [key, m] : sq) {
        auto [i, d] = key;
        if (m.cols() != mod2_dim(d) || m.rows() != mod2_dim(d + i))
            fail("Sq^" + std::to_string(i) + " shape in degree " + std::to_string(d));
    }
    for (const auto& [d, m] : rho2) {
        const FgGroup* g = integral_group(d);
        if (m.cols() != (g ? g->orders.size() : 0) || m.rows() != mod2_dim(d))
            fail("rho2 shape in degree " + std::to_string(d));
    }
    for (const auto& [d, m] : beta2) {
        const FgGroup* g = integral_group(d + 1);
        if (m.cols() != mod2_dim(d) || m.rows() != (g ? g->orders.size() : 0))
            fail("beta2 shape in degree " + std::to_string(d));
    }
    for (const auto& [key, v] : cup2) {
        auto [d1, i1, d2, i2] = key;
        if (i1 >= mod2_dim(d1) || i2 >= mod2_dim(d2)) fail("cup2 index out of range");
        if (v.size() != mod2_dim(d1 + d2)) fail("cup2 value length");
    }

    // Sq instability: Sq^i = 0 above the degree
    for (const auto& [key, m] : sq) {
        auto [i, d] = key;
        if (i > d)
            for (size_t r = 0; r < m.rows(); ++r)
                for (size_t c = 0; c < m.cols(); ++c)
                    if (m.at(r, c)) fail("Sq^" + std::to_string(i) + " nonzero above degree");
    }

    // Sq^0 = identity when stored
    for (const auto& [key, m] : sq) {
        auto [i, d] = key;
        if (i != 0) continue;
        for (size_t r = 0; r < m.rows(); ++r)
            for (size_t c = 0; c < m.cols(); ++c)
                if (m.at(r, c) != (r == c ? 1 : 0)) fail("Sq^0 is not the identity");
    }

    // Sq^1 Sq^1 = 0 where both stored
    for (const auto& [key, m1] : sq) {
        auto [i, d] = key;
        if (i != 1) continue;
        auto it2 = sq.find({1u, d + 1});
        if (it2 == sq.end()) continue;
        F2Mat comp = it2->second.times(m1);
        for (size_t r = 0; r < comp.rows(); ++r)
            for (size_t c = 0; c < comp.cols(); ++c)
                if (comp.at(r, c)) fail("Sq^1 Sq^1 != 0 from degree " + std::to_string(d));
    }

    // top square is the cup square, when the cup table covers it
    for (const auto& [key, m] : sq) {
        auto [i, d] = key;
        if (i != d || d == 0) continue;
        for (unsigned j = 0; j < mod2_dim(d); ++j) {
            auto it = cup2.find({d, j, d, j});
            if (it == cup2.end()) continue;
            Mod2Class x = zero_mod2(d);
            x.coords[j] = 1;
            std::vector<uint8_t> sq_x = m.apply(x.coords);
            if (sq_x != it->second) fail("Sq^top is not the cup square in degree " + std::to_string(d));
        }
    }

    // beta2 lands in 2-torsion
    for (const auto& [d, m] : beta2) {
        const FgGroup* g = integral_group(d + 1);
        if (!g) continue;
        for (size_t r = 0; r < m.rows(); ++r)
            for (size_t c = 0; c < m.cols(); ++c) {
                if (m.at(r, c) == 0) continue;
                const Int& order = g->orders[r];
                if (order == 0) fail("beta2 hits a free generator in degree " + std::to_string(d + 1));
                if ((2 * m.at(r, c)) % order != 0)
                    fail("beta2 image not 2-torsion in degree " + std::to_string(d + 1));
            }
    }

    // rho2 . beta2 = Sq^1 wherever all three are stored
    for (const auto& [d, b] : beta2) {
        auto itr = rho2.find(d + 1);
        auto its = sq.find({1u, d});
        if (itr == rho2.end() || its == sq.end()) continue;
        F2Mat bmod(b.rows(), b.cols());
        for (size_t r = 0; r < b.rows(); ++r)
            for (size_t c = 0; c < b.cols(); ++c) bmod.at(r, c) = uint8_t(((b.at(r, c) % 2) + 2) % 2 != 0);
        F2Mat comp = itr->second.times(bmod);
        for (size_t r = 0; r < comp.rows(); ++r)
            for (size_t c = 0; c < comp.cols(); ++c)
                if (comp.at(r, c) != its->second.at(r, c))
                    fail("rho2 beta2 != Sq^1 from degree " + std::to_string(d));
    }

    if (fundamental_mod2 && fundamental_mod2->size() != mod2_dim(top_degree()))
        fail("fundamental class functional has wrong length");
}

// ---------------------------------------------------------------------------
// JSON serialization (schema_version 1)

namespace {

Int json_to_int(const json& j) {
    if (j.is_string()) return Int(j.get<std::string>());
    return Int(j.get<long long>());
}

json int_to_json(const Int& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return json(static_cast<long long>(v));
    return json(v.str());
}

IntMat json_to_intmat(const json& j) {
    size_t rows = j.size();
    size_t cols = rows ? j.at(0).size() : 0;
    IntMat m(rows, cols);
    for (size_t r = 0; r < rows; ++r) {
        if (j.at(r).size() != cols) throw std::invalid_argument("ragged matrix");
        for (size_t c = 0; c < cols; ++c) m.at(r, c) = json_to_int(j.at(r).at(c));
    }
    return m;
}

json intmat_to_json(const IntMat& m) {
    json j = json::array();
    for (size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (size_t c = 0; c < m.cols(); ++c) row.push_back(int_to_json(m.at(r, c)));
        j.push_back(row);
    }
    return j;
}

F2Mat json_to_f2mat(const json& j) {
    size_t rows = j.size();
    size_t cols = rows ? j.at(0).size() : 0;
    F2Mat m(rows, cols);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) m.at(r, c) = uint8_t(j.at(r).at(c).get<int>() & 1);
    return m;
}

json f2mat_to_json(const F2Mat& m) {
    json j = json::array();
    for (size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (size_t c = 0; c < m.cols(); ++c) row.push_back(int(m.at(r, c)));
        j.push_back(row);
    }
    return j;
}

}  // namespace

CohomologyPresentation load_presentation(const std::string& json_text) {
    json j = json::parse(json_text);
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != 1)
        throw std::invalid_argument("presentation: missing or unsupported schema_version");

    CohomologyPresentation p;
    p.name = j.value("name", "unnamed");
    if (j.contains("dimension")) p.dimension = j["dimension"].get<unsigned>();

    if (j.contains("integral"))
        for (const auto& [key, val] : j["integral"].items()) {
            unsigned d = std::stoul(key);
            IntegralDegree deg;
            unsigned free = val.value("free", 0u);
            deg.group.orders.assign(free, Int(0));
            if (val.contains("torsion"))
                for (const auto& t : val["torsion"]) deg.group.orders.push_back(json_to_int(t));
            if (val.contains("labels"))
                for (const auto& s : val["labels"]) deg.group.labels.push_back(s.get<std::string>());
            if (val.contains("divisibility"))
                for (const auto& t : val["divisibility"]) deg.divisibility.push_back(json_to_int(t));
            p.integral[d] = std::move(deg);
        }

    if (j.contains("mod2"))
        for (const auto& [key, val] : j["mod2"].items()) {
            unsigned d = std::stoul(key);
            std::vector<std::string> basis;
            for (const auto& s : val) basis.push_back(s.get<std::string>());
            p.mod2_basis[d] = std::move(basis);
        }

    if (j.contains("cup2"))
        for (const auto& e : j["cup2"]) {
            std::vector<uint8_t> v;
            for (const auto& x : e["value"]) v.push_back(uint8_t(x.get<int>() & 1));
            p.cup2[{e["d1"].get<unsigned>(), e["i1"].get<unsigned>(), e["d2"].get<unsigned>(),
                    e["i2"].get<unsigned>()}] = std::move(v);
        }

    if (j.contains("sq"))
        for (const auto& e : j["sq"])
            p.sq[{e["i"].get<unsigned>(), e["d"].get<unsigned>()}] = json_to_f2mat(e["matrix"]);

    if (j.contains("rho2"))
        for (const auto& [key, val] : j["rho2"].items()) p.rho2[std::stoul(key)] = json_to_f2mat(val);

    if (j.contains("beta2"))
        for (const auto& [key, val] : j["beta2"].items()) p.beta2[std::stoul(key)] = json_to_intmat(val);

    if (j.contains("fundamental_mod2")) {
        std::vector<uint8_t> v;
        for (const auto& x : j["fundamental_mod2"]) v.push_back(uint8_t(x.get<int>() & 1));
        p.fundamental_mod2 = std::move(v);
    }

    if (j.contains("odd_primary"))
        for (const auto& e : j["odd_primary"]) {
            OddPrimaryData od;
            od.p = e["p"].get<unsigned>();
            if (e.contains("basis"))
                for (const auto& [key, val] : e["basis"].items()) {
                    std::vector<std::string> names;
                    for (const auto& s : val) names.push_back(s.get<std::string>());
                    od.basis[std::stoul(key)] = std::move(names);
                }
            if (e.contains("rho"))
                for (const auto& [key, val] : e["rho"].items())
                    od.rho[std::stoul(key)] = json_to_intmat(val);
            if (e.contains("P"))
                for (const auto& op : e["P"])
                    od.power_ops[{op["r"].get<unsigned>(), op["d"].get<unsigned>()}] =
                        json_to_intmat(op["matrix"]);
            if (e.contains("beta"))
                for (const auto& [key, val] : e["beta"].items())
                    od.bockstein[std::stoul(key)] = json_to_intmat(val);
            p.odd_primary.push_back(std::move(od));
        }

    // row-list serialization cannot express the column count of an empty
    // matrix; restore the shapes implied by the group data
    for (auto& [key, m] : p.sq) {
        auto [i, d] = key;
        if (m.rows() == 0 && m.cols() == 0) m = F2Mat(p.mod2_dim(d + i), p.mod2_dim(d));
    }
    for (auto& [d, m] : p.rho2) {
        const FgGroup* g = p.integral_group(d);
        if (m.rows() == 0 && m.cols() == 0)
            m = F2Mat(p.mod2_dim(d), g ? g->orders.size() : 0);
    }
    for (auto& [d, m] : p.beta2) {
        const FgGroup* g = p.integral_group(d + 1);
        if (m.rows() == 0 && m.cols() == 0)
            m = IntMat(g ? g->orders.size() : 0, p.mod2_dim(d));
    }

    p.validate();
    return p;
}

std::string presentation_to_json(const CohomologyPresentation& p) {
    json j;
    j["schema_version"] = 1;
    j["name"] = p.name;
    if (p.dimension) j["dimension"] = *p.dimension;

    json integral = json::object();
    for (const auto& [d, deg] : p.integral) {
        json val;
        val["free"] = deg.group.free_rank();
        json torsion = json::array();
        for (const auto& o : deg.group.orders)
            if (o != 0) torsion.push_back(int_to_json(o));
        val["torsion"] = torsion;
        if (!deg.group.labels.empty()) val["labels"] = deg.group.labels;
        if (!deg.divisibility.empty()) {
            json div = json::array();
            for (const auto& x : deg.divisibility) div.push_back(int_to_json(x));
            val["divisibility"] = div;
        }
        integral[std::to_string(d)] = val;
    }
    j["integral"] = integral;

    json mod2 = json::object();
    for (const auto& [d, basis] : p.mod2_basis) mod2[std::to_string(d)] = basis;
    j["mod2"] = mod2;

    json cup = json::array();
    for (const auto& [key, v] : p.cup2) {
        auto [d1, i1, d2, i2] = key;
        json e;
        e["d1"] = d1;
        e["i1"] = i1;
        e["d2"] = d2;
        e["i2"] = i2;
        json vv = json::array();
        for (auto x : v) vv.push_back(int(x));
        e["value"] = vv;
        cup.push_back(e);
    }
    j["cup2"] = cup;

    json sq = json::array();
    for (const auto& [key, m] : p.sq) {
        json e;
        e["i"] = key.first;
        e["d"] = key.second;
        e["matrix"] = f2mat_to_json(m);
        sq.push_back(e);
    }
    j["sq"] = sq;

    json rho2 = json::object();
    for (const auto& [d, m] : p.rho2) rho2[std::to_string(d)] = f2mat_to_json(m);
    j["rho2"] = rho2;

    json beta2 = json::object();
    for (const auto& [d, m] : p.beta2) beta2[std::to_string(d)] = intmat_to_json(m);
    j["beta2"] = beta2;

    if (p.fundamental_mod2) {
        json v = json::array();
        for (auto x : *p.fundamental_mod2) v.push_back(int(x));
        j["fundamental_mod2"] = v;
    }

    if (!p.odd_primary.empty()) {
        json odd = json::array();
        for (const auto& od : p.odd_primary) {
            json e;
            e["p"] = od.p;
            json basis = json::object();
            for (const auto& [d, names] : od.basis) basis[std::to_string(d)] = names;
            e["basis"] = basis;
            json rho = json::object();
            for (const auto& [d, m] : od.rho) rho[std::to_string(d)] = intmat_to_json(m);
            e["rho"] = rho;
            json ops = json::array();
            for (const auto& [key, m] : od.power_ops) {
                json op;
                op["r"] = key.first;
                op["d"] = key.second;
                op["matrix"] = intmat_to_json(m);
                ops.push_back(op);
            }
            e["P"] = ops;
            json beta = json::object();
            for (const auto& [d, m] : od.bockstein) beta[std::to_string(d)] = intmat_to_json(m);
            e["beta"] = beta;
            odd.push_back(e);
        }
        j["odd_primary"] = odd;
    }

    return j.dump(2);
}

GroupDescriptor u1_cohomology(const CohomologyPresentation& p, unsigned k) {
    if (!p.degree_known(k) || !p.degree_known(k + 1))
        throw std::invalid_argument("u1_cohomology: missing degree data at " + std::to_string(k));
    GroupDescriptor g;
    g.circles = p.betti(k);
    if (const FgGroup* next = p.integral_group(k + 1))
        for (const auto& o : next->orders)
            if (o != 0) g.torsion.push_back(o);
    return g;
}

CohomologyPresentation kunneth_product(const CohomologyPresentation& a,
                                       const CohomologyPresentation& b) {
    for (const auto* p : {&a, &b})
        for (const auto& [d, deg] : p->integral)
            if (!deg.group.torsion().empty())
                throw UnsupportedOperation("kunneth_product: torsion factor '" + p->name +
                                           "' (Tor terms out of scope)");

    CohomologyPresentation out;
    out.name = a.name + "x" + b.name;
    if (a.dimension && b.dimension) out.dimension = *a.dimension + *b.dimension;
    unsigned top = (a.dimension ? *a.dimension : a.top_degree()) +
                   (b.dimension ? *b.dimension : b.top_degree());

    // index maps: per total degree, list of (da, ia, db, ib)
    std::map<unsigned, std::vector<std::tuple<unsigned, unsigned, unsigned, unsigned>>> pairs;
    for (const auto& [da, ba] : a.mod2_basis)
        for (const auto& [db, bb] : b.mod2_basis)
            for (unsigned ia = 0; ia < ba.size(); ++ia)
                for (unsigned ib = 0; ib < bb.size(); ++ib)
                    pairs[da + db].push_back({da, ia, db, ib});

    for (const auto& [d, list] : pairs) {
        if (d > top) continue;
        std::vector<std::string> names;
        for (const auto& [da, ia, db, ib] : list)
            names.push_back(a.mod2_basis.at(da)[ia] + "(x)" + b.mod2_basis.at(db)[ib]);
        out.mod2_basis[d] = names;
    }

    // integral: tensor of free parts, labels combined
    for (const auto& [da, ga] : a.integral)
        for (const auto& [db, gb] : b.integral) {
            unsigned d = da + db;
            if (d > top) continue;
            unsigned count = unsigned(ga.group.orders.size() * gb.group.orders.size());
            if (count == 0) continue;
            IntegralDegree& deg = out.integral[d];
            for (unsigned i = 0; i < count; ++i) deg.group.orders.push_back(0);
        }

    auto pair_index = [&](unsigned d, unsigned da, unsigned ia, unsigned db,
                          unsigned ib) -> unsigned {
        const auto& list = pairs.at(d);
        for (unsigned k = 0; k < list.size(); ++k)
            if (list[k] == std::tuple{da, ia, db, ib}) return k;
        throw std::logic_error("kunneth: missing pair index");
    };

    // Cartan-extended Sq: Sq^k(x (x) y) = sum Sq^i x (x) Sq^{k-i} y.
    for (const auto& [d, list] : pairs) {
        if (d > top) continue;
        for (unsigned k = 1; k <= top - d; ++k) {
            if (pairs.find(d + k) == pairs.end()) {
                // zero target: record the zero matrix so the rule is evaluable
                out.sq[{k, d}] = F2Mat(0, unsigned(list.size()));
                continue;
            }
            F2Mat m(unsigned(pairs.at(d + k).size()), unsigned(list.size()));
            bool supported = true;
            for (unsigned col = 0; col < list.size() && supported; ++col) {
                auto [da, ia, db, ib] = list[col];
                for (unsigned i = 0; i <= k && supported; ++i) {
                    unsigned j = k - i;
                    // Sq^i on degree da of a
                    auto sa = [&](unsigned ii, unsigned dd,
                                  const CohomologyPresentation& pp) -> std::optional<F2Mat> {
                        if (ii == 0) {
                            F2Mat id(pp.mod2_dim(dd), pp.mod2_dim(dd));
                            for (size_t t = 0; t < id.rows(); ++t) id.at(t, t) = 1;
                            return id;
                        }
                        if (ii > dd || pp.mod2_dim(dd + ii) == 0)
                            return F2Mat(pp.mod2_dim(dd + ii), pp.mod2_dim(dd));
                        auto it = pp.sq.find({ii, dd});
                        if (it == pp.sq.end()) return std::nullopt;
                        return it->second;
                    };
                    auto ma = sa(i, da, a);
                    auto mb = sa(j, db, b);
                    if (!ma || !mb) {
                        supported = false;
                        break;
                    }
                    for (size_t ra = 0; ra < ma->rows(); ++ra) {
                        if (!ma->at(ra, ia)) continue;
                        for (size_t rb = 0; rb < mb->rows(); ++rb) {
                            if (!mb->at(rb, ib)) continue;
                            unsigned row = pair_index(d + k, da + i, unsigned(ra), db + j,
                                                      unsigned(rb));
                            m.at(row, col) ^= 1;
                        }
                    }
                }
            }
            if (supported) out.sq[{k, d}] = m;
        }
    }

    // cup products where both factor tables cover
    for (const auto& [d1, list1] : pairs)
        for (const auto& [d2, list2] : pairs) {
            if (d1 + d2 > top || pairs.find(d1 + d2) == pairs.end()) continue;
            for (unsigned i1 = 0; i1 < list1.size(); ++i1)
                for (unsigned i2 = 0; i2 < list2.size(); ++i2) {
                    auto [da1, ia1, db1, ib1] = list1[i1];
                    auto [da2, ia2, db2, ib2] = list2[i2];
                    auto ca = a.cup2.find({da1, ia1, da2, ia2});
                    if (ca == a.cup2.end()) ca = a.cup2.find({da2, ia2, da1, ia1});
                    auto cb = b.cup2.find({db1, ib1, db2, ib2});
                    if (cb == b.cup2.end()) cb = b.cup2.find({db2, ib2, db1, ib1});
                    if (ca == a.cup2.end() || cb == b.cup2.end()) continue;
                    std::vector<uint8_t> val(pairs.at(d1 + d2).size(), 0);
                    for (unsigned ra = 0; ra < ca->second.size(); ++ra) {
                        if (!ca->second[ra]) continue;
                        for (unsigned rb = 0; rb < cb->second.size(); ++rb) {
                            if (!cb->second[rb]) continue;
                            val[pair_index(d1 + d2, da1 + da2, ra, db1 + db2, rb)] ^= 1;
                        }
                    }
                    out.cup2[{d1, i1, d2, i2}] = val;
                }
        }

    // rho2: tensor of reductions (free integral classes only)
    std::map<unsigned, std::vector<std::pair<unsigned, unsigned>>> ipairs;
    for (const auto& [da, ga] : a.integral)
        for (const auto& [db, gb] : b.integral)
            for (unsigned ia = 0; ia < ga.group.orders.size(); ++ia)
                for (unsigned ib = 0; ib < gb.group.orders.size(); ++ib)
                    ipairs[da + db].push_back({da * 1000 + ia, db * 1000 + ib});
    for (const auto& [d, list] : ipairs) {
        if (d > top || out.integral.find(d) == out.integral.end()) continue;
        if (out.mod2_basis.find(d) == out.mod2_basis.end()) continue;
        F2Mat m(out.mod2_dim(d), unsigned(list.size()));
        bool ok = true;
        for (unsigned col = 0; col < list.size() && ok; ++col) {
            unsigned da = list[col].first / 1000, ia = list[col].first % 1000;
            unsigned db = list[col].second / 1000, ib = list[col].second % 1000;
            auto ra = a.rho2.find(da);
            auto rb = b.rho2.find(db);
            if (ra == a.rho2.end() || rb == b.rho2.end()) {
                ok = false;
                break;
            }
            for (size_t xa = 0; xa < ra->second.rows(); ++xa) {
                if (!ra->second.at(xa, ia)) continue;
                for (size_t xb = 0; xb < rb->second.rows(); ++xb) {
                    if (!rb->second.at(xb, ib)) continue;
                    m.at(pair_index(d, da, unsigned(xa), db, unsigned(xb)), col) ^= 1;
                }
            }
        }
        if (ok) out.rho2[d] = m;
    }

    // torsion-free factors: beta2 vanishes identically
    for (const auto& [d, basis] : out.mod2_basis) {
        const FgGroup* g = out.integral_group(d + 1);
        out.beta2[d] = IntMat(g ? g->orders.size() : 0, basis.size());
    }

    out.validate();
    return out;
}

}  // namespace kocalc

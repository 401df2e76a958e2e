#include "kocalc/ahss.hpp"

#include <algorithm>
#include <stdexcept>

namespace kocalc {

std::vector<Rational> d4k_on_form_slot(const FormSlot& slot, unsigned k) {
    unsigned degree = 4 * k;
    auto it = slot.periods.find(degree);
    std::vector<Rational> value;
    if (it == slot.periods.end()) return value;
    Rational scale = (degree % 8 == 4) ? Rational(1, 2) : Rational(1);
    for (const auto& p : it->second) {
        Rational v = p * scale;
        v -= Rational(v.floor());  // reduce mod Z
        value.push_back(v);
    }
    return value;
}

GroupDescriptor PageEntry::descriptor() const {
    GroupDescriptor g;
    g.free_rank = fg.free_rank();
    g.torsion = fg.torsion();
    g.circles = circles;
    g.generators = labels;
    return g;
}

const PageEntry* Page::entry(int s, int t) const {
    auto it = entries.find({s, t});
    if (it == entries.end()) return nullptr;
    return it->second.is_zero() ? nullptr : &it->second;
}

namespace {

// layout of a flat-row entry: fg is [torsion of H^{s+1}] ++ [extra Z/2 block]
struct FlatLayout {
    unsigned torsion_count = 0;  // torsion factors of H^{s+1}(M;Z)
    unsigned extra_mod2 = 0;     // H^s(M;Z/2) block for the 8k+3 rows
    unsigned circles = 0;
};

FlatLayout flat_layout(const CohomologyPresentation& space, int s, int t) {
    FlatLayout out;
    GroupDescriptor coeff = flat_coefficient_group(-t);
    if (coeff.is_zero()) return out;
    bool has_circle = coeff.circles > 0;
    bool has_z2 = !coeff.torsion.empty();
    if (has_circle) {
        out.circles = space.betti(unsigned(s));
        if (const FgGroup* g = space.integral_group(unsigned(s) + 1))
            out.torsion_count = unsigned(g->torsion().size());
    }
    if (has_z2) out.extra_mod2 = space.mod2_dim(unsigned(s));
    return out;
}

PageEntry make_mod2_entry(const CohomologyPresentation& space, unsigned s,
                          const std::string& row_label) {
    PageEntry e;
    unsigned dim = space.mod2_dim(s);
    e.fg.orders.assign(dim, Int(2));
    for (unsigned i = 0; i < dim; ++i)
        e.labels.push_back(space.mod2_basis.at(s)[i] +
                           (row_label.empty() ? "" : "." + row_label));
    return e;
}

PageEntry make_integral_entry(const CohomologyPresentation& space, unsigned s,
                              const std::string& row_label) {
    PageEntry e;
    if (const FgGroup* g = space.integral_group(s)) {
        e.fg = *g;
        e.labels.clear();
        for (size_t i = 0; i < g->orders.size(); ++i) {
            std::string base = i < g->labels.size() ? g->labels[i] : "g" + std::to_string(i);
            e.labels.push_back(base + (row_label.empty() ? "" : "." + row_label));
        }
        e.fg.labels = e.labels;
    }
    return e;
}

PageEntry make_flat_entry(const CohomologyPresentation& space, int s, int t) {
    PageEntry e;
    FlatLayout lay = flat_layout(space, s, t);
    e.circles = lay.circles;
    const FgGroup* g1 = space.integral_group(unsigned(s) + 1);
    if (g1)
        for (size_t i = 0; i < g1->orders.size() && e.fg.orders.size() < lay.torsion_count; ++i)
            if (g1->orders[i] != 0) {
                e.fg.orders.push_back(g1->orders[i]);
                e.labels.push_back((i < g1->labels.size() ? g1->labels[i] : "t") + ".u1tor");
            }
    for (unsigned i = 0; i < lay.extra_mod2; ++i) {
        e.fg.orders.push_back(2);
        e.labels.push_back(space.mod2_basis.at(unsigned(s))[i] + ".z2");
    }
    e.fg.labels = e.labels;
    return e;
}

std::vector<Int> entry_orders(const PageEntry& e) { return e.fg.orders; }

// ---- identified differential rules -----------------------------------------

struct RuleEval {
    DiffStatus status = DiffStatus::Unsupported;
    std::string name;
    // kernel data: the induced map whose kernel survives on the source,
    // together with the orders of its value group
    IntMat kernel_matrix;
    std::vector<Int> kernel_orders;
    // image data: vectors in the target entry's fg coordinates
    std::vector<std::vector<Int>> image_vectors;
    std::string note;
};

std::vector<std::vector<Int>> matrix_columns(const IntMat& m) {
    std::vector<std::vector<Int>> cols;
    for (size_t c = 0; c < m.cols(); ++c) {
        std::vector<Int> v(m.rows());
        bool nz = false;
        for (size_t i = 0; i < m.rows(); ++i) {
            v[i] = m.at(i, c);
            nz = nz || v[i] != 0;
        }
        if (nz) cols.push_back(std::move(v));
    }
    return cols;
}

bool matrix_nonzero(const IntMat& m) {
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0) return true;
    return false;
}

int positive_mod(int a, int m) { return ((a % m) + m) % m; }

// Sq^2 as an F2 matrix on mod-2 cohomology, or nullopt when not tabulated.
std::optional<F2Mat> sq_matrix(const CohomologyPresentation& space, unsigned i, unsigned d) {
    unsigned target = d + i;
    if (space.mod2_dim(d) == 0) return F2Mat(space.mod2_dim(target), 0);
    if (i > d || (space.degree_known(target) && space.mod2_dim(target) == 0))
        return F2Mat(space.mod2_dim(target), space.mod2_dim(d));
    auto it = space.sq.find({i, d});
    if (it == space.sq.end()) return std::nullopt;
    return it->second;
}

IntMat from_f2(const F2Mat& m) {
    IntMat out(m.rows(), m.cols());
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c) out.at(r, c) = m.at(r, c);
    return out;
}

// rho2 of integral generators of degree s, as an F2 matrix (rows = mod2 dim)
std::optional<F2Mat> rho2_matrix(const CohomologyPresentation& space, unsigned s) {
    const FgGroup* g = space.integral_group(s);
    size_t gens = g ? g->orders.size() : 0;
    if (gens == 0 || space.mod2_dim(s) == 0) return F2Mat(space.mod2_dim(s), gens);
    auto it = space.rho2.find(s);
    if (it == space.rho2.end()) return std::nullopt;
    return it->second;
}

// beta2 from mod-2 degree d into the integral coordinates of degree d+1
std::optional<IntMat> beta2_matrix(const CohomologyPresentation& space, unsigned d) {
    const FgGroup* g = space.integral_group(d + 1);
    size_t rows = g ? g->orders.size() : 0;
    if (space.mod2_dim(d) == 0 || rows == 0) return IntMat(rows, space.mod2_dim(d));
    auto it = space.beta2.find(d);
    if (it == space.beta2.end()) return std::nullopt;
    return it->second;
}

// beta2 composed into only the torsion coordinates of H^{d+1}
std::optional<IntMat> beta2_torsion_matrix(const CohomologyPresentation& space, unsigned d,
                                           unsigned torsion_count) {
    auto full = beta2_matrix(space, d);
    if (!full) return std::nullopt;
    const FgGroup* g = space.integral_group(d + 1);
    IntMat out(torsion_count, full->cols());
    unsigned row = 0;
    if (g)
        for (size_t i = 0; i < g->orders.size(); ++i) {
            if (g->orders[i] == 0) continue;
            for (size_t c = 0; c < full->cols(); ++c) out.at(row, c) = full->at(i, c);
            ++row;
        }
    return out;
}

// A matrix Q on mod-2 cohomology of the given degree whose kernel is exactly
// rho_2 of the integral torsion classes, the kernel of the inclusion j into
// U(1)-cohomology.
std::optional<F2Mat> mod2_quotient_by_torsion_reductions(const CohomologyPresentation& space,
                                                         unsigned d) {
    unsigned m = space.mod2_dim(d);
    if (m == 0) return F2Mat(0, 0);
    const FgGroup* g = space.integral_group(d);
    std::vector<std::vector<uint8_t>> w_cols;
    if (g && !g->torsion().empty()) {
        auto it = space.rho2.find(d);
        if (it == space.rho2.end()) return std::nullopt;
        for (size_t i = 0; i < g->orders.size(); ++i) {
            if (g->orders[i] == 0) continue;
            std::vector<uint8_t> x(g->orders.size(), 0);
            x[i] = 1;
            w_cols.push_back(it->second.apply(x));
        }
    }
    F2Mat wt(w_cols.size(), m);
    for (size_t i = 0; i < w_cols.size(); ++i)
        for (size_t j = 0; j < m; ++j) wt.at(i, j) = w_cols[i][j];
    auto funcs = wt.kernel_basis();
    F2Mat q(funcs.size(), m);
    for (size_t i = 0; i < funcs.size(); ++i)
        for (size_t j = 0; j < m; ++j) q.at(i, j) = funcs[i][j];
    return q;
}

}  // namespace

Page e2_topological(const CohomologyPresentation& space, int t_min, int t_max, bool reduced) {
    Page page;
    page.r = 2;
    page.differential_variant = false;
    page.reduced = reduced;
    page.space = space;
    page.t_min = t_min;
    page.t_max = t_max;
    unsigned dim = space.top_degree();
    for (int t = t_min; t <= t_max; ++t) {
        GroupDescriptor coeff = ko_coefficient_group(t);
        if (coeff.is_zero()) continue;
        std::string row = coeff.generators.empty() ? "" : coeff.generators[0];
        bool mod2_row = !coeff.torsion.empty();
        for (unsigned s = reduced ? 1 : 0; s <= dim; ++s) {
            PageEntry e = mod2_row ? make_mod2_entry(space, s, row)
                                   : make_integral_entry(space, s, row);
            if (!e.is_zero()) page.entries[{int(s), t}] = std::move(e);
        }
    }
    return page;
}

Page e2_differential(const CohomologyPresentation& space, int t_min, int t_max) {
    Page page;
    page.r = 2;
    page.differential_variant = true;
    page.space = space;
    page.t_min = t_min;
    page.t_max = t_max;
    page.slot.present = true;
    unsigned dim = space.top_degree();
    for (int t = t_min; t <= t_max; ++t) {
        if (t == 0) continue;  // row 0 carries only the form slot at s = 0
        if (t > 0) {
            GroupDescriptor coeff = ko_coefficient_group(t);
            if (coeff.is_zero()) continue;
            std::string row = coeff.generators.empty() ? "" : coeff.generators[0];
            bool mod2_row = !coeff.torsion.empty() && coeff.free_rank == 0;
            for (unsigned s = 0; s <= dim; ++s) {
                PageEntry e = mod2_row ? make_mod2_entry(space, s, row)
                                       : make_integral_entry(space, s, row);
                if (!e.is_zero()) page.entries[{int(s), t}] = std::move(e);
            }
        } else {
            GroupDescriptor coeff = flat_coefficient_group(-t);
            if (coeff.is_zero()) continue;
            for (unsigned s = 0; s <= dim; ++s) {
                PageEntry e;
                if (coeff.circles > 0) {
                    e = make_flat_entry(space, int(s), t);
                } else {
                    std::string row = coeff.generators.empty() ? "" : coeff.generators[0];
                    e = make_mod2_entry(space, s, row);
                }
                if (!e.is_zero()) page.entries[{int(s), t}] = std::move(e);
            }
        }
    }
    return page;
}

namespace {

RuleEval evaluate_rule(const Page& page, int s, int t, const PageEntry& source,
                       const PageEntry* target) {
    const CohomologyPresentation& space = page.space;
    unsigned r = page.r;
    RuleEval ev;

    auto finish_plain = [&](const IntMat& m, const std::string& name) {
        ev.status = DiffStatus::Evaluated;
        ev.name = name;
        ev.kernel_matrix = m;
        ev.kernel_orders = target ? target->fg.orders : std::vector<Int>{};
        ev.image_vectors = matrix_columns(m);
        return ev;
    };
    auto unsupported = [&](const std::string& name) {
        ev.status = DiffStatus::Unsupported;
        ev.name = name;
        return ev;
    };

    // forced zeros first
    if (target == nullptr) {
        ev.status = DiffStatus::ZeroByLacunarity;
        ev.name = "lacunary";
        return ev;
    }
    if (!page.reduced && s == 0 && space.connected()) {
        ev.status = DiffStatus::ZeroByStructure;
        ev.name = "unit column (retract onto the point)";
        return ev;
    }
    if (target->circles == 0 && target->fg.torsion().empty()) {
        ev.status = DiffStatus::ZeroByStructure;
        ev.name = "target torsion-free (differentials are rationally trivial)";
        return ev;
    }

    unsigned su = unsigned(s);
    int row = positive_mod(t, 8);
    bool first_quadrant = t > 0 || !page.differential_variant;
    int target_t = t - int(r) + 1;
    bool target_first_quadrant = target_t > 0 || !page.differential_variant;

    if (first_quadrant && target_first_quadrant) {
        if (r == 2 && row == 0) {  // Sq^2 rho_2 out of integral KO^0-type rows
            auto rho = rho2_matrix(space, su);
            auto sq2 = sq_matrix(space, 2, su);
            if (!rho || !sq2) return unsupported("Sq^2 rho_2 (action data missing)");
            return finish_plain(from_f2(sq2->times(*rho)), "Sq^2 rho_2");
        }
        if (r == 2 && row == 7) {  // Sq^2 on the eta rows
            auto sq2 = sq_matrix(space, 2, su);
            if (!sq2) return unsupported("Sq^2 (action data missing)");
            return finish_plain(from_f2(*sq2), "Sq^2");
        }
        if (r == 3 && row == 6) {  // beta_2 Sq^2 out of the eta^2 rows
            auto sq2 = sq_matrix(space, 2, su);
            auto b = sq2 ? beta2_matrix(space, su + 2) : std::nullopt;
            if (!sq2 || !b) return unsupported("beta_2 Sq^2 (action data missing)");
            return finish_plain(b->times(from_f2(*sq2)), "beta_2 Sq^2");
        }
        if (r == 5 && row == 0) {  // beta_2 Sq^4 rho_2 out of integral rows
            auto rho = rho2_matrix(space, su);
            auto sq4 = rho ? sq_matrix(space, 4, su) : std::nullopt;
            auto b = sq4 ? beta2_matrix(space, su + 4) : std::nullopt;
            if (!rho || !sq4 || !b) return unsupported("beta_2 Sq^4 rho_2 (action data missing)");
            return finish_plain(b->times(from_f2(sq4->times(*rho))), "beta_2 Sq^4 rho_2");
        }
    }

    if (page.differential_variant && t < 0) {
        if (r == 2 && row == 7) {  // eta rows: agrees with the topological case
            auto sq2 = sq_matrix(space, 2, su);
            if (!sq2) return unsupported("Sq^2 (action data missing)");
            return finish_plain(from_f2(*sq2), "Sq^2");
        }
        if (r == 2 && row == 6) {  // eta^2 rows into the U(1) rows: j Sq^2
            auto sq2 = sq_matrix(space, 2, su);
            if (!sq2) return unsupported("j Sq^2 (action data missing)");
            auto q = mod2_quotient_by_torsion_reductions(space, su + 2);
            if (!q) return unsupported("j Sq^2 (rho_2 data missing)");
            FlatLayout tl = flat_layout(space, s + 2, target_t);
            auto bt = beta2_torsion_matrix(space, su + 2, tl.torsion_count);
            if (!bt) return unsupported("j Sq^2 (beta_2 data missing)");

            ev.status = DiffStatus::Evaluated;
            ev.name = "j Sq^2";
            // x survives iff Sq^2 x lies in rho_2 of the integral torsion,
            // the kernel of the inclusion j into U(1)-cohomology
            ev.kernel_matrix = from_f2(q->times(*sq2));
            ev.kernel_orders.assign(ev.kernel_matrix.rows(), Int(2));
            // the image shapes the target through its torsion-summand part;
            // the toric part is absorbed by the torus
            IntMat upper = bt->times(from_f2(*sq2));
            IntMat img(tl.torsion_count + tl.extra_mod2, upper.cols());
            for (size_t i = 0; i < upper.rows(); ++i)
                for (size_t c = 0; c < upper.cols(); ++c) img.at(i, c) = upper.at(i, c);
            ev.image_vectors = matrix_columns(img);
            if (!matrix_nonzero(ev.kernel_matrix) && !ev.image_vectors.empty())
                ev.note = "image absorbed by the torus";
            return ev;
        }
        if (r == 5 && positive_mod(t, 4) == 1) {  // U(1) rows: j_2 Sq^4 rho_2 beta_U(1)
            FlatLayout sl = flat_layout(space, s, t);
            FlatLayout tl = flat_layout(space, s + 5, target_t);
            auto rho = rho2_matrix(space, su + 1);
            auto sq4 = rho ? sq_matrix(space, 4, su + 1) : std::nullopt;
            if (!rho || !sq4)
                return unsupported("j_2 Sq^4 rho_2 beta_U(1) (action data missing)");
            auto q = mod2_quotient_by_torsion_reductions(space, su + 5);
            if (!q) return unsupported("j_2 Sq^4 rho_2 beta_U(1) (rho_2 data missing)");
            auto bt = beta2_torsion_matrix(space, su + 5, tl.torsion_count);
            if (!bt) return unsupported("j_2 Sq^4 rho_2 beta_U(1) (beta_2 data missing)");

            // beta_U(1) projects onto the torsion summand: columns indexed by
            // the torsion generators of H^{s+1}; the extra Z/2 block maps to 0
            const FgGroup* g1 = space.integral_group(su + 1);
            size_t n_src = source.fg.orders.size();
            F2Mat sq_of_beta(sq4->rows(), n_src);
            unsigned col = 0;
            if (g1)
                for (size_t i = 0; i < g1->orders.size() && col < sl.torsion_count; ++i) {
                    if (g1->orders[i] == 0) continue;
                    std::vector<uint8_t> x(g1->orders.size(), 0);
                    x[i] = 1;
                    std::vector<uint8_t> z = sq4->apply(rho->apply(x));
                    for (size_t rr = 0; rr < z.size(); ++rr) sq_of_beta.at(rr, col) = z[rr];
                    ++col;
                }
            ev.status = DiffStatus::Evaluated;
            ev.name = "j_2 Sq^4 rho_2 beta_U(1)";
            ev.kernel_matrix = from_f2(q->times(sq_of_beta));
            ev.kernel_orders.assign(ev.kernel_matrix.rows(), Int(2));
            IntMat upper = bt->times(from_f2(sq_of_beta));
            IntMat img(tl.torsion_count + tl.extra_mod2, upper.cols());
            for (size_t i = 0; i < upper.rows(); ++i)
                for (size_t c = 0; c < upper.cols(); ++c) img.at(i, c) = upper.at(i, c);
            ev.image_vectors = matrix_columns(img);
            return ev;
        }
    }

    // p-primary rules: d_{4r'(p-1)+1}; forced zero when every candidate
    // operation vanishes for degree reasons.
    if (r >= 7 && (r - 1) % 4 == 0) {
        bool source_row_matches = first_quadrant
                                      ? (positive_mod(t, 4) == 0)
                                      : (positive_mod(t, 4) == 1);
        if (source_row_matches) {
            unsigned op_degree_source = first_quadrant ? su : su + 1;
            bool all_zero = true;
            for (unsigned p = 2; 4 * (p - 1) <= r - 1 && all_zero; ++p) {
                bool prime = p >= 2;
                for (unsigned d = 2; d * d <= p && prime; ++d)
                    if (p % d == 0) prime = false;
                if (!prime || (r - 1) % (4 * (p - 1)) != 0) continue;
                unsigned rp = (r - 1) / (4 * (p - 1));
                // Sq^{8r'} for p = 2, P^{2r'} for odd p: both vanish on
                // classes of degree below the operation degree
                unsigned threshold = p == 2 ? (r - 1) : 4 * rp;
                bool excess = op_degree_source < threshold;
                bool target_empty =
                    space.degree_known(su + r) && space.mod2_dim(su + r) == 0 &&
                    space.integral_group(su + r) == nullptr;
                if (!excess && !target_empty) all_zero = false;
            }
            if (all_zero) {
                ev.status = DiffStatus::Evaluated;
                ev.name = "primary operations vanish by degree";
                ev.kernel_matrix = IntMat(0, source.fg.orders.size());
                return ev;
            }
            return unsupported("p-primary rule needs power-operation data (d_" +
                               std::to_string(r) + ")");
        }
    }

    return unsupported("no identified rule for d_" + std::to_string(r));
}

}  // namespace

Page advance_page(const Page& page) {
    Page next = page;
    next.r = page.r + 1;
    next.entries.clear();
    unsigned r = page.r;

    struct Outgoing {
        IntMat kernel_matrix;
        std::vector<Int> kernel_orders;
        bool evaluated = false;
    };
    std::map<std::pair<int, int>, Outgoing> outgoing;
    std::map<std::pair<int, int>, std::vector<std::vector<Int>>> incoming;
    std::map<std::pair<int, int>, bool> blocked_positions;
    std::map<std::pair<int, int>, bool> kill_circles;

    // the form slot differentials (differential variant only)
    if (page.differential_variant && page.slot.present) {
        DifferentialRecord rec;
        rec.page = r;
        rec.s = 0;
        rec.t = 0;
        if (r % 4 == 0) {
            int ts = int(r), tt = 1 - int(r);
            const PageEntry* target = page.entry(ts, tt);
            bool torus = target && target->circles > 0;
            rec.rule = (r % 8 == 4) ? "d_" + std::to_string(r) + ": half periods mod Z"
                                    : "d_" + std::to_string(r) + ": periods mod Z";
            rec.status = DiffStatus::Evaluated;
            rec.nonzero = torus;
            if (torus) {
                next.slot.period_divisor[r] = (r % 8 == 4) ? 2 : 1;
                kill_circles[{ts, tt}] = true;
            }
        } else {
            rec.rule = "only d_{4k} leave the form slot";
            rec.status = DiffStatus::Evaluated;
            rec.nonzero = false;
        }
        next.log.push_back(rec);
    }

    for (const auto& [pos, entry] : page.entries) {
        auto [s, t] = pos;
        if (entry.is_zero()) continue;
        if (entry.blocked) {
            blocked_positions[pos] = true;
            continue;
        }
        const PageEntry* target = page.entry(s + int(r), t - int(r) + 1);
        RuleEval ev = evaluate_rule(page, s, t, entry, target);

        DifferentialRecord rec;
        rec.page = r;
        rec.s = s;
        rec.t = t;
        rec.rule = ev.name;
        rec.status = ev.status;
        rec.note = ev.note;

        switch (ev.status) {
            case DiffStatus::Evaluated: {
                rec.nonzero = matrix_nonzero(ev.kernel_matrix) || !ev.image_vectors.empty();
                outgoing[pos] = {ev.kernel_matrix, ev.kernel_orders, true};
                if (!ev.image_vectors.empty() && target) {
                    std::pair<int, int> tpos{s + int(r), t - int(r) + 1};
                    for (auto& v : ev.image_vectors) incoming[tpos].push_back(std::move(v));
                }
                break;
            }
            case DiffStatus::ZeroByLacunarity:
            case DiffStatus::ZeroByStructure:
                break;
            case DiffStatus::Unsupported:
                blocked_positions[pos] = true;
                if (target) blocked_positions[{s + int(r), t - int(r) + 1}] = true;
                break;
        }
        next.log.push_back(rec);
    }

    // build the next page entry by entry
    for (const auto& [pos, entry] : page.entries) {
        if (entry.is_zero()) continue;
        PageEntry out = entry;

        if (blocked_positions.count(pos)) {
            out.blocked = true;
            next.entries[pos] = std::move(out);
            continue;
        }

        IntMat kernel_matrix(0, entry.fg.orders.size());
        std::vector<Int> kernel_orders;
        auto it_out = outgoing.find(pos);
        if (it_out != outgoing.end() && it_out->second.evaluated) {
            kernel_matrix = it_out->second.kernel_matrix;
            kernel_orders = it_out->second.kernel_orders;
        }

        std::vector<std::vector<Int>> images;
        auto it_in = incoming.find(pos);
        if (it_in != incoming.end()) images = it_in->second;

        FgGroup sub = subquotient(entry.fg, kernel_matrix, kernel_orders, images);
        if (!(sub == entry.fg)) {
            out.fg = sub;
            out.labels.clear();
            for (size_t i = 0; i < sub.orders.size(); ++i)
                out.labels.push_back("page" + std::to_string(r + 1) + ".q" + std::to_string(i));
            out.fg.labels = out.labels;
        }
        if (kill_circles.count(pos)) out.circles = 0;
        if (!out.is_zero()) next.entries[pos] = std::move(out);
    }

    return next;
}

Page run_to(const Page& e2, unsigned max_r) {
    Page page = e2;
    while (page.r < max_r) page = advance_page(page);
    return page;
}

OddPrimaryEvaluation odd_primary_differential(const Page& page, unsigned p, unsigned r,
                                              int s, int t,
                                              const CohomologyPresentation& space) {
    OddPrimaryEvaluation out;
    unsigned page_index = p == 2 ? 8 * r + 1 : 4 * r * (p - 1) + 1;
    out.detail = "d_" + std::to_string(page_index) + " at p = " + std::to_string(p);

    const PageEntry* source = page.entry(s, t);
    if (!source) {
        out.status = DiffStatus::ZeroByLacunarity;
        out.zero = true;
        return out;
    }
    const PageEntry* target = page.entry(s + int(page_index), t - int(page_index) + 1);
    if (!target) {
        out.status = DiffStatus::ZeroByLacunarity;
        out.zero = true;
        return out;
    }

    unsigned op_degree = page.differential_variant && t < 0 ? unsigned(s) + 1 : unsigned(s);
    unsigned threshold = p == 2 ? 8 * r : 4 * r;
    if (op_degree < threshold) {
        out.status = DiffStatus::Evaluated;
        out.zero = true;
        out.detail += ": operation vanishes by degree";
        return out;
    }
    // operation degree shift: 8r for Sq^{8r}, 2*(2r)*(p-1) for P^{2r}
    unsigned target_degree = op_degree + (p == 2 ? 8 * r : 2 * (2 * r) * (p - 1));
    if (space.degree_known(target_degree) && space.mod2_dim(target_degree) == 0 &&
        space.integral_group(target_degree) == nullptr) {
        bool modp_empty = true;
        for (const auto& od : space.odd_primary)
            if (od.p == p && od.basis.count(target_degree) &&
                !od.basis.at(target_degree).empty())
                modp_empty = false;
        if (modp_empty) {
            out.status = DiffStatus::Evaluated;
            out.zero = true;
            out.detail += ": target degree vanishes";
            return out;
        }
    }

    if (p == 2) {
        out.status = DiffStatus::Unsupported;
        out.detail += ": Sq^" + std::to_string(8 * r) + " not tabulated";
        return out;
    }

    // odd prime: need the presentation's P^{2r} data and divisibility
    const OddPrimaryData* data = nullptr;
    for (const auto& od : space.odd_primary)
        if (od.p == p) data = &od;
    if (!data) {
        out.status = DiffStatus::Unsupported;
        out.detail += ": no mod-" + std::to_string(p) + " data";
        return out;
    }

    // source class: a torsion generator of H^{s+1} (via beta_U(1)) divisible
    // by p^{2r-1}: detectable from a cyclic factor of order p^{2r}
    unsigned deg = op_degree;
    const FgGroup* g = space.integral_group(deg);
    Int need = int_pow(Int(p), 2 * r);
    bool has_candidate = false;
    if (g)
        for (const auto& o : g->orders)
            if (o == need) has_candidate = true;
    if (!has_candidate) {
        out.status = DiffStatus::Unsupported;
        out.zero = false;
        out.detail += ": no class divisible by p^{2r-1}, rule inapplicable";
        return out;
    }

    auto itP = data->power_ops.find({2 * r, deg});
    auto itRho = data->rho.find(deg);
    if (itP == data->power_ops.end() || itRho == data->rho.end()) {
        out.status = DiffStatus::Unsupported;
        out.detail += ": P^{2r} not tabulated in degree " + std::to_string(deg);
        return out;
    }

    // evaluate P^{2r}(rho_p(x/p^{2r-1})) on each candidate generator
    bool nonzero = false;
    if (g)
        for (size_t i = 0; i < g->orders.size(); ++i) {
            if (g->orders[i] != need) continue;
            std::vector<Int> x(g->orders.size(), 0);
            x[i] = 1;  // x / p^{2r-1} reduces to the generator itself mod p
            std::vector<Int> xp = itRho->second.apply(x);
            std::vector<Int> y = itP->second.apply(xp);
            for (auto& v : y) v = ((v % int(p)) + int(p)) % int(p);
            for (const auto& v : y) nonzero = nonzero || v != 0;
        }
    out.status = DiffStatus::Evaluated;
    out.zero = !nonzero;
    out.unit_ambiguous = nonzero;
    if (nonzero) out.detail += ": nonzero image (unit-ambiguous, epsilon set to 1)";
    return out;
}

std::map<int, ConvergedDegree> converge(const Page& final_page, int degree_min,
                                        int degree_max) {
    std::map<int, ConvergedDegree> out;
    for (int n = degree_min; n <= degree_max; ++n) {
        ConvergedDegree cd;
        // blockers: unsupported differentials touching this diagonal
        for (const auto& rec : final_page.log) {
            if (rec.status != DiffStatus::Unsupported) continue;
            int source_total = rec.s + rec.t;
            if (source_total == n || source_total == n - 1)
                cd.blockers.push_back("page " + std::to_string(rec.page) + " at (" +
                                      std::to_string(rec.s) + "," + std::to_string(rec.t) +
                                      "): " + rec.rule);
        }
        std::vector<std::pair<int, GroupDescriptor>> pieces;
        for (const auto& [pos, entry] : final_page.entries) {
            if (pos.first + pos.second != n || entry.is_zero()) continue;
            if (entry.blocked)
                cd.blockers.push_back("blocked entry at (" + std::to_string(pos.first) + "," +
                                      std::to_string(pos.second) + ")");
            pieces.push_back({pos.first, entry.descriptor()});
        }
        std::sort(pieces.begin(), pieces.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [s, g] : pieces) cd.pieces.push_back(g);

        if (!cd.blockers.empty()) {
            cd.kind = ConvergedDegree::Kind::Blocked;
        } else if (pieces.empty()) {
            cd.kind = ConvergedDegree::Kind::Assembled;
        } else if (pieces.size() == 1) {
            cd.kind = ConvergedDegree::Kind::Assembled;
            cd.group = pieces[0].second;
        } else {
            // extensions split when every piece above the deepest filtration
            // stage is free
            bool splits = true;
            for (size_t i = 0; i + 1 < pieces.size(); ++i)
                if (!pieces[i].second.torsion.empty() || pieces[i].second.circles > 0)
                    splits = false;
            if (splits) {
                cd.kind = ConvergedDegree::Kind::Assembled;
                for (const auto& [s, g] : pieces) {
                    cd.group.free_rank += g.free_rank;
                    cd.group.circles += g.circles;
                    for (const auto& tt : g.torsion) cd.group.torsion.push_back(tt);
                }
            } else {
                cd.kind = ConvergedDegree::Kind::ExtensionUnresolved;
            }
        }
        out[n] = std::move(cd);
    }
    return out;
}

GroupDescriptor ko_sphere_table(unsigned n) {
    GroupDescriptor g;
    switch (n % 8) {
        case 1:
        case 2:
            g.torsion = {2};
            break;
        case 4:
        case 0:
            g.free_rank = 1;
            break;
        default:
            break;
    }
    return g;
}

GroupDescriptor ko_of_sphere(unsigned n) {
    if (n < 1 || n > 32) throw std::invalid_argument("ko_of_sphere: 1 <= n <= 32");
    CohomologyPresentation sp = builtin::sphere(n);
    Page e2 = e2_topological(sp, -int(n) - 2, 1, /*reduced=*/true);
    Page final_page = run_to(e2, n + 2);
    auto res = converge(final_page, 0, 0);
    const ConvergedDegree& cd = res.at(0);
    if (cd.kind == ConvergedDegree::Kind::Blocked)
        throw std::logic_error("ko_of_sphere: unsupported differential on a sphere");
    GroupDescriptor got =
        cd.kind == ConvergedDegree::Kind::Assembled ? cd.group : GroupDescriptor{};
    GroupDescriptor expect = ko_sphere_table(n);
    if (!(got == expect))
        throw std::logic_error("ko_of_sphere: engine disagrees with the period-8 table at n=" +
                               std::to_string(n) + " (engine " + got.str() + ", table " +
                               expect.str() + ")");
    return got;
}

std::string SphereKOHat::str() const {
    std::string s = "KOhat(S^" + std::to_string(n) + ") [" + metric_tag + "]: ";
    if (lattice_multiplier)
        s += "<" + lattice_multiplier->str() + "*dvol>_Z";
    else
        s += "no volume lattice";
    s += "; exact summands d(Omega^{4k-1}) for degrees {";
    for (size_t i = 0; i < exact_summand_degrees.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(exact_summand_degrees[i]);
    }
    s += "}";
    if (!extra.is_zero()) s += "; torsion/flat part " + extra.str();
    return s;
}

SphereKOHat ko_hat_of_sphere(unsigned n, const std::string& metric_tag) {
    if (n < 1 || n > 32) throw std::invalid_argument("ko_hat_of_sphere: 1 <= n <= 32");
    CohomologyPresentation sp = builtin::sphere(n);
    Page e2 = e2_differential(sp, -int(n) - 2, 2);
    Page final_page = run_to(e2, n + 2);

    SphereKOHat out;
    out.n = n;
    out.metric_tag = metric_tag;
    for (unsigned k = 1; 4 * k <= n; ++k) out.exact_summand_degrees.push_back(4 * k - 1);
    if (n % 4 == 0) {
        auto it = final_page.slot.period_divisor.find(n);
        if (it != final_page.slot.period_divisor.end()) out.lattice_multiplier = it->second;
    }
    if (const PageEntry* e = final_page.entry(int(n), -int(n))) out.extra = e->descriptor();
    return out;
}

}  // namespace kocalc

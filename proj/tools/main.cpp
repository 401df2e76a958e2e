#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kocalc/adams_bundle.hpp"
#include "kocalc/ahss.hpp"
#include "kocalc/genus.hpp"
#include "kocalc/integrality.hpp"
#include "kocalc/ko_ring.hpp"
#include "kocalc/mod2.hpp"
#include "kocalc/presentation.hpp"

namespace {

using namespace kocalc;
using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitUnsupported = 3;

CohomologyPresentation load_space(const std::string& space, const std::string& file) {
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw std::invalid_argument("cannot open presentation file " + file);
        std::stringstream ss;
        ss << in.rdbuf();
        return load_presentation(ss.str());
    }
    return builtin::by_name(space);
}

std::string descriptor_cell(const GroupDescriptor& g) { return g.str(); }

int cmd_coeff(int lo, int hi, bool flat, bool table, const std::string& format) {
    if (table) {
        auto t = spectrum_level_table();
        std::cout << "Dim. mod 8 |";
        for (const char* name : spectrum_level_names) std::cout << " " << name << " |";
        std::cout << "\n";
        for (int n = 0; n < 8; ++n) {
            std::cout << "n = " << n << "      |";
            for (int c = 0; c < 8; ++c) std::cout << " " << descriptor_cell(t[n][c]) << " |";
            std::cout << "\n";
        }
        return 0;
    }
    if (format == "json") {
        json out = json::array();
        for (int i = lo; i <= hi; ++i) {
            GroupDescriptor g = flat ? flat_coefficient_group(i) : ko_coefficient_group(i);
            json row;
            row["i"] = i;
            row["group"] = g.str();
            out.push_back(row);
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    for (int i = lo; i <= hi; ++i) {
        GroupDescriptor g = flat ? flat_coefficient_group(i) : ko_coefficient_group(i);
        std::cout << (flat ? "KOhat_flat^" : "KO^") << i << "(pt) = " << g.str() << "\n";
    }
    return 0;
}

int cmd_ph(unsigned max_degree, const std::string& rank) {
    Rational r(0);
    if (!rank.empty()) {
        size_t slash = rank.find('/');
        if (slash == std::string::npos)
            r = Rational(Int(rank));
        else
            r = Rational(Int(rank.substr(0, slash)), Int(rank.substr(slash + 1)));
    }
    std::cout << pontrjagin_character(max_degree, r).str() << "\n";
    return 0;
}

int cmd_genus(const std::string& which, unsigned max_degree, const std::string& file) {
    if (which == "ahat") {
        std::cout << a_hat(max_degree).str() << "\n";
        return 0;
    }
    if (which == "ahat-inverse") {
        std::cout << invert_unit(a_hat(max_degree), max_degree).str() << "\n";
        return 0;
    }
    if (which == "evaluate") {
        // document: generator degree, total class by generator power,
        // top power and its pairing value
        if (file.empty()) {
            std::cerr << "genus evaluate needs --file\n";
            return kExitValidation;
        }
        std::ifstream in(file);
        if (!in) throw std::invalid_argument("cannot open " + file);
        json doc = json::parse(in);
        unsigned gdeg = doc.at("generator_degree").get<unsigned>();
        GeneratorScheme scheme{{{"x", 0, gdeg}}, CoeffField::Rationals};
        auto parse_rational = [](const std::string& text) {
            size_t slash = text.find('/');
            if (slash == std::string::npos) return Rational(Int(text));
            return Rational(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
        };
        GradedPolynomial total(scheme);
        for (const auto& [key, val] : doc.at("total_class").items()) {
            unsigned power = std::stoul(key);
            Rational c = parse_rational(val.get<std::string>());
            if (power == 0)
                total.add_term(Monomial{}, c);
            else
                total.add_term(Monomial({{0, 1, power}}, scheme), c);
        }
        unsigned top_power = doc.at("top_power").get<unsigned>();
        Rational pairing_value = parse_rational(doc.at("pairing").get<std::string>());
        unsigned top_degree = gdeg * top_power;
        std::map<Monomial, Rational> pairing{
            {Monomial({{0, 1, top_power}}, scheme), pairing_value}};
        GradedPolynomial genus_poly = a_hat(top_degree);
        if (doc.contains("genus") && doc["genus"].get<std::string>() == "ahat-inverse")
            genus_poly = invert_unit(genus_poly, top_degree);
        Rational out = evaluate_genus(genus_poly, total, top_degree, pairing);
        std::cout << out.str() << "\n";
        return 0;
    }
    std::cerr << "unknown genus '" << which << "' (use ahat | ahat-inverse | evaluate)\n";
    return kExitValidation;
}

void print_page(const Page& page, const std::string& format) {
    if (format == "json") {
        json out;
        out["page"] = page.r;
        out["variant"] = page.differential_variant ? "differential" : "topological";
        json entries = json::array();
        for (const auto& [pos, e] : page.entries) {
            if (e.is_zero()) continue;
            json row;
            row["s"] = pos.first;
            row["t"] = pos.second;
            row["group"] = e.descriptor().str();
            row["blocked"] = e.blocked;
            entries.push_back(row);
        }
        out["entries"] = entries;
        if (page.slot.present) {
            json slot;
            for (const auto& [deg, m] : page.slot.period_divisor)
                slot[std::to_string(deg)] = m.str();
            out["form_slot_period_divisors"] = slot;
        }
        json log = json::array();
        for (const auto& rec : page.log) {
            json row;
            row["page"] = rec.page;
            row["s"] = rec.s;
            row["t"] = rec.t;
            row["rule"] = rec.rule;
            row["status"] = rec.status == DiffStatus::Evaluated        ? "evaluated"
                            : rec.status == DiffStatus::ZeroByLacunarity ? "zero-by-lacunarity"
                            : rec.status == DiffStatus::ZeroByStructure  ? "zero-by-structure"
                                                                         : "unsupported";
            row["nonzero"] = rec.nonzero;
            if (!rec.note.empty()) row["note"] = rec.note;
            log.push_back(row);
        }
        out["differentials"] = log;
        std::cout << out.dump(2) << "\n";
        return;
    }
    // aligned text table
    std::cout << "E_" << page.r << " page ("
              << (page.differential_variant ? "differential" : "topological") << ")\n";
    int s_max = 0;
    for (const auto& [pos, e] : page.entries) s_max = std::max(s_max, pos.first);
    for (int t = page.t_max; t >= page.t_min; --t) {
        bool row_nonzero = false;
        for (int s = 0; s <= s_max && !row_nonzero; ++s)
            if (page.entry(s, t)) row_nonzero = true;
        bool slot_row = page.slot.present && t == 0;
        if (!row_nonzero && !slot_row) continue;
        std::cout << (t >= 0 ? " " : "") << t << " |";
        for (int s = 0; s <= s_max; ++s) {
            std::string cell = ".";
            if (slot_row && s == 0) {
                cell = "Omega_cl";
            } else if (const PageEntry* e = page.entry(s, t)) {
                cell = e->descriptor().str();
                if (e->blocked) cell += " (blocked)";
            }
            std::cout << " " << cell << " |";
        }
        std::cout << "\n";
    }
    std::cout << "differential log:\n";
    for (const auto& rec : page.log) {
        const char* status = rec.status == DiffStatus::Evaluated        ? "evaluated"
                             : rec.status == DiffStatus::ZeroByLacunarity ? "zero-by-lacunarity"
                             : rec.status == DiffStatus::ZeroByStructure  ? "zero-by-structure"
                                                                          : "unsupported";
        std::cout << "  d_" << rec.page << " at (" << rec.s << "," << rec.t << "): " << rec.rule
                  << " [" << status << (rec.nonzero ? ", nonzero" : "") << "]";
        if (!rec.note.empty()) std::cout << " " << rec.note;
        std::cout << "\n";
    }
}

int cmd_ahss(const std::string& space, const std::string& file, const std::string& variant,
             unsigned up_to, const std::string& format) {
    CohomologyPresentation pres = load_space(space, file);
    int dim = int(pres.top_degree());
    Page page = variant == "differential"
                    ? e2_differential(pres, -dim - 9, 9)
                    : e2_topological(pres, -dim - 9, 9);
    page = run_to(page, up_to);
    print_page(page, format);
    for (const auto& rec : page.log)
        if (rec.status == DiffStatus::Unsupported) return kExitUnsupported;
    return 0;
}

int cmd_sphere(unsigned n, const std::string& variant, const std::string& format) {
    if (variant == "differential") {
        SphereKOHat result = ko_hat_of_sphere(n);
        if (format == "json") {
            json out;
            out["n"] = n;
            out["lattice_multiplier"] =
                result.lattice_multiplier ? result.lattice_multiplier->str() : "none";
            out["exact_summand_degrees"] = result.exact_summand_degrees;
            out["torsion_part"] = result.extra.str();
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << result.str() << "\n";
        }
        return 0;
    }
    GroupDescriptor g = ko_of_sphere(n);
    if (format == "json") {
        json out;
        out["n"] = n;
        out["reduced_ko"] = g.str();
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "KO~(S^" << n << ") = " << g.str() << "\n";
    }
    return 0;
}

int cmd_denominator(const std::string& range, const std::string& format) {
    unsigned lo = 1, hi = 12;
    size_t dots = range.find("..");
    if (dots != std::string::npos) {
        lo = std::stoul(range.substr(0, dots));
        hi = std::stoul(range.substr(dots + 2));
    } else if (!range.empty()) {
        lo = hi = std::stoul(range);
    }
    if (format == "csv") {
        std::cout << "k,odd_part,odd_part_factored,two_exponent\n";
        for (unsigned k = lo; k <= hi; ++k) {
            DenominatorReport rep = ph_denominator(k);
            std::cout << k << "," << rep.odd_part.str() << "," << rep.odd_part_factored()
                      << "," << rep.two_exponent.str() << "\n";
        }
        return 0;
    }
    if (format == "json") {
        json out = json::array();
        for (unsigned k = lo; k <= hi; ++k) {
            DenominatorReport rep = ph_denominator(k);
            json row;
            row["k"] = k;
            row["odd_part"] = rep.odd_part.str();
            row["odd_part_factored"] = rep.odd_part_factored();
            row["two_exponent"] = rep.two_exponent.str();
            out.push_back(row);
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    for (unsigned k = lo; k <= hi; ++k) {
        DenominatorReport rep = ph_denominator(k);
        std::cout << "k = " << k << ": odd part " << rep.odd_part_factored()
                  << " (2-exponent " << rep.two_exponent.str() << ", absorbed into Z[1/2])\n";
    }
    return 0;
}

int cmd_adams(const std::string& what, unsigned r, unsigned s, const std::string& roots) {
    if (what == "coeff") {
        const KOElement gens[4] = {KOElement::eta(), KOElement::alpha(), KOElement::beta(),
                                   ko_mul(KOElement::alpha(), KOElement::beta())};
        const char* names[4] = {"eta", "alpha", "beta", "alpha*beta"};
        for (int i = 0; i < 4; ++i)
            std::cout << "psi^" << r << "(" << names[i]
                      << ") = " << adams_coefficient(r, gens[i]).str() << "\n";
        return 0;
    }
    if (what == "roots") {
        // roots given as comma-separated multiplicities of distinct lines
        std::vector<std::tuple<unsigned, unsigned, unsigned>> lines;
        unsigned index = 1;
        std::stringstream ss(roots.empty() ? "1" : roots);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            lines.push_back({index, 1, unsigned(std::stoul(tok))});
            ++index;
        }
        FormalBundle b = FormalBundle::from_lines(lines);
        b.populate_lambda(r);
        std::cout << "root model  : " << adams_root_value(r, b).str() << "\n";
        std::cout << "newton      : "
                  << adams_newton_recursion(r, b, AdamsRecursionVariant::Newton).str() << "\n";
        std::cout << "alternate   : "
                  << adams_newton_recursion(r, b, AdamsRecursionVariant::Alternate).str() << "\n";
        return 0;
    }
    if (what == "divergence") {
        auto rows = adams_divergence_table(r, s == 0 ? 4 : s);
        std::cout << "r,rank,newton_matches,alternate_matches\n";
        for (const auto& row : rows)
            std::cout << row.r << "," << row.rank << "," << (row.newton_matches ? 1 : 0) << ","
                      << (row.alternate_matches ? 1 : 0) << "\n";
        return 0;
    }
    if (what == "compat") {
        bool ok = true;
        for (unsigned a = 1; a <= r; ++a)
            for (unsigned bb = 1; bb <= r; ++bb) {
                const KOElement gens[3] = {KOElement::eta(), KOElement::alpha(),
                                           KOElement::beta()};
                for (const auto& g : gens)
                    ok = ok && adams_coefficient(a, adams_coefficient(bb, g)) ==
                                   adams_coefficient(a * bb, g);
            }
        std::cout << "psi^r psi^s = psi^{rs} on coefficients up to r,s <= " << r << ": "
                  << (ok ? "ok" : "FAILED") << "\n";
        return ok ? 0 : 1;
    }
    std::cerr << "unknown adams mode '" << what << "' (coeff | roots | divergence | compat)\n";
    return kExitValidation;
}

int cmd_wu(const std::string& space, const std::string& file) {
    CohomologyPresentation pres = load_space(space, file);
    if (!pres.dimension) {
        std::cerr << "presentation has no dimension; wu needs duality data\n";
        return kExitValidation;
    }
    auto v = wu_classes(pres, *pres.dimension);
    std::cout << "Wu classes of " << pres.name << ":\n";
    std::cout << "  v_0 = 1\n";
    for (const auto& vk : v) {
        std::cout << "  v_" << vk.degree << " =";
        bool any = false;
        for (size_t i = 0; i < vk.coords.size(); ++i)
            if (vk.coords[i]) {
                std::cout << (any ? " + " : " ") << pres.mod2_basis.at(vk.degree)[i];
                any = true;
            }
        if (!any) std::cout << " 0";
        std::cout << "\n";
    }
    auto w = sw_from_wu(v, pres);
    std::cout << "total Stiefel-Whitney class w = Sq(v):\n";
    for (const auto& wd : w) {
        if (wd.is_zero()) continue;
        std::cout << "  w_" << wd.degree << " =";
        bool any = false;
        for (size_t i = 0; i < wd.coords.size(); ++i)
            if (wd.coords[i]) {
                std::cout << (any ? " + " : " ") << pres.mod2_basis.at(wd.degree)[i];
                any = true;
            }
        if (!any) std::cout << " 0";
        std::cout << "\n";
    }
    return 0;
}

int cmd_verify() {
    struct Item {
        std::string name;
        bool ok;
    };
    std::vector<Item> items;
    items.push_back({"thom/genus identity (2 root pairs, degree 8)",
                     verify_thom_genus_identity(2, 8)});
    items.push_back({"thom/genus identity (4 root pairs, degree 16)",
                     verify_thom_genus_identity(4, 16)});
    items.push_back({"bott identities rc = 2, cr = 1 + tau^{-1} (|k| <= 4)",
                     check_bott_identities(4)});
    items.push_back({"projection formula r(x c(z)) = r(x) z (|k| <= 2)",
                     check_projection_formula(2)});
    {
        GeneratorScheme p = GeneratorScheme::pontrjagin();
        auto s = newton_convert(NewtonDirection::PowerSumsFromElementary, 8, p);
        auto e = newton_convert(NewtonDirection::ElementaryFromPowerSums, 8, p);
        bool ok = true;
        for (unsigned k = 1; k <= 8; ++k) {
            std::map<std::pair<uint8_t, unsigned>, GradedPolynomial> images;
            for (unsigned i = 1; i <= 8; ++i) images[{0, i}] = s[i - 1];
            GradedPolynomial roundtrip = substitute(e[k - 1], p, images, 4 * 8);
            ok = ok && roundtrip == GradedPolynomial::generator(p, 0, k);
        }
        items.push_back({"newton round trip e -> s -> e (n = 8)", ok});
    }
    {
        bool ok = true;
        for (unsigned k = 1; k <= 3; ++k) ok = ok && localized_extension_check(2, k);
        items.push_back({"localized Bott compatibility psi^2(beta^k x)", ok});
    }
    bool all = true;
    for (const auto& item : items) {
        std::cout << (item.ok ? "PASS" : "FAIL") << "  " << item.name << "\n";
        all = all && item.ok;
    }
    return all ? 0 : 1;
}

int cmd_spaces(const std::string& dump, const std::string& emit_dir) {
    if (!dump.empty()) {
        std::cout << presentation_to_json(builtin::by_name(dump)) << "\n";
        return 0;
    }
    if (!emit_dir.empty()) {
        for (const auto& name : builtin::names()) {
            std::ofstream out(emit_dir + "/" + name + ".json");
            out << presentation_to_json(builtin::by_name(name)) << "\n";
        }
        std::cout << "wrote " << builtin::names().size() << " presentations to " << emit_dir
                  << "\n";
        return 0;
    }
    for (const auto& name : builtin::names()) std::cout << name << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculator for KO characteristic classes, coefficient rings and the "
                 "Atiyah-Hirzebruch spectral sequence"};
    app.require_subcommand(1);

    // coeff
    auto* coeff = app.add_subcommand("coeff", "coefficient groups of KO / flat KO");
    int lo = -8, hi = 8;
    bool flat = false, table = false;
    std::string coeff_format = "text";
    coeff->add_option("--min", lo, "lowest degree");
    coeff->add_option("--max", hi, "highest degree");
    coeff->add_flag("--flat", flat, "flat (U(1)) coefficients");
    coeff->add_flag("--table", table, "emit the spectrum-level homotopy table");
    coeff->add_option("--format", coeff_format, "text | json");

    // ph
    auto* ph = app.add_subcommand("ph", "Pontrjagin character expansion");
    unsigned ph_degree = 12;
    std::string ph_rank = "0";
    ph->add_option("--max-degree", ph_degree, "truncation degree");
    ph->add_option("--rank", ph_rank, "rank term (integer or a/b)");

    // genus
    auto* genus = app.add_subcommand("genus", "A-hat genus, its inverse, and evaluation");
    std::string genus_which = "ahat", genus_file;
    unsigned genus_degree = 8;
    genus->add_option("which", genus_which, "ahat | ahat-inverse | evaluate");
    genus->add_option("--max-degree", genus_degree, "truncation degree");
    genus->add_option("--file", genus_file, "evaluation document (JSON)");

    // ahss
    auto* ahss = app.add_subcommand("ahss", "page dumps with the differential log");
    std::string ahss_space = "S8", ahss_file, ahss_variant = "topological",
                ahss_format = "text";
    unsigned ahss_page = 6;
    ahss->add_option("--space", ahss_space, "built-in space name");
    ahss->add_option("--file", ahss_file, "presentation JSON file");
    ahss->add_option("--variant", ahss_variant, "topological | differential");
    ahss->add_option("--page", ahss_page, "run to this page index");
    ahss->add_option("--format", ahss_format, "text | json");

    // sphere
    auto* sphere = app.add_subcommand("sphere", "KO and differential KO of spheres");
    unsigned sphere_n = 8;
    std::string sphere_variant = "topological", sphere_format = "text";
    sphere->add_option("--n", sphere_n, "sphere dimension")->required();
    sphere->add_option("--variant", sphere_variant, "topological | differential");
    sphere->add_option("--format", sphere_format, "text | json");

    // denominator
    auto* denom = app.add_subcommand("denominator", "Pontrjagin character denominators");
    std::string denom_range = "1..12", denom_format = "text";
    denom->add_option("--k-range", denom_range, "k range, e.g. 1..12");
    denom->add_option("--format", denom_format, "text | csv | json");

    // adams
    auto* adams = app.add_subcommand("adams", "Adams operations");
    std::string adams_what = "coeff", adams_roots;
    unsigned adams_r = 3, adams_s = 0;
    adams->add_option("what", adams_what, "coeff | roots | divergence | compat");
    adams->add_option("--r", adams_r, "operation index / table bound");
    adams->add_option("--s", adams_s, "second bound (divergence table rank)");
    adams->add_option("--roots", adams_roots, "multiplicities, e.g. 1,1,2");

    // wu
    auto* wu = app.add_subcommand("wu", "Wu classes and Stiefel-Whitney classes");
    std::string wu_space = "RP4", wu_file;
    wu->add_option("--space", wu_space, "built-in space name");
    wu->add_option("--file", wu_file, "presentation JSON file");

    // verify
    app.add_subcommand("verify", "run the identity suites");

    // spaces
    auto* spaces = app.add_subcommand("spaces", "list or emit built-in presentations");
    std::string spaces_dump, spaces_emit;
    spaces->add_option("--dump", spaces_dump, "print one presentation as JSON");
    spaces->add_option("--emit-dir", spaces_emit, "write all presentations to a directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (coeff->parsed()) return cmd_coeff(lo, hi, flat, table, coeff_format);
        if (ph->parsed()) return cmd_ph(ph_degree, ph_rank);
        if (genus->parsed()) return cmd_genus(genus_which, genus_degree, genus_file);
        if (ahss->parsed()) return cmd_ahss(ahss_space, ahss_file, ahss_variant, ahss_page,
                                            ahss_format);
        if (sphere->parsed()) return cmd_sphere(sphere_n, sphere_variant, sphere_format);
        if (denom->parsed()) return cmd_denominator(denom_range, denom_format);
        if (adams->parsed()) return cmd_adams(adams_what, adams_r, adams_s, adams_roots);
        if (wu->parsed()) return cmd_wu(wu_space, wu_file);
        if (app.get_subcommand("verify")->parsed()) return cmd_verify();
        if (spaces->parsed()) return cmd_spaces(spaces_dump, spaces_emit);
    } catch (const UnsupportedOperation& e) {
        std::cerr << "unsupported operation: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid request: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

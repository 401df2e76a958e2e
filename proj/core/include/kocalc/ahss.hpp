#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kocalc/abelian.hpp"
#include "kocalc/ko_ring.hpp"
#include "kocalc/presentation.hpp"
#include "kocalc/rational.hpp"

namespace kocalc {

/// A concrete element of the (0,0) form slot of the differential-variant
/// page: period vectors of the degree-4k components against a basis of
/// integral homology cycles, plus the integer constant-function component.
struct FormSlot {
    Int constant = 0;
    std::map<unsigned, std::vector<Rational>> periods;  // degree 4k -> periods
};

/// d_{4k} on a form slot element: the degree-4k periods mod Z (4k = 0 mod 8)
/// or half the periods mod Z (4k = 4 mod 8), as elements of (Q/Z)^{b_{4k}}.
std::vector<Rational> d4k_on_form_slot(const FormSlot& slot, unsigned k);

enum class DiffStatus {
    Evaluated,         // rule applied, matrix computed (possibly zero)
    ZeroByLacunarity,  // source or target entry vanishes
    ZeroByStructure,   // forced zero: torsion-free target or unit column
    Unsupported,       // no identified rule and not forced; blocks convergence
};

struct DifferentialRecord {
    unsigned page = 0;
    int s = 0, t = 0;  // source position
    std::string rule;
    DiffStatus status = DiffStatus::ZeroByLacunarity;
    bool nonzero = false;  // an evaluated rule with a nonzero matrix
    std::string note;      // e.g. "unit-ambiguous"
};

/// One (s,t) position of a page: a finitely generated part in normal form
/// plus a count of circle (U(1)) summands for the flat rows.
struct PageEntry {
    FgGroup fg;
    unsigned circles = 0;
    std::vector<std::string> labels;
    bool blocked = false;  // an unsupported outgoing rule froze this entry

    bool is_zero() const { return fg.is_zero() && circles == 0; }
    GroupDescriptor descriptor() const;
};

/// Symbolic state of the differential-variant (0,0) slot: for each positive
/// degree 4k the divisor m the period vector must lie in (periods in m*Z),
/// once the d_{4k} page has been crossed. Degrees with zero Betti number
/// never acquire a constraint.
struct SlotState {
    bool present = false;
    std::map<unsigned, Int> period_divisor;  // degree 4k -> m in {1, 2}
};

/// A bigraded page of the spectral sequence, frozen after construction or a
/// page transition. Single-owner mutable only inside advance_page.
struct Page {
    unsigned r = 2;
    bool differential_variant = false;
    bool reduced = false;
    CohomologyPresentation space;
    std::map<std::pair<int, int>, PageEntry> entries;
    SlotState slot;
    std::vector<DifferentialRecord> log;
    int t_min = 0, t_max = 0;

    const PageEntry* entry(int s, int t) const;
};

/// E_2 of the topological KO AHSS: entry (s,t) = H^s(X; KO^t(pt)).
Page e2_topological(const CohomologyPresentation& space, int t_min, int t_max,
                    bool reduced = false);

/// E_2 of the differential variant: form slot at (0,0), H^s(X;KO^t(pt)) for
/// t > 0, flat (U(1)-type) coefficient rows for t < 0.
Page e2_differential(const CohomologyPresentation& space, int t_min, int t_max);

/// Applies the identified differentials of page r and returns page r+1.
/// Unsupported rules are recorded and freeze their source and target entries.
Page advance_page(const Page& page);

/// Runs pages 2..max_r and returns the final page with the cumulative log.
Page run_to(const Page& e2, unsigned max_r);

/// Evaluation outcome of the p-primary rule of an Atiyah-Hirzebruch
/// differential at an entry.
struct OddPrimaryEvaluation {
    DiffStatus status = DiffStatus::Unsupported;
    bool zero = true;              // image is zero (unconditional when true)
    bool unit_ambiguous = false;   // nonzero conclusion modulo the unknown unit
    std::string detail;
};

/// The p-primary differential d_{4r(p-1)+1} (p odd) or d_{8r+1} (p = 2) at
/// the given entry of a differential-variant page, evaluated from the
/// presentation's power-operation data with the unit set to 1.
OddPrimaryEvaluation odd_primary_differential(const Page& page, unsigned p, unsigned r,
                                              int s, int t,
                                              const CohomologyPresentation& space);

/// Result of assembling one total degree at E-infinity.
struct ConvergedDegree {
    enum class Kind { Assembled, ExtensionUnresolved, Blocked } kind = Kind::Assembled;
    GroupDescriptor group;                  // when Assembled
    std::vector<GroupDescriptor> pieces;    // graded pieces, filtration order
    std::vector<std::string> blockers;      // unsupported differentials in range
};

std::map<int, ConvergedDegree> converge(const Page& final_page, int degree_min,
                                        int degree_max);

/// Reduced KO(S^n) through the engine, checked against the period-8 pattern.
/// Throws std::logic_error on a mismatch between the engine and the table.
GroupDescriptor ko_of_sphere(unsigned n);

/// The period-8 table entry for reduced KO(S^n).
GroupDescriptor ko_sphere_table(unsigned n);

/// Structured description of differential KO of a sphere.
struct SphereKOHat {
    unsigned n = 0;
    std::string metric_tag;
    std::optional<Int> lattice_multiplier;  // m on the volume generator
    std::vector<unsigned> exact_summand_degrees;  // degrees 4k-1
    GroupDescriptor extra;                  // torsion / circle part at (n,-n)
    std::string str() const;
};

SphereKOHat ko_hat_of_sphere(unsigned n, const std::string& metric_tag = "round");

}  // namespace kocalc

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kocalc/ahss.hpp"
#include "kocalc/polynomial.hpp"
#include "kocalc/presentation.hpp"

namespace kocalc {

/// phi(x): the greatest integer strictly below x (x - 1 on integers).
Int phi(const Rational& x);

/// Denominator bound for the degree-4k Pontrjagin character component:
/// the product over primes p of p^{phi(k/p)}. Powers of 2 are reported but
/// absorbed into Z[1/2] when results are quoted.
struct DenominatorReport {
    unsigned k = 0;
    std::map<unsigned, Int> prime_exponents;  // p -> phi(k/p), only primes <= k
    Int odd_part = 1;
    Int two_exponent = 0;  // reported; absorbed into Z[1/2]

    std::string odd_part_factored() const;  // "3^2*5*7" style, "1" when trivial
};

DenominatorReport ph_denominator(unsigned k);

/// Survival of the degree-4k component under d_{4k}: true iff the value of
/// d4k_on_form_slot lies in the subgroup generated by the known incoming
/// image (conservative mode: literal zero when no image data is supplied).
struct SurvivalWitness {
    bool survives = false;
    std::vector<Rational> value;  // the d_{4k} value mod Z
    std::string note;
};

SurvivalWitness d4k_survival(const FormSlot& slot, unsigned k,
                             const std::vector<std::vector<Rational>>& incoming_image = {});

/// The degree-8 lifting criterion: applicable when H^1 = H^2 = 0 (mod 2) and
/// every torsion class of H^4(M;Z) is divisible by 2.
struct Degree8Verdict {
    bool applicable = false;
    std::string statement;  // criterion or the failing hypothesis
};

Degree8Verdict degree8_criterion(const CohomologyPresentation& pres);

/// Admissible pairs (r,k) with 4k + 4r(p-1) = ell. The statement's alternate
/// reading 4k + r(p-1) = ell is kept behind a flag.
enum class AdmissibleIndexing { ProofConvention, StatementConvention };

struct AdmissiblePair {
    unsigned r = 0, k = 0;
    enum class Status { Admissible, NotAdmissible, Undetermined } status;
    std::string reason;
};

struct AdmissibleReport {
    std::vector<AdmissiblePair> pairs;
    unsigned admissible_count = 0;
    bool has_undetermined = false;
    Int denominator = 1;  // p^{admissible count}
};

AdmissibleReport admissible_pairs(unsigned ell, unsigned p,
                                  const CohomologyPresentation& pres,
                                  AdmissibleIndexing indexing = AdmissibleIndexing::ProofConvention);

/// The worked obstruction classes: Ph_8 at p_1 = 0, (1/2) Ph_12 at
/// p_1 = p_2 = 0, and the degree-4 component.
struct ObstructionReport {
    GradedPolynomial ph8_p1_zero;      // expected: -(1/6) p_2
    GradedPolynomial half_ph12_p12_zero;  // expected: (1/240) p_3
    GradedPolynomial ph4;              // expected: p_1
    std::string str() const;
};

ObstructionReport obstruction_examples();

}  // namespace kocalc

#pragma once

#include <string>
#include <vector>

#include "lenskt/exactalg.hpp"
#include "lenskt/ktheory.hpp"

namespace lenskt::jcalc {

bool is_odd_prime(unsigned long p);

// Does q generate the unit group (Z/p^r)^* ?
bool is_unit_generator(unsigned long q, unsigned long p, unsigned r);

// Smallest positive generator of (Z/p^r)^*, by exact multiplicative-order
// computation. One always exists for odd prime powers.
unsigned long pick_unit_generator(unsigned long p, unsigned r);

// n belongs to I_s: n = m * p^s (p-1)/2 with gcd(m, p) = 1. The skeleton
// bound n <= floor(k/2) is the caller's.
bool i_s_membership(unsigned long n, unsigned long p, unsigned s);

// floor(k / (p^s (p-1))): the count of n <= floor(k/2) divisible by
// p^s (p-1)/2, i.e. lying in I_t for some t >= s.
unsigned long i_s_size(unsigned long p, unsigned long k, unsigned s);

// KO relation rows plus the additive J-relations psi^q(w^n) - w^n, n = 1..D.
exactalg::Lattice j_relation_lattice(unsigned long p, unsigned r, unsigned long k,
                                     unsigned long q);

unsigned long thm5_valuation(unsigned long p, unsigned r, unsigned long k);
unsigned long thm6_valuation(unsigned long p, unsigned r, unsigned long k);
unsigned long thm8_valuation(unsigned long p, unsigned r, unsigned long k, unsigned t);

// N = min(r-1, floor(log_p(k+1)))
unsigned n_bound(unsigned long p, unsigned r, unsigned long k);

// Closed-form orders a_t = p^{thm8(t)}, t = 0..N.
std::vector<Int> a_list(unsigned long p, unsigned r, unsigned long k);

struct ClosedForms {
    unsigned long thm5 = 0;
    unsigned long thm6 = 0;
    std::vector<unsigned long> thm8; // index t = 0..N
};

enum class CheckKind { hard, report };

struct CheckOutcome {
    std::string name;
    CheckKind kind = CheckKind::hard;
    bool passed = false;
    std::string detail;
};

struct JGroupResult {
    unsigned long p = 3;
    unsigned r = 1;
    unsigned long k = 0;
    unsigned long q = 2;
    exactalg::CyclicDecomposition ko_decomposition;
    exactalg::CyclicDecomposition j_decomposition;
    Int order_of_w;                // J-order of w (1 when there are no generators)
    std::vector<Int> order_of_psi; // actual orders of psi^{p^t}(w), t = 0..N
    unsigned n_levels = 0;         // N
    unsigned long i_order_exponent = 0; // v_p(|I|)
    ClosedForms closed_forms;
    std::vector<CheckOutcome> checks;

    bool all_hard_checks_passed() const;
};

JGroupResult compute_j_group(unsigned long p, unsigned r, unsigned long k);
JGroupResult compute_j_group(unsigned long p, unsigned r, unsigned long k, unsigned long q);

// v_p(|I|) = sum_t v_p(a_t) - v_p(|J~|); negative is an internal
// inconsistency and throws.
unsigned long i_subgroup_order_exponent(const JGroupResult& res);
unsigned long i_subgroup_order_exponent(unsigned long p, unsigned r, unsigned long k);

// r = 1: the J-group is a single cyclic factor of order p^{floor(k/(p-1))}
// generated by w.
bool corollary10_check(unsigned long p, unsigned long k);

// p^{s+1} w^n - p^s w^{n+1} lies in the J relation lattice enlarged by all
// monomials of degree > n+1. Requires n in I_s, s <= r-1, n+1 <= floor(k/2).
bool lemma4_shift_check(unsigned long p, unsigned r, unsigned long k, unsigned long q,
                        unsigned s, unsigned long n);

struct ValuationEntry {
    unsigned long n = 0;
    unsigned long v = 0;               // v_p(q^{2n} - 1), computed exactly
    unsigned long paper_claim = 0;     // s+1 for n in I_s, otherwise 1
    unsigned long corrected = 0;       // same, but 0 when (p-1)/2 does not divide n
    bool matches_paper = false;
    bool matches_corrected = false;
};

// Direct big-integer valuations of q^{2n}-1 for n = 1..n_max, compared
// against the claimed and the corrected profiles.
std::vector<ValuationEntry> valuation_profile(unsigned long p, unsigned r, unsigned long q,
                                              unsigned long n_max);

} // namespace lenskt::jcalc

#pragma once

#include <vector>

#include "lenskt/exactalg.hpp"
#include "lenskt/jcalc.hpp"
#include "lenskt/ktheory.hpp"

namespace lenskt::kqcalc {

// Reduced class built from the sum of eta-powers over units mod p^r; these
// correspond to rational representations of Z_{p^r}.
struct OmegaElement {
    unsigned t = 0;
    ktheory::GroupRingElement as_groupring;
    ktheory::TruncatedIntPoly as_mu; // reduced mu-basis image (constant 0)
};

OmegaElement omega0(unsigned long p, unsigned r, std::size_t cap);

// Omega_t = (1/p) psi^p(Omega_{t-1}); the division is exact because psi^p
// collapses exponents p-to-1, and a failure is an internal error.
OmegaElement omega_next(const OmegaElement& prev, unsigned long p);

// All levels Omega_0..Omega_{r-1}.
std::vector<OmegaElement> omega_tower(unsigned long p, unsigned r, std::size_t cap);

// Matrix of psi^q - 1 on the mu-power basis of the truncated complex ring;
// column n holds the coefficients of ((1+mu)^q - 1)^n - mu^n.
exactalg::IntMatrix adams_minus_one_matrix(unsigned long q, std::size_t cap);

struct QuadraticOutcome {
    unsigned t = 0;
    bool holds = false;
    bool asserted = false; // true only for r = 1, where the paper proves it
};

struct KQResult {
    unsigned long p = 3;
    unsigned r = 1;
    unsigned long k = 0;
    unsigned long q = 2;
    exactalg::CyclicDecomposition kq_decomposition;
    std::vector<Int> omega_orders; // order of Omega_t in KQ~, t = 0..N
    bool bridge_check = false;     // invariant factors match the J side
    std::vector<QuadraticOutcome> quadratic_checks; // t = 0..r-1
    std::vector<jcalc::CheckOutcome> checks;

    bool all_hard_checks_passed() const;
};

// Kernel of psi^q - 1 on the reduced complex K-group, decomposed, with
// Omega orders and cross-checks. The overload taking a JGroupResult reuses
// an already computed real side for the bridge comparison.
KQResult compute_kq_group(const jcalc::JGroupResult& j);
KQResult compute_kq_group(unsigned long p, unsigned r, unsigned long k);

// Omega_t^2 + p Omega_t == 0 in K(L). Proven for r = 1 (a failure there
// throws); conjectural for r > 1, where the outcome is only reported.
bool quadratic_relation_check(unsigned long p, unsigned r, unsigned long k, unsigned t);

// r = 1 structure: KQ~ cyclic of order p^{floor(k/(p-1))} generated by
// Omega_0, the terminating power vanishes, and class filtrations of the
// powers match mu^{s(p-1)}.
bool thm13_check(unsigned long p, unsigned long k);

// Orders of Omega_t in KQ~ equal a_t = p^{thm8(t)} for all t = 0..N.
bool thm12_order_check(unsigned long p, unsigned r, unsigned long k);

} // namespace lenskt::kqcalc

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "lenskt/exactalg.hpp"

namespace lenskt::ktheory {

enum class Var { w, mu };

// Element of Z[x]/(x^{cap+1}) with x = w or mu. Reduced classes carry no
// constant term; the constant field exists for unreduced intermediates
// (group-ring images, products before reduction).
struct TruncatedIntPoly {
    Var var = Var::w;
    std::size_t cap = 0;
    Int constant;
    Vec coeffs; // coeffs[j-1] = coefficient of x^j, j = 1..cap

    TruncatedIntPoly() = default;
    TruncatedIntPoly(Var v, std::size_t cap_);

    static TruncatedIntPoly monomial(Var v, std::size_t cap, std::size_t degree,
                                     Int scale = Int(1));

    bool is_zero() const;
    // Smallest degree (0 = constant) with a nonzero coefficient; nullopt for 0.
    std::optional<std::size_t> filtration() const;
    // Degree 1..cap coefficients as an ambient lattice vector.
    Vec coefficient_vector() const { return coeffs; }
};

TruncatedIntPoly operator+(const TruncatedIntPoly& a, const TruncatedIntPoly& b);
TruncatedIntPoly operator-(const TruncatedIntPoly& a, const TruncatedIntPoly& b);
TruncatedIntPoly operator*(const TruncatedIntPoly& a, const TruncatedIntPoly& b);
TruncatedIntPoly operator*(const Int& s, const TruncatedIntPoly& a);
TruncatedIntPoly pow(const TruncatedIntPoly& a, unsigned long n);

// Exact binomial coefficient by the multiplicative recurrence.
Int binomial(unsigned long n, unsigned long k);

// psi^i(w) = sum_j [C(i,j) C(i+j-1,j) / C(2j-1,j)] w^j, truncated. The ratio
// always divides exactly; a failed division is an internal error.
TruncatedIntPoly real_adams_w(unsigned long i, std::size_t cap);

// f_n = psi^{(n+1)/2}(w) - psi^{(n-1)/2}(w) for odd n >= 3.
TruncatedIntPoly f_poly(unsigned long n, std::size_t cap);

// Substitutes psi^i(w) for w in e and expands under truncation.
TruncatedIntPoly apply_real_adams(unsigned long i, const TruncatedIntPoly& e);

enum class Flavor { KO, K };

struct RingPresentation {
    unsigned long p = 3;
    unsigned r = 1;
    unsigned long k = 0;
    Flavor flavor = Flavor::KO;
    std::size_t cap = 0; // floor(k/2) for KO, k for K
    TruncatedIntPoly main_relation;
    exactalg::Lattice relation_lattice; // additive span of the ideal, ambient Z^cap
};

// KO(L) = Z[w] / (f_{p^r}(w), w^{floor(k/2)+1}), as a relation lattice over
// the truncated monomial basis.
RingPresentation build_ko_presentation(unsigned long p, unsigned r, unsigned long k);

// Complex analogue: Z[mu] / ((1+mu)^{p^r} - 1, mu^{k+1}).
RingPresentation build_k_presentation(unsigned long p, unsigned r, unsigned long k);

// Element sum a_s eta^s of the integral group ring of Z_{p^r}, eta^{p^r} = 1.
struct GroupRingElement {
    unsigned long p = 3;
    unsigned r = 1;
    Vec coeffs; // a_0..a_{p^r - 1}

    std::size_t modulus() const { return coeffs.size(); }
    Int augmentation() const;
};

GroupRingElement groupring_from_eta_powers(const std::vector<std::pair<long, Int>>& terms,
                                           unsigned long p, unsigned r);
GroupRingElement groupring_multiply(const GroupRingElement& a, const GroupRingElement& b);
// eta^s -> eta^{is mod p^r}
GroupRingElement groupring_adams(const GroupRingElement& a, unsigned long i);
// Expands each eta^s = (1+mu)^s; the degree-0 part lands in the constant field.
TruncatedIntPoly groupring_to_mu(const GroupRingElement& a, std::size_t cap);

// Equality in the quotient ring: constants agree and the difference of the
// positive-degree parts lies in the relation lattice.
bool equal_in_presentation(const TruncatedIntPoly& a, const TruncatedIntPoly& b,
                           const RingPresentation& pres);

// Filtration of the class of e modulo the presentation: the largest f such
// that e is congruent to an element supported in degrees >= f. nullopt when
// e is zero in the quotient. Requires a reduced e (constant 0).
std::optional<std::size_t> class_filtration(const TruncatedIntPoly& e,
                                            const RingPresentation& pres);

// Lemma-2-style shift membership in the KO presentation:
// p^r w^n + p^{r-1} w^{n + (p-1)/2} lies in the relation lattice enlarged by
// all monomials of degree > n + (p-1)/2.
bool lemma2_shift_check(const RingPresentation& ko, unsigned long n);

} // namespace lenskt::ktheory

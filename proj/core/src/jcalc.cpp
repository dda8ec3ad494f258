#include "lenskt/jcalc.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lenskt::jcalc {

namespace {

using exactalg::Lattice;
using ktheory::TruncatedIntPoly;
using ktheory::Var;

Int pow_p(unsigned long p, unsigned long e) {
    return int_pow(Int(p), e);
}

std::string int_str(const Int& v) {
    return v.get_str();
}

} // namespace

bool is_odd_prime(unsigned long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (unsigned long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

bool is_unit_generator(unsigned long q, unsigned long p, unsigned r) {
    if (!is_odd_prime(p))
        throw std::invalid_argument("p must be an odd prime");
    if (r < 1)
        throw std::invalid_argument("r must be >= 1");
    Int modulus = pow_p(p, r);
    Int phi = pow_p(p, r - 1) * Int(p - 1);
    Int qz(q);
    if (q == 0 || gcd(qz, modulus) != 1)
        return false;
    // q generates iff q^{phi/ell} != 1 for every prime ell | phi
    std::vector<unsigned long> primes;
    if (r > 1) primes.push_back(p);
    unsigned long rest = p - 1;
    for (unsigned long d = 2; d * d <= rest; ++d)
        while (rest % d == 0) {
            if (primes.empty() || primes.back() != d) primes.push_back(d);
            rest /= d;
        }
    if (rest > 1) primes.push_back(rest);
    for (unsigned long ell : primes) {
        Int e = phi / Int(ell);
        Int t;
        mpz_powm(t.get_mpz_t(), qz.get_mpz_t(), e.get_mpz_t(), modulus.get_mpz_t());
        if (t == 1) return false;
    }
    return true;
}

unsigned long pick_unit_generator(unsigned long p, unsigned r) {
    for (unsigned long q = 2;; ++q)
        if (q % p != 0 && is_unit_generator(q, p, r))
            return q;
}

bool i_s_membership(unsigned long n, unsigned long p, unsigned s) {
    if (!is_odd_prime(p))
        throw std::invalid_argument("p must be an odd prime");
    Int h = pow_p(p, s) * Int((p - 1) / 2);
    Int nz(n);
    if (n == 0 || nz % h != 0) return false;
    Int m = nz / h;
    return m % Int(p) != 0;
}

unsigned long i_s_size(unsigned long p, unsigned long k, unsigned s) {
    Int denom = pow_p(p, s) * Int(p - 1);
    Int v = Int(k) / denom;
    return v.get_ui();
}

exactalg::Lattice j_relation_lattice(unsigned long p, unsigned r, unsigned long k,
                                     unsigned long q) {
    ktheory::RingPresentation ko = ktheory::build_ko_presentation(p, r, k);
    const std::size_t d = ko.cap;
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < ko.relation_lattice.basis.rows(); ++i)
        rows.push_back(ko.relation_lattice.basis.row(i));

    TruncatedIntPoly psi_q = ktheory::real_adams_w(q, d);
    TruncatedIntPoly image = TruncatedIntPoly::monomial(Var::w, d, 0); // psi^q(w^0)
    for (std::size_t n = 1; n <= d; ++n) {
        image = image * psi_q; // psi^q(w^n) = [psi^q(w)]^n
        Vec row = image.coefficient_vector();
        row[n - 1] -= 1;
        rows.push_back(std::move(row));
    }
    return Lattice::spanning(d, rows);
}

unsigned long thm5_valuation(unsigned long p, unsigned r, unsigned long k) {
    Int total = 0;
    for (unsigned s = 0; s < r; ++s)
        total += Int(k) / (pow_p(p, s) * Int(p - 1));
    return total.get_ui();
}

unsigned long thm6_valuation(unsigned long p, unsigned r, unsigned long k) {
    return thm8_valuation(p, r, k, 0);
}

unsigned long thm8_valuation(unsigned long p, unsigned r, unsigned long k, unsigned t) {
    if (t >= r)
        throw std::invalid_argument("thm8_valuation: t must satisfy 0 <= t <= r-1");
    Int best = 0;
    for (unsigned s = t; s < r; ++s) {
        Int window = pow_p(p, s) * Int(p - 1);
        if (window > Int(k)) continue;
        Int term = Int(s - t) + (Int(k) / window) * pow_p(p, s - t);
        if (term > best) best = term;
    }
    return best.get_ui();
}

unsigned n_bound(unsigned long p, unsigned r, unsigned long k) {
    unsigned e = 0;
    Int bound(k + 1);
    Int power(p);
    while (power <= bound) {
        ++e;
        power *= Int(p);
    }
    return std::min<unsigned>(r - 1, e);
}

std::vector<Int> a_list(unsigned long p, unsigned r, unsigned long k) {
    std::vector<Int> out;
    const unsigned n = n_bound(p, r, k);
    for (unsigned t = 0; t <= n; ++t)
        out.push_back(pow_p(p, thm8_valuation(p, r, k, t)));
    return out;
}

bool JGroupResult::all_hard_checks_passed() const {
    for (const CheckOutcome& c : checks)
        if (c.kind == CheckKind::hard && !c.passed)
            return false;
    return true;
}

JGroupResult compute_j_group(unsigned long p, unsigned r, unsigned long k) {
    return compute_j_group(p, r, k, pick_unit_generator(p, r));
}

JGroupResult compute_j_group(unsigned long p, unsigned r, unsigned long k, unsigned long q) {
    if (!is_unit_generator(q, p, r))
        throw std::invalid_argument("compute_j_group: q does not generate (Z/p^r)^*");
    JGroupResult res;
    res.p = p;
    res.r = r;
    res.k = k;
    res.q = q;

    ktheory::RingPresentation ko = ktheory::build_ko_presentation(p, r, k);
    const std::size_t d = ko.cap;
    res.ko_decomposition = exactalg::quotient_decomposition(ko.relation_lattice);

    Lattice jlat = j_relation_lattice(p, r, k, q);
    res.j_decomposition = exactalg::quotient_decomposition(jlat);

    res.n_levels = n_bound(p, r, k);
    if (d == 0) {
        res.order_of_w = 1;
        res.order_of_psi.assign(res.n_levels + 1, Int(1));
    } else {
        Vec e1(d, Int(0));
        e1[0] = 1;
        res.order_of_w = element_order(e1, jlat).value();
        for (unsigned t = 0; t <= res.n_levels; ++t) {
            Int pt = pow_p(p, t);
            if (!pt.fits_ulong_p())
                throw std::invalid_argument("compute_j_group: p^t too large");
            Vec vec = ktheory::real_adams_w(pt.get_ui(), d).coefficient_vector();
            res.order_of_psi.push_back(element_order(vec, jlat).value());
        }
    }

    res.closed_forms.thm5 = thm5_valuation(p, r, k);
    res.closed_forms.thm6 = thm6_valuation(p, r, k);
    for (unsigned t = 0; t <= res.n_levels; ++t)
        res.closed_forms.thm8.push_back(thm8_valuation(p, r, k, t));

    // bookkeeping of |I| = prod a_t / |J~|
    Int j_order = res.j_decomposition.order();
    unsigned long vj = j_order == 1 ? 0 : exactalg::p_valuation(j_order, p);
    unsigned long va = 0;
    bool p_powers = j_order == 1 || int_pow(Int(p), vj) == j_order;
    for (const Int& a : res.order_of_psi) {
        if (a != 1) {
            unsigned long e = exactalg::p_valuation(a, p);
            va += e;
            if (int_pow(Int(p), e) != a) p_powers = false;
        }
    }
    if (res.order_of_w != 1 &&
        int_pow(Int(p), exactalg::p_valuation(res.order_of_w, p)) != res.order_of_w)
        p_powers = false;
    if (va < vj)
        throw std::logic_error("compute_j_group: |I| exponent negative (internal inconsistency)");
    res.i_order_exponent = va - vj;

    auto add = [&](std::string name, bool ok, std::string detail) {
        res.checks.push_back({std::move(name), CheckKind::hard, ok, std::move(detail)});
    };

    {
        bool ok = vj == res.closed_forms.thm5 && p_powers;
        std::ostringstream os;
        os << "v_p(|J~|) = " << vj << ", closed form " << res.closed_forms.thm5;
        add("thm5_group_order", ok, os.str());
    }
    {
        bool ok = res.order_of_w == pow_p(p, res.closed_forms.thm6);
        std::ostringstream os;
        os << "|w| = " << int_str(res.order_of_w) << ", closed form p^" << res.closed_forms.thm6;
        add("thm6_order_of_w", ok, os.str());
    }
    for (unsigned t = 0; t <= res.n_levels; ++t) {
        bool ok = res.order_of_psi[t] == pow_p(p, res.closed_forms.thm8[t]);
        std::ostringstream os;
        os << "a_" << t << " = " << int_str(res.order_of_psi[t]) << ", closed form p^"
           << res.closed_forms.thm8[t];
        add("thm8_order_t" + std::to_string(t), ok, os.str());
    }
    add("orders_are_p_powers", p_powers, "every computed order is a power of p");
    if (r == 1) {
        add("i_exponent_zero_at_r1", res.i_order_exponent == 0,
            "v_p(|I|) = " + std::to_string(res.i_order_exponent));
        bool cyclic = res.j_decomposition.torsion.size() <= 1;
        bool order_ok = j_order == pow_p(p, k / (p - 1));
        bool gen_ok = res.order_of_w == j_order;
        add("corollary10", cyclic && order_ok && gen_ok,
            "single cyclic factor p^[k/(p-1)] generated by w");
    }
    return res;
}

unsigned long i_subgroup_order_exponent(const JGroupResult& res) {
    return res.i_order_exponent;
}

unsigned long i_subgroup_order_exponent(unsigned long p, unsigned r, unsigned long k) {
    return compute_j_group(p, r, k).i_order_exponent;
}

bool corollary10_check(unsigned long p, unsigned long k) {
    JGroupResult res = compute_j_group(p, 1, k);
    const unsigned long e = k / (p - 1);
    if (e == 0)
        return res.j_decomposition.trivial();
    return res.j_decomposition.torsion.size() == 1 &&
           res.j_decomposition.torsion[0] == pow_p(p, e) && res.order_of_w == pow_p(p, e);
}

// Lemma 4(i) reads p^{s+1} w^n = p^s w^{n+1} + h.o.t., but its proof derives
// the relation with the coefficient -q^{2n}(q^2-1)n/12 on w^{n+1}, a p-adic
// unit times p^s. The literal +/-1 normalizations are both false on real
// grids (p = 3, s = 0 already fails them), so the check asks the faithful
// question: is p^{s+1} w^n a unit multiple of p^s w^{n+1} modulo the
// J-relations and everything of degree > n+1.
bool lemma4_shift_check(unsigned long p, unsigned r, unsigned long k, unsigned long q,
                        unsigned s, unsigned long n) {
    if (s >= r)
        throw std::invalid_argument("lemma4_shift_check: s must satisfy 0 <= s <= r-1");
    if (!i_s_membership(n, p, s))
        throw std::invalid_argument("lemma4_shift_check: n is not in I_s");
    const std::size_t d = k / 2;
    if (n + 1 > d)
        throw std::invalid_argument("lemma4_shift_check: n+1 exceeds floor(k/2)");

    Vec x(d, Int(0)), z(d, Int(0));
    x[n - 1] = pow_p(p, s + 1);
    z[n] = pow_p(p, s);

    Lattice jlat = j_relation_lattice(p, r, k, q);
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < jlat.basis.rows(); ++i)
        rows.push_back(jlat.basis.row(i));
    for (std::size_t m = n + 2; m <= d; ++m) {
        Vec unit(d, Int(0));
        unit[m - 1] = 1;
        rows.push_back(std::move(unit));
    }
    return exactalg::is_unit_multiple(x, z, Lattice::spanning(d, rows), p);
}

std::vector<ValuationEntry> valuation_profile(unsigned long p, unsigned r, unsigned long q,
                                              unsigned long n_max) {
    if (!is_unit_generator(q, p, r))
        throw std::invalid_argument("valuation_profile: q does not generate (Z/p^r)^*");
    std::vector<ValuationEntry> out;
    const unsigned long half = (p - 1) / 2;
    for (unsigned long n = 1; n <= n_max; ++n) {
        ValuationEntry e;
        e.n = n;
        Int value = int_pow(Int(q), 2 * n) - 1;
        e.v = exactalg::p_valuation(value, p);
        if (n % half == 0) {
            // n lies in exactly one I_s; s is the p-valuation of n / ((p-1)/2)
            unsigned long s = exactalg::p_valuation(Int(n / half), p);
            e.paper_claim = s + 1;
            e.corrected = s + 1;
        } else {
            e.paper_claim = 1; // the proof's "otherwise" clause
            e.corrected = 0;   // direct computation: no p divides q^{2n}-1
        }
        e.matches_paper = e.v == e.paper_claim;
        e.matches_corrected = e.v == e.corrected;
        out.push_back(e);
    }
    return out;
}

} // namespace lenskt::jcalc

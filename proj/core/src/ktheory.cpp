#include "lenskt/ktheory.hpp"

#include <algorithm>
#include <stdexcept>

namespace lenskt::ktheory {

namespace {

void require_compatible(const TruncatedIntPoly& a, const TruncatedIntPoly& b) {
    if (a.var != b.var || a.cap != b.cap)
        throw std::invalid_argument("truncated polynomials have mismatched variable or cap");
}

bool is_odd_prime_ul(unsigned long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (unsigned long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

void require_odd_prime(unsigned long p) {
    if (!is_odd_prime_ul(p))
        throw std::invalid_argument("p must be an odd prime");
}

} // namespace

TruncatedIntPoly::TruncatedIntPoly(Var v, std::size_t cap_)
    : var(v), cap(cap_), constant(0), coeffs(cap_) {}

TruncatedIntPoly TruncatedIntPoly::monomial(Var v, std::size_t cap, std::size_t degree,
                                            Int scale) {
    TruncatedIntPoly e(v, cap);
    if (degree == 0)
        e.constant = std::move(scale);
    else if (degree <= cap)
        e.coeffs[degree - 1] = std::move(scale);
    return e;
}

bool TruncatedIntPoly::is_zero() const {
    if (constant != 0) return false;
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Int& c) { return c == 0; });
}

std::optional<std::size_t> TruncatedIntPoly::filtration() const {
    if (constant != 0) return 0;
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        if (coeffs[j] != 0) return j + 1;
    return std::nullopt;
}

TruncatedIntPoly operator+(const TruncatedIntPoly& a, const TruncatedIntPoly& b) {
    require_compatible(a, b);
    TruncatedIntPoly out = a;
    out.constant += b.constant;
    for (std::size_t j = 0; j < out.cap; ++j)
        out.coeffs[j] += b.coeffs[j];
    return out;
}

TruncatedIntPoly operator-(const TruncatedIntPoly& a, const TruncatedIntPoly& b) {
    require_compatible(a, b);
    TruncatedIntPoly out = a;
    out.constant -= b.constant;
    for (std::size_t j = 0; j < out.cap; ++j)
        out.coeffs[j] -= b.coeffs[j];
    return out;
}

TruncatedIntPoly operator*(const TruncatedIntPoly& a, const TruncatedIntPoly& b) {
    require_compatible(a, b);
    TruncatedIntPoly out(a.var, a.cap);
    for (std::size_t i = 0; i <= a.cap; ++i) {
        const Int& ai = i == 0 ? a.constant : a.coeffs[i - 1];
        if (ai == 0) continue;
        for (std::size_t j = 0; i + j <= a.cap; ++j) {
            const Int& bj = j == 0 ? b.constant : b.coeffs[j - 1];
            if (bj == 0) continue;
            if (i + j == 0)
                out.constant += ai * bj;
            else
                out.coeffs[i + j - 1] += ai * bj;
        }
    }
    return out;
}

TruncatedIntPoly operator*(const Int& s, const TruncatedIntPoly& a) {
    TruncatedIntPoly out = a;
    out.constant *= s;
    for (Int& c : out.coeffs)
        c *= s;
    return out;
}

TruncatedIntPoly pow(const TruncatedIntPoly& a, unsigned long n) {
    TruncatedIntPoly out = TruncatedIntPoly::monomial(a.var, a.cap, 0);
    for (unsigned long i = 0; i < n; ++i)
        out = out * a;
    return out;
}

Int binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int out = 1;
    for (unsigned long j = 1; j <= k; ++j) {
        out *= Int(n - j + 1);
        Int q, rem;
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), out.get_mpz_t(), Int(j).get_mpz_t());
        if (rem != 0)
            throw std::logic_error("binomial recurrence: inexact step");
        out = q;
    }
    return out;
}

TruncatedIntPoly real_adams_w(unsigned long i, std::size_t cap) {
    if (i < 1)
        throw std::invalid_argument("real_adams_w: degree must be >= 1");
    TruncatedIntPoly out(Var::w, cap);
    const std::size_t top = std::min<std::size_t>(i, cap);
    for (std::size_t j = 1; j <= top; ++j) {
        Int num = binomial(i, j) * binomial(i + j - 1, j);
        Int den = binomial(2 * j - 1, j);
        Int q, rem;
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (rem != 0)
            throw std::logic_error("real_adams_w: Adams ratio not integral");
        out.coeffs[j - 1] = q;
    }
    return out;
}

TruncatedIntPoly f_poly(unsigned long n, std::size_t cap) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("f_poly: n must be odd and >= 3");
    return real_adams_w((n + 1) / 2, cap) - real_adams_w((n - 1) / 2, cap);
}

TruncatedIntPoly apply_real_adams(unsigned long i, const TruncatedIntPoly& e) {
    if (e.var != Var::w)
        throw std::invalid_argument("apply_real_adams: expected a w-polynomial");
    TruncatedIntPoly psi = real_adams_w(i, e.cap);
    TruncatedIntPoly out(Var::w, e.cap);
    out.constant = e.constant;
    TruncatedIntPoly power = TruncatedIntPoly::monomial(Var::w, e.cap, 0); // psi^0
    for (std::size_t n = 1; n <= e.cap; ++n) {
        power = power * psi;
        if (e.coeffs[n - 1] == 0) continue;
        TruncatedIntPoly scaled = e.coeffs[n - 1] * power;
        out = out + scaled;
    }
    return out;
}

namespace {

// Rows w^j * main for j = 0..cap-1 span the additive group of the ideal in
// the truncated basis: main has lowest degree 1, so the shift at j = cap
// already truncates to zero. Asserted below.
exactalg::Lattice ideal_lattice(const TruncatedIntPoly& main, std::size_t cap) {
    std::vector<Vec> rows;
    TruncatedIntPoly shift = main;
    if (main.constant != 0)
        throw std::logic_error("ideal_lattice: main relation has a constant term");
    TruncatedIntPoly x = TruncatedIntPoly::monomial(main.var, cap, 1);
    for (std::size_t j = 0; j < cap; ++j) {
        rows.push_back(shift.coefficient_vector());
        shift = shift * x;
    }
    if (!shift.is_zero())
        throw std::logic_error("ideal_lattice: spanning family did not terminate");
    return exactalg::Lattice::spanning(cap, rows);
}

} // namespace

RingPresentation build_ko_presentation(unsigned long p, unsigned r, unsigned long k) {
    require_odd_prime(p);
    if (r < 1)
        throw std::invalid_argument("build_ko_presentation: r must be >= 1");
    RingPresentation pres;
    pres.p = p;
    pres.r = r;
    pres.k = k;
    pres.flavor = Flavor::KO;
    pres.cap = k / 2;
    Int pr = int_pow(Int(p), r);
    if (!pr.fits_ulong_p())
        throw std::invalid_argument("build_ko_presentation: p^r too large");
    pres.main_relation = f_poly(pr.get_ui(), pres.cap);
    if (pres.cap >= 1 && pres.main_relation.coeffs[0] != pr)
        throw std::logic_error("build_ko_presentation: linear coefficient of f differs from p^r");
    pres.relation_lattice = ideal_lattice(pres.main_relation, pres.cap);
    return pres;
}

RingPresentation build_k_presentation(unsigned long p, unsigned r, unsigned long k) {
    require_odd_prime(p);
    if (r < 1)
        throw std::invalid_argument("build_k_presentation: r must be >= 1");
    RingPresentation pres;
    pres.p = p;
    pres.r = r;
    pres.k = k;
    pres.flavor = Flavor::K;
    pres.cap = k;
    Int pr = int_pow(Int(p), r);
    // (1+mu)^{p^r} - 1
    TruncatedIntPoly main(Var::mu, pres.cap);
    if (!pr.fits_ulong_p())
        throw std::invalid_argument("build_k_presentation: p^r too large");
    unsigned long prl = pr.get_ui();
    for (std::size_t j = 1; j <= pres.cap && j <= prl; ++j)
        main.coeffs[j - 1] = binomial(prl, j);
    pres.main_relation = main;
    pres.relation_lattice = ideal_lattice(main, pres.cap);
    return pres;
}

Int GroupRingElement::augmentation() const {
    Int out = 0;
    for (const Int& c : coeffs)
        out += c;
    return out;
}

GroupRingElement groupring_from_eta_powers(const std::vector<std::pair<long, Int>>& terms,
                                           unsigned long p, unsigned r) {
    require_odd_prime(p);
    Int prz = int_pow(Int(p), r);
    if (!prz.fits_ulong_p() || prz.get_ui() > (1ul << 22))
        throw std::invalid_argument("group ring dimension p^r too large");
    const long m = static_cast<long>(prz.get_ui());
    GroupRingElement out{p, r, Vec(static_cast<std::size_t>(m))};
    for (const auto& [e, c] : terms) {
        long s = e % m;
        if (s < 0) s += m;
        out.coeffs[static_cast<std::size_t>(s)] += c;
    }
    return out;
}

GroupRingElement groupring_multiply(const GroupRingElement& a, const GroupRingElement& b) {
    if (a.p != b.p || a.r != b.r)
        throw std::invalid_argument("groupring_multiply: mismatched group rings");
    const std::size_t m = a.modulus();
    GroupRingElement out{a.p, a.r, Vec(m)};
    for (std::size_t s = 0; s < m; ++s) {
        if (a.coeffs[s] == 0) continue;
        for (std::size_t t = 0; t < m; ++t) {
            if (b.coeffs[t] == 0) continue;
            out.coeffs[(s + t) % m] += a.coeffs[s] * b.coeffs[t];
        }
    }
    return out;
}

GroupRingElement groupring_adams(const GroupRingElement& a, unsigned long i) {
    const std::size_t m = a.modulus();
    GroupRingElement out{a.p, a.r, Vec(m)};
    for (std::size_t s = 0; s < m; ++s) {
        if (a.coeffs[s] == 0) continue;
        out.coeffs[(s * (i % m)) % m] += a.coeffs[s];
    }
    return out;
}

TruncatedIntPoly groupring_to_mu(const GroupRingElement& a, std::size_t cap) {
    TruncatedIntPoly out(Var::mu, cap);
    for (std::size_t s = 0; s < a.modulus(); ++s) {
        const Int& c = a.coeffs[s];
        if (c == 0) continue;
        out.constant += c; // C(s,0)
        Int b = 1;
        for (std::size_t j = 1; j <= cap && j <= s; ++j) {
            b = b * Int(s - j + 1) / Int(j); // exact along rows of Pascal's triangle
            out.coeffs[j - 1] += c * b;
        }
    }
    return out;
}

bool equal_in_presentation(const TruncatedIntPoly& a, const TruncatedIntPoly& b,
                           const RingPresentation& pres) {
    require_compatible(a, b);
    if ((pres.flavor == Flavor::KO) != (a.var == Var::w) || a.cap != pres.cap)
        throw std::invalid_argument("equal_in_presentation: element does not match presentation");
    if (a.constant != b.constant) return false;
    TruncatedIntPoly diff = a - b;
    return exactalg::lattice_contains(pres.relation_lattice, diff.coefficient_vector()).member;
}

std::optional<std::size_t> class_filtration(const TruncatedIntPoly& e,
                                            const RingPresentation& pres) {
    if (e.cap != pres.cap)
        throw std::invalid_argument("class_filtration: cap mismatch");
    if (e.constant != 0)
        throw std::invalid_argument("class_filtration: element not reduced");
    const std::size_t cap = pres.cap;
    const Vec v = e.coefficient_vector();

    // e lies in L + span{x^m : m >= f} iff the first f-1 coordinates of v lie
    // in the projection of L, i.e. in the row span of the truncated rows.
    std::size_t best = 0; // f = 1 always holds (empty prefix)
    const auto& rows = pres.relation_lattice.basis;
    for (std::size_t c = 1; c <= cap; ++c) { // candidate f = c + 1
        std::vector<Vec> trunc;
        for (std::size_t i = 0; i < rows.rows(); ++i) {
            Vec t(c);
            for (std::size_t j = 0; j < c; ++j)
                t[j] = rows(i, j);
            trunc.push_back(std::move(t));
        }
        Vec prefix(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(c));
        if (exactalg::lattice_contains(exactalg::Lattice::spanning(c, trunc), prefix).member)
            best = c;
        else
            break;
    }
    if (best == cap)
        return std::nullopt; // zero class
    return best + 1;
}

bool lemma2_shift_check(const RingPresentation& ko, unsigned long n) {
    if (ko.flavor != Flavor::KO)
        throw std::invalid_argument("lemma2_shift_check: KO presentation required");
    const unsigned long step = (ko.p - 1) / 2;
    const unsigned long target = n + step;
    if (n < 1 || target > ko.cap)
        throw std::invalid_argument("lemma2_shift_check: n + (p-1)/2 must be within the cap");
    Vec v(ko.cap, Int(0));
    v[n - 1] = int_pow(Int(ko.p), ko.r);
    v[target - 1] += int_pow(Int(ko.p), ko.r - 1);

    std::vector<Vec> rows;
    for (std::size_t i = 0; i < ko.relation_lattice.basis.rows(); ++i)
        rows.push_back(ko.relation_lattice.basis.row(i));
    for (std::size_t m = target + 1; m <= ko.cap; ++m) {
        Vec unit(ko.cap, Int(0));
        unit[m - 1] = 1;
        rows.push_back(std::move(unit));
    }
    return exactalg::lattice_contains(exactalg::Lattice::spanning(ko.cap, rows), v).member;
}

} // namespace lenskt::ktheory

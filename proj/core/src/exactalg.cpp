#include "lenskt/exactalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace lenskt {

Int int_pow(const Int& base, unsigned long exp) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

} // namespace lenskt

namespace lenskt::exactalg {

namespace {

// Floor quotient; GMP's operator/ truncates toward zero.
Int fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int lcm_int(const Int& a, const Int& b) {
    Int out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

int cmp_abs(const Int& a, const Int& b) {
    return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

} // namespace

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw std::invalid_argument("from_rows: row length mismatch");
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

Vec IntMatrix::row(std::size_t i) const {
    Vec out(cols_);
    for (std::size_t j = 0; j < cols_; ++j)
        out[j] = (*this)(i, j);
    return out;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j)
        std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i)
        std::swap((*this)(i, a), (*this)(i, b));
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product: dimension mismatch");
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t t = 0; t < a.cols(); ++t) {
            const Int& ait = a(i, t);
            if (ait == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) += ait * b(t, j);
        }
    return out;
}

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t c = 0; c < n - 1; ++c) {
        if (a(c, c) == 0) {
            std::size_t piv = c + 1;
            while (piv < n && a(piv, c) == 0) ++piv;
            if (piv == n) return 0;
            a.swap_rows(c, piv);
            sign = -sign;
        }
        for (std::size_t i = c + 1; i < n; ++i)
            for (std::size_t j = c + 1; j < n; ++j) {
                Int num = a(i, j) * a(c, c) - a(i, c) * a(c, j);
                // Bareiss: exact division by the previous pivot
                a(i, j) = num / prev;
            }
        prev = a(c, c);
    }
    return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

Lattice::Lattice(std::size_t dim, IntMatrix rows) : ambient_dim(dim), basis(std::move(rows)) {
    if (basis.rows() > 0 && basis.cols() != ambient_dim)
        throw std::invalid_argument("lattice: basis width != ambient dim");
    if (basis.rows() == 0)
        basis = IntMatrix(0, dim);
}

Lattice Lattice::spanning(std::size_t dim, const std::vector<Vec>& rows) {
    return Lattice(dim, IntMatrix::from_rows(rows, dim));
}

Int CyclicDecomposition::order() const {
    if (free_rank != 0)
        throw std::logic_error("order(): group is infinite");
    Int out = 1;
    for (const Int& d : torsion)
        out *= d;
    return out;
}

namespace {

struct SnfWork {
    IntMatrix U, D, V, Vinv; // U*A*V = D, Vinv = V^{-1}
    std::vector<Int> invariants;
};

// Transform-tracked Smith reduction. Pivot choice: minimal nonzero absolute
// value in the trailing submatrix, first occurrence in row-major order, so
// the output is deterministic.
SnfWork snf_work(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SnfWork w{IntMatrix::identity(m), a, IntMatrix::identity(n), IntMatrix::identity(n), {}};
    IntMatrix& D = w.D;
    IntMatrix& U = w.U;
    IntMatrix& V = w.V;
    IntMatrix& Vinv = w.Vinv;

    auto row_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < n; ++j) D(dst, j) -= q * D(src, j);
        for (std::size_t j = 0; j < m; ++j) U(dst, j) -= q * U(src, j);
    };
    auto col_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
        if (q == 0) return;
        for (std::size_t i = 0; i < n; ++i) {
            V(i, dst) -= q * V(i, src);
            Vinv(src, i) += q * Vinv(dst, i);
        }
        for (std::size_t i = 0; i < m; ++i) D(i, dst) -= q * D(i, src);
    };
    auto swap_rows = [&](std::size_t x, std::size_t y) {
        D.swap_rows(x, y);
        U.swap_rows(x, y);
    };
    auto swap_cols = [&](std::size_t x, std::size_t y) {
        D.swap_cols(x, y);
        V.swap_cols(x, y);
        Vinv.swap_rows(x, y);
    };

    const std::size_t steps = std::min(m, n);
    std::size_t t = 0;
    for (; t < steps; ++t) {
        bool empty = false;
        for (;;) {
            // re-select the minimal-absolute-value pivot every sweep; a
            // fixed pivot lets the trailing entries swell doubly
            // exponentially under alternating row/column reduction
            std::size_t pi = 0, pj = 0;
            bool found = false;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (D(i, j) == 0) continue;
                    if (!found || cmp_abs(D(i, j), D(pi, pj)) < 0) {
                        pi = i;
                        pj = j;
                        found = true;
                    }
                }
            if (!found) {
                empty = true;
                break;
            }
            swap_rows(t, pi);
            swap_cols(t, pj);

            bool clear = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                row_sub(i, t, fdiv(D(i, t), D(t, t)));
                if (D(i, t) != 0) clear = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                col_sub(j, t, fdiv(D(t, j), D(t, t)));
                if (D(t, j) != 0) clear = false;
            }
            if (!clear) continue; // a remainder became the new minimum

            // pivot must divide the whole trailing submatrix for the
            // divisibility chain; fold an offending row in and resweep
            bool fixed = true;
            for (std::size_t i = t + 1; i < m && fixed; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        row_sub(t, i, Int(-1));
                        fixed = false;
                        break;
                    }
            if (fixed) break;
        }
        if (empty) break;

        if (D(t, t) < 0) {
            for (std::size_t j = 0; j < n; ++j) D(t, j) = -D(t, j);
            for (std::size_t j = 0; j < m; ++j) U(t, j) = -U(t, j);
        }
    }

    w.invariants.resize(steps);
    for (std::size_t i = 0; i < steps; ++i)
        w.invariants[i] = D(i, i);

    // cheap self-check at desk scale; skipped above 64 where the exact
    // transform determinants get expensive
    if (m <= 64 && n <= 64) {
        if (abs(determinant(U)) != 1 || abs(determinant(V)) != 1)
            throw std::logic_error("smith_normal_form: transform not unimodular");
    }
    return w;
}

IntMatrix lattice_matrix(const Lattice& l) {
    return l.basis;
}

} // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
    SnfWork w = snf_work(a);
    return SmithDecomposition{std::move(w.U), std::move(w.D), std::move(w.V),
                              std::move(w.invariants)};
}

IntMatrix hermite_normal_form(const IntMatrix& a) {
    const std::size_t n = a.cols();
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Vec r = a.row(i);
        bool nz = std::any_of(r.begin(), r.end(), [](const Int& x) { return x != 0; });
        if (nz) rows.push_back(std::move(r));
    }
    std::size_t pr = 0;
    for (std::size_t col = 0; col < n && pr < rows.size(); ++col) {
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = pr; i < rows.size(); ++i)
                if (rows[i][col] != 0 &&
                    (best == rows.size() || cmp_abs(rows[i][col], rows[best][col]) < 0))
                    best = i;
            if (best == rows.size()) break; // column clear below pr
            bool lone = true;
            for (std::size_t i = pr; i < rows.size(); ++i) {
                if (i == best || rows[i][col] == 0) continue;
                Int q = fdiv(rows[i][col], rows[best][col]);
                for (std::size_t j = 0; j < n; ++j)
                    rows[i][j] -= q * rows[best][j];
                if (rows[i][col] != 0) lone = false;
            }
            if (lone) {
                std::swap(rows[pr], rows[best]);
                break;
            }
        }
        if (rows[pr][col] == 0) continue;
        if (rows[pr][col] < 0)
            for (std::size_t j = 0; j < n; ++j) rows[pr][j] = -rows[pr][j];
        for (std::size_t i = 0; i < pr; ++i) {
            Int q = fdiv(rows[i][col], rows[pr][col]);
            for (std::size_t j = 0; j < n; ++j)
                rows[i][j] -= q * rows[pr][j];
        }
        ++pr;
    }
    // drop rows reduced to zero
    std::vector<Vec> keep;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        bool nz = std::any_of(rows[i].begin(), rows[i].end(), [](const Int& x) { return x != 0; });
        if (nz) keep.push_back(std::move(rows[i]));
    }
    return IntMatrix::from_rows(keep, n);
}

Membership lattice_contains(const Lattice& l, const Vec& v) {
    if (v.size() != l.ambient_dim)
        throw std::invalid_argument("lattice_contains: dimension mismatch");
    const std::size_t m = l.basis.rows();
    const std::size_t n = l.ambient_dim;
    if (n == 0)
        return Membership{true, Vec(m, Int(0))};

    // Solve x * B = v through B = U^{-1} D V^{-1}: with w = v V the system
    // becomes y D = w, y = x U^{-1}.
    SnfWork s = snf_work(lattice_matrix(l));
    Vec w(n, Int(0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (v[i] != 0) w[j] += v[i] * s.V(i, j);

    Vec y(m, Int(0));
    const std::size_t steps = std::min(m, n);
    for (std::size_t i = 0; i < n; ++i) {
        const Int d = i < steps ? s.invariants[i] : Int(0);
        if (d == 0) {
            if (w[i] != 0) return Membership{false, {}};
        } else {
            if (w[i] % d != 0) return Membership{false, {}};
            y[i] = w[i] / d;
        }
    }
    Vec x(m, Int(0));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i)
            if (y[i] != 0) x[j] += y[i] * s.U(i, j);
    return Membership{true, std::move(x)};
}

CyclicDecomposition quotient_decomposition(const Lattice& relations) {
    const std::size_t n = relations.ambient_dim;
    CyclicDecomposition out;
    if (n == 0) return out;
    if (relations.basis.rows() == 0) {
        out.free_rank = n;
        return out;
    }
    SnfWork s = snf_work(lattice_matrix(relations));
    std::size_t rank = 0;
    for (const Int& d : s.invariants)
        if (d != 0) ++rank;
    out.free_rank = n - rank;
    for (std::size_t i = 0; i < s.invariants.size(); ++i)
        if (s.invariants[i] > 1) {
            out.torsion.push_back(s.invariants[i]);
            out.generators.push_back(s.Vinv.row(i)); // image of basis vector b_i
        }
    return out;
}

std::optional<Int> element_order(const Vec& v, const Lattice& relations) {
    if (v.size() != relations.ambient_dim)
        throw std::invalid_argument("element_order: dimension mismatch");
    const std::size_t n = relations.ambient_dim;
    if (n == 0) return Int(1);
    if (relations.basis.rows() == 0) {
        bool zero = std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
        if (zero) return Int(1);
        return std::nullopt;
    }
    SnfWork s = snf_work(lattice_matrix(relations));
    const std::size_t steps = std::min(relations.basis.rows(), n);
    Int order = 1;
    for (std::size_t j = 0; j < n; ++j) {
        Int wj = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (v[i] != 0) wj += v[i] * s.V(i, j);
        const Int d = j < steps ? s.invariants[j] : Int(0);
        if (d == 0) {
            if (wj != 0) return std::nullopt;
        } else {
            Int g = gcd(d, wj);
            order = lcm_int(order, d / g);
        }
    }
    return order;
}

Int Subquotient::order_of(const Vec& v) const {
    Lattice m(ambient_dim, m_basis);
    Membership mem = lattice_contains(m, v);
    if (!mem.member)
        throw std::invalid_argument("Subquotient::order_of: vector not in subgroup");
    auto ord = element_order(mem.witness, r_in_basis);
    if (!ord)
        throw std::logic_error("Subquotient::order_of: infinite order in finite subquotient");
    return *ord;
}

Subquotient subquotient(const Lattice& m, const Lattice& r) {
    if (m.ambient_dim != r.ambient_dim)
        throw std::invalid_argument("subquotient: ambient dimension mismatch");
    Subquotient out;
    out.ambient_dim = m.ambient_dim;
    out.m_basis = hermite_normal_form(m.basis);
    const std::size_t h = out.m_basis.rows();
    Lattice basis_lat(m.ambient_dim, out.m_basis);

    std::vector<Vec> coords;
    for (std::size_t i = 0; i < r.basis.rows(); ++i) {
        Membership mem = lattice_contains(basis_lat, r.basis.row(i));
        if (!mem.member)
            throw std::invalid_argument("subquotient: relation row not inside subgroup");
        coords.push_back(std::move(mem.witness));
    }
    out.r_in_basis = Lattice::spanning(h, coords);
    out.decomposition = quotient_decomposition(out.r_in_basis);
    // lift generators from basis coordinates to the ambient space
    for (Vec& g : out.decomposition.generators) {
        Vec ambient(m.ambient_dim, Int(0));
        for (std::size_t i = 0; i < h; ++i)
            if (g[i] != 0)
                for (std::size_t j = 0; j < m.ambient_dim; ++j)
                    ambient[j] += g[i] * out.m_basis(i, j);
        g = std::move(ambient);
    }
    return out;
}

CyclicDecomposition subgroup_quotient(const Lattice& m, const Lattice& r) {
    return subquotient(m, r).decomposition;
}

InducedKernel kernel_of_induced_endomorphism(const IntMatrix& a, const Lattice& relations) {
    const std::size_t n = relations.ambient_dim;
    if (a.rows() != n || a.cols() != n)
        throw std::invalid_argument("kernel_of_induced_endomorphism: matrix must be ambient_dim x ambient_dim");

    // finiteness of the quotient
    IntMatrix h = hermite_normal_form(relations.basis);
    if (h.rows() != n)
        throw std::invalid_argument("kernel_of_induced_endomorphism: infinite quotient (relations not full rank)");

    // Solutions (x | c) of x A^T - c R = 0; the x-projection of the integer
    // left kernel of the stacked matrix is exactly {x : x A^T in rowspan(R)}.
    const std::size_t mr = relations.basis.rows();
    IntMatrix stacked(n + mr, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            stacked(i, j) = a(j, i); // A^T
    for (std::size_t i = 0; i < mr; ++i)
        for (std::size_t j = 0; j < n; ++j)
            stacked(n + i, j) = -relations.basis(i, j);

    SnfWork s = snf_work(stacked);
    const std::size_t rows = n + mr;
    const std::size_t steps = std::min(rows, n);
    std::vector<Vec> span;
    for (std::size_t i = 0; i < rows; ++i) {
        const Int d = i < steps ? s.invariants[i] : Int(0);
        if (d != 0) continue;
        Vec x(n);
        for (std::size_t j = 0; j < n; ++j)
            x[j] = s.U(i, j);
        span.push_back(std::move(x));
    }
    InducedKernel out;
    out.preimage = Lattice::spanning(n, span);
    out.decomposition = subgroup_quotient(out.preimage, relations);
    return out;
}

bool is_unit_multiple(const Vec& x, const Vec& z, const Lattice& relations, unsigned long p) {
    const std::size_t n = relations.ambient_dim;
    if (x.size() != n || z.size() != n)
        throw std::invalid_argument("is_unit_multiple: dimension mismatch");
    if (n == 0) return true;
    SnfWork s = snf_work(lattice_matrix(relations));
    const std::size_t steps = std::min(relations.basis.rows(), n);
    if (steps < n)
        throw std::invalid_argument("is_unit_multiple: quotient is infinite");
    for (const Int& d : s.invariants)
        if (d == 0)
            throw std::invalid_argument("is_unit_multiple: quotient is infinite");
    auto coords = [&](const Vec& v) {
        Vec w(n, Int(0));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                if (v[i] != 0) w[j] += v[i] * s.V(i, j);
        return w;
    };
    Vec xc = coords(x), zc = coords(z);

    // Solve u*zc == xc componentwise mod the invariant factors, merging the
    // congruences; then ask for a solution coprime to p.
    Int u0 = 0, modulus = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const Int& di = s.invariants[i];
        if (di == 1) continue;
        Int g = gcd(zc[i], di);
        Int xr = ((xc[i] % di) + di) % di;
        if (xr % g != 0) return false;
        Int m = di / g;
        if (m == 1) continue;
        Int zi = ((zc[i] / g) % m + m) % m;
        Int zinv;
        if (mpz_invert(zinv.get_mpz_t(), zi.get_mpz_t(), m.get_mpz_t()) == 0)
            return false;
        Int a = (xr / g * zinv) % m;
        Int gg = gcd(modulus, m);
        if ((a - u0) % gg != 0) return false;
        Int joint = modulus / gg * m;
        Int mg = m / gg;
        if (mg != 1) {
            Int rhs = (a - u0) / gg;
            Int mod_g = modulus / gg % mg;
            Int minv;
            if (mpz_invert(minv.get_mpz_t(), mod_g.get_mpz_t(), mg.get_mpz_t()) == 0)
                return false;
            u0 += modulus * ((rhs % mg * minv) % mg);
        }
        modulus = joint;
        u0 = ((u0 % modulus) + modulus) % modulus;
    }
    if (modulus % Int(p) == 0)
        return u0 % Int(p) != 0;
    return true; // progression u0 + modulus*Z hits every residue mod p
}

unsigned long p_valuation(const Int& n, unsigned long p) {
    if (n == 0)
        throw std::invalid_argument("p_valuation: valuation of zero is infinite");
    if (p < 2)
        throw std::invalid_argument("p_valuation: p must be at least 2");
    Int reduced;
    Int pz(p);
    return mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
}

} // namespace lenskt::exactalg

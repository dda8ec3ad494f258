#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace lenskt {

// All arithmetic in this library is exact; entries routinely exceed any
// machine word (q^{2n}-1 for large n).
using Int = mpz_class;
using Vec = std::vector<Int>;

Int int_pow(const Int& base, unsigned long exp);

} // namespace lenskt

namespace lenskt::exactalg {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<Vec>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    IntMatrix transposed() const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);

    bool operator==(const IntMatrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

// Exact determinant (Bareiss fraction-free elimination). Square input.
Int determinant(const IntMatrix& m);

struct SmithDecomposition {
    IntMatrix U;           // rows x rows, unimodular
    IntMatrix D;           // diagonal, U*A*V = D
    IntMatrix V;           // cols x cols, unimodular
    std::vector<Int> invariants; // diagonal of D, d_i | d_{i+1}, zeros last
};

// A set of rows spanning a sublattice of Z^ambient_dim. Rows need not be
// independent; relation families arrive as redundant spanning sets.
struct Lattice {
    std::size_t ambient_dim = 0;
    IntMatrix basis;

    Lattice() = default;
    Lattice(std::size_t dim, IntMatrix rows);
    static Lattice spanning(std::size_t dim, const std::vector<Vec>& rows);
};

struct CyclicDecomposition {
    std::vector<Int> torsion;   // invariant factors > 1, each divides the next
    std::size_t free_rank = 0;
    std::vector<Vec> generators; // ambient coefficient vectors, one per torsion factor

    bool trivial() const { return torsion.empty() && free_rank == 0; }
    Int order() const; // product of torsion factors; requires free_rank == 0
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

// Row-style Hermite normal form: echelon, positive pivots, entries above a
// pivot reduced into [0, pivot). Zero rows are dropped; the result spans the
// same row lattice as the input.
IntMatrix hermite_normal_form(const IntMatrix& a);

struct Membership {
    bool member = false;
    Vec witness; // coefficients over the stored basis rows; witness * basis == v
};

Membership lattice_contains(const Lattice& l, const Vec& v);

// Decomposition of Z^ambient_dim / rowspan(relations).
CyclicDecomposition quotient_decomposition(const Lattice& relations);

// Smallest d >= 1 with d*v in rowspan(relations); nullopt when infinite.
std::optional<Int> element_order(const Vec& v, const Lattice& relations);

// Coordinates for a subquotient M/R with R contained in M: a canonical basis
// of M plus R rewritten in that basis. Element orders of further vectors in
// the subquotient reuse these coordinates.
struct Subquotient {
    std::size_t ambient_dim = 0;
    IntMatrix m_basis;       // independent rows spanning M (HNF)
    Lattice r_in_basis;      // R in m_basis coordinates, ambient = rank(M)
    CyclicDecomposition decomposition;

    // Order of ambient vector v in M/R; throws if v is not in M.
    Int order_of(const Vec& v) const;
};

Subquotient subquotient(const Lattice& m, const Lattice& r);

// Decomposition of M/R for R a sublattice of M; throws if R is not inside M.
CyclicDecomposition subgroup_quotient(const Lattice& m, const Lattice& r);

struct InducedKernel {
    CyclicDecomposition decomposition; // of preimage / relations
    Lattice preimage;                  // {x : x A^T in rowspan(relations)}
};

// Kernel of the endomorphism induced by A on Z^n / rowspan(relations).
// A is n x n with column j holding the image of basis vector e_j; the
// quotient must be finite (relations of full rank).
InducedKernel kernel_of_induced_endomorphism(const IntMatrix& a, const Lattice& relations);

// Is x = u*z in Z^n/rowspan(relations) for some integer u coprime to p?
// Requires a finite quotient (full-rank relations).
bool is_unit_multiple(const Vec& x, const Vec& z, const Lattice& relations, unsigned long p);

// Largest e with p^e dividing n; n must be nonzero.
unsigned long p_valuation(const Int& n, unsigned long p);

} // namespace lenskt::exactalg

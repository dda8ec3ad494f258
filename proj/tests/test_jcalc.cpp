#include <doctest.h>

#include <stdexcept>

#include "lenskt/jcalc.hpp"
#include "test_helpers.hpp"

using namespace lenskt;
using namespace lenskt::jcalc;
using lenskt::testing::longs;
using lenskt::testing::vec;

TEST_CASE("pick_unit_generator") {
    CHECK(pick_unit_generator(3, 1) == 2);
    CHECK(pick_unit_generator(3, 2) == 2);
    CHECK(pick_unit_generator(5, 1) == 2);
    CHECK(pick_unit_generator(7, 1) == 3);
    CHECK(pick_unit_generator(3, 5) == 2);

    CHECK(is_unit_generator(2, 5, 1));
    CHECK_FALSE(is_unit_generator(4, 5, 1)); // order 2 mod 5
    CHECK_FALSE(is_unit_generator(3, 3, 1)); // not a unit
    CHECK_FALSE(is_unit_generator(0, 3, 1));
    CHECK_THROWS_AS(is_unit_generator(2, 4, 1), std::invalid_argument);
}

TEST_CASE("I_s membership and size") {
    CHECK(i_s_membership(1, 3, 0));
    CHECK(i_s_membership(3, 3, 1));
    CHECK_FALSE(i_s_membership(3, 3, 0)); // m = 3 shares a factor with p
    CHECK_FALSE(i_s_membership(1, 5, 0)); // (p-1)/2 = 2 does not divide 1
    CHECK(i_s_membership(2, 5, 0));

    // every n divisible by (p-1)/2 lies in exactly one I_s
    for (unsigned long p : {3ul, 5ul, 7ul})
        for (unsigned long n = 1; n <= 40; ++n) {
            int hits = 0;
            for (unsigned s = 0; s <= 6; ++s)
                if (i_s_membership(n, p, s)) ++hits;
            CHECK(hits == (n % ((p - 1) / 2) == 0 ? 1 : 0));
        }

    CHECK(i_s_size(3, 6, 0) == 3);
    CHECK(i_s_size(3, 6, 1) == 1);
    CHECK(i_s_size(5, 3, 0) == 0);

    // enumeration oracle: the closed form counts n <= floor(k/2) divisible
    // by p^s(p-1)/2, i.e. members of some I_t with t >= s
    for (unsigned long p : {3ul, 5ul})
        for (unsigned long k = 0; k <= 25; ++k)
            for (unsigned s = 0; s <= 2; ++s) {
                unsigned long count = 0;
                for (unsigned long n = 1; n <= k / 2; ++n) {
                    bool tail = false;
                    for (unsigned t = s; t <= s + 8 && !tail; ++t)
                        tail = i_s_membership(n, p, t);
                    if (tail) ++count;
                }
                CHECK(i_s_size(p, k, s) == count);
            }
}

TEST_CASE("j_relation_lattice fixtures") {
    exactalg::Lattice l = j_relation_lattice(3, 1, 4, 2);
    CHECK(l.basis == testing::mat({{3, 1}, {0, 3}, {3, 1}, {0, 15}}, 2));

    CHECK(j_relation_lattice(3, 1, 1, 2).ambient_dim == 0);
    CHECK(j_relation_lattice(3, 1, 0, 2).ambient_dim == 0);

    // lowest coefficient of row n is q^{2n} - 1
    for (unsigned long q : {2ul, 5ul}) {
        exactalg::Lattice big = j_relation_lattice(3, 2, 12, q);
        std::size_t d = big.ambient_dim;
        std::size_t ko_rows = d; // first d rows are the KO relations
        for (std::size_t n = 1; n <= d; ++n) {
            const auto row = big.basis.row(ko_rows + n - 1);
            CHECK(row[n - 1] == int_pow(Int(q), 2 * n) - 1);
            for (std::size_t j = 0; j + 1 < n; ++j) CHECK(row[j] == 0);
        }
    }
}

TEST_CASE("closed-form valuations") {
    CHECK(thm5_valuation(3, 1, 4) == 2);
    CHECK(thm5_valuation(3, 2, 6) == 4);
    CHECK(thm5_valuation(5, 1, 3) == 0);
    CHECK(thm5_valuation(7, 2, 3) == 0); // k < p-1

    CHECK(thm6_valuation(3, 1, 4) == 2);
    CHECK(thm6_valuation(3, 2, 6) == 4);
    CHECK(thm6_valuation(3, 2, 4) == 2); // s = 1 inadmissible
    CHECK(thm6_valuation(5, 1, 3) == 0);

    CHECK(thm8_valuation(3, 2, 6, 1) == 1);
    // the spec sheet quotes 4 for (3,2,18,1); the paper formula (max over
    // t <= s <= r-1) gives 3, and the SNF element order below agrees
    CHECK(thm8_valuation(3, 2, 18, 1) == 3);
    CHECK(thm8_valuation(3, 3, 18, 1) == 4); // s = 2 admissible once r = 3
    CHECK_THROWS_AS(thm8_valuation(3, 2, 6, 2), std::invalid_argument);

    // t = 0 reduces to Theorem 6
    for (unsigned long p : {3ul, 5ul})
        for (unsigned r : {1u, 2u, 3u})
            for (unsigned long k = 0; k <= 20; ++k)
                CHECK(thm8_valuation(p, r, k, 0) == thm6_valuation(p, r, k));
}

TEST_CASE("n_bound and a_list") {
    CHECK(n_bound(3, 2, 6) == 1);
    CHECK(n_bound(3, 5, 2) == 1);
    CHECK(n_bound(3, 1, 100) == 0);
    CHECK(n_bound(5, 4, 3) == 0);
    CHECK(n_bound(5, 4, 4) == 1);

    auto a = a_list(3, 2, 6);
    CHECK(longs(a) == std::vector<long>{81, 3});
}

TEST_CASE("compute_j_group fixtures") {
    JGroupResult r314 = compute_j_group(3, 1, 4);
    CHECK(longs(r314.j_decomposition.torsion) == std::vector<long>{9});
    CHECK(r314.order_of_w == 9);
    CHECK(r314.q == 2);
    CHECK(r314.i_order_exponent == 0);
    CHECK(r314.all_hard_checks_passed());
    CHECK(r314.ko_decomposition.order() == 9);

    JGroupResult r513 = compute_j_group(5, 1, 3);
    CHECK(r513.j_decomposition.trivial());
    CHECK(r513.order_of_w == 1);
    CHECK(r513.all_hard_checks_passed());

    JGroupResult r326 = compute_j_group(3, 2, 6);
    CHECK(longs(r326.j_decomposition.torsion) == std::vector<long>{81});
    CHECK(r326.order_of_w == 81);
    CHECK(r326.n_levels == 1);
    CHECK(r326.order_of_psi[1] == 3);
    CHECK(r326.i_order_exponent == 1);
    CHECK(r326.all_hard_checks_passed());

    JGroupResult r328 = compute_j_group(3, 2, 8);
    CHECK(longs(r328.j_decomposition.torsion) == std::vector<long>{3, 81});
    CHECK(r328.all_hard_checks_passed());

    // large orders stay exact
    JGroupResult big = compute_j_group(3, 2, 18);
    CHECK(longs(big.j_decomposition.torsion) == std::vector<long>{9, 59049});
    CHECK(big.order_of_w == 59049);
    CHECK(big.order_of_psi[1] == 27);
    CHECK(big.all_hard_checks_passed());

    JGroupResult r3310 = compute_j_group(3, 3, 10);
    CHECK(longs(r3310.j_decomposition.torsion) == std::vector<long>{3, 243});
    CHECK(longs(r3310.order_of_psi) == std::vector<long>{243, 3, 1});
    CHECK(r3310.all_hard_checks_passed());

    CHECK_THROWS_AS(compute_j_group(4, 1, 4), std::invalid_argument);
    CHECK_THROWS_AS(compute_j_group(3, 1, 4, 4), std::invalid_argument); // q not a generator
}

TEST_CASE("degenerate skeletons produce trivial groups") {
    for (unsigned long k : {0ul, 1ul}) {
        JGroupResult r = compute_j_group(3, 2, k);
        CHECK(r.j_decomposition.trivial());
        CHECK(r.order_of_w == 1);
        CHECK(r.closed_forms.thm5 == 0);
        CHECK(r.closed_forms.thm6 == 0);
        CHECK(r.all_hard_checks_passed());
    }
}

TEST_CASE("generator independence of the J quotient") {
    for (auto [p, r, k] : std::vector<std::tuple<unsigned long, unsigned, unsigned long>>{
             {3, 1, 8}, {3, 2, 10}, {5, 1, 12}, {7, 1, 10}}) {
        unsigned long q1 = pick_unit_generator(p, r);
        unsigned long q2 = q1 + 1;
        while (!is_unit_generator(q2, p, r)) ++q2;
        auto d1 = exactalg::quotient_decomposition(j_relation_lattice(p, r, k, q1));
        auto d2 = exactalg::quotient_decomposition(j_relation_lattice(p, r, k, q2));
        CHECK(d1.torsion == d2.torsion);
    }
}

TEST_CASE("|J~| is nondecreasing in k") {
    for (unsigned long p : {3ul, 5ul})
        for (unsigned r : {1u, 2u}) {
            Int prev = 1;
            for (unsigned long k = 0; k <= 16; ++k) {
                Int cur = compute_j_group(p, r, k).j_decomposition.order();
                CHECK(cur >= prev);
                prev = cur;
            }
        }
}

TEST_CASE("i_subgroup_order_exponent") {
    CHECK(i_subgroup_order_exponent(3, 1, 10) == 0);
    CHECK(i_subgroup_order_exponent(3, 1, 20) == 0);
    CHECK(i_subgroup_order_exponent(3, 2, 6) == 1);
    CHECK(i_subgroup_order_exponent(3, 2, 4) == 0);
}

TEST_CASE("corollary10_check") {
    CHECK(corollary10_check(3, 4));
    CHECK(corollary10_check(3, 1)); // trivial group
    CHECK(corollary10_check(7, 12));
}

TEST_CASE("lemma4_shift_check") {
    CHECK(lemma4_shift_check(3, 1, 6, 2, 0, 1));
    CHECK(lemma4_shift_check(3, 2, 8, pick_unit_generator(3, 2), 1, 3));
    CHECK_THROWS_AS(lemma4_shift_check(3, 1, 6, 2, 0, 3), std::invalid_argument); // 3 not in I_0
    CHECK_THROWS_AS(lemma4_shift_check(3, 1, 6, 2, 1, 1), std::invalid_argument); // s >= r
}

TEST_CASE("valuation_profile against the paper's clause and the corrected one") {
    auto prof3 = valuation_profile(3, 1, 2, 6);
    CHECK(prof3[0].v == 1); // v_3(2^2-1)
    CHECK(prof3[0].matches_paper);
    CHECK(prof3[0].matches_corrected);

    auto prof5 = valuation_profile(5, 1, 2, 4);
    CHECK(prof5[0].v == 0); // v_5(3): the paper's "otherwise 1" clause fails
    CHECK_FALSE(prof5[0].matches_paper);
    CHECK(prof5[0].matches_corrected);
    CHECK(prof5[1].v == 1); // n = 2 in I_0: v_5(2^4-1) = 1

    auto prof32 = valuation_profile(3, 2, 2, 4);
    CHECK(prof32[2].v == 2); // n = 3 in I_1: v_3(63) = 2
    CHECK(prof32[2].matches_paper);

    // the corrected profile matches computation everywhere on a wide range
    for (unsigned long p : {3ul, 5ul, 7ul}) {
        auto prof = valuation_profile(p, 2, pick_unit_generator(p, 2), 30);
        for (const auto& e : prof) CHECK(e.matches_corrected);
    }
}

TEST_CASE("all computed orders are p-powers") {
    for (auto [p, r, k] : std::vector<std::tuple<unsigned long, unsigned, unsigned long>>{
             {3, 1, 9}, {3, 2, 11}, {5, 1, 13}, {5, 2, 9}, {7, 1, 15}}) {
        JGroupResult res = compute_j_group(p, r, k);
        Int order = res.j_decomposition.order();
        if (order != 1)
            CHECK(int_pow(Int(p), exactalg::p_valuation(order, p)) == order);
        for (const auto& c : res.checks)
            if (c.name == "orders_are_p_powers") CHECK(c.passed);
    }
}

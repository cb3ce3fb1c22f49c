////////////////////////////////////////////////////////////////////////////////
// test_fiber.cpp
////////////////////////////////////////////////////////////////////////////////
/*! @file
//  Exact identity suite for the pointwise exterior/Clifford algebra and the
//  flat complex-structure operators (L, Lambda, J-derivation, bigrades).
//  Everything here runs over the Gaussian-rational backend: equality means
//  coefficientwise exact equality, never a tolerance.
*/
////////////////////////////////////////////////////////////////////////////////
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_helpers.hpp"

using namespace spinform;
using namespace spinform::testing;

namespace {
const Involution INV_XI{Involution::Kind::xi, false};
const Involution INV_ETA{Involution::Kind::eta, false};
const Involution INV_XI_ETA{Involution::Kind::xi_eta, false};
} // namespace

TEST_CASE("mask bookkeeping helpers") {
    CHECK(fiber_dim(1) == 4);
    CHECK(fiber_dim(3) == 64);
    CHECK(grade_of(0b1011u) == 3);
    CHECK(e_count(0b0101u) == 2); // bits 0 and 2 are e-directions
    CHECK(f_count(0b0101u) == 0);
    CHECK(e_count(0b1010u) == 0);
    CHECK(f_count(0b1010u) == 2);
    CHECK(j_partner(0) == 1);
    CHECK(j_partner(5) == 4);
    CHECK(j_sign(2) == +1);
    CHECK(j_sign(3) == -1);
    CHECK(parity_below(0b0110u, 3) == +1); // bits 1,2 below -> even count
    CHECK(parity_below(0b0110u, 2) == -1); // one set bit below
    CHECK(parity_below(0b0110u, 1) == +1);
    CHECK(eta_sign(3) == -1);
    CHECK(xi_sign(2) == -1);
    CHECK(xi_sign(4) == +1);
}

TEST_CASE("blade product golden signs") {
    // e0 . e1 = e0^e1 ; e1 . e0 = -(e0^e1) ; (e0^e1)^2 = -1
    CHECK(blade_clifford_sign(0b01u, 0b10u) == +1);
    CHECK(blade_clifford_sign(0b10u, 0b01u) == -1);
    CHECK(blade_clifford_sign(0b11u, 0b11u) == -1);
    // blade squares follow the reversal sign (-1)^{g(g-1)/2}
    for (mask_t M = 0; M < 64; ++M)
        CHECK(blade_clifford_sign(M, M) == xi_sign(grade_of(M)));
    // wedge signs: disjoint reordering parity, overlap kills
    CHECK(blade_wedge_sign(0b01u, 0b10u) == +1);
    CHECK(blade_wedge_sign(0b10u, 0b01u) == -1);
    CHECK(blade_wedge_sign(0b01u, 0b01u) == 0);
    CHECK(blade_wedge_sign(0b110u, 0b001u) == +1); // move e0 past two factors
}

TEST_CASE("basis generators anticommute to twice the metric") {
    for (int m = 1; m <= 3; ++m) {
        const auto blades = all_blades<GR>(m);
        for (int A = 0; A < 2 * m; ++A)
            for (int B = 0; B < 2 * m; ++B)
                for (const auto &u : blades) {
                    FormFiber<GR> lhs = clifford_index(A, clifford_index(B, u)) +
                                        clifford_index(B, clifford_index(A, u));
                    FormFiber<GR> rhs(m);
                    if (A == B) rhs = GR(2) * u;
                    CHECK(fibers_equal(lhs, rhs));
                }
    }
}

TEST_CASE("Clifford product: associativity, unit, reversal anti-automorphism") {
    TestRng rng(101);
    for (int m = 1; m <= 3; ++m) {
        const FormFiber<GR> one = form_unit<GR>(m);
        for (int rep = 0; rep < 25; ++rep) {
            FormFiber<GR> a = rng.random_form<GR>(m);
            FormFiber<GR> b = rng.random_form<GR>(m);
            FormFiber<GR> c = rng.random_form<GR>(m);
            CHECK(fibers_equal(clifford_mul(clifford_mul(a, b), c),
                               clifford_mul(a, clifford_mul(b, c))));
            CHECK(fibers_equal(clifford_mul(one, a), a));
            CHECK(fibers_equal(clifford_mul(a, one), a));
            // reversal: (a.b)^xi = b^xi . a^xi ; with the parity automorphism
            // folded in, xi_eta is again an anti-automorphism
            CHECK(fibers_equal(involution_apply(clifford_mul(a, b), INV_XI),
                               clifford_mul(involution_apply(b, INV_XI),
                                            involution_apply(a, INV_XI))));
            CHECK(fibers_equal(involution_apply(clifford_mul(a, b), INV_ETA),
                               clifford_mul(involution_apply(a, INV_ETA),
                                            involution_apply(b, INV_ETA))));
            CHECK(fibers_equal(involution_apply(clifford_mul(a, b), INV_XI_ETA),
                               clifford_mul(involution_apply(b, INV_XI_ETA),
                                            involution_apply(a, INV_XI_ETA))));
        }
    }
}

TEST_CASE("left Clifford action = wedge + contraction; right action mirrors it") {
    TestRng rng(102);
    for (int m = 1; m <= 3; ++m)
        for (int rep = 0; rep < 25; ++rep) {
            FormFiber<GR> w = rng.random_form<GR>(m);
            for (int A = 0; A < 2 * m; ++A) {
                CHECK(fibers_equal(clifford_index(A, w),
                                   wedge_index(A, w) + contract_index(A, w)));
                // right multiplication acts through the parity automorphism
                FormFiber<GR> ew = involution_apply(w, INV_ETA);
                CHECK(fibers_equal(clifford_right_index(A, w),
                                   wedge_index(A, ew) - contract_index(A, ew)));
                // and agrees with the generic blade product from the right
                CHECK(fibers_equal(clifford_right_index(A, w),
                                   clifford_mul(w, basis_covector<GR>(m, A))));
            }
        }
}

TEST_CASE("right/left generator difference is twice (wedge-wedge + contract-contract)") {
    TestRng rng(103);
    for (int m = 1; m <= 3; ++m)
        for (int rep = 0; rep < 10; ++rep) {
            FormFiber<GR> u = rng.random_form<GR>(m);
            for (int A = 0; A < 2 * m; ++A)
                for (int B = 0; B < 2 * m; ++B) {
                    FormFiber<GR> lhs = clifford_right_index(A, clifford_right_index(B, u)) -
                                        clifford_index(A, clifford_index(B, u));
                    FormFiber<GR> rhs =
                        GR(-2) * wedge_index(A, wedge_index(B, u)) +
                        GR(-2) * contract_index(A, contract_index(B, u));
                    CHECK(fibers_equal(lhs, rhs));
                }
        }
}

TEST_CASE("wedge algebra: graded commutativity, associativity, squares vanish") {
    TestRng rng(104);
    for (int m = 1; m <= 3; ++m)
        for (int rep = 0; rep < 15; ++rep) {
            FormFiber<GR> a = rng.random_form<GR>(m);
            FormFiber<GR> b = rng.random_form<GR>(m);
            FormFiber<GR> c = rng.random_form<GR>(m);
            CHECK(fibers_equal(wedge(wedge(a, b), c), wedge(a, wedge(b, c))));
            for (int A = 0; A < 2 * m; ++A) {
                FormFiber<GR> eA = basis_covector<GR>(m, A);
                CHECK(is_zero(wedge(eA, eA)));
                // graded sign against a pure-grade component
                for (int p = 0; p <= 2 * m; ++p) {
                    FormFiber<GR> ap = grade_project(a, p);
                    FormFiber<GR> lhs = wedge(eA, ap);
                    FormFiber<GR> rhs = wedge(ap, eA);
                    if (p & 1) rhs = GR(-1) * rhs;
                    CHECK(fibers_equal(lhs, rhs));
                }
            }
        }
}

TEST_CASE("vector contraction is an anti-derivation dual to the wedge") {
    TestRng rng(105);
    for (int m = 1; m <= 3; ++m)
        for (int rep = 0; rep < 15; ++rep) {
            VectorFiber<GR> X = rng.random_vector<GR>(m);
            FormFiber<GR> u = rng.random_form<GR>(m);
            // i_X(X^ ^ u) + X^ ^ (i_X u) = g(X,X) u
            GR g2(0);
            for (int A = 0; A < 2 * m; ++A) g2 += X.x[A] * X.x[A];
            FormFiber<GR> lhs =
                contract(X, wedge_dual(X, u)) + wedge_dual(X, contract(X, u));
            CHECK(fibers_equal(lhs, g2 * u));
            // componentwise agreement with the indexed operations
            FormFiber<GR> acc(m);
            for (int A = 0; A < 2 * m; ++A) acc += X.x[A] * contract_index(A, u);
            CHECK(fibers_equal(contract(X, u), acc));
        }
}

TEST_CASE("complex-structure derivation: matrix action on 1-forms, product rule") {
    TestRng rng(106);
    for (int m = 1; m <= 3; ++m) {
        for (int A = 0; A < 2 * m; ++A) {
            // J e^a = f^a, J f^a = -e^a, encoded by partner index and sign
            FormFiber<GR> want = basis_covector<GR>(m, j_partner(A));
            if (j_sign(A) < 0) want = GR(-1) * want;
            CHECK(fibers_equal(op_J_flat(basis_covector<GR>(m, A)), want));
        }
        for (int rep = 0; rep < 15; ++rep) {
            FormFiber<GR> a = rng.random_form<GR>(m);
            FormFiber<GR> b = rng.random_form<GR>(m);
            CHECK(fibers_equal(op_J_flat(wedge(a, b)),
                               wedge(op_J_flat(a), b) + wedge(a, op_J_flat(b))));
            CHECK(fibers_equal(op_J_flat(a), op_e_to_f(a) - op_f_to_e(a)));
        }
    }
}

TEST_CASE("flat fast paths agree with the general complex-structure operators") {
    TestRng rng(107);
    for (int m = 1; m <= 3; ++m) {
        ComplexStructure<GR> J = flat_complex_structure<GR>(m);
        REQUIRE(J.valid());
        CHECK(fibers_equal(kahler_form(J), fundamental_two_form<GR>(m)));
        for (int rep = 0; rep < 10; ++rep) {
            FormFiber<GR> a = rng.random_form<GR>(m);
            CHECK(fibers_equal(op_L(a, J), op_L_flat(a)));
            CHECK(fibers_equal(op_Lambda(a, J), op_Lambda_flat(a)));
            CHECK(fibers_equal(op_J_derivation(a, J), op_J_flat(a)));
        }
    }
}

TEST_CASE("fundamental form: J-invariant, Lambda eigenvalue m, bidegree (1,1)") {
    for (int m = 1; m <= 4; ++m) {
        FormFiber<GR> om = fundamental_two_form<GR>(m);
        CHECK(is_zero(op_J_flat(om)));
        CHECK(fibers_equal(op_Lambda_flat(om), GR(m) * form_unit<GR>(m)));
        CHECK(fibers_equal(real_bidegree_project(om, 1, 1), om));
        ComplexStructure<GR> J = flat_complex_structure<GR>(m);
        CHECK(fibers_equal(bigrade_project(om, J, Bigrade{1, 1}), om));
        if (m >= 2) {
            CHECK(is_zero(bigrade_project(om, J, Bigrade{2, 0})));
            CHECK(is_zero(bigrade_project(om, J, Bigrade{0, 2})));
        }
    }
}

TEST_CASE("interior-product commutators against J, L, Lambda") {
    TestRng rng(108);
    for (int m = 1; m <= 3; ++m)
        for (int rep = 0; rep < 10; ++rep) {
            FormFiber<GR> u = rng.random_form<GR>(m);
            // [J, L] = 0 and [J, Lambda] = 0
            CHECK(fibers_equal(op_J_flat(op_L_flat(u)), op_L_flat(op_J_flat(u))));
            CHECK(fibers_equal(op_J_flat(op_Lambda_flat(u)),
                               op_Lambda_flat(op_J_flat(u))));
            for (int A = 0; A < 2 * m; ++A) {
                const int JA = j_partner(A);
                const GR sA(j_sign(A));
                // [J, i_A] = s_A i_{JA}  (commutator reading)
                FormFiber<GR> comm = op_J_flat(contract_index(A, u)) -
                                     contract_index(A, op_J_flat(u));
                CHECK(fibers_equal(comm, sA * contract_index(JA, u)));
                // [i_A, Lambda] = 0
                CHECK(fibers_equal(contract_index(A, op_Lambda_flat(u)),
                                   op_Lambda_flat(contract_index(A, u))));
                // [i_A, L] = s_A (Je^A) ^ .
                FormFiber<GR> commL = contract_index(A, op_L_flat(u)) -
                                      op_L_flat(contract_index(A, u));
                CHECK(fibers_equal(commL, sA * wedge_index(JA, u)));
            }
        }
}

TEST_CASE("composition reading of the J/contraction exchange is false") {
    // J(i_A u) = s_A i_{JA} u does NOT hold as a composition identity;
    // only the commutator form above does.  Exhibit a counterexample.
    const int m = 1;
    bool found_mismatch = false;
    for (int A = 0; A < 2 * m && !found_mismatch; ++A)
        for (mask_t M = 0; M < mask_t(fiber_dim(m)); ++M) {
            FormFiber<GR> u(m);
            u.c[M] = GR(1);
            FormFiber<GR> lhs = op_J_flat(contract_index(A, u));
            FormFiber<GR> rhs = GR(j_sign(A)) * contract_index(j_partner(A), u);
            if (!fibers_equal(lhs, rhs)) { found_mismatch = true; break; }
        }
    CHECK(found_mismatch);
}

TEST_CASE("holomorphic covector is pure Dolbeault type (1,0)") {
    for (int m = 1; m <= 3; ++m) {
        ComplexStructure<GR> J = flat_complex_structure<GR>(m);
        const GR i = GR::unit_i();
        for (int a = 0; a < m; ++a) {
            // zeta^a = e^a - i f^a; J zeta = i zeta
            FormFiber<GR> zeta = basis_covector<GR>(m, 2 * a) -
                                 i * basis_covector<GR>(m, 2 * a + 1);
            CHECK(fibers_equal(op_J_flat(zeta), i * zeta));
            CHECK(fibers_equal(bigrade_project(zeta, J, Bigrade{1, 0}), zeta));
            CHECK(is_zero(bigrade_project(zeta, J, Bigrade{0, 1})));
        }
    }
}

TEST_CASE("bigrade projectors resolve each grade; real bidegree resolves everything") {
    TestRng rng(109);
    for (int m = 1; m <= 3; ++m) {
        ComplexStructure<GR> J = flat_complex_structure<GR>(m);
        FormFiber<GR> u = rng.random_form<GR>(m);
        for (int g = 0; g <= 2 * m; ++g) {
            FormFiber<GR> sum(m);
            for (int q = std::max(0, g - m); q <= std::min(g, m); ++q)
                sum += bigrade_project(u, J, Bigrade{g - q, q});
            CHECK(fibers_equal(sum, grade_project(u, g)));
        }
        FormFiber<GR> total(m);
        for (int p = 0; p <= m; ++p)
            for (int q = 0; q <= m; ++q)
                total += real_bidegree_project(u, p, q);
        CHECK(fibers_equal(total, u));
        // out-of-range real bidegree projects to zero (no throw)
        CHECK(is_zero(real_bidegree_project(u, -1, 0)));
        CHECK(is_zero(real_bidegree_project(u, 0, m + 1)));
        CHECK_THROWS_AS((void)grade_project(u, 2 * m + 1), std::out_of_range);
        CHECK_THROWS_AS((void)bigrade_project(u, J, Bigrade{m + 1, 0}), std::out_of_range);
    }
}

TEST_CASE("involution signs on pure blades") {
    for (int m = 1; m <= 3; ++m)
        for (mask_t M = 0; M < mask_t(fiber_dim(m)); ++M) {
            FormFiber<GR> u(m);
            u.c[M] = GR(rational(3), rational(5)); // 3 + 5i picks up conjugation
            const int g = grade_of(M);
            FormFiber<GR> xi = involution_apply(u, INV_XI);
            FormFiber<GR> eta = involution_apply(u, INV_ETA);
            FormFiber<GR> both = involution_apply(u, INV_XI_ETA);
            CHECK(xi.c[M] == GR(xi_sign(g)) * u.c[M]);
            CHECK(eta.c[M] == GR(eta_sign(g)) * u.c[M]);
            CHECK(both.c[M] == GR(xi_sign(g) * eta_sign(g)) * u.c[M]);
            Involution conj_xi{Involution::Kind::xi, true};
            FormFiber<GR> cx = involution_apply(u, conj_xi);
            CHECK(cx.c[M] == GR(xi_sign(g)) * u.c[M].conj());
        }
}

TEST_CASE("float backend smoke test: generator anticommutation") {
    TestRng rng(110);
    for (int m = 1; m <= 2; ++m)
        for (int rep = 0; rep < 5; ++rep) {
            FormFiber<complexd> u = rng.random_form<complexd>(m);
            for (int A = 0; A < 2 * m; ++A)
                for (int B = 0; B < 2 * m; ++B) {
                    FormFiber<complexd> lhs = clifford_index(A, clifford_index(B, u)) +
                                              clifford_index(B, clifford_index(A, u));
                    FormFiber<complexd> rhs(m);
                    if (A == B) rhs = complexd(2.0) * u;
                    CHECK(fiber_dist(lhs, rhs) < 1e-14);
                }
        }
}

////////////////////////////////////////////////////////////////////////////////
// test_kahler.cpp
////////////////////////////////////////////////////////////////////////////////
/*! @file
//  Complex-structure operator suite beyond the flat fast paths: validity
//  checks, a rotation-conjugated exact J, the Lefschetz counting commutator,
//  Dolbeault projector algebra, and the +/- vector splitting.
*/
////////////////////////////////////////////////////////////////////////////////
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_helpers.hpp"

using namespace spinform;
using namespace spinform::testing;

namespace {

//! Exact orthogonal conjugation of the flat structure: rotate the plane
//! spanned by directions (1, 2) with the 3-4-5 rotation, leaving the rest.
ComplexStructure<GR> rotated_structure(int m) {
    ComplexStructure<GR> Jf = flat_complex_structure<GR>(m);
    Mat<GR> R = Mat<GR>::Zero(2 * m, 2 * m);
    for (int i = 0; i < 2 * m; ++i) R(i, i) = GR(1);
    if (2 * m >= 3) {
        R(1, 1) = GR::ratio(3, 5);
        R(1, 2) = GR::ratio(-4, 5);
        R(2, 1) = GR::ratio(4, 5);
        R(2, 2) = GR::ratio(3, 5);
    }
    ComplexStructure<GR> J(m);
    J.j = R * Jf.j * R.transpose();
    return J;
}

FormFiber<GR> one_form_image(const ComplexStructure<GR> &J, int A) {
    FormFiber<GR> out(J.m);
    for (int B = 0; B < 2 * J.m; ++B)
        out += J.j(B, A) * basis_covector<GR>(J.m, B);
    return out;
}

} // namespace

TEST_CASE("structure validity: flat passes, broken candidates fail") {
    for (int m = 1; m <= 4; ++m) CHECK(flat_complex_structure<GR>(m).valid());
    // squares to -I but is not orthogonal
    ComplexStructure<GR> bad(1);
    bad.j(0, 1) = GR(-2);
    bad.j(1, 0) = GR::ratio(1, 2);
    CHECK_FALSE(bad.valid());
    // orthogonal but squares to +I
    ComplexStructure<GR> refl(1);
    refl.j(0, 1) = GR(1);
    refl.j(1, 0) = GR(1);
    CHECK_FALSE(refl.valid());
}

TEST_CASE("rotation-conjugated structure behaves like the flat one") {
    TestRng rng(201);
    for (int m = 2; m <= 3; ++m) {
        ComplexStructure<GR> J = rotated_structure(m);
        REQUIRE(J.valid());
        // derivation on 1-forms is the matrix action through the metric dual
        for (int A = 0; A < 2 * m; ++A)
            CHECK(fibers_equal(op_J_derivation(basis_covector<GR>(m, A), J),
                               one_form_image(J, A)));
        FormFiber<GR> om = kahler_form(J);
        CHECK(is_zero(op_J_derivation(om, J)));
        CHECK(fibers_equal(op_Lambda(om, J), GR(m) * form_unit<GR>(m)));
        for (int rep = 0; rep < 10; ++rep) {
            FormFiber<GR> a = rng.random_form<GR>(m);
            FormFiber<GR> b = rng.random_form<GR>(m);
            CHECK(fibers_equal(op_J_derivation(wedge(a, b), J),
                               wedge(op_J_derivation(a, J), b) +
                                   wedge(a, op_J_derivation(b, J))));
            CHECK(fibers_equal(op_J_derivation(op_L(a, J), J),
                               op_L(op_J_derivation(a, J), J)));
            CHECK(fibers_equal(op_J_derivation(op_Lambda(a, J), J),
                               op_Lambda(op_J_derivation(a, J), J)));
        }
    }
}

TEST_CASE("Lefschetz counting commutator: [Lambda, L] = (m - p) on p-forms") {
    TestRng rng(202);
    for (int m = 1; m <= 3; ++m) {
        ComplexStructure<GR> J = (m >= 2) ? rotated_structure(m)
                                          : flat_complex_structure<GR>(m);
        FormFiber<GR> u = rng.random_form<GR>(m);
        for (int p = 0; p <= 2 * m; ++p) {
            FormFiber<GR> up = grade_project(u, p);
            FormFiber<GR> comm = op_Lambda(op_L(up, J), J) - op_L(op_Lambda(up, J), J);
            CHECK(fibers_equal(comm, GR(m - p) * up));
        }
    }
}

TEST_CASE("Dolbeault projectors: idempotent, orthogonal, correct eigenvalue") {
    TestRng rng(203);
    for (int m = 1; m <= 3; ++m) {
        ComplexStructure<GR> J = (m >= 2) ? rotated_structure(m)
                                          : flat_complex_structure<GR>(m);
        FormFiber<GR> u = rng.random_form<GR>(m);
        const GR i = GR::unit_i();
        for (int p = 0; p <= m; ++p)
            for (int q = 0; q <= m; ++q) {
                FormFiber<GR> upq = bigrade_project(u, J, Bigrade{p, q});
                CHECK(fibers_equal(bigrade_project(upq, J, Bigrade{p, q}), upq));
                // the J-derivation acts as i(p-q) on pure type
                CHECK(fibers_equal(op_J_derivation(upq, J), GR(i * GR(p - q)) * upq));
                // orthogonality against a different type of the same grade
                for (int q2 = 0; q2 <= m; ++q2) {
                    if (q2 == q || p + q - q2 < 0 || p + q - q2 > m) continue;
                    CHECK(is_zero(bigrade_project(upq, J, Bigrade{p + q - q2, q2})));
                }
            }
        // completeness within each grade
        for (int g = 0; g <= 2 * m; ++g) {
            FormFiber<GR> sum(m);
            for (int q = std::max(0, g - m); q <= std::min(g, m); ++q)
                sum += bigrade_project(u, J, Bigrade{g - q, q});
            CHECK(fibers_equal(sum, grade_project(u, g)));
        }
    }
}

TEST_CASE("vector splitting: X = X+ + X- with J-eigenvalue +/- i") {
    TestRng rng(204);
    const GR i = GR::unit_i();
    for (int m = 1; m <= 3; ++m) {
        ComplexStructure<GR> J = (m >= 2) ? rotated_structure(m)
                                          : flat_complex_structure<GR>(m);
        for (int rep = 0; rep < 10; ++rep) {
            VectorFiber<GR> X = rng.random_vector<GR>(m);
            auto [plus, minus] = split_pm(X, J);
            Vec<GR> recon = plus.x + minus.x;
            Vec<GR> jplus = J.j * plus.x;
            Vec<GR> jminus = J.j * minus.x;
            for (int A = 0; A < 2 * m; ++A) {
                CHECK(GR(recon[A] - X.x[A]).is_zero());
                CHECK(GR(jplus[A] - i * plus.x[A]).is_zero());
                CHECK(GR(jminus[A] + i * minus.x[A]).is_zero());
            }
        }
    }
}

TEST_CASE("real bidegree refines total grade and matches Dolbeault on pair-blocks") {
    // Powers of the fundamental form live in matching (k,k) slots of both
    // bookkeepings; a mixed covector does not.
    for (int m = 2; m <= 3; ++m) {
        ComplexStructure<GR> J = flat_complex_structure<GR>(m);
        FormFiber<GR> om = fundamental_two_form<GR>(m);
        FormFiber<GR> om2 = wedge(om, om);
        CHECK(fibers_equal(real_bidegree_project(om2, 2, 2), om2));
        CHECK(fibers_equal(bigrade_project(om2, J, Bigrade{2, 2}), om2));
        // e^0 alone: real bidegree (1,0), but a Dolbeault mixture
        FormFiber<GR> e0 = basis_covector<GR>(m, 0);
        CHECK(fibers_equal(real_bidegree_project(e0, 1, 0), e0));
        CHECK_FALSE(is_zero(bigrade_project(e0, J, Bigrade{1, 0})));
        CHECK_FALSE(is_zero(bigrade_project(e0, J, Bigrade{0, 1})));
    }
}

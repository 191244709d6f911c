#include "doctest.h"
#include "gen.hpp"
#include "spin7/rotation.hpp"
#include "spin7/torus.hpp"

using namespace spin7;
using namespace spin7::testgen;

namespace {

PeriodMatrix square_2d() {
    const Scalar i = Scalar::i();
    return {Mat{{1, i, 0, 0}, {0, 0, 1, i}}};
}

struct Sample {
    long d;
    mpq_class y;
    Scalar a;
};

std::vector<Sample> acceptance_samples() {
    return {{1, mpq_class(1, 2), Scalar::gaussian(mpq_class(1, 3), mpq_class(1, 5))},
            {2, mpq_class(1), Scalar::gaussian(mpq_class(1, 4), mpq_class(1, 7))},
            {3, mpq_class(1, 3), Scalar::gaussian(0, mpq_class(2, 5))}};
}

}  // namespace

TEST_CASE("2-dimensional lattice rotation") {
    const PeriodMatrix pi = square_2d();
    CHECK(rotate_torus_2d(pi, 1, 0).complex == pi.complex);
    const Scalar r(mpq_class(3, 5)), s(mpq_class(4, 5));
    PeriodMatrix rot = rotate_torus_2d(pi, r, s);
    CHECK(rot.real() == rotation_block(r, s) * pi.real());
    CHECK(rotate_torus_2d(rot, r, -s).complex == pi.complex);
    CHECK_THROWS_AS(rotate_torus_2d(pi, 1, 1), DomainError);
    // J' in the unprimed coordinates has the closed form with entries r, s.
    const Mat M = rotation_block(r, s);
    Mat J0(4, 4);
    J0(1, 0) = 1;
    J0(0, 1) = -1;
    J0(3, 2) = 1;
    J0(2, 3) = -1;
    const Mat Jp = inverse(M) * J0 * M;
    CHECK(Jp == Mat{{0, -r, -s, 0}, {r, 0, 0, s}, {s, 0, 0, -r}, {0, -s, r, 0}});
}

TEST_CASE("8-dimensional lattice rotation") {
    std::mt19937_64 rng(8);
    PeriodMatrix pi{Mat(4, 8)};
    const PeriodMatrix sq = square_2d();
    pi.complex.set_block(0, 0, sq.complex);
    Mat other(2, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 4; ++j) other(i, j) = gaussian_rational(rng);
    pi.complex.set_block(2, 4, other);
    const Scalar r(mpq_class(5, 13)), s(mpq_class(12, 13));
    CHECK(rotate_torus_8d(pi, 1, 0).complex == pi.complex);
    PeriodMatrix rot = rotate_torus_8d(pi, r, s);
    CHECK(rot.complex.block(0, 0, 2, 4) == rotate_torus_2d(sq, r, s).complex);
    CHECK(rot.complex.block(2, 4, 2, 4) == rotate_torus_2d(PeriodMatrix{other}, r, s).complex);
    CHECK(rotate_torus_8d(rot, r, -s).complex == pi.complex);
    CHECK(det(rot.real()) == det(pi.real()));
    CHECK_THROWS_AS(rotate_torus_8d(sq, r, s), DomainError);
}

TEST_CASE("Weil period matrices") {
    WeilPeriod w0 = weil_period(WeilSpec::special(2, 0));
    CHECK(w0.reduced == Mat::identity(4));
    CHECK(is_lattice_endomorphism(w0.period, w0.phi));
    CHECK(w0.phi * w0.phi == Mat::identity(4) * Scalar(-2));

    const Scalar a = Scalar::gaussian(mpq_class(1, 3), mpq_class(1, 5)), ab = a.conj();
    WeilPeriod w = weil_period(WeilSpec::special(1, a));
    CHECK(w.reduced == Mat{{1, 0, -ab, 0}, {0, 1, 0, a}, {-ab, 0, 1, 0}, {0, a, 0, 1}});
    CHECK(is_lattice_endomorphism(w.period, Mat::identity(4)));
    CHECK(is_lattice_endomorphism(w.period, w.phi));
    CHECK_FALSE(is_lattice_endomorphism(w.period, Mat::identity(4) * Scalar(mpq_class(1, 2))));
    CHECK_THROWS_AS(weil_period(WeilSpec::special(1, Scalar(1))), DomainError);

    // General special family with b != 0: the e entry is conj(b).
    const Scalar b = Scalar::gaussian(mpq_class(1, 4), 0);
    WeilPeriod wb = weil_period(WeilSpec::special(3, a, b));
    CHECK(wb.reduced(1, 2) == -b.embed(wb.tower));
    CHECK(is_lattice_endomorphism(wb.period, wb.phi));
}

TEST_CASE("Weil rotation pipeline") {
    for (const auto& smp : acceptance_samples()) {
        CAPTURE(smp.d);
        WeilRotationOutput o = weil_rotation_pipeline(smp.a, smp.d, smp.y);
        for (const auto& c : o.checks) {
            CAPTURE(c.name);
            CAPTURE(c.residual);
            CHECK(c.pass);
        }
        CHECK(o.all_pass());
        CHECK(o.r * o.r + o.s * o.s == Scalar(1));
        CHECK(o.lambda.is_rational());
        CHECK(o.endomorphisms.k_dim >= 2);
        CHECK(o.F_qbar * o.F_qbar == Mat::identity(4) * o.four_q2_plus_1);
    }
    WeilRotationOutput o = weil_rotation_pipeline(acceptance_samples()[0].a, 1, mpq_class(1, 2));
    CHECK(o.q == Scalar::gaussian(0, mpq_class(2, 5)));
    CHECK(o.F_sq == Mat::identity(4) * Scalar(mpq_class(9, 25)));
    CHECK(o.lambda == Scalar(mpq_class(191, 300)));

    WeilRotationOutput ex = weil_rotation_pipeline(acceptance_samples()[1].a, 2, 1, false);
    CHECK_FALSE(ex.P.has_value());
    CHECK(ex.all_pass());

    CHECK_THROWS_AS(weil_rotation_pipeline(Scalar(1), 1, mpq_class(1, 2)), DomainError);
    CHECK_THROWS_AS(weil_rotation_pipeline(Scalar(0), 1, mpq_class(3, 2)), DomainError);
    CHECK_THROWS_AS(weil_rotation_pipeline(Scalar(0), 4, mpq_class(1, 2)), DomainError);
}

TEST_CASE("endomorphism space") {
    EndomorphismSpace z = endomorphism_space(Mat(2, 2), 1);
    CHECK(z.k_dim == 12);
    for (const auto& M : z.basis) CHECK(M.block(2, 0, 2, 2).is_zero());

    const Mat B = weil_b_matrix(Scalar::gaussian(mpq_class(1, 4), mpq_class(1, 7)), 2, 1);
    EndomorphismSpace e = endomorphism_space(B, 2);
    CHECK(static_cast<int>(e.basis.size()) == e.k_dim);
    for (const auto& M : e.basis) CHECK(bequiv_residual(B, M).is_zero());
    GenericDimension g = generic_endomorphism_dimension(2, 5, 3);
    CHECK(g.samples.size() == 5);
    for (const auto& smp : g.samples) CHECK(smp.k_dim >= g.min_dim);
}

TEST_CASE("block split of rotated Kahler forms") {
    SU4Structure s = standard_su4();
    CHECK(block_split_check(s.omega, {1, 2}, {3, 4}));
    CHECK(block_split_check(s.omega, {1, 3}, {2, 4}));
    CHECK(block_split_check(s.omega, {1, 4}, {2, 3}));
    const Scalar w = Scalar::gaussian(2, 1);
    Form c = (dz_word({1, 2}) * w + dz_word({3, 4}) * w.conj()) * Scalar(mpq_class(1, 2));
    auto r = rotate(s, gamma_from_c(s, c));
    CHECK(block_split_check(r.rotated.omega, {1, 2}, {3, 4}));
    CHECK_FALSE(block_split_check(r.rotated.omega, {1, 3}, {2, 4}));
    const Form g3 = aplus_basis().gamma[2];
    CHECK_FALSE(block_split_check(s.omega + g3, {1, 2}, {3, 4}));
}

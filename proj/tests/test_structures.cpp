#include "doctest.h"
#include "gen.hpp"
#include "spin7/structures.hpp"

using namespace spin7;
using namespace spin7::testgen;

namespace {

const Scalar kHalf = mpq_class(1, 2);

// Exact element of SU(4) acting on R^8: rational rotations of each complex
// coordinate (with product 1) followed by an even permutation of coordinates.
Mat random_su4_element(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> n(-3, 3);
    std::vector<Scalar> u;
    Scalar prod = 1;
    for (int j = 0; j < 3; ++j) {
        mpq_class t(n(rng), 2);
        mpq_class den = 1 + t * t;
        Scalar z = Scalar::gaussian((1 - t * t) / den, 2 * t / den);
        u.push_back(z);
        prod *= z;
    }
    u.push_back(prod.conj());
    std::vector<int> perm = {0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng);
    int inv = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) inv += perm[i] > perm[j];
    if (inv % 2) std::swap(perm[0], perm[1]);
    Mat g(8, 8);
    for (int j = 0; j < 4; ++j) {
        const Scalar re = u[j].re(), im = u[j].im();
        const int r = 2 * perm[j];
        g(r, 2 * j) = re;
        g(r, 2 * j + 1) = -im;
        g(r + 1, 2 * j) = im;
        g(r + 1, 2 * j + 1) = re;
    }
    return g;
}

}  // namespace

TEST_CASE("Cayley form identities") {
    Form O = cayley_form();
    CHECK(O.size() == 14);
    CHECK((O ^ O) == Form::vol() * Scalar(14));
    CHECK(hodge_star(O) == O);
    SU4Structure s = standard_su4();
    CHECK_NOTHROW(validate(s));
    CHECK(su4_to_spin7(s) == O);
    CHECK((O ^ s.omega ^ s.omega) == Form::vol() * Scalar(12));
    CHECK((s.theta.re() ^ s.theta.re()) == Form::vol() * Scalar(8));
}

TEST_CASE("validate rejects broken SU(4) data") {
    SU4Structure s = standard_su4();
    SU4Structure t = s;
    t.omega = s.omega * Scalar(2);
    CHECK_THROWS_AS(validate(t), DomainError);
    t = s;
    t.theta = s.theta * Scalar(2);
    CHECK_THROWS_AS(validate(t), DomainError);
    t = s;
    t.J = Mat::identity(8);
    CHECK_THROWS_AS(validate(t), DomainError);
}

TEST_CASE("Lambda^2 spectrum and projectors") {
    Spin7Structure S(cayley_form());
    Spin7Report r = verify_spin7(cayley_form());
    CHECK(r.pass);
    CHECK(r.mult_3 == 7);
    CHECK(r.mult_minus1 == 21);
    const Mat I = Mat::identity(28);
    CHECK(S.pi7() + S.pi21() == I);
    CHECK(S.pi7() * S.pi7() == S.pi7());
    CHECK(S.pi21() * S.pi21() == S.pi21());
    CHECK((S.pi7() * S.pi21()).is_zero());
    CHECK(S.pi7().transpose() == S.pi7());

    SU4Structure s = standard_su4();
    auto [p7, p21] = S.project_2form(s.omega);
    CHECK(p7 == s.omega);
    CHECK(p21.is_zero());
    const auto& ab = aplus_basis();
    auto [q7, q21] = S.project_2form(ab.gamma_prime[0]);
    CHECK(q7.is_zero());
    CHECK(q21 == ab.gamma_prime[0]);

    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 10; ++rep) {
        Form a = random_form(rng, 2, 6);
        auto [a7, a21] = S.project_2form(a);
        CHECK(a7 + a21 == a);
        CHECK(hodge_star(S.Omega() ^ a7) == a7 * Scalar(3));
        CHECK(hodge_star(S.Omega() ^ a21) == -a21);
        CHECK((S.Omega() ^ a7 ^ a7) == Form::vol() * (Scalar(3) * norm_sq(a7)));
    }
}

TEST_CASE("verify_spin7 failures") {
    Spin7Report r2 = verify_spin7(cayley_form() * Scalar(2));
    CHECK_FALSE(r2.pass);
    CHECK(r2.omega_wedge_omega == Scalar(56));
    Spin7Report r3 = verify_spin7(Form::dx({1, 2, 3, 4}));
    CHECK_FALSE(r3.pass);
    CHECK_FALSE(r3.self_dual);
    CHECK(r3.mult_3 == 0);
}

TEST_CASE("stabiliser elements leave the report unchanged") {
    std::mt19937_64 rng(4);
    SU4Structure s = standard_su4();
    for (int rep = 0; rep < 3; ++rep) {
        Mat g = random_su4_element(rng);
        REQUIRE(is_orthogonal(g));
        CHECK(pullback(s.omega, g) == s.omega);
        CHECK(pullback(s.theta, g) == s.theta);
        Form O = pullback(cayley_form(), g);
        CHECK(O == cayley_form());
        Spin7Report r = verify_spin7(O);
        CHECK(r.pass);
        CHECK(r.mult_3 == 7);
    }
}

TEST_CASE("A+ / A- bases and the L operator") {
    SU4Structure s = standard_su4();
    const auto& ab = aplus_basis();
    const Form th4 = s.theta * Scalar(mpq_class(1, 4));
    LOperator L(s);
    for (int i = 0; i < 6; ++i) {
        CHECK((ab.c[i] ^ ab.c[i]) == th4 * Scalar(8));
        CHECK((ab.c[i] ^ ab.c_prime[i]) == th4 * (Scalar(8) * Scalar::i()));
        CHECK(L(ab.c[i]) == ab.c[i].conj());
        CHECK(L(ab.gamma[i]) == ab.gamma[i]);
        CHECK(L(ab.gamma_prime[i]) == -ab.gamma_prime[i]);
        CHECK(norm_sq(ab.gamma[i]) == Scalar(4));
        CHECK(norm_sq(ab.gamma_prime[i]) == Scalar(4));
        CHECK(inner(ab.gamma[i], s.omega).is_zero());
        for (int j = 0; j < 6; ++j) {
            CHECK(inner(ab.gamma[i], ab.gamma_prime[j]).is_zero());
            if (i == j) continue;
            CHECK((ab.c[i] ^ ab.c[j]).is_zero());
            CHECK((ab.c[i] ^ ab.c_prime[j]).is_zero());
            CHECK(inner(ab.gamma[i], ab.gamma[j]).is_zero());
        }
        Form Om = s.Omega();
        CHECK((ab.gamma[i] ^ ab.gamma[i] ^ Om) == Form::vol() * (Scalar(3) * norm_sq(ab.gamma[i])));
        CHECK((ab.gamma_prime[i] ^ ab.gamma_prime[i] ^ Om) == Form::vol() * -norm_sq(ab.gamma_prime[i]));
    }
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 10; ++rep) {
        Form a(2);
        for (int k = 0; k < 6; ++k) a += dz_word({1 + k % 4, 1 + (k + 1 + k / 4) % 4}) * gaussian_rational(rng);
        a = bidegree_project(a, s.J, 2, 0);
        Form La = L(a);
        CHECK(is_pure_type(La, s.J, 0, 2));
        CHECK(L(La) == a);
        CHECK(norm_sq(La) == norm_sq(a));
        CHECK((a ^ La.conj()) == s.theta * (norm_sq(a) * Scalar(mpq_class(1, 4))));
    }
    CHECK_THROWS_AS(L(s.omega), DomainError);

    auto [p, m] = a_pm_decompose(s, ab.gamma[0]);
    CHECK(p == ab.gamma[0]);
    CHECK(m.is_zero());
    auto [p2, m2] = a_pm_decompose(s, ab.gamma_prime[0]);
    CHECK(p2.is_zero());
    CHECK(m2 == ab.gamma_prime[0]);
    Form mix = ((ab.c[0] + ab.c_prime[0]) * kHalf);
    mix = mix + mix.conj();
    auto [p3, m3] = a_pm_decompose(s, mix);
    CHECK(p3 == ab.gamma[0]);
    CHECK(m3 == ab.gamma_prime[0]);
}

TEST_CASE("L operator on a conjugated structure") {
    std::mt19937_64 rng(8);
    SU4Structure s = standard_su4();
    Mat Q = random_orthogonal(rng);
    Mat Qt = Q.transpose();
    SU4Structure t{Q * s.J * Qt, pullback(s.omega, Qt), pullback(s.theta, Qt)};
    REQUIRE_NOTHROW(validate(t));
    SU4Pieces p = su4_pieces(t);
    CHECK(p.a_plus.dim() == 6);
    CHECK(p.a_minus.dim() == 6);
    Spin7Structure S(t.Omega());
    CHECK(S.lambda2_7().equals(p.omega_line + p.a_plus));
}

TEST_CASE("branching table for the standard structure") {
    SU4Structure s = standard_su4();
    Spin7Structure S(cayley_form());
    auto lines = branching_lines(S, s);
    REQUIRE(lines.size() == 8);
    const int dims[8] = {7, 21, 8, 48, 1, 7, 27, 35};
    for (int k = 0; k < 8; ++k) CHECK(lines[k].spin7_dim == dims[k]);
    for (int k : {0, 1, 4, 5, 6, 7}) CHECK_MESSAGE(lines[k].holds(), lines[k].name);
    // As printed, the Lambda^3 lines do not match dimensions: 16 vs 8 and 40 vs 48.
    CHECK(lines[2].su4_dim == 16);
    CHECK(lines[2].spin7_in_su4);
    CHECK_FALSE(lines[2].su4_in_spin7);
    CHECK(lines[3].su4_dim == 40);
    CHECK(lines[3].su4_in_spin7);
    CHECK_FALSE(lines[3].spin7_in_su4);
}

TEST_CASE("decompose_4form") {
    SU4Structure s = standard_su4();
    Spin7Structure S(cayley_form());
    auto d1 = decompose_4form(S, s, s.theta.im());
    CHECK(d1.lambda7 == s.theta.im());
    CHECK(d1.lambda1.is_zero());
    CHECK(d1.lambda27.is_zero());
    CHECK(d1.lambda35.is_zero());

    Form x = (s.omega ^ s.omega) - s.theta.re() * Scalar(mpq_class(3, 2));
    auto d2 = decompose_4form(S, s, x);
    CHECK(d2.lambda27 == x);

    Form alpha = dz_word({1, -2, -3, -4}).re();
    CHECK((alpha ^ alpha) == Form::vol() * -norm_sq(alpha));
    auto d3 = decompose_4form(S, s, alpha);
    CHECK(d3.lambda35 == alpha);

    Subspace l7 = S.lambda4_7(), l27 = S.lambda4_27(), l35 = S.lambda4_35();
    CHECK(l7.dim() == 7);
    CHECK(l27.dim() == 27);
    CHECK(l35.dim() == 35);
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 3; ++rep) {
        Form b = random_form(rng, 4, 12);
        auto d = decompose_4form(S, s, b);
        CHECK(d.lambda1 + d.lambda7 + d.lambda27 + d.lambda35 == b);
        CHECK(S.lambda4_1().contains(d.lambda1));
        CHECK(l7.contains(d.lambda7));
        CHECK(l27.contains(d.lambda27));
        CHECK(l35.contains(d.lambda35));
        CHECK(hodge_star(d.lambda35) == -d.lambda35);
        Form sd = d.lambda1 + d.lambda7 + d.lambda27;
        CHECK(hodge_star(sd) == sd);
        const std::vector<Form> slots = {d.lambda1, d.lambda7, d.lambda27, d.lambda35};
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = i + 1; j < 4; ++j) CHECK(inner(slots[i], slots[j]).is_zero());
    }
}

TEST_CASE("span checks") {
    SpanReport r = span_checks(standard_su4());
    CHECK(r.dim_sym == 21);
    CHECK(r.dim_mixed == 16);
    CHECK(r.coefficient == Scalar(mpq_class(1, 3)));
    CHECK(r.sym_matches_computed);
    CHECK_FALSE(r.sym_matches_stated);
    CHECK(r.mixed_matches);
}

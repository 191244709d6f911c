#include "doctest.h"
#include "gen.hpp"

using namespace spin7;
using namespace spin7::testgen;

TEST_CASE("square-free and rational square roots") {
    CHECK(is_square_free(1));
    CHECK(is_square_free(6));
    CHECK_FALSE(is_square_free(12));
    mpq_class r;
    CHECK(rational_sqrt(mpq_class(9, 25), r));
    CHECK(r == mpq_class(3, 5));
    CHECK_FALSE(rational_sqrt(mpq_class(2), r));
    CHECK_THROWS_AS(Tower::make(4), TowerError);
}

TEST_CASE("tower arithmetic") {
    const TowerPtr t = Tower::make(3, 8);
    const Scalar s3 = Scalar::sqrt_d(t), rho = Scalar::rho(t), i = Scalar::i(t);
    CHECK(s3 * s3 == Scalar(3));
    CHECK(rho * rho == Scalar(8));
    CHECK(i * i == Scalar(-1));
    CHECK((s3 * i).conj() == -(s3 * i));
    CHECK(s3.galois() == -s3);
    CHECK(rho.rho_conj() == -rho);

    // rho^2 = 12 = 4 * 3 folds rho into 2 sqrt 3.
    const TowerPtr f = Tower::make(3, 12);
    CHECK_FALSE(f->has_rho());
    CHECK(Scalar::rho(f) == Scalar::sqrt_d(f) * Scalar(2));
    // rho^2 = 9/4 folds to a rational.
    CHECK(Scalar::rho(Tower::make(0, mpq_class(9, 4))) == Scalar(mpq_class(3, 2)));
    CHECK_THROWS_AS(Tower::join(Tower::make(2), Tower::make(3)), TowerError);

    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 40; ++rep) {
        std::array<mpq_class, 8> ca, cb;
        for (int k = 0; k < 8; ++k) {
            ca[k] = small_rational(rng);
            cb[k] = small_rational(rng);
        }
        const Scalar a = Scalar::from_coords(t, ca), b = Scalar::from_coords(t, cb);
        CHECK((a + b) * a == a * a + b * a);
        if (!a.is_zero()) CHECK(a * a.inv() == Scalar(1));
        CHECK((a * b).conj() == a.conj() * b.conj());
        CHECK((a * b).galois() == a.galois() * b.galois());
        CHECK(abs_sq(a).is_real());
        CHECK(std::abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-9 * (1 + std::abs((a * b).to_complex())));
    }
    CHECK_THROWS_AS(Scalar(0).inv(), DomainError);
}

TEST_CASE("float scalars") {
    const Scalar x = Scalar::fl(0.5, 0.25);
    CHECK_FALSE(x.is_exact());
    CHECK_FALSE((x + Scalar(1)).is_exact());
    CHECK(Scalar::fl(1e-12).is_zero());
    CHECK(Scalar(mpq_class(1, 3)).to_float() == Scalar::fl(1.0 / 3));
    CHECK(Scalar::fl(0.1).str() == "0.10000000000000001");
}

TEST_CASE("parsing and printing") {
    CHECK(parse_rational("-3/6") == mpq_class(-1, 2));
    CHECK(rational_str(mpq_class(4, 2)) == "2");
    CHECK_THROWS(parse_rational("1.5"));
    CHECK(parse_gaussian("1/3+1/5i") == Scalar::gaussian(mpq_class(1, 3), mpq_class(1, 5)));
    CHECK(parse_gaussian("-i") == -Scalar::i());
    CHECK(parse_gaussian("2/5 i") == Scalar::gaussian(0, mpq_class(2, 5)));
    CHECK(Scalar::gaussian(1, -2).str() == "1 - 2*i");
    CHECK((Scalar::sqrt_d(Tower::make(2)) * Scalar(mpq_class(1, 2))).str() == "1/2*sqrt(2)");
}

TEST_CASE("exact linear algebra") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 10; ++rep) {
        Mat a(5, 5);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) a(i, j) = gaussian_rational(rng);
        if (det(a).is_zero()) continue;
        CHECK(a * inverse(a) == Mat::identity(5));
        CHECK(det(a * a) == det(a) * det(a));
        CHECK(det(a.adjoint()) == det(a).conj());
        const SPoly p = charpoly(a);
        REQUIRE(p.size() == 6);
        CHECK(p[5] == Scalar(1));
        CHECK(p[4] == -a.trace());
        CHECK(p[0] == -det(a));
    }
    // Rank-deficient: the third row is the sum of the first two.
    Mat b{{1, 2, 3}, {0, 1, mpq_class(1, 2)}, {1, 3, mpq_class(7, 2)}};
    CHECK(rank(b) == 2);
    const Mat n = nullspace(b);
    CHECK(n.cols() == 1);
    CHECK((b * n).is_zero());
    CHECK_THROWS_AS(inverse(b), SingularMatrix);
    CHECK_FALSE(solve_any(b, Mat::column({1, 0, 0})).has_value());
    const auto x = solve_any(b, Mat::column({1, 1, 2}));
    REQUIRE(x.has_value());
    CHECK(b * *x == Mat::column({1, 1, 2}));
}

TEST_CASE("Sturm certification of the largest root") {
    // (x - 3/2)(x + 1)(x^2 - 2): largest root 3/2, exact.
    const QPoly p = {mpq_class(3), mpq_class(1), mpq_class(-7, 2), mpq_class(-1, 2), 1};
    QPoly q = p;
    trim(q);
    CHECK(degree(q) == 4);
    CHECK(eval(p, mpq_class(3, 2)) == 0);
    const auto chain = sturm_chain(square_free(p));
    const mpq_class B = root_bound(p);
    CHECK(count_roots(chain, -B, B) == 4);
    auto r = largest_real_root(p, mpq_class(1, 1000000));
    REQUIRE(r.has_value());
    CHECK(r->exact);
    CHECK(r->lo == mpq_class(3, 2));

    // x^2 - 2: irrational root, certified enclosure.
    auto s = largest_real_root({-2, 0, 1}, mpq_class(1, 1000000000));
    REQUIRE(s.has_value());
    CHECK_FALSE(s->exact);
    CHECK(s->hi - s->lo <= mpq_class(1, 1000000000));
    CHECK(s->lo * s->lo <= 2);
    CHECK(s->hi * s->hi >= 2);

    CHECK_FALSE(largest_real_root({1, 0, 1}, mpq_class(1, 1000)).has_value());
    const RootSigns sg = real_root_signs({0, -2, 0, 1});  // x^3 - 2x
    CHECK(sg.positive == 1);
    CHECK(sg.negative == 1);
    CHECK(sg.zero == 1);
}

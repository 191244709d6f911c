#include "doctest.h"
#include "gen.hpp"

using namespace spin7;
using namespace spin7::testgen;

namespace {

Form cayley_literal() {
    Form f(4);
    const std::vector<std::pair<std::vector<int>, int>> t = {
        {{1, 2, 3, 4}, 1},  {{1, 2, 5, 6}, 1},  {{1, 2, 7, 8}, 1},  {{1, 3, 5, 7}, 1},  {{1, 3, 6, 8}, -1},
        {{1, 4, 5, 8}, -1}, {{1, 4, 6, 7}, -1}, {{2, 3, 5, 8}, -1}, {{2, 3, 6, 7}, -1}, {{2, 4, 5, 7}, -1},
        {{2, 4, 6, 8}, 1},  {{3, 4, 5, 6}, 1},  {{3, 4, 7, 8}, 1},  {{5, 6, 7, 8}, 1}};
    for (const auto& [idx, s] : t) f += Form::dx(idx, s);
    return f;
}

}  // namespace

TEST_CASE("wedge basics") {
    CHECK(wedge(Form::dx({1}), Form::dx({2})) == Form::dx({1, 2}));
    CHECK(wedge(Form::dx({2}), Form::dx({1})) == Form::dx({1, 2}, -1));
    CHECK(Form::dx({3, 1, 2}) == Form::dx({1, 2, 3}));
    CHECK(Form::dx({2, 1}) == -Form::dx({1, 2}));
    CHECK(wedge(Form::dx({1, 2}), Form::dx({2, 3})).is_zero());
    CHECK(wedge(Form::vol(), Form::dx({1})).is_zero());
    Form O = cayley_literal();
    CHECK((O ^ O) == Form::vol() * Scalar(14));
}

TEST_CASE("standard SU(4) norms and wedges") {
    Form w = standard_omega(), th = standard_theta();
    CHECK((th ^ th.conj()) == Form::vol() * Scalar(16));
    CHECK(norm_sq(w) == Scalar(4));
    CHECK(norm_sq(th) == Scalar(16));
    CHECK(norm_sq(th.re()) == Scalar(8));
    CHECK(power(w, 4) == Form::vol() * Scalar(24));
    CHECK(norm_sq(dz(1)) == Scalar(2));
    CHECK(Form::constant(1) == hodge_star(Form::vol()));
    CHECK(hodge_star(Form::constant(1)) == Form::vol());
}

TEST_CASE("hodge star") {
    CHECK(hodge_star(cayley_literal()) == cayley_literal());
    Form th = standard_theta();
    CHECK(hodge_star(th) == th);
    CHECK(hodge_star_conj(th) == th.conj());
    std::mt19937_64 rng(11);
    for (int k = 0; k <= 8; ++k) {
        for (int rep = 0; rep < 5; ++rep) {
            Form a = random_form(rng, k, 5, false);
            Form b = random_form(rng, k, 5, false);
            Form ss = hodge_star(hodge_star(a));
            CHECK(ss == ((k % 2) ? -a : a));
            // <a, b> vol = a ^ *conj(b)
            CHECK((a ^ hodge_star_conj(b)) == Form::vol() * inner(a, b));
            Form ar = a.re(), br = b.re();
            CHECK((ar ^ hodge_star(br)) == (br ^ hodge_star(ar)));
        }
    }
}

TEST_CASE("wedge algebra laws on random forms") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 40; ++rep) {
        int p = rep % 4, q = (rep / 4) % 3 + 1, r = rep % 2 + 1;
        Form a = random_form(rng, p, 4, false), b = random_form(rng, q, 4, false), c = random_form(rng, r, 4, false);
        CHECK(((a ^ b) ^ c) == (a ^ (b ^ c)));
        Form ab = a ^ b, ba = b ^ a;
        CHECK(ab == (((p * q) % 2) ? -ba : ba));
    }
}

TEST_CASE("complex coordinates") {
    Mat J = standard_J();
    CHECK(is_complex_structure(J));
    CHECK(is_orthogonal(J));
    // J* dz = i dz for the coframe convention used throughout.
    for (int j = 1; j <= 4; ++j) {
        CHECK(derivation(dz(j), J) == dz(j) * Scalar::i());
        CHECK(derivation(dzbar(j), J) == dzbar(j) * -Scalar::i());
    }
    ComplexFrame fr = complex_frame(J);
    REQUIRE(fr.e.size() == 4);
    for (int j = 0; j < 4; ++j) {
        CHECK(fr.e[j] == dz(j + 1));
        CHECK(fr.norm_sq[j] == Scalar(2));
    }
}

TEST_CASE("bidegree projection") {
    Mat J = standard_J();
    Form w = standard_omega(), th = standard_theta();
    CHECK(bidegree_project(w, J, 1, 1) == w);
    CHECK(bidegree_project(w, J, 2, 0).is_zero());
    CHECK(bidegree_project(th.re(), J, 4, 0) == th * Scalar(mpq_class(1, 2)));
    CHECK(bidegree_project(th.re(), J, 0, 4) == th.conj() * Scalar(mpq_class(1, 2)));
    CHECK(is_pure_type(dz_word({1, 2, -1, -2}), J, 2, 2));
    CHECK_THROWS_AS(bidegree_project(w, Mat::identity(8), 1, 1), DomainError);

    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 4; ++rep) {
        Mat Jr = rep == 0 ? J : random_complex_structure(rng);
        REQUIRE(is_complex_structure(Jr));
        int k = 2 + rep % 2;
        Form a = random_form(rng, k, 6, false);
        Form sum(k);
        std::vector<Form> parts;
        for (int p = 0; p <= k; ++p) {
            Form pp = bidegree_project(a, Jr, p, k - p);
            CHECK(bidegree_project(pp, Jr, p, k - p) == pp);
            CHECK(bidegree_project(a.conj(), Jr, k - p, p) == pp.conj());
            for (const auto& o : parts) CHECK(inner(pp, o).is_zero());
            parts.push_back(pp);
            sum += pp;
        }
        CHECK(sum == a);
    }
}

TEST_CASE("Lefschetz decomposition") {
    Form w = standard_omega();
    Mat J = standard_J();
    Form w2 = w ^ w;
    auto parts = lefschetz_decompose(w2, w, &J);
    CHECK(parts.k == Scalar(1));
    CHECK(parts.beta0.is_zero());
    CHECK(parts.beta1.is_zero());

    auto p12 = lefschetz_decompose(dz_word({1, 2, -1, -2}), w, &J);
    CHECK(p12.k == Scalar(mpq_class(1, 3)));

    Form weil = dz_word({1, 2, -3, -4}) + dz_word({-1, -2, 3, 4});
    auto pw = lefschetz_decompose(weil + w2, w, &J);
    CHECK(pw.k == Scalar(1));
    CHECK(pw.beta1.is_zero());
    CHECK(pw.beta0 == weil);

    CHECK_THROWS_AS(lefschetz_decompose(standard_theta().re(), w, &J), DomainError);

    std::mt19937_64 rng(9);
    Lefschetz lf(w);
    for (int rep = 0; rep < 10; ++rep) {
        Form b = bidegree_project(random_form(rng, 4, 10, true), J, 2, 2);
        auto d = lf.decompose(b);
        CHECK((d.beta0 + (d.beta1 ^ w) + w2 * d.k) == b);
        CHECK((d.beta0 ^ w).is_zero());
        CHECK((d.beta1 ^ power(w, 3)).is_zero());
        CHECK((b ^ w2) == Form::vol() * (Scalar(24) * d.k));
    }
}

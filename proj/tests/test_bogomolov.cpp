#include "doctest.h"
#include "gen.hpp"
#include "spin7/bogomolov.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

using namespace spin7;
using namespace spin7::testgen;

namespace {

Form weil_class() { return dz_word({1, 2, -3, -4}) + dz_word({-1, -2, 3, 4}); }

Form diagonal_class() {
    Form d = Form::constant(1);
    for (int j = 1; j <= 4; ++j) d = d ^ (Form::dx({j}) - Form::dx({j + 4}));
    return d;
}

}  // namespace

TEST_CASE("(2,0) basis is orthonormal") {
    const auto& e = e20_basis();
    REQUIRE(e.size() == 6);
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 6; ++j) CHECK(inner(e[i], e[j]) == Scalar(i == j ? 1 : 0));
}

TEST_CASE("k_m of the Weil class") {
    SU4Structure s = standard_su4();
    Form b0 = weil_class();
    HermitianForm6 h = hermitian_form(b0, s);
    CHECK(h.hermitian);
    CertifiedValue km = k_m(h);
    CHECK(km.kind == CertifiedValue::Kind::Exact);
    CHECK(km.lo == 1);
    const Form c1 = aplus_basis().c[0];
    CHECK((b0 ^ c1 ^ c1.conj()) == Form::vol() * Scalar(32));

    ExtremalSet ex = extremal_set(b0, s, Scalar(1));
    REQUIRE(ex.eigenspace.size() == 1);
    Subspace eig(2, ex.eigenspace);
    CHECK(eig.contains(c1));
    CHECK_FALSE(ex.rotatable.empty());
    CHECK_THROWS_AS(extremal_set(b0, s, Scalar(2)), DomainError);

    // -beta0: lambda_max(-H) = -lambda_min(H).
    CertifiedValue kneg = k_m(-b0, s);
    CHECK(kneg.kind == CertifiedValue::Kind::Exact);
    CHECK(kneg.lo == 1);

    CHECK(k_m(Form(4), s).lo == 0);
    CHECK(k_m(b0 * Scalar(mpq_class(5, 3)), s).lo == mpq_class(5, 3));
    CHECK_THROWS_AS(hermitian_form(b0 + (s.omega ^ s.omega), s), DomainError);
    CertifiedValue kf = k_m(HermitianForm6{h.H.to_float(), true});
    CHECK(kf.kind == CertifiedValue::Kind::Float);
    CHECK(kf.to_double() == doctest::Approx(1.0));
}

TEST_CASE("zero class: the whole sphere is extremal") {
    SU4Structure s = standard_su4();
    ExtremalSet ex = extremal_set(Form(4), s, Scalar(0), 16, 3);
    CHECK(ex.eigenspace.size() == 6);
    CHECK(ex.rotatable.size() < ex.samples.size());
    for (const auto& c : ex.rotatable) CHECK(norm_sq(c ^ c) == norm_sq(c) * norm_sq(c));
}

TEST_CASE("decomposable elements of a degenerate top eigenspace are rejected") {
    SU4Structure s = standard_su4();
    Lefschetz lf(s.omega);
    Form b0 = lf.decompose(dz_word({1, 2, -1, -2})).beta0;
    CertifiedValue km = k_m(b0, s);
    REQUIRE(km.kind == CertifiedValue::Kind::Exact);
    CHECK(km.lo == mpq_class(1, 3));
    ExtremalSet ex = extremal_set(b0, s, Scalar(km.lo), 24, 9);
    REQUIRE(ex.eigenspace.size() == 2);
    Subspace eig(2, ex.eigenspace);
    const Form e12 = e20_basis()[0], e34 = e20_basis()[5];
    CHECK(eig.contains(e12));
    CHECK(eig.contains(e34));
    for (const auto& c : ex.rotatable) CHECK_FALSE((c ^ c).is_zero());
    size_t decomposable = 0;
    for (const auto& c : ex.samples) decomposable += (c ^ c).is_zero();
    CHECK(decomposable >= 1);
    CHECK(ex.rotatable.size() + decomposable <= ex.samples.size());
    CHECK_FALSE(ex.rotatable.empty());
}

// Reality of beta0 makes H commute with an antilinear involution of
// Lambda^{2,0}, so a simple top eigenvector always has |c ^ c| = |c|^2.
TEST_CASE("simple top eigenvector is never decomposable") {
    SU4Structure s = standard_su4();
    Lefschetz lf(s.omega);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> u(-3, 3);
    int simple = 0;
    for (int rep = 0; rep < 60; ++rep) {
        Form f(4);
        std::vector<int> pool = {1, 2, 3, 4, 5, 6, 7, 8};
        for (int t = 0; t < 6; ++t) {
            std::shuffle(pool.begin(), pool.end(), rng);
            f += Form::dx({pool[0], pool[1], pool[2], pool[3]}, Scalar(u(rng)));
        }
        Form b0 = lf.decompose(bidegree_project(f, s.J, 2, 2)).beta0;
        if (b0.is_zero()) continue;
        HermitianForm6 h = hermitian_form(b0, s);
        Eigen::MatrixXcd m(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) m(i, j) = h.H(i, j).to_complex();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
        if (es.eigenvalues()(5) - es.eigenvalues()(4) < 1e-6) continue;
        ++simple;
        Form c(2);
        for (int j = 0; j < 6; ++j) c += e20_basis()[j] * Scalar::fl(es.eigenvectors()(j, 5));
        const double n2 = norm_sq(c).to_complex().real();
        CHECK(std::sqrt(norm_sq(c ^ c).to_complex().real()) == doctest::Approx(n2).epsilon(1e-9));
    }
    CHECK(simple >= 30);
}

TEST_CASE("bogomolov_check verdicts") {
    SU4Structure s = standard_su4();
    const Form w2 = s.omega ^ s.omega;
    auto v = bogomolov_check(weil_class() + w2, s);
    CHECK(v.k == Scalar(1));
    CHECK(v.pass);
    CHECK(v.equality);
    REQUIRE(v.extremal.has_value());
    CHECK_FALSE(v.extremal->eigenspace.empty());

    Form D = diagonal_class() - w2 * Scalar(mpq_class(1, 100));
    auto vd = bogomolov_check(D, s);
    CHECK_FALSE(vd.pass);

    std::mt19937_64 rng(44);
    std::vector<Form> passing;
    for (int rep = 0; rep < 12; ++rep) {
        Form a = random_primitive_11(rng, s.omega);
        Form beta = -(a ^ a);
        auto vb = bogomolov_check(beta, s);
        CHECK(vb.pass);
        passing.push_back(beta);
        // Depends only on beta0 and k.
        Form b1 = random_primitive_11(rng, s.omega);
        auto vb1 = bogomolov_check(beta + (b1 ^ s.omega), s);
        CHECK(vb1.pass == vb.pass);
        CHECK(vb1.km.lo == vb.km.lo);
    }
    for (size_t i = 0; i + 1 < passing.size(); ++i) CHECK(bogomolov_check(passing[i] + passing[i + 1], s).pass);
}

TEST_CASE("sup over the sphere") {
    SU4Structure s = standard_su4();
    const Form w2 = s.omega ^ s.omega;
    auto r = k_sup_over_sphere(w2, s, 2000, 7);
    CHECK(r.hypothesis_ok);
    CHECK(r.value == Scalar(1));
    CHECK(r.exceed == 0);
    CHECK(r.argmax.size() == 1);

    auto ra = k_sup_over_sphere(weil_class() + w2, s, 2000, 7);
    CHECK(ra.hypothesis_ok);
    CHECK(ra.exceed == 0);
    CHECK(ra.argmax.size() >= 2);
    for (const auto& wp : ra.argmax) CHECK(((weil_class() + w2) ^ wp ^ wp) == Form::vol() * Scalar(24));

    Form ind = weil_class() * Scalar(3) + w2;
    auto ri = k_sup_over_sphere(ind, s, 2000, 7);
    CHECK_FALSE(ri.hypothesis_ok);
    CHECK(ri.exceed > 0);
}

#include "spin7/bogomolov.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <sstream>

namespace spin7 {

CertifiedValue CertifiedValue::exact(const mpq_class& q) {
    CertifiedValue v;
    v.kind = Kind::Exact;
    v.lo = v.hi = q;
    v.approx = q.get_d();
    return v;
}

CertifiedValue CertifiedValue::floating(double x) {
    CertifiedValue v;
    v.kind = Kind::Float;
    v.approx = x;
    return v;
}

std::string CertifiedValue::str() const {
    switch (kind) {
        case Kind::Exact: return rational_str(lo);
        case Kind::Enclosure: return "[" + rational_str(lo) + ", " + rational_str(hi) + "]";
        case Kind::Float: return float_str(approx);
    }
    return "?";
}

const std::vector<Form>& e20_basis() {
    static const std::vector<Form> b = [] {
        std::vector<Form> out;
        for (int a = 1; a <= 4; ++a)
            for (int c = a + 1; c <= 4; ++c) out.push_back(dz_word({a, c}) * Scalar(mpq_class(1, 2)));
        return out;
    }();
    return b;
}

namespace {

void require_standard_frame(const SU4Structure& s) {
    if (s.J != standard_J()) throw DomainError("hermitian form: only the standard complex structure is supported");
}

// Characteristic data of an exact Hermitian matrix: square-free part and Sturm chain.
struct Spectrum {
    QPoly p, sq;
    std::vector<QPoly> chain;
    mpq_class bound;
};

Spectrum exact_spectrum(const Mat& H) {
    auto q = to_qpoly(charpoly(H));
    if (!q) throw DomainError("hermitian form: characteristic polynomial is not rational");
    Spectrum sp;
    sp.p = *q;
    sp.sq = square_free(sp.p);
    sp.chain = sturm_chain(sp.sq);
    sp.bound = root_bound(sp.sq) + 1;
    return sp;
}

double float_lambda_max(const Mat& H) {
    const int n = H.rows();
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = H(i, j).to_complex();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(n - 1);
}

Form from_e20(const std::vector<Scalar>& v) {
    Form c(2);
    for (size_t j = 0; j < v.size(); ++j) c += e20_basis()[j] * v[j];
    return c;
}

bool norm_condition(const Form& c) {
    const Scalar n2 = norm_sq(c);
    return norm_sq(wedge(c, c)) == n2 * n2;
}

}  // namespace

HermitianForm6 hermitian_form(const Form& beta0, const SU4Structure& s) {
    require_standard_frame(s);
    if (!beta0.is_zero()) {
        if (beta0.degree() != 4) throw DomainError("hermitian form: beta0 must be a 4-form");
        if (!beta0.is_real()) throw DomainError("hermitian form: beta0 is not real");
        if (!is_pure_type(beta0, s.J, 2, 2)) throw DomainError("hermitian form: beta0 is not of type (2,2)");
        if (!wedge(beta0, s.omega).is_zero()) throw DomainError("hermitian form: beta0 is not primitive");
    }
    const auto& e = e20_basis();
    HermitianForm6 h;
    h.H = Mat(6, 6);
    for (int j = 0; j < 6; ++j) {
        Form bj = wedge(beta0, e[j]);
        for (int k = 0; k < 6; ++k) h.H(j, k) = wedge(bj, e[k].conj()).top();
    }
    h.hermitian = h.H.adjoint() == h.H;
    return h;
}

CertifiedValue k_m(const HermitianForm6& h) {
    if (!h.H.is_exact()) return CertifiedValue::floating(float_lambda_max(h.H) / 4);
    Spectrum sp = exact_spectrum(h.H);
    auto root = largest_real_root(sp.sq, mpq_class(1, mpz_class("250000000000")));  // 4e-12 on lambda
    if (!root) throw DomainError("hermitian form: no real eigenvalue");
    CertifiedValue v;
    v.kind = root->exact ? CertifiedValue::Kind::Exact : CertifiedValue::Kind::Enclosure;
    v.lo = root->lo / 4;
    v.hi = root->hi / 4;
    v.approx = (v.lo.get_d() + v.hi.get_d()) / 2;
    return v;
}

CertifiedValue k_m(const Form& beta0, const SU4Structure& s) { return k_m(hermitian_form(beta0, s)); }

ExtremalSet extremal_set(const Form& beta0, const SU4Structure& s, const Scalar& k, int samples, std::uint64_t seed) {
    HermitianForm6 h = hermitian_form(beta0, s);
    if (!h.H.is_exact() || !k.is_rational()) throw DomainError("extremal_set: needs exact input");
    const mpq_class lam = 4 * k.to_rational();
    Spectrum sp = exact_spectrum(h.H);
    if (sgn(eval(sp.p, lam)) != 0 || count_roots(sp.chain, lam, sp.bound) != 0)
        throw DomainError("extremal_set: k differs from k_m");
    Mat kernel = nullspace(h.H - Mat::identity(6) * Scalar(lam));
    ExtremalSet out;
    for (int j = 0; j < kernel.cols(); ++j) out.eigenspace.push_back(from_e20(kernel.col(j)));

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-3, 3);
    out.samples = out.eigenspace;
    for (int n = 0; n < samples && kernel.cols() > 1; ++n) {
        Form c(2);
        for (const auto& b : out.eigenspace) c += b * Scalar::gaussian(coef(rng), coef(rng));
        if (!c.is_zero()) out.samples.push_back(c);
    }
    for (const auto& c : out.samples)
        if (norm_condition(c)) out.rotatable.push_back(c);
    return out;
}

BogomolovVerdict bogomolov_check(const Form& beta, const SU4Structure& s) {
    auto parts = lefschetz_decompose(beta, s.omega, &s.J);
    BogomolovVerdict v;
    v.k = parts.k;
    HermitianForm6 h = hermitian_form(parts.beta0, s);
    v.km = k_m(h);
    if (v.km.kind == CertifiedValue::Kind::Float || !v.k.is_rational()) {
        const double k = v.k.to_complex().real(), km = v.km.to_double();
        const double tol = 1e-9 * std::max(1.0, std::abs(km));
        v.pass = k >= km - tol && k >= -tol;
        v.equality = std::abs(k - km) <= tol;
        return v;
    }
    const mpq_class k = v.k.to_rational(), lam = 4 * k;
    Spectrum sp = exact_spectrum(h.H);
    const bool below = count_roots(sp.chain, lam, std::max(sp.bound, mpq_class(lam + 1))) == 0;  // lambda_max <= 4k
    v.equality = below && sgn(eval(sp.p, lam)) == 0;
    v.pass = below && sgn(k) >= 0;
    if (v.equality) v.extremal = extremal_set(parts.beta0, s, v.k);
    return v;
}

KSupResult k_sup_over_sphere(const Form& beta, const SU4Structure& s, int samples, std::uint64_t seed) {
    KSupResult r;
    PhiForm phi = phi_form(beta, s);
    r.classification = classify(phi);
    r.value = phi.k;
    r.hypothesis_ok = r.classification.kind == Definiteness::NegativeSemidefinite ||
                      r.classification.kind == Definiteness::Zero;

    // Lambda^2_7 = <omega> + A+; quadratic form and Gram matrix on that basis.
    std::vector<Form> b = {s.omega};
    for (const auto& g : phi.basis) b.push_back(g);
    const int n = static_cast<int>(b.size());
    Eigen::MatrixXd Q(n, n), G(n, n);
    for (int i = 0; i < n; ++i) {
        Form bi = wedge(beta, b[i]);
        for (int j = 0; j < n; ++j) {
            Q(i, j) = wedge(bi, b[j]).top().to_complex().real();
            G(i, j) = inner(b[i], b[j]).to_complex().real();
        }
    }
    const double k = r.value.to_complex().real();
    const double limit = 24 * k + 1e-9 * std::max(1.0, std::abs(24 * k));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    r.samples = samples;
    r.sampled_max = -HUGE_VAL;
    for (int t = 0; t < samples; ++t) {
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) x(i) = nd(rng);
        x *= 2.0 / std::sqrt(x.dot(G * x));  // |omega'| = 2
        const double val = x.dot(Q * x);
        r.sampled_max = std::max(r.sampled_max, val / 24);
        if (val > limit) ++r.exceed;
    }

    r.argmax.push_back(s.omega);
    if (r.hypothesis_ok && phi.matrix.is_exact()) {
        Mat ker = nullspace(phi.matrix);
        for (int j = 0; j < ker.cols(); ++j) {
            Form g(2);
            for (int i = 0; i < ker.rows(); ++i) g += phi.basis[i] * ker(i, j);
            if (!g.is_real()) continue;
            r.argmax.push_back(rotate(s, gamma_param(s, g)).rotated.omega);
        }
    }
    return r;
}

}  // namespace spin7

#include "spin7/torus.hpp"

#include <cmath>
#include <complex>
#include <random>

namespace spin7 {

Mat PeriodMatrix::real() const {
    const int n = complex.rows(), m = complex.cols();
    Mat out(2 * n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            out(2 * i, j) = complex(i, j).re();
            out(2 * i + 1, j) = complex(i, j).im();
        }
    return out;
}

PeriodMatrix PeriodMatrix::from_real(const Mat& re) {
    if (re.rows() % 2) throw DomainError("period matrix: odd number of real rows");
    PeriodMatrix p;
    p.complex = Mat(re.rows() / 2, re.cols());
    for (int i = 0; i < p.complex.rows(); ++i)
        for (int j = 0; j < re.cols(); ++j) {
            const Scalar& im = re(2 * i + 1, j);
            p.complex(i, j) = re(2 * i, j) + Scalar::i(im.is_exact() ? im.tower() : nullptr) * im;
        }
    return p;
}

Mat realify_operator(const Mat& psi) {
    const int n = psi.rows();
    Mat out(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Scalar re = psi(i, j).re(), im = psi(i, j).im();
            out(2 * i, 2 * j) = re;
            out(2 * i, 2 * j + 1) = -im;
            out(2 * i + 1, 2 * j) = im;
            out(2 * i + 1, 2 * j + 1) = re;
        }
    return out;
}

Mat rotation_block(const Scalar& r, const Scalar& s) {
    Mat M = Mat::identity(4);
    M(1, 1) = r;
    M(1, 2) = s;
    M(2, 1) = -s;
    M(2, 2) = r;
    return M;
}

namespace {

void require_unit(const Scalar& r, const Scalar& s) {
    if (r * r + s * s != Scalar(1)) throw DomainError("rotation: r^2 + s^2 != 1");
}

Mat block_diag(const Mat& a, const Mat& b) {
    Mat out(a.rows() + b.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), a.cols(), b);
    return out;
}

bool is_integer(const Scalar& x) { return x.is_rational() && x.to_rational().get_den() == 1; }

// Entries of `got` equal lambda * `want` for one scalar lambda; returns lambda.
std::optional<Scalar> proportional(const Mat& got, const Mat& want) {
    std::optional<Scalar> lambda;
    for (int i = 0; i < want.rows() && !lambda; ++i)
        for (int j = 0; j < want.cols() && !lambda; ++j)
            if (!want(i, j).is_zero()) lambda = got(i, j) / want(i, j);
    if (!lambda) return got.is_zero() ? std::optional<Scalar>(Scalar(1)) : std::nullopt;
    if (got != want * *lambda) return std::nullopt;
    return lambda;
}

Mat swap_rows(Mat m, int a, int b) {
    for (int j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
    return m;
}

Mat f_matrix(const Scalar& q) {
    const Scalar q2 = q * Scalar(2);
    return Mat{{1, 0, 0, q2}, {0, -1, q2, 0}, {0, q2, 1, 0}, {q2, 0, 0, -1}};
}

bool hermitian_2x2_positive(const Mat& h) {
    return h(0, 0).re().sign() > 0 && (h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0)).re().sign() > 0;
}

struct Params {
    TowerPtr t;
    Scalar a, delta, x, r, s;
};

Params make_params(const Scalar& a, long d, const mpq_class& y) {
    if (d < 1 || !is_square_free(d)) throw DomainError("weil pipeline: d must be a positive square-free integer");
    if (sgn(y) <= 0 || y * y >= d) throw DomainError("weil pipeline: y must satisfy 0 < y < sqrt d");
    if (!a.is_exact() || !abs_sq(a).is_rational()) throw DomainError("weil pipeline: a must lie in Q(i)");
    if (abs_sq(a).to_rational() >= 1) throw DomainError("weil pipeline: |a| >= 1");
    Params p;
    p.t = Tower::make(d);
    p.a = a.embed(p.t);
    p.delta = Scalar::sqrt_d(p.t);
    p.x = Scalar(y, p.t) / p.delta;
    const Scalar one(1), x2 = p.x * p.x;
    p.r = (one - x2) / (one + x2);
    p.s = Scalar(2) * p.x / (one + x2);
    return p;
}

Mat closed_b(const Params& p) {
    const Scalar i = Scalar::i(p.t), one(1), a2 = abs_sq(p.a), x2 = p.x * p.x;
    const Scalar k = one / (one + x2 * a2);
    const Scalar off = p.x * (one + a2) * i;
    return Mat{{p.a * (one - x2), off}, {-off, -p.a.conj() * (one - x2)}} * k;
}

Mat c_matrix(const Params& p) {
    const Scalar i = Scalar::i(p.t), &x = p.x, &a = p.a, ab = p.a.conj();
    return Mat{{1, x * i, -ab, x * ab * i}, {a * x * i, a, -x * i, 1}, {-x, i, x * ab, ab * i}, {-a * i, a * x, i, x}};
}

Mat t_matrix(const Scalar& f, const Scalar& g) {
    return Mat{{1, 0, -f, 0}, {0, 0, g, 0}, {0, 0, 0, g}, {0, 1, 0, f}};
}

// B from the block reduction of C_hat^{-1}, after relabelling z3 <-> z4 inside W-.
struct Reduction {
    Mat C_hat, C_hat_inv, B, B_star;
};

Reduction reduce(const Params& p, const Scalar& f, const Scalar& g) {
    Reduction red;
    red.C_hat = c_matrix(p) * t_matrix(f, g);
    red.C_hat_inv = inverse(red.C_hat);
    const Mat ci = swap_rows(red.C_hat_inv, 2, 3);
    const Mat X11 = ci.block(0, 0, 2, 2), X12 = ci.block(0, 2, 2, 2);
    const Mat X21 = ci.block(2, 0, 2, 2), X22 = ci.block(2, 2, 2, 2);
    red.B = X21 * inverse(X11);
    red.B_star = X12 * inverse(X22);
    return red;
}

Scalar f_param(const Params& p) {
    const Scalar one(1), x2 = p.x * p.x;
    return Scalar(2) * Scalar::i(p.t) * p.x / (one + x2);
}

Params make_params_float(std::complex<double> a, long d, double y) {
    if (d < 1 || !is_square_free(d)) throw DomainError("weil pipeline: d must be a positive square-free integer");
    if (y <= 0 || y * y >= d) throw DomainError("weil pipeline: y must satisfy 0 < y < sqrt d");
    if (std::norm(a) >= 1) throw DomainError("weil pipeline: |a| >= 1");
    Params p;
    p.t = Tower::gaussian();
    p.a = Scalar::fl(a);
    p.delta = Scalar::fl(std::sqrt(static_cast<double>(d)));
    p.x = Scalar::fl(y) / p.delta;
    const Scalar one(1), x2 = p.x * p.x;
    p.r = (one - x2) / (one + x2);
    p.s = Scalar(2) * p.x / (one + x2);
    return p;
}

double max_entry(const Mat& m) {
    double r = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r = std::max(r, std::abs(m(i, j).to_complex()));
    return r;
}

std::complex<double> csqrt(double v) { return std::sqrt(std::complex<double>(v, 0.0)); }

}  // namespace

Scalar residual_norm(const Mat& m) {
    Scalar s = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) s += abs_sq(m(i, j));
    return s;
}

PeriodMatrix rotate_torus_2d(const PeriodMatrix& pi, const Scalar& r, const Scalar& s) {
    require_unit(r, s);
    if (pi.complex.rows() != 2 || pi.complex.cols() != 4) throw DomainError("rotate_torus_2d: expects a 2x4 period matrix");
    return PeriodMatrix::from_real(rotation_block(r, s) * pi.real());
}

PeriodMatrix rotate_torus_8d(const PeriodMatrix& pi, const Scalar& r, const Scalar& s) {
    require_unit(r, s);
    if (pi.complex.rows() != 4 || pi.complex.cols() != 8) throw DomainError("rotate_torus_8d: expects a 4x8 period matrix");
    const Mat M = rotation_block(r, s);
    return PeriodMatrix::from_real(block_diag(M, M) * pi.real());
}

bool is_lattice_endomorphism(const PeriodMatrix& pi, const Mat& psi) {
    const int n = pi.dim();
    Mat op;
    if (psi.rows() == n && psi.cols() == n) op = realify_operator(psi);
    else if (psi.rows() == 2 * n && psi.cols() == 2 * n) op = psi;
    else throw DomainError("is_lattice_endomorphism: operator has the wrong shape");
    const Mat re = pi.real();
    if (re.rows() != re.cols()) throw DomainError("is_lattice_endomorphism: period matrix is not n x 2n");
    if (det(re).is_zero()) throw SingularMatrix("is_lattice_endomorphism: generators are not a real basis");
    const Mat X = solve(re, op * re);
    for (int i = 0; i < X.rows(); ++i)
        for (int j = 0; j < X.cols(); ++j)
            if (!is_integer(X(i, j))) return false;
    return true;
}

WeilSpec WeilSpec::special(long d, const Scalar& a, const Scalar& b) {
    WeilSpec w;
    w.d = d;
    w.a = a;
    w.b = b;
    w.e = b.conj();
    w.f = -a.conj();
    return w;
}

WeilPeriod weil_period(const WeilSpec& spec) {
    if (spec.d < 1 || !is_square_free(spec.d)) throw DomainError("weil_period: d must be a positive square-free integer");
    WeilPeriod w;
    w.tower = Tower::make(spec.d);
    const Scalar a = spec.a.embed(w.tower), b = spec.b.embed(w.tower);
    const Scalar e = spec.e.embed(w.tower), f = spec.f.embed(w.tower);
    const Mat A{{a, e}, {b, f}};
    if (!hermitian_2x2_positive(Mat::identity(2) - A * A.adjoint()))
        throw DomainError("weil_period: Id - A A^* is not positive definite");
    const Scalar ab = a.conj(), bb = b.conj(), eb = e.conj(), fb = f.conj();
    w.reduced = Mat{{1, 0, -ab, -bb}, {0, 1, -eb, -fb}, {-ab, -eb, 1, 0}, {-bb, -fb, 0, 1}};
    const Scalar id = Scalar::i(w.tower) * Scalar::sqrt_d(w.tower);
    w.phi = Mat(4, 4);
    for (int j = 0; j < 4; ++j) w.phi(j, j) = j < 2 ? id : -id;
    w.period.complex = Mat(4, 8);
    const Mat pv = w.phi * w.reduced;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) {
            w.period.complex(i, 2 * j) = w.reduced(i, j);
            w.period.complex(i, 2 * j + 1) = pv(i, j);
        }
    return w;
}

Mat bequiv_residual(const Mat& B, const Mat& M) {
    const Mat M1 = M.block(0, 0, 2, 2), M2 = M.block(0, 2, 2, 2);
    const Mat M3 = M.block(2, 0, 2, 2), M4 = M.block(2, 2, 2, 2);
    return B * M2 * B + B * M1 - M4 * B - M3;
}

EndomorphismSpace endomorphism_space(const Mat& B, long d) {
    const TowerPtr t = Tower::make(d);
    const Scalar kappa = Scalar::i(t) * Scalar::sqrt_d(t);  // sqrt(-d)
    // Rational unknowns: the Q-coordinates (u, v) of each entry u + v kappa.
    std::vector<Mat> gens;
    for (int k = 0; k < 16; ++k)
        for (const Scalar& c : {Scalar(1, t), kappa}) {
            Mat E(4, 4);
            E(k / 4, k % 4) = c;
            gens.push_back(E);
        }
    Mat sys(4 * 8, static_cast<int>(gens.size()));
    for (size_t j = 0; j < gens.size(); ++j) {
        const Mat R = bequiv_residual(B, gens[j]);
        for (int e = 0; e < 4; ++e) {
            const Scalar v = R(e / 2, e % 2).embed(t);
            for (int c = 0; c < 8; ++c) sys(8 * e + c, static_cast<int>(j)) = Scalar(v.coord(c));
        }
    }
    const Mat ker = nullspace(sys);
    EndomorphismSpace out;
    out.k_dim = ker.cols() / 2;
    // Greedy K-basis: keep a vector unless it lies in the K-span of the kept ones.
    Mat span(32, 0);
    for (int j = 0; j < ker.cols() && static_cast<int>(out.basis.size()) < out.k_dim; ++j) {
        Mat M(4, 4);
        for (int k = 0; k < 16; ++k) M(k / 4, k % 4) = ker(2 * k, j) + ker(2 * k + 1, j) * kappa;
        // kappa * M in rational coordinates: (u + v kappa) kappa = -d v + u kappa.
        Mat cand(32, span.cols() + 2);
        cand.set_block(0, 0, span);
        for (int k = 0; k < 16; ++k) {
            cand(2 * k, span.cols()) = ker(2 * k, j);
            cand(2 * k + 1, span.cols()) = ker(2 * k + 1, j);
            cand(2 * k, span.cols() + 1) = ker(2 * k + 1, j) * Scalar(-d);
            cand(2 * k + 1, span.cols() + 1) = ker(2 * k, j);
        }
        if (rank(cand) == cand.cols()) {
            span = cand;
            out.basis.push_back(M);
        }
    }
    return out;
}

Mat weil_b_matrix(const Scalar& a, long d, const mpq_class& y) {
    const Params p = make_params(a, d, y);
    return reduce(p, f_param(p), p.r).B;
}

WeilFloatValues weil_rotation_float(std::complex<double> a, long d, double y) {
    const Params p = make_params_float(a, d, y);
    const Scalar one(1), i = Scalar::i(p.t), yy = Scalar::fl(y);
    WeilFloatValues v;
    v.r = p.r.to_complex().real();
    v.s = p.s.to_complex().real();
    const Reduction red = reduce(p, f_param(p), p.r);
    Mat eta = Mat::identity(4);
    eta(2, 2) = -1;
    eta(3, 3) = -1;
    v.lambda = (red.C_hat.adjoint() * eta * red.C_hat)(0, 0).to_complex().real();
    v.b_closed_residual = max_entry(red.B - closed_b(p));
    const Scalar q = yy * p.delta * i / (yy * yy + Scalar(d));
    const Scalar a_tilde = red.B(0, 0), varpi = red.B(1, 0) / i;
    v.relation_residual = std::abs((q * (one + abs_sq(a_tilde) + varpi * varpi) + varpi * i).to_complex());
    const Scalar f2 = Scalar(4) * q * q + one;
    v.four_q2_plus_1 = f2.to_complex().real();
    const Mat F = f_matrix(q);
    v.f_sq_residual = max_entry(F * F - Mat::identity(4) * f2);
    return v;
}

bool WeilRotationOutput::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass && !c.skipped) return false;
    return true;
}

WeilRotationOutput weil_rotation_pipeline(const Scalar& a_in, long d, const mpq_class& y, bool allow_float) {
    const Params p = make_params(a_in, d, y);
    const TowerPtr& t = p.t;
    const Scalar one(1), i = Scalar::i(t);
    WeilRotationOutput o;
    o.d = d;
    o.a = p.a;
    o.y = Scalar(y, t);
    o.delta = p.delta;
    o.x = p.x;
    o.r = p.r;
    o.s = p.s;
    o.s_hat = p.s / p.delta;
    o.f = f_param(p);
    o.g = p.r;
    o.q = o.y * p.delta * i / (o.y * o.y + Scalar(d));

    auto check = [&](const std::string& name, const Scalar& res, bool pass) {
        o.checks.push_back({name, pass, false, res.str()});
    };
    auto check_zero = [&](const std::string& name, const Mat& m) {
        const Scalar n = residual_norm(m);
        check(name, n, n.is_zero());
    };

    // Lattices and phi.
    const WeilPeriod wp = weil_period(WeilSpec::special(d, p.a));
    o.original = wp.period;
    o.rotated = rotate_torus_8d(wp.period, p.r, p.s);
    const Scalar& dl = p.delta;
    const Scalar &r = p.r, &s = p.s;
    o.phi = Mat{{r * i, s, 0, 0}, {-s, -r * i, 0, 0}, {0, 0, -r * i, -s}, {0, 0, s, r * i}} * dl;
    check_zero("phi^2 = -d Id", o.phi * o.phi + Mat::identity(4) * Scalar(d));
    check("phi preserves the original lattice", 0, is_lattice_endomorphism(o.original, wp.phi));
    check("phi preserves the rotated lattice", 0, is_lattice_endomorphism(o.rotated, o.phi));
    {
        const Mat M = rotation_block(r, s);
        const Mat Mt = block_diag(M, M);
        check("det M~ = 1", det(Mt) - one, det(Mt) == one);
        check("real period determinant preserved", det(o.rotated.real()) - det(o.original.real()),
              det(o.rotated.real()) == det(o.original.real()));
    }
    {
        const Scalar a1 = p.a.re(), a2 = p.a.im();
        const Mat disp{
            {1, dl * r * i, s * i, 0, -a1 + a2 * r * i, -a2 * dl - a1 * r * dl * i, a1 * s * i, -a2 * s * dl * i},
            {0, -dl * s, r, dl * i, -a2 * s, a1 * s * dl, a1 * r + a2 * i, -a2 * r * dl + a1 * dl * i},
            {-a1 + a2 * r * i, a2 * dl + a1 * r * dl * i, a1 * s * i, a2 * s * dl * i, 1, -dl * r * i, s * i, 0},
            {-a2 * s, -a1 * s * dl, a1 * r + a2 * i, a2 * r * dl - a1 * dl * i, 0, dl * s, r, -dl * i}};
        check_zero("rotated lattice matches the closed form", o.rotated.complex - disp);
    }
    o.lattice_basis = Mat(4, 4);
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) o.lattice_basis(k, j) = o.rotated.complex(k, 2 * j);

    // Diagonaliser of phi: entries need sqrt((r +- 1)/2), so float only.
    if (allow_float) {
        const double rf = r.to_complex().real(), sf = s.to_complex().real();
        const std::complex<double> I(0, 1), rp = csqrt((rf + 1) / 2), rm = csqrt((rf - 1) / 2);
        const std::complex<double> dp = csqrt(2 * (rf + 1)), dm = csqrt(2 * (rf - 1));
        const std::complex<double> P[4][4] = {{rp, 0, I * rm, 0},
                                              {sf * I / dp, 0, -sf / dm, 0},
                                              {0, rm, 0, I * rp},
                                              {0, sf * I / dm, 0, -sf / dp}};
        Mat Pm(4, 4);
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) Pm(j, k) = Scalar::fl(P[j][k] * 0.5);
        o.P = Pm;
        const Mat D = inverse(Pm) * o.phi.to_float();
        Mat diag(4, 4);
        const double df = dl.to_complex().real();
        for (int j = 0; j < 4; ++j) diag(j, j) = Scalar::fl(0.0, j < 2 ? df : -df);
        double res = 0;
        const Mat diff = D * Pm - diag;
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) res = std::max(res, std::abs(diff(j, k).to_complex()));
        o.checks.push_back({"P^-1 phi P = diag(i delta, i delta, -i delta, -i delta) (float)", res <= 1e-10, false,
                            float_str(res)});
    } else {
        o.checks.push_back({"P^-1 phi P = diag(i delta, i delta, -i delta, -i delta) (float)", false, true,
                            "requires float"});
    }

    // C, C_hat, B.
    o.C = c_matrix(p);
    o.T = t_matrix(o.f, o.g);
    const Reduction red = reduce(p, o.f, o.g);
    o.C_hat = red.C_hat;
    o.C_hat_inv = red.C_hat_inv;
    {
        Mat eta = Mat::identity(4);
        eta(2, 2) = -1;
        eta(3, 3) = -1;
        const Mat G = o.C_hat.adjoint() * eta * o.C_hat;
        o.lambda = G(0, 0);
        const bool ok = G == eta * o.lambda && o.lambda.is_rational() && sgn(o.lambda.to_rational()) > 0;
        check("C_hat^* eta C_hat = lambda eta with rational lambda > 0", residual_norm(G - eta * o.lambda), ok);
    }
    o.B = red.B;
    o.B_closed = closed_b(p);
    check_zero("B matches its closed form", o.B - o.B_closed);
    check_zero("X12 X22^-1 = B^*", red.B_star - o.B.adjoint());
    {
        const Mat h = Mat::identity(2) - o.B * o.B.adjoint();
        check("Id - B B^* positive definite", 0, hermitian_2x2_positive(h));
    }
    o.a_tilde = o.B(0, 0);
    o.varpi = o.B(1, 0) / i;
    {
        const Scalar yy = o.y * o.y, a2 = abs_sq(p.a), dd(d);
        const Scalar at = p.a * (dd - yy) / (dd + yy * a2);
        const Scalar vp = -dl * o.y * (one + a2) / (dd + yy * a2);
        check("a~ and varpi closed forms", abs_sq(o.a_tilde - at) + abs_sq(o.varpi - vp),
              o.a_tilde == at && o.varpi == vp);
    }
    o.relation_residual = o.q * (one + abs_sq(o.a_tilde) + o.varpi * o.varpi) + o.varpi * i;
    check("q(1 + |a~|^2 + varpi^2) + varpi i = 0", abs_sq(o.relation_residual), o.relation_residual.is_zero());

    // F and the endomorphism algebra.
    o.F = f_matrix(o.q);
    o.F_qbar = f_matrix(o.q.conj());
    o.F_sq = o.F * o.F;
    o.four_q2_plus_1 = Scalar(4) * o.q * o.q + one;
    check_zero("F^2 = (4q^2 + 1) Id", o.F_sq - Mat::identity(4) * o.four_q2_plus_1);
    {
        const Scalar rr = (Scalar(d) - o.y * o.y) / (Scalar(d) + o.y * o.y);
        check("4q^2 + 1 = ((d - y^2)/(d + y^2))^2", o.four_q2_plus_1 - rr * rr, o.four_q2_plus_1 == rr * rr);
        o.discrepancies.push_back("4q^2 + 1 = " + (rr * rr).str() + " is the square of the rational " + rr.str() +
                                  ", so Q(sqrt(4q^2 + 1)) = Q and F^2 = (" + rr.str() + ")^2 Id");
    }
    check_zero("B-equiv residual of F with conj(q)", bequiv_residual(o.B, o.F_qbar));
    {
        const Scalar n = residual_norm(bequiv_residual(o.B, o.F));
        o.discrepancies.push_back("B-equiv residual of F as displayed (with q): |R|^2 = " + n.str() +
                                  (n.is_zero() ? "" : "; F with conj(q) solves it"));
    }
    {
        Mat phis(4, 4);
        for (int j = 0; j < 4; ++j) phis(j, j) = (j < 2 ? i : -i) * dl;
        o.F_phi_commutator = o.F * phis - phis * o.F;
        const Scalar n = residual_norm(o.F_phi_commutator);
        o.discrepancies.push_back(std::string("F commutes with diag(i delta, i delta, -i delta, -i delta): ") +
                                  (n.is_zero() ? "yes" : "no, |[F, phi]|^2 = " + n.str()));
    }
    o.endomorphisms = endomorphism_space(o.B, d);
    {
        const bool id_in = bequiv_residual(o.B, Mat::identity(4)).is_zero();
        const bool f_in = bequiv_residual(o.B, o.F_qbar).is_zero();
        o.discrepancies.push_back("endomorphism space K-dimension = " + std::to_string(o.endomorphisms.k_dim) +
                                  " (contains Id: " + (id_in ? "yes" : "no") + ", contains F(conj q): " +
                                  (f_in ? "yes" : "no") + ")");
    }

    // Displayed C_hat and C_hat^{-1}, compared up to an overall scalar.
    {
        const Scalar &x = p.x, &a = p.a, ab = p.a.conj();
        const Mat chat_disp{{1, x * ab * i, -x * i, Scalar(-2) * ab},
                            {a * x * i, 1, a, x * i},
                            {-x, i * ab, -i, -x * ab},
                            {-a * i, x, -a * x, i}};
        o.discrepancies.push_back(std::string("C T matches the displayed C_hat up to a scalar: ") +
                                  (proportional(o.C_hat, chat_disp) ? "yes" : "no"));
        const Mat inv_disp{{1, -ab * x * i, -x, -ab * i},
                           {-a * x * i, 1, -a * i, -x},
                           {a, x * i, a * x, -i},
                           {-x * i, -ab, i, -x * ab}};
        std::string how = "no";
        if (proportional(o.C_hat_inv, inv_disp)) {
            how = "yes";
        } else {
            Mat alt = swap_rows(o.C_hat_inv, 2, 3);
            for (int k = 0; k < 4; ++k) alt(k, 2) = -alt(k, 2);
            if (proportional(alt, inv_disp)) how = "after swapping rows 3, 4 and negating column 3";
        }
        o.discrepancies.push_back("(C T)^-1 matches the displayed C_hat^-1 up to a scalar: " + how);
    }

    // The class beta stays of type (2,2) for the rotated complex structure.
    {
        const Mat M = rotation_block(r, s);
        const Mat Mt = block_diag(M, M);
        o.J_rotated = inverse(Mt) * standard_J() * Mt;
        Form w(2);
        for (int j = 1; j <= 4; ++j) w += Form::dx({2 * j - 1, 2 * j});
        const Form beta = dz_word({1, 2, -3, -4}) + dz_word({-1, -2, 3, 4}) + wedge(w, w);
        const bool ok = is_complex_structure(o.J_rotated) && is_pure_type(beta, o.J_rotated, 2, 2);
        check("beta is of type (2,2) for J'", 0, ok);
    }
    return o;
}

GenericDimension generic_endomorphism_dimension(long d, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9), den(2, 11);
    GenericDimension g;
    g.min_dim = 16;
    const mpq_class dd(d);
    while (static_cast<int>(g.samples.size()) < samples) {
        mpq_class re(num(rng), den(rng)), im(num(rng), den(rng)), y(std::abs(num(rng)) + 1, den(rng));
        re.canonicalize();
        im.canonicalize();
        y.canonicalize();
        if (re * re + im * im >= 1 || y * y >= dd) continue;
        const Scalar a = Scalar::gaussian(re, im);
        const int k = endomorphism_space(weil_b_matrix(a, d, y), d).k_dim;
        g.samples.push_back({a, y, k});
        g.min_dim = std::min(g.min_dim, k);
    }
    return g;
}

bool block_split_check(const Form& omega_prime, const std::vector<int>& block_a, const std::vector<int>& block_b) {
    if (!omega_prime.is_zero() && omega_prime.degree() != 2) throw DomainError("block_split_check: expects a 2-form");
    auto real_set = [](const std::vector<int>& blk) {
        std::vector<bool> in(kDim + 1, false);
        for (int z : blk) {
            if (z < 1 || z > kDim / 2) throw DomainError("block_split_check: complex index out of range");
            in[2 * z - 1] = in[2 * z] = true;
        }
        return in;
    };
    const auto A = real_set(block_a), B = real_set(block_b);
    for (const auto& [m, c] : omega_prime.terms()) {
        if (c.is_zero()) continue;
        const auto idx = indices(m);
        if ((A[idx[0]] && B[idx[1]]) || (B[idx[0]] && A[idx[1]])) return false;
    }
    return true;
}

}  // namespace spin7

#include "spin7/rotation.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace spin7 {

TowerPtr form_tower(const Form& f) {
    TowerPtr t = Tower::gaussian();
    for (const auto& [m, c] : f.terms()) {
        if (!c.is_exact()) return nullptr;
        if (c.tower() != t) t = Tower::join(t, c.tower());
    }
    return t;
}

double max_abs(const Form& f) {
    double m = 0.0;
    for (const auto& [k, c] : f.terms()) m = std::max(m, std::abs(c.to_complex()));
    return m;
}

double max_abs(const Mat& a) {
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j).to_complex()));
    return m;
}

namespace {

bool is_standard(const SU4Structure& s) {
    static const SU4Structure st = standard_su4();
    return s.J == st.J && s.omega == st.omega && s.theta == st.theta;
}

std::vector<Form> aminus_forms(const SU4Structure& s) {
    if (is_standard(s)) return aplus_basis().gamma_prime;
    return su4_pieces(s).a_minus.forms();
}

// a(J e_{i1}, e_{i2}, ..., e_{ik}) for the sorted index set of m.
Scalar eval_first_slot(const Form& a, const Mat& J, Mask m) {
    auto idx = indices(m);
    const int i1 = idx[0];
    Scalar s = 0;
    for (int j = 1; j <= kDim; ++j) {
        const Scalar& jj = J(j - 1, i1 - 1);
        if (jj.is_zero()) continue;
        std::vector<int> word = idx;
        word[0] = j;
        Form e = Form::dx(word);  // carries the sorting sign, zero on repeats
        if (e.is_zero()) continue;
        const auto& [mask, sign] = *e.terms().begin();
        s += jj * sign * a.coeff(mask);
    }
    return s;
}

}  // namespace

RotationParameter gamma_from_c(const SU4Structure& s, const Form& c) {
    if (c.is_zero()) throw DomainError("degenerate input: c = 0");
    if (c.degree() != 2 || !is_pure_type(c, s.J, 2, 0)) throw DomainError("gamma_from_c: c is not of type (2,0)");
    RotationParameter p;
    p.c = c;
    const Form cc = wedge(c, c);
    const Scalar n2 = norm_sq(c);
    if (norm_sq(cc) != n2 * n2) throw DomainError("not rotatable by any theta: |c ^ c| != |c|^2");
    const Form target = s.theta * (n2 * Scalar(mpq_class(1, 4)));
    if (cc != target) p.theta_rescaled = cc * (Scalar(4) / n2);
    p.gamma = (c + c.conj()) * Scalar(mpq_class(1, 2));
    p.gamma_norm_sq = norm_sq(p.gamma);
    p.rho_sq = Scalar(4) + p.gamma_norm_sq;
    return p;
}

RotationParameter gamma_param(const SU4Structure& s, const Form& gamma) {
    if (gamma.is_zero()) throw DomainError("degenerate input: gamma = 0");
    if (!gamma.is_real()) throw DomainError("gamma_param: gamma must be real");
    return gamma_from_c(s, bidegree_project(gamma, s.J, 2, 0) * Scalar(2));
}

RotationResult rotate(const SU4Structure& s, const RotationParameter& p) {
    if (p.theta_rescaled) throw DomainError("rotate: gamma is not in A+ for this theta");
    RotationResult r;
    r.omega_plus_gamma = s.omega + p.gamma;
    const bool exact = form_tower(s.omega) && form_tower(s.theta) && form_tower(p.gamma) && p.rho_sq.is_exact();
    if (exact) {
        if (!p.rho_sq.is_rational()) throw TowerError("rotate: |omega + gamma|^2 is not rational");
        TowerPtr base = Tower::join(Tower::join(form_tower(s.omega), form_tower(s.theta)), form_tower(p.gamma));
        TowerPtr t = Tower::join(base, Tower::make(base->declared_d(), p.rho_sq.to_rational()));
        r.rho = Scalar::rho(t);
    } else {
        r.rho = Scalar::fl(std::sqrt(p.rho_sq.to_complex().real()));
    }
    SU4Structure& out = r.rotated;
    out.omega = r.omega_plus_gamma * (Scalar(2) / r.rho);

    const Mat W = two_form_matrix(out.omega);
    const Mat I = Mat::identity(kDim);
    auto valid = [&](const Mat& J) {
        return is_complex_structure(J) && is_orthogonal(J) && W * J == I && is_pure_type(out.omega, J, 1, 1);
    };
    Mat J1 = inverse(W) * Scalar(-1);
    if (valid(J1)) {
        out.J = J1;
        r.convention = "negative-inverse";
    } else if (valid(J1.transpose())) {
        out.J = J1.transpose();
        r.convention = "transposed";
    } else {
        throw DomainError("rotate: J' recovery failed (omega' is not in Lambda^2_7)");
    }

    const Form Omega = s.Omega();
    const Form rest = Omega - wedge(out.omega, out.omega) * Scalar(mpq_class(1, 2));
    out.theta = bidegree_project(rest, out.J, 4, 0) * Scalar(2);

    const Form re = out.theta.re(), im = out.theta.im();
    bool plus = true, minus = true;
    for (Mask m : basis(4)) {
        Scalar lhs = im.coeff(m), rhs = eval_first_slot(re, out.J, m);
        plus = plus && lhs == rhs;
        minus = minus && lhs == -rhs;
    }
    r.im_theta_sign = plus ? 1 : (minus ? -1 : 0);
    return r;
}

Scalar k_value(const Form& beta, const SU4Structure& s) {
    if (!beta.is_zero() && beta.degree() != 4) throw std::invalid_argument("k_value: beta must be a 4-form");
    return wedge(beta, wedge(s.omega, s.omega)).top() / Scalar(24);
}

Scalar rotation_residual(const Form& beta, const SU4Structure& s, const RotationParameter& p) {
    auto parts = lefschetz_decompose(beta, s.omega, &s.J);
    Form lhs = beta - wedge(s.omega, s.omega) * (Scalar(3) * parts.k);
    return wedge(wedge(lhs, p.gamma), p.gamma).top();
}

RotationParameter rotate_back_gamma(const SU4Structure& s, const RotationParameter& p, const RotationResult& r) {
    Form g = (p.gamma - s.omega * (p.gamma_norm_sq * Scalar(mpq_class(1, 4)))) * (Scalar(-2) / r.rho);
    return gamma_param(r.rotated, g);
}

std::string to_string(Definiteness d) {
    switch (d) {
        case Definiteness::Zero: return "zero";
        case Definiteness::NegativeSemidefinite: return "negative-semidefinite";
        case Definiteness::PositiveSemidefinite: return "positive-semidefinite";
        case Definiteness::Indefinite: return "indefinite";
    }
    return "?";
}

std::vector<Form> aplus_forms(const SU4Structure& s) {
    if (is_standard(s)) return aplus_basis().gamma;
    return su4_pieces(s).a_plus.forms();
}

PhiForm phi_form(const Form& beta, const SU4Structure& s) {
    if (!beta.is_real()) throw DomainError("phi_form: beta must be real");
    if (!is_pure_type(beta, s.J, 2, 2)) throw DomainError("phi_form: beta is not of type (2,2)");
    PhiForm phi;
    phi.k = k_value(beta, s);
    phi.basis = aplus_forms(s);
    const Form lhs = beta - wedge(s.omega, s.omega) * (Scalar(3) * phi.k);
    const int n = static_cast<int>(phi.basis.size());
    phi.matrix = Mat(n, n);
    for (int i = 0; i < n; ++i) {
        Form li = wedge(lhs, phi.basis[i]);
        for (int j = i; j < n; ++j) {
            phi.matrix(i, j) = wedge(li, phi.basis[j]).top();
            phi.matrix(j, i) = phi.matrix(i, j);
        }
    }
    return phi;
}

Classification classify(const Mat& a) {
    Classification c;
    const int n = a.rows();
    if (a.is_exact()) {
        RootSigns rs = real_root_signs(charpoly(a));
        c.positive = rs.positive;
        c.negative = rs.negative;
        c.zero = rs.zero;
    } else {
        Eigen::MatrixXcd m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = a(i, j).to_complex();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
        const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        for (int i = 0; i < n; ++i) {
            double v = es.eigenvalues()(i);
            if (std::abs(v) <= 1e-9 * scale) ++c.zero;
            else if (v > 0) ++c.positive;
            else ++c.negative;
        }
    }
    if (c.positive == 0 && c.negative == 0) c.kind = Definiteness::Zero;
    else if (c.positive == 0) c.kind = Definiteness::NegativeSemidefinite;
    else if (c.negative == 0) c.kind = Definiteness::PositiveSemidefinite;
    else c.kind = Definiteness::Indefinite;
    return c;
}

FirstVariation first_variation_residuals(const Form& beta, const SU4Structure& s, const RotationParameter& p) {
    if (!rotation_residual(beta, s, p).is_zero())
        throw DomainError("first_variation_residuals: rotation residual is nonzero");
    auto parts = lefschetz_decompose(beta, s.omega, &s.J);
    FirstVariation fv;
    fv.residual1 = wedge(parts.beta0 - wedge(s.omega, s.omega) * (Scalar(2) * parts.k), p.gamma);
    const std::vector<Form> minus = aminus_forms(s);
    Mat A(binomial8(4), static_cast<int>(minus.size()));
    for (size_t j = 0; j < minus.size(); ++j) {
        Form g = wedge(p.gamma, minus[j]);
        auto c = g.is_zero() ? std::vector<Scalar>(70) : g.coords();
        for (int i = 0; i < 70; ++i) A(i, static_cast<int>(j)) = c[i];
    }
    Form rhs = wedge(parts.beta1, s.omega);
    auto x = solve_any(A, Mat::column(rhs.is_zero() ? std::vector<Scalar>(70) : rhs.coords()));
    fv.solvable = x.has_value();
    if (x) {
        Form gp(2);
        for (size_t j = 0; j < minus.size(); ++j) gp += minus[j] * (*x)(static_cast<int>(j), 0);
        fv.gamma_prime = gp;
    }
    return fv;
}

}  // namespace spin7

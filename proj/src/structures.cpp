#include "spin7/structures.hpp"

namespace spin7 {

namespace {

Mat coords_matrix(int degree, const std::vector<Form>& gens) {
    Mat m(binomial8(degree), static_cast<int>(gens.size()));
    for (size_t j = 0; j < gens.size(); ++j) {
        if (!gens[j].is_zero() && gens[j].degree() != degree)
            throw std::invalid_argument("subspace generator has wrong degree");
        auto c = gens[j].coords();
        if (gens[j].is_zero()) c.assign(binomial8(degree), Scalar(0));
        for (int i = 0; i < m.rows(); ++i) m(i, static_cast<int>(j)) = c[i];
    }
    return m;
}

Mat hcat(const Mat& a, const Mat& b) {
    Mat m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

Mat vcat(const Mat& a, const Mat& b) {
    Mat m(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

// Matrix of a linear map on Lambda^k given on basis forms.
template <class F>
Mat operator_matrix(int k_in, int k_out, F&& f) {
    const auto& b = basis(k_in);
    Mat m(binomial8(k_out), static_cast<int>(b.size()));
    for (size_t j = 0; j < b.size(); ++j) {
        Form img = f(Form::dx(indices(b[j])));
        if (img.is_zero()) continue;
        auto c = img.coords();
        for (int i = 0; i < m.rows(); ++i) m(i, static_cast<int>(j)) = c[i];
    }
    return m;
}

Form frame_word(const ComplexFrame& fr, const std::vector<int>& word) {
    Form out = Form::constant(1);
    for (int w : word) out = wedge(out, w > 0 ? fr.e[w - 1] : fr.e[-w - 1].conj());
    return out;
}

// Real and imaginary parts of the frame words of type (p, q).
std::vector<Form> real_type_forms(const ComplexFrame& fr, int p, int q) {
    std::vector<Form> out;
    auto hol = [](int n) {
        std::vector<std::vector<int>> sets;
        for (unsigned m = 0; m < 16; ++m) {
            if (__builtin_popcount(m) != n) continue;
            std::vector<int> s;
            for (int j = 0; j < 4; ++j)
                if (m >> j & 1) s.push_back(j + 1);
            sets.push_back(s);
        }
        return sets;
    };
    for (const auto& a : hol(p)) {
        for (const auto& b : hol(q)) {
            std::vector<int> w = a;
            for (int j : b) w.push_back(-j);
            Form f = frame_word(fr, w);
            out.push_back(f.re());
            out.push_back(f.im());
        }
    }
    return out;
}

Form primitive_3(const Form& beta, const Form& omega) {
    // beta - eta ^ omega with eta ^ omega^3 = beta ^ omega^2.
    const Form w2 = wedge(omega, omega), w3 = wedge(w2, omega);
    Mat L3 = operator_matrix(1, 7, [&](const Form& e) { return wedge(e, w3); });
    Form rhs = wedge(beta, w2);
    Form eta = Form::from_coords(1, mat_vec(inverse(L3), rhs.is_zero() ? std::vector<Scalar>(8) : rhs.coords()));
    return beta - wedge(eta, omega);
}

}  // namespace

// ------------------------------------------------------------- Subspace

Subspace::Subspace(int degree, const std::vector<Form>& gens) : deg_(degree) {
    basis_ = gens.empty() ? Mat(binomial8(degree), 0) : column_basis(coords_matrix(degree, gens));
}

Subspace Subspace::from_columns(int degree, const Mat& cols) {
    Subspace s;
    s.deg_ = degree;
    s.basis_ = cols.cols() == 0 ? cols : column_basis(cols);
    return s;
}

std::vector<Form> Subspace::forms() const {
    std::vector<Form> out;
    for (int j = 0; j < basis_.cols(); ++j) out.push_back(Form::from_coords(deg_, basis_.col(j)));
    return out;
}

bool Subspace::contains(const Form& f) const {
    if (f.is_zero()) return true;
    if (f.degree() != deg_) return false;
    return rank(hcat(basis_, coords_matrix(deg_, {f}))) == dim();
}

bool Subspace::contains(const Subspace& o) const {
    if (o.dim() == 0) return true;
    if (o.deg_ != deg_) return false;
    return rank(hcat(basis_, o.basis_)) == dim();
}

Subspace Subspace::operator+(const Subspace& o) const {
    if (dim() == 0) return o;
    if (o.dim() == 0) return *this;
    if (o.deg_ != deg_) throw std::invalid_argument("sum of subspaces of different degree");
    return from_columns(deg_, hcat(basis_, o.basis_));
}

// ------------------------------------------------------------- structures

Form cayley_form() {
    Form f(4);
    const std::vector<std::pair<std::vector<int>, int>> terms = {
        {{1, 2, 3, 4}, 1},  {{1, 2, 5, 6}, 1},  {{1, 2, 7, 8}, 1},  {{1, 3, 5, 7}, 1},  {{1, 3, 6, 8}, -1},
        {{1, 4, 5, 8}, -1}, {{1, 4, 6, 7}, -1}, {{2, 3, 5, 8}, -1}, {{2, 3, 6, 7}, -1}, {{2, 4, 5, 7}, -1},
        {{2, 4, 6, 8}, 1},  {{3, 4, 5, 6}, 1},  {{3, 4, 7, 8}, 1},  {{5, 6, 7, 8}, 1}};
    for (const auto& [idx, s] : terms) f.add_term(mask_of(idx), s);
    return f;
}

Form SU4Structure::Omega() const { return wedge(omega, omega) * Scalar(mpq_class(1, 2)) + theta.re(); }

SU4Structure standard_su4() {
    SU4Structure s;
    s.J = standard_J();
    s.omega = Form(2);
    for (int j = 1; j <= 4; ++j) s.omega += Form::dx({2 * j - 1, 2 * j});
    s.theta = dz_word({1, 2, 3, 4});
    return s;
}

void validate(const SU4Structure& s) {
    if (!is_complex_structure(s.J)) throw DomainError("SU(4) structure: J^2 != -Id");
    if (!is_orthogonal(s.J)) throw DomainError("SU(4) structure: J is not orthogonal");
    if (s.omega.degree() != 2 || !s.omega.is_real()) throw DomainError("SU(4) structure: omega is not a real 2-form");
    if (!is_pure_type(s.omega, s.J, 1, 1)) throw DomainError("SU(4) structure: omega is not of type (1,1)");
    if (power(s.omega, 4).top() != Scalar(24)) throw DomainError("SU(4) structure: omega^4 != 24 vol");
    if (s.theta.degree() != 4 || !is_pure_type(s.theta, s.J, 4, 0))
        throw DomainError("SU(4) structure: theta is not of type (4,0)");
    if (wedge(s.theta, s.theta.conj()).top() != Scalar(16))
        throw DomainError("SU(4) structure: theta ^ conj(theta) != 16 vol");
}

Form su4_to_spin7(const SU4Structure& s) {
    validate(s);
    return s.Omega();
}

// ------------------------------------------------------------- Spin(7)

Spin7Structure::Spin7Structure(const Form& Omega) : Omega_(Omega) {
    if (Omega.degree() != 4) throw std::invalid_argument("Spin(7) structure: Omega must be a 4-form");
    A_ = operator_matrix(2, 2, [&](const Form& a) { return hodge_star(wedge(Omega_, a)); });
    const Mat I = Mat::identity(28);
    pi7_ = (A_ + I) * Scalar(mpq_class(1, 4));
    pi21_ = (I * Scalar(3) - A_) * Scalar(mpq_class(1, 4));
}

std::pair<Form, Form> Spin7Structure::project_2form(const Form& alpha) const {
    if (alpha.degree() != 2 && !alpha.is_zero()) throw std::invalid_argument("project_2form: degree must be 2");
    auto c = alpha.is_zero() ? std::vector<Scalar>(28) : alpha.coords();
    return {Form::from_coords(2, mat_vec(pi7_, c)), Form::from_coords(2, mat_vec(pi21_, c))};
}

Subspace Spin7Structure::lambda2_7() const { return Subspace::from_columns(2, nullspace(A_ - Mat::identity(28) * Scalar(3))); }

Subspace Spin7Structure::lambda2_21() const { return Subspace::from_columns(2, nullspace(A_ + Mat::identity(28))); }

Subspace Spin7Structure::lambda3_8() const {
    std::vector<Form> g;
    for (int i = 1; i <= kDim; ++i) g.push_back(hodge_star(wedge(Form::dx({i}), Omega_)));
    return Subspace(3, g);
}

Subspace Spin7Structure::lambda3_48() const {
    return Subspace::from_columns(3, nullspace(lambda3_8().basis().adjoint()));
}

Subspace Spin7Structure::lambda4_1() const { return Subspace(4, {Omega_}); }

Subspace Spin7Structure::lambda4_7() const {
    std::vector<Form> g;
    for (const Form& a : lambda2_7().forms()) g.push_back(derivation(Omega_, two_form_matrix(a)));
    return Subspace(4, g);
}

Subspace Spin7Structure::lambda4_35() const {
    Mat star = operator_matrix(4, 4, [](const Form& a) { return hodge_star(a); });
    return Subspace::from_columns(4, nullspace(star + Mat::identity(70)));
}

Subspace Spin7Structure::lambda4_27() const {
    Mat star = operator_matrix(4, 4, [](const Form& a) { return hodge_star(a); });
    Mat perp = (lambda4_1() + lambda4_7()).basis().adjoint();
    return Subspace::from_columns(4, nullspace(vcat(star - Mat::identity(70), perp)));
}

Spin7Report verify_spin7(const Form& Omega) {
    Spin7Report r;
    if (Omega.degree() != 4) throw std::invalid_argument("verify_spin7: Omega must be a 4-form");
    r.self_dual = hodge_star(Omega) == Omega;
    r.omega_wedge_omega = wedge(Omega, Omega).top();
    Spin7Structure S(Omega);
    const Mat I = Mat::identity(28);
    r.mult_3 = 28 - rank(S.wedge_star() - I * Scalar(3));
    r.mult_minus1 = 28 - rank(S.wedge_star() + I);
    r.other = 28 - r.mult_3 - r.mult_minus1;
    r.pass = r.self_dual && r.omega_wedge_omega == Scalar(14) && r.mult_3 == 7 && r.mult_minus1 == 21;
    return r;
}

// ------------------------------------------------------------- L operator

LOperator::LOperator(const SU4Structure& s) : s_(s) {
    ComplexFrame fr = complex_frame(s.J);
    for (int a = 1; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b) f_.push_back(frame_word(fr, {a, b}));
    const Scalar tt = wedge(s.theta, s.theta.conj()).top();
    Mat M(6, 6);
    for (int j = 0; j < 6; ++j)
        for (int k = 0; k < 6; ++k) M(j, k) = wedge(wedge(f_[j], f_[k]), s.theta.conj()).top() / tt;
    m_inv_ = inverse(M);
}

Form LOperator::apply20(const Form& beta) const {
    // conj(L(beta)) = sum_k x_k f_k with sum_k M_jk x_k = <f_j, beta> / 4.
    std::vector<Scalar> rhs(6);
    for (int j = 0; j < 6; ++j) rhs[j] = inner(f_[j], beta) * Scalar(mpq_class(1, 4));
    auto x = mat_vec(m_inv_, rhs);
    Form out(2);
    for (int k = 0; k < 6; ++k) out += f_[k] * x[k];
    return out.conj();
}

Form LOperator::operator()(const Form& alpha) const {
    if (alpha.is_zero()) return Form(2);
    if (alpha.degree() != 2) throw DomainError("L operator: input must be a 2-form");
    Form a20 = bidegree_project(alpha, s_.J, 2, 0);
    Form a02 = bidegree_project(alpha, s_.J, 0, 2);
    if (a20 + a02 != alpha) throw DomainError("L operator: input has a (1,1) component");
    Form out = apply20(a20);
    if (!a02.is_zero()) out += apply20(a02.conj()).conj();
    return out;
}

Form l_operator(const SU4Structure& s, const Form& alpha) { return LOperator(s)(alpha); }

const APlusBasis& aplus_basis() {
    static const APlusBasis b = [] {
        APlusBasis r;
        const Scalar i = Scalar::i();
        auto dzz = [](int a, int b) { return dz_word({a, b}); };
        r.c = {dzz(1, 2) + dzz(3, 4),         (dzz(1, 2) - dzz(3, 4)) * i, dzz(1, 3) - dzz(2, 4),
               (dzz(1, 3) + dzz(2, 4)) * i,   dzz(1, 4) + dzz(2, 3),       (dzz(1, 4) - dzz(2, 3)) * i};
        r.c_prime = {(dzz(1, 2) + dzz(3, 4)) * i, dzz(3, 4) - dzz(1, 2), (dzz(1, 3) - dzz(2, 4)) * i,
                     -(dzz(1, 3) + dzz(2, 4)),    (dzz(1, 4) + dzz(2, 3)) * i, dzz(2, 3) - dzz(1, 4)};
        const Scalar half = mpq_class(1, 2);
        for (const auto& c : r.c) r.gamma.push_back((c + c.conj()) * half);
        for (const auto& c : r.c_prime) r.gamma_prime.push_back((c + c.conj()) * half);
        return r;
    }();
    return b;
}

std::pair<Form, Form> a_pm_decompose(const SU4Structure& s, const Form& a) {
    if (a.is_zero()) return {Form(2), Form(2)};
    if (!a.is_real()) throw DomainError("a_pm_decompose: input must be real");
    Form La = l_operator(s, a);
    const Scalar half = mpq_class(1, 2);
    return {(a + La) * half, (a - La) * half};
}

// ------------------------------------------------------------- SU(4) pieces

SU4Pieces su4_pieces(const SU4Structure& s) {
    SU4Pieces p;
    const ComplexFrame fr = complex_frame(s.J);
    const Form& w = s.omega;
    const Form w2 = wedge(w, w);
    Lefschetz lf(w);

    LOperator L(s);
    std::vector<Form> plus, minus;
    for (const Form& f : real_type_forms(fr, 2, 0)) {
        Form Lf = L(f);
        plus.push_back(f + Lf);
        minus.push_back(f - Lf);
    }
    p.a_plus = Subspace(2, plus);
    p.a_minus = Subspace(2, minus);

    std::vector<Form> g;
    for (const Form& f : real_type_forms(fr, 1, 1)) g.push_back(lf.primitive_2(f));
    p.d11_prim = Subspace(2, g);
    p.omega_line = Subspace(2, {w});

    p.d30 = Subspace(3, real_type_forms(fr, 3, 0));
    g.clear();
    for (int i = 1; i <= kDim; ++i) g.push_back(wedge(Form::dx({i}), w));
    p.d10_omega = Subspace(3, g);
    g.clear();
    for (const Form& f : real_type_forms(fr, 2, 1)) g.push_back(primitive_3(f, w));
    p.d21_prim = Subspace(3, g);

    p.omega_4 = Subspace(4, {w2});
    p.im_theta = Subspace(4, {s.theta.im()});
    p.re_theta = Subspace(4, {s.theta.re()});
    g.clear();
    for (const Form& a : p.a_minus.forms()) g.push_back(wedge(a, w));
    p.a_minus_omega = Subspace(4, g);
    g.clear();
    for (const Form& a : p.a_plus.forms()) g.push_back(wedge(a, w));
    p.a_plus_omega = Subspace(4, g);
    g.clear();
    for (const Form& f : real_type_forms(fr, 2, 2)) g.push_back(lf.decompose(f).beta0);
    p.d22_prim = Subspace(4, g);
    p.omega2_minus_retheta = Subspace(4, {w2 - s.theta.re() * Scalar(mpq_class(3, 2))});
    g.clear();
    for (const Form& f : real_type_forms(fr, 1, 3)) g.push_back(lf.decompose(f).beta0);
    p.d13_prim = Subspace(4, g);
    g.clear();
    for (const Form& a : p.d11_prim.forms()) g.push_back(wedge(a, w));
    p.d11_prim_omega = Subspace(4, g);
    return p;
}

FourFormDecomposition decompose_4form(const Spin7Structure& S, const SU4Structure& s, const Form& beta) {
    if (!beta.is_zero() && beta.degree() != 4) throw std::invalid_argument("decompose_4form: degree must be 4");
    if (!beta.is_real()) throw DomainError("decompose_4form: beta must be real");
    if (S.Omega() != s.Omega()) throw DomainError("decompose_4form: SU(4) structure does not induce Omega");
    SU4Pieces p = su4_pieces(s);
    Subspace omega_line(4, {S.Omega()});
    const std::vector<std::pair<std::string, Subspace>> parts = {
        {"Omega", omega_line},
        {"A-omega", p.a_minus_omega},
        {"Im theta", p.im_theta},
        {"A+omega", p.a_plus_omega},
        {"D22 prim", p.d22_prim},
        {"omega^2 - 3/2 Re theta", p.omega2_minus_retheta},
        {"D13 prim", p.d13_prim},
        {"D11 prim omega", p.d11_prim_omega},
    };
    Mat all(70, 0);
    for (const auto& [name, sub] : parts) all = hcat(all, sub.basis());
    if (all.cols() != 70) throw DomainError("decompose_4form: SU(4) pieces do not span Lambda^4");
    auto coeffs = solve(all, Mat::column(beta.is_zero() ? std::vector<Scalar>(70) : beta.coords()));

    FourFormDecomposition d;
    d.lambda1 = d.lambda7 = d.lambda27 = d.lambda35 = Form(4);
    int off = 0;
    for (size_t k = 0; k < parts.size(); ++k) {
        const Mat& b = parts[k].second.basis();
        Form f(4);
        for (int j = 0; j < b.cols(); ++j) f += Form::from_coords(4, b.col(j)) * coeffs(off + j, 0);
        off += b.cols();
        d.pieces.emplace_back(parts[k].first, f);
        if (k == 0) d.lambda1 += f;
        else if (k <= 2) d.lambda7 += f;
        else if (k <= 5) d.lambda27 += f;
        else d.lambda35 += f;
    }
    return d;
}

std::vector<BranchingLine> branching_lines(const Spin7Structure& S, const SU4Structure& s) {
    SU4Pieces p = su4_pieces(s);
    auto line = [](std::string name, const Subspace& spin7, const Subspace& su4) {
        BranchingLine l;
        l.name = std::move(name);
        l.spin7_dim = spin7.dim();
        l.su4_dim = su4.dim();
        l.su4_in_spin7 = spin7.contains(su4);
        l.spin7_in_su4 = su4.contains(spin7);
        return l;
    };
    return {
        line("L2_7 = <omega> + A+", S.lambda2_7(), p.omega_line + p.a_plus),
        line("L2_21 = D11prim + A-", S.lambda2_21(), p.d11_prim + p.a_minus),
        line("L3_8 = D30 + D10 omega", S.lambda3_8(), p.d30 + p.d10_omega),
        line("L3_48 = D21prim", S.lambda3_48(), p.d21_prim),
        line("L4_1 = <omega^2/2 + Re theta>", S.lambda4_1(), Subspace(4, {s.Omega()})),
        line("L4_7 = A- omega + <Im theta>", S.lambda4_7(), p.a_minus_omega + p.im_theta),
        line("L4_27 = A+ omega + D22prim + <omega^2 - 3/2 Re theta>", S.lambda4_27(),
             p.a_plus_omega + p.d22_prim + p.omega2_minus_retheta),
        line("L4_35 = D13prim + D11prim omega", S.lambda4_35(), p.d13_prim + p.d11_prim_omega),
    };
}

SpanReport span_checks(const SU4Structure& s) {
    SU4Pieces p = su4_pieces(s);
    auto plus = p.a_plus.forms();
    auto minus = p.a_minus.forms();
    std::vector<Form> sym, mixed;
    for (size_t i = 0; i < plus.size(); ++i)
        for (size_t j = i; j < plus.size(); ++j) sym.push_back(wedge(plus[i], plus[j]));
    for (const auto& a : plus)
        for (const auto& b : minus) mixed.push_back(wedge(a, b));
    Subspace S_sym(4, sym), S_mixed(4, mixed);

    SpanReport r;
    r.dim_sym = S_sym.dim();
    r.dim_mixed = S_mixed.dim();

    // Re theta and omega^2 are orthogonal to D22prim, so the line modulo D22prim is read
    // off from the orthogonal projections onto them.
    const Form re = s.theta.re(), w2 = wedge(s.omega, s.omega);
    Scalar a_ref, b_ref;
    for (const Form& x : sym) {
        Scalar a = inner(x, re) / norm_sq(re), b = inner(x, w2) / norm_sq(w2);
        if (a.is_zero() && b.is_zero()) continue;
        if (a.is_zero()) throw DomainError("span_checks: Re theta does not occur in Sym^2 A+");
        a_ref = a;
        b_ref = b;
        break;
    }
    r.coefficient = b_ref / a_ref;
    r.sym_matches_computed = S_sym.equals(p.d22_prim + Subspace(4, {re + w2 * r.coefficient}));
    r.sym_matches_stated = S_sym.equals(p.d22_prim + Subspace(4, {re + w2 * Scalar(8)}));
    r.mixed_matches = S_mixed.equals(p.d11_prim_omega + p.im_theta);
    return r;
}

}  // namespace spin7

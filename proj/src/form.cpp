#include "spin7/form.hpp"

#include <array>
#include <sstream>

namespace spin7 {

int popcount(Mask m) { return __builtin_popcount(static_cast<unsigned>(m)); }

std::vector<int> indices(Mask m) {
    std::vector<int> out;
    for (int b = 0; b < kDim; ++b) {
        if (m >> b & 1) out.push_back(b + 1);
    }
    return out;
}

Mask mask_of(const std::vector<int>& idx) {
    unsigned m = 0;
    for (int i : idx) {
        if (i < 1 || i > kDim) throw std::invalid_argument("form index out of range: " + std::to_string(i));
        if (m >> (i - 1) & 1) throw std::invalid_argument("repeated form index " + std::to_string(i));
        m |= 1u << (i - 1);
    }
    return static_cast<Mask>(m);
}

namespace {

struct BasisTables {
    std::array<std::vector<Mask>, kDim + 1> by_degree;
    std::array<int, 256> position{};
    BasisTables() {
        for (int k = 0; k <= kDim; ++k) {
            std::vector<int> idx(k);
            for (int i = 0; i < k; ++i) idx[i] = i + 1;
            while (true) {
                by_degree[k].push_back(mask_of(idx));
                int i = k - 1;
                while (i >= 0 && idx[i] == kDim - k + i + 1) --i;
                if (i < 0) break;
                ++idx[i];
                for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            }
            for (size_t p = 0; p < by_degree[k].size(); ++p) position[by_degree[k][p]] = static_cast<int>(p);
        }
    }
};

const BasisTables& tables() {
    static const BasisTables t;
    return t;
}

// Sign of dx_A ^ dx_B relative to dx_{A u B} (A, B disjoint).
int wedge_sign(Mask a, Mask b) {
    int inversions = 0;
    for (int bit = 0; bit < kDim; ++bit) {
        if (!(b >> bit & 1)) continue;
        inversions += popcount(static_cast<Mask>(a & ~((2u << bit) - 1)));
    }
    return (inversions & 1) ? -1 : 1;
}

bool same_degree_or_zero(const Form& a, const Form& b) {
    return a.degree() == b.degree() || a.is_zero() || b.is_zero();
}

}  // namespace

const std::vector<Mask>& basis(int k) {
    if (k < 0 || k > kDim) throw std::invalid_argument("form degree out of range");
    return tables().by_degree[k];
}

int basis_position(Mask m) { return tables().position[m]; }

int binomial8(int k) { return static_cast<int>(basis(k).size()); }

// ------------------------------------------------------------------ Form

Form Form::dx(const std::vector<int>& idx, const Scalar& c) {
    // Accepts unsorted indices; the sign of the sorting permutation is applied.
    Form f(static_cast<int>(idx.size()));
    Mask m = 0;
    int sign = 1;
    for (int i : idx) {
        Mask single = mask_of({i});
        if (m & single) return f;
        sign *= wedge_sign(m, single);
        m |= single;
    }
    f.add_term(m, sign > 0 ? c : -c);
    return f;
}

Form Form::constant(const Scalar& c) {
    Form f(0);
    f.add_term(0, c);
    return f;
}

Form Form::vol() { return dx({1, 2, 3, 4, 5, 6, 7, 8}); }

Scalar Form::coeff(Mask m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Scalar(0) : it->second;
}

void Form::add_term(Mask m, const Scalar& c) {
    if (popcount(m) != deg_) throw std::invalid_argument("term degree does not match form degree");
    if (c.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

bool Form::is_real() const {
    for (const auto& [m, c] : t_) {
        if (!c.is_real()) return false;
    }
    return true;
}

bool Form::is_exact() const {
    for (const auto& [m, c] : t_) {
        if (!c.is_exact()) return false;
    }
    return true;
}

Form Form::conj() const {
    Form f(deg_);
    for (const auto& [m, c] : t_) f.t_.emplace(m, c.conj());
    return f;
}

Form Form::re() const {
    Form f(deg_);
    for (const auto& [m, c] : t_) f.add_term(m, c.re());
    return f;
}

Form Form::im() const {
    Form f(deg_);
    for (const auto& [m, c] : t_) f.add_term(m, c.im());
    return f;
}

Form Form::galois() const {
    Form f(deg_);
    for (const auto& [m, c] : t_) f.add_term(m, c.galois());
    return f;
}

Form Form::to_float() const {
    Form f(deg_);
    for (const auto& [m, c] : t_) f.add_term(m, c.to_float());
    return f;
}

std::vector<Scalar> Form::coords() const {
    std::vector<Scalar> v(basis(deg_).size());
    for (const auto& [m, c] : t_) v[basis_position(m)] = c;
    return v;
}

Form Form::from_coords(int degree, const std::vector<Scalar>& c) {
    const auto& b = basis(degree);
    if (c.size() != b.size()) throw std::invalid_argument("coordinate vector has wrong length");
    Form f(degree);
    for (size_t k = 0; k < b.size(); ++k) f.add_term(b[k], c[k]);
    return f;
}

Form& Form::operator+=(const Form& o) {
    if (!same_degree_or_zero(*this, o)) throw std::invalid_argument("adding forms of different degree");
    if (is_zero() && !o.is_zero()) deg_ = o.deg_;
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

Form& Form::operator-=(const Form& o) { return *this += -o; }

Form& Form::operator*=(const Scalar& s) {
    if (s.is_zero()) {
        t_.clear();
        return *this;
    }
    std::map<Mask, Scalar> out;
    for (auto& [m, c] : t_) {
        Scalar v = c * s;
        if (!v.is_zero()) out.emplace(m, std::move(v));
    }
    t_ = std::move(out);
    return *this;
}

Form Form::operator-() const {
    Form f(deg_);
    for (const auto& [m, c] : t_) f.t_.emplace(m, -c);
    return f;
}

bool operator==(const Form& a, const Form& b) {
    if (a.is_zero() && b.is_zero()) return true;
    if (a.deg_ != b.deg_) return false;
    return (a - b).is_zero();
}

std::string Form::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& b : basis(deg_)) {
        auto it = t_.find(b);
        if (it == t_.end()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << it->second.str() << ")";
        if (deg_ > 0) {
            os << "*dx";
            for (int i : indices(b)) os << i;
        }
    }
    return os.str();
}

Form wedge(const Form& a, const Form& b) {
    const int deg = a.degree() + b.degree();
    if (deg > kDim) return Form(kDim);
    Form out(deg);
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            if (ma & mb) continue;
            Scalar v = ca * cb;
            if (wedge_sign(ma, mb) < 0) v = -v;
            out.add_term(static_cast<Mask>(ma | mb), v);
        }
    }
    return out;
}

Form wedge_all(const std::vector<Form>& fs) {
    Form out = Form::constant(1);
    for (const auto& f : fs) out = wedge(out, f);
    return out;
}

Form power(const Form& a, int n) {
    Form out = Form::constant(1);
    for (int k = 0; k < n; ++k) out = wedge(out, a);
    return out;
}

Form hodge_star(const Form& a) {
    Form out(kDim - a.degree());
    for (const auto& [m, c] : a.terms()) {
        const Mask comp = static_cast<Mask>(~m);
        out.add_term(comp, wedge_sign(m, comp) > 0 ? c : -c);
    }
    return out;
}

Form hodge_star_conj(const Form& a) { return hodge_star(a.conj()); }

Scalar inner(const Form& a, const Form& b) {
    if (!same_degree_or_zero(a, b)) throw std::invalid_argument("inner product of forms of different degree");
    Scalar s = 0;
    for (const auto& [m, c] : a.terms()) {
        auto it = b.terms().find(m);
        if (it != b.terms().end()) s += c * it->second.conj();
    }
    return s;
}

Scalar norm_sq(const Form& a) { return inner(a, a); }

Form dz(int j) {
    Form f(1);
    f.add_term(mask_of({2 * j - 1}), 1);
    f.add_term(mask_of({2 * j}), Scalar::i());
    return f;
}

Form dzbar(int j) { return dz(j).conj(); }

Form dz_word(const std::vector<int>& word) {
    Form out = Form::constant(1);
    for (int w : word) {
        if (w == 0 || w > 4 || w < -4) throw std::invalid_argument("complex index out of range");
        out = wedge(out, w > 0 ? dz(w) : dzbar(-w));
    }
    return out;
}

static Form one_form_image(int i, const Mat& A) {
    Form f(1);
    for (int j = 0; j < kDim; ++j) {
        if (!A(i - 1, j).is_zero()) f.add_term(mask_of({j + 1}), A(i - 1, j));
    }
    return f;
}

Form pullback(const Form& a, const Mat& A) {
    std::array<Form, kDim> images;
    for (int i = 1; i <= kDim; ++i) images[i - 1] = one_form_image(i, A);
    Form out(a.degree());
    for (const auto& [m, c] : a.terms()) {
        Form t = Form::constant(c);
        for (int i : indices(m)) t = wedge(t, images[i - 1]);
        out += t;
    }
    return out;
}

Form derivation(const Form& a, const Mat& A) {
    Form out(a.degree());
    for (const auto& [m, c] : a.terms()) {
        for (int i : indices(m)) {
            const Mask rest = static_cast<Mask>(m & ~(1u << (i - 1)));
            for (int j = 1; j <= kDim; ++j) {
                const Scalar& aij = A(i - 1, j - 1);
                if (aij.is_zero()) continue;
                if (j != i && (rest >> (j - 1) & 1)) continue;
                // Replace dx_i by dx_j in place: sign from the elements strictly between.
                const int lo = std::min(i, j), hi = std::max(i, j);
                int between = 0;
                for (int k = lo + 1; k < hi; ++k) between += (rest >> (k - 1)) & 1;
                Scalar v = c * aij;
                if (between & 1) v = -v;
                out.add_term(static_cast<Mask>(rest | (1u << (j - 1))), v);
            }
        }
    }
    return out;
}

Scalar evaluate(const Form& a, const Mat& V) {
    if (V.rows() != kDim || V.cols() != a.degree()) throw std::invalid_argument("evaluate: need 8 x deg matrix");
    Scalar s = 0;
    for (const auto& [m, c] : a.terms()) {
        auto idx = indices(m);
        Mat minor(a.degree(), a.degree());
        for (int r = 0; r < a.degree(); ++r)
            for (int k = 0; k < a.degree(); ++k) minor(r, k) = V(idx[r] - 1, k);
        s += c * det(minor);
    }
    return s;
}

Mat two_form_matrix(const Form& a) {
    if (a.degree() != 2) throw std::invalid_argument("two_form_matrix: degree must be 2");
    Mat W(kDim, kDim);
    for (const auto& [m, c] : a.terms()) {
        auto idx = indices(m);
        W(idx[0] - 1, idx[1] - 1) = c;
        W(idx[1] - 1, idx[0] - 1) = -c;
    }
    return W;
}

Form two_form_from_matrix(const Mat& W) {
    Form f(2);
    for (int i = 0; i < kDim; ++i)
        for (int j = i + 1; j < kDim; ++j) f.add_term(mask_of({i + 1, j + 1}), W(i, j));
    return f;
}

bool is_complex_structure(const Mat& J) {
    return J.rows() == kDim && J.cols() == kDim && J * J == Mat::identity(kDim) * Scalar(-1);
}

bool is_orthogonal(const Mat& J) { return J.transpose() * J == Mat::identity(J.rows()); }

Mat standard_J() {
    Mat J(kDim, kDim);
    for (int j = 0; j < 4; ++j) {
        J(2 * j + 1, 2 * j) = 1;
        J(2 * j, 2 * j + 1) = -1;
    }
    return J;
}

static void require_orthogonal_complex(const Mat& J) {
    if (!is_complex_structure(J)) throw DomainError("J does not satisfy J^2 = -Id");
    if (!is_orthogonal(J)) throw DomainError("J is not orthogonal");
}

static Form bidegree_project_unchecked(const Form& a, const Mat& J, int p, int q) {
    const int k = a.degree();
    if (p < 0 || q < 0 || p > 4 || q > 4 || p + q != k) return Form(k);
    const int target = p - q;
    Form x = a;
    for (int pp = std::max(0, k - 4); pp <= std::min(4, k); ++pp) {
        const int m = 2 * pp - k;
        if (m == target) continue;
        // x <- (D - i m) x / (i (target - m))
        Form dxm = derivation(x, J) - x * (Scalar::i() * Scalar(m));
        x = dxm * (Scalar::i() * Scalar(target - m)).inv();
    }
    return x;
}

Form bidegree_project(const Form& a, const Mat& J, int p, int q) {
    require_orthogonal_complex(J);
    if (p + q != a.degree()) throw std::invalid_argument("bidegree_project: p + q must equal the degree");
    return bidegree_project_unchecked(a, J, p, q);
}

bool is_pure_type(const Form& a, const Mat& J, int p, int q) {
    if (p + q != a.degree()) return a.is_zero();
    return bidegree_project(a, J, p, q) == a;
}

ComplexFrame complex_frame(const Mat& J) {
    require_orthogonal_complex(J);
    std::vector<Form> cand;
    for (int i = 1; i <= kDim; ++i) {
        Form d = Form::dx({i});
        Form f = (d - derivation(d, J) * Scalar::i()) * Scalar(mpq_class(1, 2));
        cand.push_back(f);
    }
    Mat cols(kDim, kDim);
    for (int j = 0; j < kDim; ++j) {
        auto c = cand[j].coords();
        for (int i = 0; i < kDim; ++i) cols(i, j) = c[i];
    }
    Echelon e = rref(cols);
    ComplexFrame fr;
    for (int p : e.pivots) {
        Form f = cand[p];
        for (size_t j = 0; j < fr.e.size(); ++j) f -= fr.e[j] * (inner(f, fr.e[j]) / fr.norm_sq[j]);
        f *= Scalar(2);
        fr.norm_sq.push_back(norm_sq(f));
        fr.e.push_back(f);
    }
    if (fr.e.size() != 4) throw DomainError("complex frame: expected four (1,0)-forms");
    return fr;
}

// ------------------------------------------------------------- Lefschetz

Lefschetz::Lefschetz(const Form& omega) : omega_(omega) {
    if (omega.degree() != 2) throw std::invalid_argument("Lefschetz: omega must be a 2-form");
    omega2_ = wedge(omega, omega);
    omega3_ = wedge(omega2_, omega);
    omega4_ = wedge(omega3_, omega).top();
    if (omega4_.is_zero()) throw DomainError("Lefschetz: omega is degenerate");
    const auto& b2 = basis(2);
    Mat L2(28, 28);
    for (int j = 0; j < 28; ++j) {
        Form img = wedge(Form::dx(indices(b2[j])), omega2_);
        auto c = img.coords();
        for (int i = 0; i < 28; ++i) L2(i, j) = c[i];
    }
    l2_inv_ = inverse(L2);
}

LefschetzParts Lefschetz::decompose(const Form& beta) const {
    if (beta.degree() != 4 && !beta.is_zero()) throw std::invalid_argument("Lefschetz: beta must be a 4-form");
    LefschetzParts out;
    out.k = wedge(beta, omega2_).top() / omega4_;
    Form rest = beta - omega2_ * out.k;
    Form rhs = wedge(rest, omega_);
    out.beta1 = Form::from_coords(2, mat_vec(l2_inv_, rhs.coords()));
    out.beta0 = rest - wedge(out.beta1, omega_);
    if (out.beta0.is_zero()) out.beta0 = Form(4);
    return out;
}

Form Lefschetz::primitive_2(const Form& alpha) const {
    Scalar c = wedge(alpha, omega3_).top() / omega4_;
    return alpha - omega_ * c;
}

LefschetzParts lefschetz_decompose(const Form& beta, const Form& omega, const Mat* J) {
    if (J) {
        if (!beta.is_real()) throw DomainError("lefschetz_decompose: beta is not real");
        if (!is_pure_type(beta, *J, 2, 2)) throw DomainError("lefschetz_decompose: beta is not of type (2,2)");
    }
    return Lefschetz(omega).decompose(beta);
}

}  // namespace spin7

#include "spin7/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace spin7 {

bool is_square_free(long d) {
    if (d < 1) return false;
    for (long p = 2; p * p <= d; ++p) {
        if (d % (p * p) == 0) return false;
    }
    return true;
}

static bool integer_sqrt(const mpz_class& z, mpz_class& root) {
    if (sgn(z) < 0) return false;
    if (!mpz_perfect_square_p(z.get_mpz_t())) return false;
    mpz_sqrt(root.get_mpz_t(), z.get_mpz_t());
    return true;
}

bool rational_sqrt(const mpq_class& q, mpq_class& root) {
    mpz_class n, d;
    if (!integer_sqrt(q.get_num(), n) || !integer_sqrt(q.get_den(), d)) return false;
    root = mpq_class(n, d);
    root.canonicalize();
    return true;
}

std::shared_ptr<const Tower> Tower::make(long d, const mpq_class& rho_sq) {
    if (d < 0) throw TowerError("tower: d must be >= 0");
    if (d > 1 && !is_square_free(d)) throw TowerError("tower: d = " + std::to_string(d) + " is not square-free");
    if (sgn(rho_sq) < 0) throw TowerError("tower: rho^2 must be positive");
    std::shared_ptr<Tower> t(new Tower());
    t->declared_d_ = d;
    t->d_ = (d == 1) ? 0 : d;
    t->r_ = rho_sq;
    if (sgn(rho_sq) > 0) {
        mpq_class root;
        if (rational_sqrt(rho_sq, root)) {
            t->fold_t_ = root;
        } else if (t->d_ > 0 && rational_sqrt(rho_sq * t->d_, root)) {
            t->fold_t_ = root / t->d_;
            t->fold_sqrtd_ = true;
        } else {
            t->has_rho_ = true;
        }
    }
    return t;
}

const std::shared_ptr<const Tower>& Tower::gaussian() {
    static const std::shared_ptr<const Tower> g = make(0, 0);
    return g;
}

bool Tower::same_arithmetic(const Tower& o) const {
    if (d_ != o.d_ || has_rho_ != o.has_rho_) return false;
    return !has_rho_ || r_ == o.r_;
}

std::shared_ptr<const Tower> Tower::join(const std::shared_ptr<const Tower>& a,
                                         const std::shared_ptr<const Tower>& b) {
    if (a == b || a->same_arithmetic(*b)) {
        if (a->declared_d_ >= b->declared_d_ && (a->declares_rho() || !b->declares_rho())) return a;
        if (b->declared_d_ >= a->declared_d_ && (b->declares_rho() || !a->declares_rho())) return b;
    }
    long d = a->d_;
    if (a->d_ != b->d_) {
        if (a->d_ != 0 && b->d_ != 0) {
            throw TowerError("scalar-tower mismatch: d = " + std::to_string(a->d_) + " vs d = " + std::to_string(b->d_));
        }
        d = a->d_ + b->d_;
    }
    long decl = std::max(a->declared_d_, b->declared_d_);
    if (d != 0) decl = d;
    mpq_class r = 0;
    if (a->declares_rho() && b->declares_rho()) {
        if (a->r_ != b->r_) {
            // Two different declared roots are fine when one of them is folded.
            if (!a->has_rho_) r = b->r_;
            else if (!b->has_rho_) r = a->r_;
            else throw TowerError("scalar-tower mismatch: rho^2 = " + a->r_.get_str() + " vs " + b->r_.get_str());
        } else {
            r = a->r_;
        }
    } else if (a->declares_rho()) {
        r = a->r_;
    } else {
        r = b->r_;
    }
    return make(decl, r);
}

std::string Tower::describe() const {
    std::ostringstream os;
    os << "Q(i";
    if (d_ > 0) os << ", sqrt " << d_;
    if (has_rho_) os << ", rho: rho^2 = " << r_.get_str();
    os << ")";
    return os.str();
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar() : t_(Tower::gaussian()) {}
Scalar::Scalar(int n) : t_(Tower::gaussian()) { c_[0] = n; }
Scalar::Scalar(long n) : t_(Tower::gaussian()) { c_[0] = n; }
Scalar::Scalar(const mpq_class& q) : t_(Tower::gaussian()) { c_[0] = q; }
Scalar::Scalar(const mpq_class& q, TowerPtr t) : t_(t ? std::move(t) : Tower::gaussian()) { c_[0] = q; }

Scalar Scalar::gaussian(const mpq_class& re, const mpq_class& im, TowerPtr t) {
    Scalar s(re, std::move(t));
    s.c_[1] = im;
    return s;
}

Scalar Scalar::i(TowerPtr t) { return gaussian(0, 1, std::move(t)); }

Scalar Scalar::sqrt_d(const TowerPtr& t) {
    if (t->d() == 0) {
        if (t->declared_d() == 1) return Scalar(1, t);
        throw TowerError("sqrt d requested in a tower without d");
    }
    Scalar s(0, t);
    s.c_[2] = 1;
    return s;
}

Scalar Scalar::rho(const TowerPtr& t) {
    if (!t->declares_rho()) throw TowerError("rho requested in a tower without rho");
    Scalar s(0, t);
    if (t->has_rho()) {
        s.c_[4] = 1;
    } else if (t->fold_sqrtd()) {
        s.c_[2] = t->fold_t();
    } else {
        s.c_[0] = t->fold_t();
    }
    return s;
}

Scalar Scalar::from_coords(const TowerPtr& t, const std::array<mpq_class, 8>& c) {
    Scalar s(0, t);
    for (int k = 0; k < 8; ++k) {
        if (sgn(c[k]) == 0) continue;
        if ((k & 2) && t->d() == 0) throw TowerError("sqrt d coordinate in a tower without d");
        if ((k & 4) && !t->has_rho()) throw TowerError("rho coordinate in a tower without an independent rho");
        s.c_[k] = c[k];
    }
    return s;
}

Scalar Scalar::fl(std::complex<double> z) {
    Scalar s;
    s.exact_ = false;
    s.f_ = z;
    return s;
}

unsigned Scalar::mask() const {
    unsigned m = 0;
    for (int k = 0; k < 8; ++k) {
        if (sgn(c_[k]) != 0) m |= 1u << k;
    }
    return m;
}

std::complex<double> Scalar::to_complex() const {
    if (!exact_) return f_;
    const double sd = std::sqrt(static_cast<double>(t_->d()));
    const double rh = t_->has_rho() ? std::sqrt(t_->rho_sq().get_d()) : 0.0;
    double re = 0.0, im = 0.0;
    for (int k = 0; k < 8; ++k) {
        if (sgn(c_[k]) == 0) continue;
        double v = c_[k].get_d();
        if (k & 2) v *= sd;
        if (k & 4) v *= rh;
        if (k & 1) im += v; else re += v;
    }
    return {re, im};
}

Scalar Scalar::conj() const {
    if (!exact_) return fl(std::conj(f_));
    Scalar s = *this;
    for (int k = 1; k < 8; k += 2) s.c_[k] = -s.c_[k];
    return s;
}

Scalar Scalar::galois() const {
    if (!exact_) throw DomainError("galois map is not defined in float mode");
    Scalar s = *this;
    for (int k = 0; k < 8; ++k) {
        if (k & 2) s.c_[k] = -s.c_[k];
    }
    return s;
}

Scalar Scalar::rho_conj() const {
    if (!exact_) throw DomainError("rho conjugation is not defined in float mode");
    Scalar s = *this;
    for (int k = 4; k < 8; ++k) s.c_[k] = -s.c_[k];
    return s;
}

Scalar Scalar::re() const {
    if (!exact_) return fl(f_.real());
    Scalar s = *this;
    for (int k = 1; k < 8; k += 2) s.c_[k] = 0;
    return s;
}

Scalar Scalar::im() const {
    if (!exact_) return fl(f_.imag());
    Scalar s(0, t_);
    for (int k = 1; k < 8; k += 2) s.c_[k - 1] = c_[k];
    return s;
}

bool Scalar::is_zero() const {
    if (!exact_) return std::abs(f_) <= kFloatTol;
    for (const auto& c : c_) {
        if (sgn(c) != 0) return false;
    }
    return true;
}

bool Scalar::is_real() const {
    if (!exact_) return std::abs(f_.imag()) <= kFloatTol * std::max(1.0, std::abs(f_));
    for (int k = 1; k < 8; k += 2) {
        if (sgn(c_[k]) != 0) return false;
    }
    return true;
}

bool Scalar::is_rational() const {
    if (!exact_) return false;
    for (int k = 1; k < 8; ++k) {
        if (sgn(c_[k]) != 0) return false;
    }
    return true;
}

mpq_class Scalar::to_rational() const {
    if (!is_rational()) throw DomainError("scalar " + str() + " is not rational");
    return c_[0];
}

// sign(a + b sqrt d) for rationals a, b.
static int sign_quadratic(const mpq_class& a, const mpq_class& b, long d) {
    const int sa = sgn(a), sb = d == 0 ? 0 : sgn(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    const mpq_class diff = a * a - b * b * d;
    return sgn(diff) * sa;
}

int Scalar::sign() const {
    if (!exact_) {
        if (!is_real()) throw DomainError("sign of a non-real float");
        if (std::abs(f_.real()) <= kFloatTol) return 0;
        return f_.real() > 0 ? 1 : -1;
    }
    if (!is_real()) throw DomainError("sign of non-real scalar " + str());
    const long d = t_->d();
    const int su = sign_quadratic(c_[0], c_[2], d);
    const int sv = t_->has_rho() ? sign_quadratic(c_[4], c_[6], d) : 0;
    if (sv == 0) return su;
    if (su == 0) return sv;
    if (su == sv) return su;
    // u + v rho with opposite signs: compare u^2 and v^2 r inside Q(sqrt d).
    const mpq_class& r = t_->rho_sq();
    const mpq_class a = c_[0] * c_[0] + c_[2] * c_[2] * d - r * (c_[4] * c_[4] + c_[6] * c_[6] * d);
    const mpq_class b = 2 * c_[0] * c_[2] - r * 2 * c_[4] * c_[6];
    return sign_quadratic(a, b, d) * su;
}

int compare(const Scalar& a, const Scalar& b) { return (a - b).sign(); }

void Scalar::bring_to(const TowerPtr& t) {
    if (t_ == t) return;
    if (t_->same_arithmetic(*t)) {
        t_ = t;
        return;
    }
    *this = embed(t);
}

Scalar Scalar::embed(const TowerPtr& t) const {
    if (!exact_) return *this;
    if (t_ == t || t_->same_arithmetic(*t)) {
        Scalar s = *this;
        s.t_ = t;
        return s;
    }
    if (t_->d() != 0 && t_->d() != t->d()) throw TowerError("scalar-tower mismatch on embed (d)");
    Scalar out(0, t);
    Scalar rho_val(0, t);
    const bool src_rho = t_->has_rho();
    if (src_rho) {
        if (t->has_rho()) {
            if (t->rho_sq() != t_->rho_sq()) throw TowerError("scalar-tower mismatch on embed (rho)");
        } else if (!t->declares_rho() || t->rho_sq() != t_->rho_sq()) {
            throw TowerError("scalar-tower mismatch on embed (rho)");
        }
        rho_val = rho(t);
    }
    for (int k = 0; k < 8; ++k) {
        if (sgn(c_[k]) == 0) continue;
        Scalar term(c_[k], t);
        if (k & 1) term.c_[1] = term.c_[0], term.c_[0] = 0;
        if (k & 2) term *= sqrt_d(t);
        if (k & 4) term *= rho_val;
        out += term;
    }
    return out;
}

Scalar Scalar::to_float() const { return exact_ ? fl(to_complex()) : *this; }

Scalar& Scalar::operator+=(const Scalar& o) {
    if (!exact_ || !o.exact_) {
        f_ = to_complex() + o.to_complex();
        exact_ = false;
        return *this;
    }
    if (t_ != o.t_) {
        TowerPtr t = Tower::join(t_, o.t_);
        bring_to(t);
        if (!o.t_->same_arithmetic(*t)) {
            Scalar oo = o.embed(t);
            for (int k = 0; k < 8; ++k) c_[k] += oo.c_[k];
            return *this;
        }
    }
    for (int k = 0; k < 8; ++k) {
        if (sgn(o.c_[k]) != 0) c_[k] += o.c_[k];
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar Scalar::operator-() const {
    Scalar s = *this;
    if (!exact_) {
        s.f_ = -f_;
        return s;
    }
    for (auto& c : s.c_) c = -c;
    return s;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (!exact_ || !o.exact_) {
        f_ = to_complex() * o.to_complex();
        exact_ = false;
        return *this;
    }
    const Scalar* rhs = &o;
    Scalar tmp;
    if (t_ != o.t_) {
        TowerPtr t = Tower::join(t_, o.t_);
        bring_to(t);
        if (!o.t_->same_arithmetic(*t)) {
            tmp = o.embed(t);
            rhs = &tmp;
        }
    }
    const unsigned ma = mask(), mb = rhs->mask();
    if (ma == 1 && mb == 1) {
        c_[0] *= rhs->c_[0];
        return *this;
    }
    std::array<mpq_class, 8> out;
    const long d = t_->d();
    const mpq_class& r = t_->rho_sq();
    mpq_class p;
    for (int a = 0; a < 8; ++a) {
        if (!(ma >> a & 1)) continue;
        for (int b = 0; b < 8; ++b) {
            if (!(mb >> b & 1)) continue;
            p = c_[a] * rhs->c_[b];
            const int common = a & b;
            if (common & 1) p = -p;
            if (common & 2) p *= d;
            if (common & 4) p *= r;
            out[a ^ b] += p;
        }
    }
    c_ = std::move(out);
    return *this;
}

Scalar Scalar::inv() const {
    if (is_zero()) throw DomainError("division by zero");
    if (!exact_) return fl(1.0 / f_);
    const unsigned m = mask();
    if (m == 1) return Scalar(1 / c_[0], t_);
    if (m & 0xF0) {  // has rho part: x^-1 = rho_conj(x) / (x rho_conj(x))
        Scalar rc = rho_conj();
        Scalar n = *this * rc;
        return rc * n.inv();
    }
    if (m & 0x0C) {  // has sqrt d part
        Scalar g = galois();
        Scalar n = *this * g;
        return g * n.inv();
    }
    Scalar cj = conj();
    mpq_class n = c_[0] * c_[0] + c_[1] * c_[1];
    Scalar out = cj;
    for (auto& c : out.c_) c /= n;
    return out;
}

std::string rational_str(const mpq_class& q) {
    mpq_class c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string float_str(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string Scalar::str() const {
    if (!exact_) {
        if (std::abs(f_.imag()) == 0.0) return float_str(f_.real());
        return float_str(f_.real()) + (f_.imag() < 0 ? "-" : "+") + float_str(std::abs(f_.imag())) + "i";
    }
    static const char* names[8] = {"", "i", "sqrt(d)", "i*sqrt(d)", "rho", "i*rho", "sqrt(d)*rho", "i*sqrt(d)*rho"};
    std::string out;
    for (int k = 0; k < 8; ++k) {
        if (sgn(c_[k]) == 0) continue;
        mpq_class c = c_[k];
        std::string term;
        std::string name = names[k];
        if (k & 2) name.replace(name.find("d"), 1, std::to_string(t_->d()));
        if (sgn(c) < 0) {
            out += out.empty() ? "-" : " - ";
            c = -c;
        } else if (!out.empty()) {
            out += " + ";
        }
        if (k == 0) term = rational_str(c);
        else if (c == 1) term = name;
        else term = rational_str(c) + "*" + name;
        out += term;
    }
    return out.empty() ? "0" : out;
}

mpq_class parse_rational(const std::string& raw) {
    std::string s;
    for (char ch : raw) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    }
    if (s.empty()) throw std::invalid_argument("empty rational");
    if (s[0] == '+') s = s.substr(1);
    for (char ch : s) {
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-')) {
            throw std::invalid_argument("malformed rational '" + raw + "'");
        }
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational '" + raw + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + raw + "'");
    q.canonicalize();
    return q;
}

Scalar parse_gaussian(const std::string& raw, TowerPtr t) {
    std::string s;
    for (char ch : raw) {
        if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '*') s += ch;
    }
    if (s.empty()) throw std::invalid_argument("empty scalar");
    mpq_class re = 0, im = 0;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t next = pos + 1;
        while (next < s.size() && s[next] != '+' && s[next] != '-') ++next;
        std::string term = s.substr(pos, next - pos);
        pos = next;
        bool imag = !term.empty() && term.back() == 'i';
        if (imag) term.pop_back();
        if (term.empty() || term == "+") term = "1";
        else if (term == "-") term = "-1";
        mpq_class v = parse_rational(term);
        (imag ? im : re) += v;
    }
    return Scalar::gaussian(re, im, std::move(t));
}

}  // namespace spin7

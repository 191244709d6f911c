#pragma once

#include <gmpxx.h>

#include <array>
#include <complex>
#include <memory>
#include <stdexcept>
#include <string>

namespace spin7 {

class TowerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Coefficient field Q(i, sqrt d)(rho) with d square-free and rho^2 = r > 0.
//
// sqrt d and rho are folded away whenever they are already rational or
// already in Q(sqrt d), so every tower is a field of degree 2, 4 or 8 and
// each element has a unique coordinate vector over the basis
//   { i^a sqrt(d)^b rho^c : a, b, c in {0,1} }   (index a + 2b + 4c).
class Tower {
public:
    static std::shared_ptr<const Tower> make(long d = 0, const mpq_class& rho_sq = 0);
    static const std::shared_ptr<const Tower>& gaussian();

    // Smallest tower containing both; throws TowerError on incompatible d or rho.
    static std::shared_ptr<const Tower> join(const std::shared_ptr<const Tower>& a,
                                             const std::shared_ptr<const Tower>& b);

    long d() const { return d_; }
    long declared_d() const { return declared_d_; }
    const mpq_class& rho_sq() const { return r_; }
    bool declares_rho() const { return sgn(r_) != 0; }
    bool has_rho() const { return has_rho_; }

    // Value of rho when it is folded: rho = fold_t * (fold_sqrtd ? sqrt d : 1).
    const mpq_class& fold_t() const { return fold_t_; }
    bool fold_sqrtd() const { return fold_sqrtd_; }

    // Same arithmetic (effective generators and relations).
    bool same_arithmetic(const Tower& o) const;
    std::string describe() const;

private:
    Tower() = default;
    long d_ = 0;
    long declared_d_ = 0;
    mpq_class r_ = 0;
    bool has_rho_ = false;
    mpq_class fold_t_ = 0;
    bool fold_sqrtd_ = false;
};

using TowerPtr = std::shared_ptr<const Tower>;

bool is_square_free(long d);
bool rational_sqrt(const mpq_class& q, mpq_class& root);

// Element of a Tower, or a double-precision complex number ("float mode").
// Mixing float and exact operands yields a float result.
class Scalar {
public:
    static constexpr double kFloatTol = 1e-10;

    Scalar();
    Scalar(int n);
    Scalar(long n);
    Scalar(const mpq_class& q);
    Scalar(const mpq_class& q, TowerPtr t);

    static Scalar gaussian(const mpq_class& re, const mpq_class& im, TowerPtr t = nullptr);
    static Scalar i(TowerPtr t = nullptr);
    static Scalar sqrt_d(const TowerPtr& t);
    static Scalar rho(const TowerPtr& t);
    static Scalar from_coords(const TowerPtr& t, const std::array<mpq_class, 8>& c);
    static Scalar fl(std::complex<double> z);
    static Scalar fl(double re, double im = 0.0) { return fl({re, im}); }

    bool is_exact() const { return exact_; }
    const TowerPtr& tower() const { return t_; }
    const mpq_class& coord(int k) const { return c_[k]; }
    std::complex<double> to_complex() const;

    Scalar conj() const;       // i -> -i
    Scalar galois() const;     // sqrt d -> -sqrt d
    Scalar rho_conj() const;   // rho -> -rho
    Scalar re() const;
    Scalar im() const;
    Scalar inv() const;
    Scalar embed(const TowerPtr& t) const;
    Scalar to_float() const;

    bool is_zero() const;
    bool is_real() const;
    bool is_rational() const;
    mpq_class to_rational() const;
    // Sign of a real element; exact in exact mode, tolerance-based for floats.
    int sign() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o) { return *this *= o.inv(); }
    Scalar operator-() const;

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string str() const;

private:
    TowerPtr t_;
    bool exact_ = true;
    std::array<mpq_class, 8> c_;
    std::complex<double> f_{0.0, 0.0};

    unsigned mask() const;
    void bring_to(const TowerPtr& t);
};

inline Scalar abs_sq(const Scalar& x) { return x * x.conj(); }
int compare(const Scalar& a, const Scalar& b);  // real operands

mpq_class parse_rational(const std::string& s);
std::string rational_str(const mpq_class& q);
// "p/q", "p/q+r/s i", "r/s i", "i", "-i", "1/3+1/5i" ...
Scalar parse_gaussian(const std::string& s, TowerPtr t = nullptr);
std::string float_str(double x);

}  // namespace spin7

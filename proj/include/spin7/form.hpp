#pragma once

#include "spin7/linalg.hpp"
#include "spin7/scalar.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace spin7 {

constexpr int kDim = 8;

// Index set {i1 < ... < ik} of {1..8}, bit (i - 1) set for each member.
using Mask = std::uint8_t;

int popcount(Mask m);
std::vector<int> indices(Mask m);
Mask mask_of(const std::vector<int>& idx);
// Basis of k-forms in lexicographic order of index tuples.
const std::vector<Mask>& basis(int k);
int basis_position(Mask m);
int binomial8(int k);

// Homogeneous exterior form on R^8 with Scalar coefficients.
class Form {
public:
    Form() = default;
    explicit Form(int degree) : deg_(degree) {}

    static Form dx(const std::vector<int>& idx, const Scalar& c = 1);
    static Form constant(const Scalar& c);
    static Form vol();

    int degree() const { return deg_; }
    const std::map<Mask, Scalar>& terms() const { return t_; }
    Scalar coeff(Mask m) const;
    Scalar coeff(const std::vector<int>& idx) const { return coeff(mask_of(idx)); }
    // Coefficient of dx1...8.
    Scalar top() const { return coeff(Mask(0xFF)); }
    void add_term(Mask m, const Scalar& c);

    bool is_zero() const { return t_.empty(); }
    bool is_real() const;
    bool is_exact() const;
    size_t size() const { return t_.size(); }

    Form conj() const;
    Form re() const;
    Form im() const;
    Form galois() const;
    Form to_float() const;

    // Coordinates in basis(degree()).
    std::vector<Scalar> coords() const;
    static Form from_coords(int degree, const std::vector<Scalar>& c);

    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    Form& operator*=(const Scalar& s);
    Form operator-() const;
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(Form a, const Scalar& s) { return a *= s; }
    friend Form operator*(const Scalar& s, Form a) { return a *= s; }
    friend bool operator==(const Form& a, const Form& b);
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

    std::string str() const;

private:
    int deg_ = 0;
    std::map<Mask, Scalar> t_;
};

Form wedge(const Form& a, const Form& b);
inline Form operator^(const Form& a, const Form& b) { return wedge(a, b); }
Form wedge_all(const std::vector<Form>& fs);
Form power(const Form& a, int n);

// Complex-linear Hodge star for the standard metric and vol = dx1...8.
Form hodge_star(const Form& a);
// Conjugate-linear star a -> *(conj a).
Form hodge_star_conj(const Form& a);
// <a, b> = sum_I a_I conj(b_I).
Scalar inner(const Form& a, const Form& b);
Scalar norm_sq(const Form& a);

// Standard complex coordinates z_j = x_{2j-1} + i x_{2j}.
Form dz(int j);
Form dzbar(int j);
// Wedge of dz's (positive entries) and dzbar's (negative entries), in order.
Form dz_word(const std::vector<int>& word);

// Linear algebra on 8x8 matrices acting on column vectors of R^8.
// Pullback A^* of a form: (A^* a)(v1, ...) = a(A v1, ...).
Form pullback(const Form& a, const Mat& A);
// Derivation extension of the 1-form map dx_i -> sum_j A_ij dx_j.
Form derivation(const Form& a, const Mat& A);
// a(v1, ..., vk) for vectors given as the columns of V (8 x k).
Scalar evaluate(const Form& a, const Mat& V);
// Skew matrix W_ij = a(e_i, e_j) of a 2-form.
Mat two_form_matrix(const Form& a);
Form two_form_from_matrix(const Mat& W);

// Complex structure checks (exact, or tolerance-based in float mode).
bool is_complex_structure(const Mat& J);
bool is_orthogonal(const Mat& J);
Mat standard_J();

// Projection onto forms of type (p, q) for the orthogonal complex structure J.
Form bidegree_project(const Form& a, const Mat& J, int p, int q);
// True when a has no component outside bidegree (p, q).
bool is_pure_type(const Form& a, const Mat& J, int p, int q);

// (1,0)-coframe of J: exact Hermitian-orthogonal, scaled so that the standard
// J yields dz_1, ..., dz_4.
struct ComplexFrame {
    std::vector<Form> e;
    std::vector<Scalar> norm_sq;
};
ComplexFrame complex_frame(const Mat& J);

// beta = beta0 + beta1 ^ omega + k omega^2 with beta0 ^ omega = 0 and
// beta1 ^ omega^3 = 0.
struct LefschetzParts {
    Form beta0, beta1;
    Scalar k;
};

class Lefschetz {
public:
    explicit Lefschetz(const Form& omega);
    const Form& omega() const { return omega_; }
    LefschetzParts decompose(const Form& beta) const;
    // Primitive part of a 2-form: alpha - (alpha ^ omega^3 / omega^4) omega.
    Form primitive_2(const Form& alpha) const;

private:
    Form omega_, omega2_, omega3_;
    Scalar omega4_;
    Mat l2_inv_;  // inverse of beta1 -> beta1 ^ omega^2 on Lambda^2 -> Lambda^6
};

LefschetzParts lefschetz_decompose(const Form& beta, const Form& omega, const Mat* J = nullptr);

}  // namespace spin7

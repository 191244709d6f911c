#pragma once

#include "spin7/scalar.hpp"

#include <optional>
#include <vector>

namespace spin7 {

class SingularMatrix : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dense row-major matrix over Scalar.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}
    Mat(std::initializer_list<std::initializer_list<Scalar>> rows);

    static Mat identity(int n);
    static Mat column(const std::vector<Scalar>& v);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Scalar& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const Scalar& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    Mat transpose() const;
    Mat adjoint() const;  // conjugate transpose
    Mat conj() const;
    Mat block(int i0, int j0, int nr, int nc) const;
    void set_block(int i0, int j0, const Mat& b);
    std::vector<Scalar> col(int j) const;
    Mat to_float() const;

    bool is_zero() const;
    bool is_exact() const;
    bool is_rational() const;
    Scalar trace() const;

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    Mat& operator*=(const Scalar& s);
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(Mat a, const Scalar& s) { return a *= s; }
    friend Mat operator*(const Scalar& s, Mat a) { return a *= s; }
    friend Mat operator*(const Mat& a, const Mat& b);
    friend bool operator==(const Mat& a, const Mat& b);
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

private:
    int r_ = 0, c_ = 0;
    std::vector<Scalar> a_;
};

struct Echelon {
    Mat m;                    // reduced row echelon form
    std::vector<int> pivots;  // pivot column of each nonzero row
    int rank() const { return static_cast<int>(pivots.size()); }
};

Echelon rref(const Mat& a);
int rank(const Mat& a);
// Columns form a basis of the right kernel.
Mat nullspace(const Mat& a);
// Basis of the column space (a subset of the columns of a).
Mat column_basis(const Mat& a);
// Unique solution of a x = b (b may have several columns); throws SingularMatrix.
Mat solve(const Mat& a, const Mat& b);
// Some solution of a x = b, or nullopt when inconsistent.
std::optional<Mat> solve_any(const Mat& a, const Mat& b);
Mat inverse(const Mat& a);
Scalar det(const Mat& a);
std::vector<Scalar> mat_vec(const Mat& a, const std::vector<Scalar>& v);

// Polynomial with Scalar coefficients, lowest degree first.
using SPoly = std::vector<Scalar>;
// det(x I - a), via reduction to Hessenberg form.
SPoly charpoly(const Mat& a);

// Polynomials over Q, lowest degree first, no trailing zeros.
using QPoly = std::vector<mpq_class>;

void trim(QPoly& p);
int degree(const QPoly& p);
mpq_class eval(const QPoly& p, const mpq_class& x);
QPoly derivative(const QPoly& p);
QPoly poly_rem(const QPoly& a, const QPoly& b);
QPoly poly_div(const QPoly& a, const QPoly& b);
QPoly poly_gcd(QPoly a, QPoly b);
QPoly square_free(const QPoly& p);
std::optional<QPoly> to_qpoly(const SPoly& p);

// Sturm chain of a square-free polynomial.
std::vector<QPoly> sturm_chain(const QPoly& p);
// Number of distinct real roots in (lo, hi].
int count_roots(const std::vector<QPoly>& chain, const mpq_class& lo, const mpq_class& hi);
// Every real root lies in [-B, B].
mpq_class root_bound(const QPoly& p);

// Largest real root of p, exact when rational, else an enclosure [lo, hi]
// of width <= tol.  Requires p to have at least one real root.
struct RootEnclosure {
    mpq_class lo, hi;
    bool exact = false;
};
std::optional<RootEnclosure> largest_real_root(const QPoly& p, const mpq_class& tol);

// Sign pattern of the real roots of a real-rooted polynomial (Descartes).
struct RootSigns {
    int positive = 0, negative = 0, zero = 0;
};
RootSigns real_root_signs(const SPoly& p);

}  // namespace spin7

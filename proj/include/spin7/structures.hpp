#pragma once

#include "spin7/form.hpp"

#include <map>
#include <string>
#include <vector>

namespace spin7 {

// Linear span of forms of one degree, stored as a column basis of coordinates.
class Subspace {
public:
    Subspace() = default;
    Subspace(int degree, const std::vector<Form>& gens);
    static Subspace from_columns(int degree, const Mat& cols);

    int degree() const { return deg_; }
    int dim() const { return basis_.cols(); }
    const Mat& basis() const { return basis_; }
    std::vector<Form> forms() const;

    bool contains(const Form& f) const;
    bool contains(const Subspace& o) const;
    bool equals(const Subspace& o) const { return contains(o) && o.contains(*this); }
    Subspace operator+(const Subspace& o) const;

private:
    int deg_ = 0;
    Mat basis_;
};

// Cayley 4-form with Omega ^ Omega = 14 vol.
Form cayley_form();

struct SU4Structure {
    Mat J;
    Form omega;
    Form theta;

    Form Omega() const;  // omega^2 / 2 + Re theta
};

SU4Structure standard_su4();
// Throws DomainError naming the first failed condition.
void validate(const SU4Structure& s);
Form su4_to_spin7(const SU4Structure& s);

class Spin7Structure {
public:
    explicit Spin7Structure(const Form& Omega);

    const Form& Omega() const { return Omega_; }
    // Matrix of alpha -> *(Omega ^ alpha) on basis(2).
    const Mat& wedge_star() const { return A_; }
    const Mat& pi7() const { return pi7_; }
    const Mat& pi21() const { return pi21_; }

    std::pair<Form, Form> project_2form(const Form& alpha) const;

    Subspace lambda2_7() const;
    Subspace lambda2_21() const;
    Subspace lambda3_8() const;
    Subspace lambda3_48() const;
    Subspace lambda4_1() const;
    Subspace lambda4_7() const;
    Subspace lambda4_27() const;
    Subspace lambda4_35() const;

private:
    Form Omega_;
    Mat A_, pi7_, pi21_;
};

struct Spin7Report {
    bool self_dual = false;
    Scalar omega_wedge_omega;  // (Omega ^ Omega) / vol
    int mult_3 = 0, mult_minus1 = 0, other = 0;
    bool pass = false;
};

// Necessary conditions only: *Omega = Omega, Omega^2 = 14 vol and the
// {3: 7, -1: 21} spectrum of alpha -> *(Omega ^ alpha).
Spin7Report verify_spin7(const Form& Omega);

// --- SU(4) pieces

// The complex-linear map Lambda^{2,0} -> Lambda^{0,2} with
// alpha ^ conj(L(alpha)) = |alpha|^2 theta / 4, extended to Lambda^{0,2} by
// L(conj a) = conj L(a).  Accepts any sum of (2,0) and (0,2) parts.
class LOperator {
public:
    explicit LOperator(const SU4Structure& s);
    Form operator()(const Form& alpha) const;
    // (2,0) basis e_a ^ e_b from the complex frame of J.
    const std::vector<Form>& basis20() const { return f_; }

private:
    Form apply20(const Form& beta) const;
    SU4Structure s_;
    std::vector<Form> f_;
    Mat m_inv_;
};

Form l_operator(const SU4Structure& s, const Form& alpha);

// Explicit bases c_j, c_j' and gamma_j, gamma_j' of A+ and A- for the standard structure.
struct APlusBasis {
    std::vector<Form> c, c_prime;
    std::vector<Form> gamma, gamma_prime;
};
const APlusBasis& aplus_basis();

std::pair<Form, Form> a_pm_decompose(const SU4Structure& s, const Form& a);

// Real SU(4) subspaces of Lambda^k for the structure s.
struct SU4Pieces {
    Subspace a_plus, a_minus, d11_prim, omega_line;        // Lambda^2
    Subspace d30, d10_omega, d21_prim;                     // Lambda^3
    Subspace omega_4, im_theta, re_theta, a_minus_omega;   // Lambda^4
    Subspace a_plus_omega, d22_prim, omega2_minus_retheta, d13_prim, d11_prim_omega;
};
SU4Pieces su4_pieces(const SU4Structure& s);

struct FourFormDecomposition {
    Form lambda1, lambda7, lambda27, lambda35;
    // Finer SU(4) components, in the order of the Lambda^4 slots above.
    std::vector<std::pair<std::string, Form>> pieces;
};
FourFormDecomposition decompose_4form(const Spin7Structure& S, const SU4Structure& s, const Form& beta);

// One line of the Spin(7) / SU(4) branching table checked as subspace equality.
struct BranchingLine {
    std::string name;
    int spin7_dim = 0, su4_dim = 0;
    bool su4_in_spin7 = false, spin7_in_su4 = false;
    bool holds() const { return su4_in_spin7 && spin7_in_su4; }
};
std::vector<BranchingLine> branching_lines(const Spin7Structure& S, const SU4Structure& s);

struct SpanReport {
    int dim_sym = 0, dim_mixed = 0;
    Scalar coefficient;             // c with Re theta + c omega^2 in span{gamma_i ^ gamma_j}
    bool sym_matches_computed = false;
    bool sym_matches_stated = false;  // with c = 8
    bool mixed_matches = false;
};
SpanReport span_checks(const SU4Structure& s);

}  // namespace spin7

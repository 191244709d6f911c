#pragma once

#include "spin7/form.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spin7 {

// Lattice in C^n generated by the 2n columns of an n x 2n complex matrix.
// The real form stacks (Re z_1, Im z_1, Re z_2, Im z_2, ...) as rows.
struct PeriodMatrix {
    Mat complex;

    int dim() const { return complex.rows(); }
    Mat real() const;
    static PeriodMatrix from_real(const Mat& re);
};

// Real 2n x 2n matrix of z -> psi z in the interleaved (Re, Im) layout.
Mat realify_operator(const Mat& psi);

// Acts on (x1, y1, x2, y2): [[1,0,0,0],[0,r,s,0],[0,-s,r,0],[0,0,0,1]].
Mat rotation_block(const Scalar& r, const Scalar& s);

// Both throw DomainError unless r^2 + s^2 = 1 and the shape fits.
PeriodMatrix rotate_torus_2d(const PeriodMatrix& pi, const Scalar& r, const Scalar& s);
PeriodMatrix rotate_torus_8d(const PeriodMatrix& pi, const Scalar& r, const Scalar& s);

// psi is n x n complex or 2n x 2n real. True iff psi maps every generator to an
// integer combination of generators. Throws SingularMatrix on a degenerate lattice.
bool is_lattice_endomorphism(const PeriodMatrix& pi, const Mat& psi);

struct WeilSpec {
    long d = 1;
    Scalar a, b, e, f;  // A = [[a, e], [b, f]]

    // e = conj(b), f = -conj(a).
    static WeilSpec special(long d, const Scalar& a, const Scalar& b = Scalar(0));
};

struct WeilPeriod {
    TowerPtr tower;
    Mat reduced;          // 4x4
    Mat phi;              // diag(i delta, i delta, -i delta, -i delta)
    PeriodMatrix period;  // columns v_1, phi v_1, v_2, phi v_2, ...
};

// Throws DomainError unless Id - A A^* is positive definite.
WeilPeriod weil_period(const WeilSpec& spec);

// B M2 B + B M1 - M4 B - M3 for the 2x2 blocks of M.
Mat bequiv_residual(const Mat& B, const Mat& M);

struct EndomorphismSpace {
    std::vector<Mat> basis;  // over K = Q(sqrt(-d))
    int k_dim = 0;
};

// All 4x4 M over K with bequiv_residual(B, M) = 0. B must lie in Q(i, sqrt d).
EndomorphismSpace endomorphism_space(const Mat& B, long d);

struct Check {
    std::string name;
    bool pass = false;
    bool skipped = false;  // step needs float arithmetic and exact mode was requested
    std::string residual;  // exact string, or float residual
};

struct WeilRotationOutput {
    long d = 1;
    Scalar a, y, delta, x, r, s, s_hat, f, g, q;
    Scalar a_tilde, varpi, lambda, four_q2_plus_1;
    Scalar relation_residual;
    PeriodMatrix original, rotated;
    Mat phi, lattice_basis, C, T, C_hat, C_hat_inv, B, B_closed;
    Mat F, F_qbar, F_sq, F_phi_commutator;
    Mat J_rotated;
    std::optional<Mat> P;  // float only
    EndomorphismSpace endomorphisms;
    std::vector<Check> checks;
    std::vector<std::string> discrepancies;

    bool all_pass() const;
};

// a in Q(i) with |a| < 1, d square-free, y rational with 0 < y^2 < d.
WeilRotationOutput weil_rotation_pipeline(const Scalar& a, long d, const mpq_class& y, bool allow_float = true);

// The pipeline's headline scalars recomputed in double precision from float
// inputs; used to cross-check the exact run.
struct WeilFloatValues {
    double r = 0, s = 0, lambda = 0, four_q2_plus_1 = 0;
    double relation_residual = 0;  // |q(1 + |a~|^2 + varpi^2) + varpi i|
    double b_closed_residual = 0;  // max entry of |B - closed form|
    double f_sq_residual = 0;      // max entry of |F(q)^2 - (4q^2 + 1) Id|
};
WeilFloatValues weil_rotation_float(std::complex<double> a, long d, double y);

struct DimensionSample {
    Scalar a;
    mpq_class y;
    int k_dim = 0;
};

struct GenericDimension {
    int min_dim = 0;
    std::vector<DimensionSample> samples;
};

// Minimum K-dimension of the endomorphism space over seeded random (a, y).
GenericDimension generic_endomorphism_dimension(long d, int samples = 5, std::uint64_t seed = 1);

// Block of the closed-form B; exposed for the dimension sampler and tests.
Mat weil_b_matrix(const Scalar& a, long d, const mpq_class& y);

// True iff omega' has no term dx_i ^ dx_j with i, j in different blocks.
// Blocks are given by complex coordinate indices, e.g. {1, 2} and {3, 4}.
bool block_split_check(const Form& omega_prime, const std::vector<int>& block_a, const std::vector<int>& block_b);

// Sum of |entries|^2.
Scalar residual_norm(const Mat& m);

}  // namespace spin7

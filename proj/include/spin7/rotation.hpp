#pragma once

#include "spin7/structures.hpp"

#include <optional>
#include <string>

namespace spin7 {

// Smallest tower containing every coefficient (nullptr when some are floats).
TowerPtr form_tower(const Form& f);
// Largest coefficient modulus, for float-mode residuals.
double max_abs(const Form& f);
double max_abs(const Mat& m);

struct RotationParameter {
    Form c;      // (2,0) source
    Form gamma;  // (c + conj c) / 2
    Scalar gamma_norm_sq;
    Scalar rho_sq;  // |omega + gamma|^2 = 4 + |gamma|^2
    // Set when c ^ c is a unit multiple of |c|^2 theta / 4 other than theta itself.
    std::optional<Form> theta_rescaled;
};

// Throws DomainError("degenerate input") for c = 0 and
// DomainError("not rotatable by any theta") when |c ^ c| != |c|^2.
RotationParameter gamma_from_c(const SU4Structure& s, const Form& c);
// Parameter from a real gamma in A+ (c = 2 * (2,0)-part of gamma).
RotationParameter gamma_param(const SU4Structure& s, const Form& gamma);

struct RotationResult {
    Form omega_plus_gamma;  // unnormalised
    Scalar rho;             // |omega + gamma|, adjoined when irrational
    SU4Structure rotated;   // omega' = 2 (omega + gamma) / rho, J', theta'
    std::string convention;  // which J' candidate validated: "negative-inverse" or "transposed"
    int im_theta_sign = 0;   // s with Im theta'(u1..) = s Re theta'(J'u1, ..), 0 if neither
};

RotationResult rotate(const SU4Structure& s, const RotationParameter& p);

// ((beta - 3k omega^2) ^ gamma ^ gamma) / vol.
Scalar rotation_residual(const Form& beta, const SU4Structure& s, const RotationParameter& p);

// gamma' = -(2 / rho)(gamma - |gamma|^2 omega / 4), as a parameter for the rotated structure.
RotationParameter rotate_back_gamma(const SU4Structure& s, const RotationParameter& p, const RotationResult& r);

// k with beta ^ omega^2 = 24 k vol.
Scalar k_value(const Form& beta, const SU4Structure& s);

enum class Definiteness { Zero, NegativeSemidefinite, PositiveSemidefinite, Indefinite };
std::string to_string(Definiteness d);

struct PhiForm {
    Mat matrix;  // 6 x 6, Phi(gamma_i, gamma_j)
    Scalar k;
    std::vector<Form> basis;  // the A+ basis used
};

// Uses the explicit gamma_j basis for the standard structure, an L-eigenbasis otherwise.
std::vector<Form> aplus_forms(const SU4Structure& s);
PhiForm phi_form(const Form& beta, const SU4Structure& s);

struct Classification {
    Definiteness kind = Definiteness::Zero;
    int positive = 0, negative = 0, zero = 0;  // eigenvalue counts with multiplicity
};
// Exact: Descartes sign counts of the characteristic polynomial.  Float:
// eigenvalues with tolerance 1e-9.
Classification classify(const Mat& symmetric);
inline Classification classify(const PhiForm& phi) { return classify(phi.matrix); }

struct FirstVariation {
    Form residual1;  // (beta0 - 2k omega^2) ^ gamma
    bool solvable = false;  // beta1 ^ omega = gamma ^ gamma' for some gamma' in A-
    std::optional<Form> gamma_prime;
};
FirstVariation first_variation_residuals(const Form& beta, const SU4Structure& s, const RotationParameter& p);

}  // namespace spin7

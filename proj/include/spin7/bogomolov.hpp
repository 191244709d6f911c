#pragma once

#include "spin7/rotation.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace spin7 {

// Exact rational, certified rational enclosure, or float approximation.
struct CertifiedValue {
    enum class Kind { Exact, Enclosure, Float } kind = Kind::Exact;
    mpq_class lo, hi;  // lo == hi when exact
    double approx = 0.0;

    static CertifiedValue exact(const mpq_class& q);
    static CertifiedValue floating(double x);
    std::string str() const;
    double to_double() const { return kind == Kind::Float ? approx : (lo.get_d() + hi.get_d()) / 2; }
};

// Orthonormal (2,0) basis e_(ab) = dz_a ^ dz_b / 2, (ab) in lexicographic order.
const std::vector<Form>& e20_basis();

struct HermitianForm6 {
    Mat H;  // H_jk = (beta0 ^ e_j ^ conj e_k) / vol
    bool hermitian = false;
};

// Throws DomainError if beta0 is not real, (2,2) or primitive.
HermitianForm6 hermitian_form(const Form& beta0, const SU4Structure& s);

// k_m = lambda_max(H) / 4.  Exact when lambda_max is rational, else an
// enclosure of width <= 1e-12; float when H has float entries.
CertifiedValue k_m(const HermitianForm6& h);
CertifiedValue k_m(const Form& beta0, const SU4Structure& s);

struct ExtremalSet {
    std::vector<Form> eigenspace;  // (2,0)-forms spanning the lambda_max eigenspace
    std::vector<Form> samples;     // seeded elements of the eigenspace that were tested
    std::vector<Form> rotatable;   // the samples with |c ^ c| = |c|^2
};

// Requires k == k_m(beta0) exactly; throws DomainError otherwise.
ExtremalSet extremal_set(const Form& beta0, const SU4Structure& s, const Scalar& k, int samples = 32,
                         std::uint64_t seed = 1);

struct BogomolovVerdict {
    Scalar k;
    CertifiedValue km;
    bool pass = false;      // k >= max(k_m, 0)
    bool equality = false;  // k == k_m
    std::optional<ExtremalSet> extremal;
};

BogomolovVerdict bogomolov_check(const Form& beta, const SU4Structure& s);

struct KSupResult {
    bool hypothesis_ok = false;  // Phi_beta negative-semidefinite
    Classification classification;
    Scalar value;                 // k
    double sampled_max = 0.0;     // max of (beta ^ omega'^2) / (24 vol) over the samples
    int samples = 0;
    int exceed = 0;               // samples above k (1 + 1e-9)
    std::vector<Form> argmax;     // omega' = 2 (omega + gamma) / |omega + gamma|, gamma in ker Phi
};

KSupResult k_sup_over_sphere(const Form& beta, const SU4Structure& s, int samples = 10000, std::uint64_t seed = 1);

}  // namespace spin7

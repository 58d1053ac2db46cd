#ifndef CHARSUM_PAPER_SUMS_HPP
#define CHARSUM_PAPER_SUMS_HPP

#include <complex>
#include <vector>

#include "charsum/characters.hpp"
#include "charsum/extfield.hpp"
#include "charsum/parallel.hpp"
#include "charsum/report.hpp"
#include "charsum/sums.hpp"

namespace charsum {

// Class profile of the double character sum for the Jacobi character chi mod
// odd squarefree q: profile[t] = sum over u,v with uv - 1 = t (mod q) of
// chi(uv(u+1)(v+1)). All of H(w; q), H*(w; q) and g(chi, psi) are linear
// functionals of it.
class CharSumProfile {
public:
    explicit CharSumProfile(i64 q);

    i64 modulus() const { return q_; }
    const std::vector<i64>& counts() const { return n_; }

    std::complex<double> H(i64 w) const;
    std::complex<double> H_star(i64 w) const;
    std::complex<double> g(const MultChar& psi) const;

private:
    i64 q_;
    std::vector<i64> n_;
};

// H(w; q) and its reduced variant H*(w; q), by the definitional double sum.
SumValue H_sum(i64 w, i64 q, bool reduced = false);

// g(chi, psi) = sum over u,v of chi(uv(u+1)(v+1)) psi(uv-1); chi must be the
// real Jacobi character of the common modulus. The principal psi follows the
// finite-field convention (the uv = 1 class counts with weight one), so
// g(chi, psi_0) = 1.
SumValue g_hybrid(const MultChar& chi, const MultChar& psi);

// g(chi, psi) for every character psi mod prime p in enumeration order,
// computed from one profile pass.
std::vector<std::complex<double>> g_values_all(i64 p);

// Spectral expansion of H*(w; q) through Gauss sums, prime q (or q = 1).
SumValue hstar_spectral(i64 w, i64 q);

// The complete sum of Kloosterman sums twisted by chi mod q extended to
// period q, for modulus c = q r, and its closed evaluation.
struct GArguments {
    i64 m, m1, m2;
    i64 q, r, c;
    i64 h, k, l;    // h = (r,q), k = (m m1 m2, q/h), l = q/(h k)
    bool vanishes;  // coprimality conditions failed
    i64 unit_w;     // argument fed to H(.; l): rbar (hk)bar m m1 m2 mod l
};
GArguments decompose_g_arguments(i64 m, i64 m1, i64 m2, i64 q, i64 r);

SumValue G_brute(i64 m, i64 m1, i64 m2, i64 q, i64 r);
SumValue G_closed(i64 m, i64 m1, i64 m2, i64 q, i64 r);

// All c^3 values of G(m, m1, m2; c) at once, by cached partial summation over
// a2, then a1, then a (same terms as the definition, reused across the dual
// indices). Index layout: [(m * c + m1) * c + m2].
std::vector<std::complex<double>> G_brute_cube(i64 q, i64 r, const Parallelism& par = {});

// H_r(m, m1, m2; q) for c = qr written as a two-variable sum (the shape the
// CRT factorization acts on).
std::complex<double> H_r_sum(i64 m, i64 m1, i64 m2, i64 q, i64 r);

// Verifies the three multiplicativity identities of the H family for the
// coprime squarefree odd pair (q1, q2).
std::vector<IdentityReport> multiplicativity_check(i64 q1, i64 q2, int sample_limit = 100);

// Mean square of g(chi, psi) over all psi in the dual of F_{p^m}^*, plus the
// uv = 1 diagonal class the orthogonality argument of the lemma counts,
// checked against q^2 - 2q - 2. chi_index selects chi in the dual (default:
// the quadratic character).
IdentityReport second_moment(i64 p, int m = 1, i64 chi_index = -1);

// The elementary identity suite for g(chi, chi) at an odd prime p.
std::vector<IdentityReport> section14_suite(i64 p);

// Jacobi-sum and eta(4z)^6 expressions for g(chi, chi), p = 1 mod 4.
std::vector<IdentityReport> added_in_proof_suite(i64 p);

// Fourier coefficients a(1..N) of q prod (1 - q^{4n})^6; exact integers.
std::vector<i64> eta6_coefficients(i64 N);

// Integer-valued profile of the lifted real character over F_{p^m}:
// classes[a] = sum over u,v in the field with uv - 1 = g^a of
// chi_m(uv(u+1)(v+1)); zero_class holds the uv = 1 stratum. Cached per field;
// the build parallelizes over u with exact integer merges.
struct ExtRealProfile {
    std::vector<i64> classes;
    i64 zero_class;
};
const ExtRealProfile& ext_real_profile(const ExtField& F, const Parallelism& par = {});

// g(chi_m, psi) for psi = character of index t, from a profile. The principal
// character (t = 0) includes the zero class, matching g_hybrid.
std::complex<double> ext_g_value(const ExtField& F, const ExtRealProfile& profile, i64 t);

// Complex profile for an arbitrary chi in the dual (general second moments).
struct ExtComplexProfile {
    std::vector<std::complex<double>> classes;
    std::complex<double> zero_class;
};
ExtComplexProfile ext_profile_general(const ExtField& F, i64 chi_index);

} // namespace charsum

#endif

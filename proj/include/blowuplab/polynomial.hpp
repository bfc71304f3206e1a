#pragma once
#include <complex>
#include <vector>

#include <gmpxx.h>

namespace blowuplab {

// coefficient vectors are ascending in the variable
using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;

ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b);
ZPoly zpoly_add(const ZPoly& a, const ZPoly& b);
ZPoly zpoly_scale(const ZPoly& a, const mpz_class& c);
void zpoly_trim(ZPoly& a);

// |P(it)|^2 as a polynomial in real t
ZPoly abs2_on_imag_axis(const ZPoly& p);

// [6(l+n+10)]^2 Q1(n+3,l+2,t) - [l+3n+26]^2 Q2(n+3,l+2,t)
ZPoly q_sign_polynomial(long n, long ell);
// true iff every nonzero coefficient is negative (odd ones vanish identically)
bool q_polynomial_sign_check(long n, long ell);

// roots of a complex polynomial via companion matrix eigenvalues
std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& c);

// all roots in the open left half-plane
bool routh_hurwitz_check(const std::vector<std::complex<double>>& c);
bool routh_hurwitz_exact(const QPoly& c);

}  // namespace blowuplab

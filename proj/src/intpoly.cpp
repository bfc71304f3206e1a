#include "blowuplab/polynomial.hpp"
#include "blowuplab/appendix.hpp"
#include "blowuplab/errors.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace blowuplab {

void zpoly_trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  zpoly_trim(c);
  return c;
}

ZPoly zpoly_add(const ZPoly& a, const ZPoly& b) {
  ZPoly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  zpoly_trim(c);
  return c;
}

ZPoly zpoly_scale(const ZPoly& a, const mpz_class& s) {
  ZPoly c(a);
  for (auto& x : c) x *= s;
  zpoly_trim(c);
  return c;
}

ZPoly abs2_on_imag_axis(const ZPoly& p) {
  ZPoly re(p.size()), im(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    int sgn = ((k / 2) % 2 == 0) ? 1 : -1;
    if (k % 2 == 0)
      re[k] = sgn * p[k];
    else
      im[k] = sgn * p[k];
  }
  zpoly_trim(re);
  zpoly_trim(im);
  return zpoly_add(zpoly_mul(re, re), zpoly_mul(im, im));
}

ZPoly q_sign_polynomial(long n, long ell) {
  ZPoly q1 = abs2_on_imag_axis(appendix_poly_lambda("P1", n + 3, ell + 2));
  ZPoly q2 = abs2_on_imag_axis(appendix_poly_lambda("P2", n + 3, ell + 2));
  mpz_class c1 = 6 * (ell + n + 10), c2 = ell + 3 * n + 26;
  return zpoly_add(zpoly_scale(q1, c1 * c1), zpoly_scale(q2, -(c2 * c2)));
}

bool q_polynomial_sign_check(long n, long ell) {
  ZPoly q = q_sign_polynomial(n, ell);
  if (q.empty()) return false;
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (k % 2 == 1) {
      if (q[k] != 0) return false;
    } else if (q[k] >= 0) {
      return false;
    }
  }
  return true;
}

std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& c0) {
  std::vector<std::complex<double>> c(c0);
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.empty()) throw ArgumentError("zero polynomial");
  int d = (int)c.size() - 1;
  if (d == 0) return {};
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) M(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) M(i, d - 1) = -c[i] / c[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
  std::vector<std::complex<double>> r(d);
  for (int i = 0; i < d; ++i) r[i] = es.eigenvalues()(i);
  return r;
}

namespace {

// Routh array on descending real coefficients; 1 stable, 0 unstable, -1 degenerate pivot
template <class T>
int routh(const std::vector<T>& desc) {
  std::size_t n = desc.size();
  if (n <= 1) return 1;
  std::vector<T> r0, r1;
  for (std::size_t i = 0; i < n; i += 2) r0.push_back(desc[i]);
  for (std::size_t i = 1; i < n; i += 2) r1.push_back(desc[i]);
  int sign = desc[0] > 0 ? 1 : -1;
  for (std::size_t row = 1; row < n; ++row) {
    if (r1.empty() || r1[0] == 0) return -1;
    if ((r1[0] > 0 ? 1 : -1) != sign) return 0;
    std::vector<T> r2;
    for (std::size_t j = 0; j + 1 < r0.size(); ++j) {
      T b = j + 1 < r1.size() ? r1[j + 1] : T(0);
      r2.push_back((r1[0] * r0[j + 1] - r0[0] * b) / r1[0]);
    }
    r0 = std::move(r1);
    r1 = std::move(r2);
  }
  return 1;
}

bool roots_left(const std::vector<std::complex<double>>& c) {
  for (auto z : poly_roots(c))
    if (!(z.real() < 0)) return false;
  return true;
}

}  // namespace

bool routh_hurwitz_check(const std::vector<std::complex<double>>& c0) {
  std::vector<std::complex<double>> c(c0);
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.empty()) throw ArgumentError("routh_hurwitz_check: zero polynomial");
  // p * conj(p) has real coefficients and the roots of p together with their conjugates
  std::size_t d = c.size() - 1;
  std::vector<double> prod(2 * d + 1, 0.0);
  bool real = true;
  for (auto z : c) real = real && z.imag() == 0;
  std::vector<double> desc;
  if (real) {
    for (std::size_t i = 0; i <= d; ++i) desc.push_back(c[d - i].real());
  } else {
    for (std::size_t i = 0; i <= d; ++i)
      for (std::size_t j = 0; j <= d; ++j) prod[i + j] += (c[i] * std::conj(c[j])).real();
    for (std::size_t i = 0; i <= 2 * d; ++i) desc.push_back(prod[2 * d - i]);
  }
  int r = routh(desc);
  if (r < 0) return roots_left(c);
  return r == 1;
}

bool routh_hurwitz_exact(const QPoly& c0) {
  QPoly c(c0);
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.empty()) throw ArgumentError("routh_hurwitz_exact: zero polynomial");
  std::vector<mpq_class> desc(c.rbegin(), c.rend());
  int r = routh(desc);
  if (r < 0) {
    std::vector<std::complex<double>> cd;
    for (auto& x : c) cd.emplace_back(x.get_d(), 0.0);
    return roots_left(cd);
  }
  return r == 1;
}

}  // namespace blowuplab

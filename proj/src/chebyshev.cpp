#include "blowuplab/chebyshev.hpp"
#include "blowuplab/errors.hpp"

namespace blowuplab {

template <class Real>
void RadialGrid<Real>::apply(const std::vector<Real>& D, const Real* x, Real* y) const {
  const int n = N + 1;
  for (int i = 0; i < n; ++i) {
    const Real* row = &D[(size_t)i * n];
    Real s = 0;
    for (int j = 0; j < n; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

template <class Real>
double RadialGrid<Real>::origin_value(const std::vector<double>& f) const {
  double s = 0;
  for (int i = 0; i <= N; ++i) s += origin_w[i] * f[i];
  return s;
}

template <class Real>
std::vector<double> RadialGrid<Real>::cheb_coeffs(const std::vector<double>& f) const {
  const int M = 2 * N + 1;
  // full-grid value at x_j = cos(pi j/M); j <= N is positive node rho[N-j]
  std::vector<double> full(M + 1);
  for (int j = 0; j <= M; ++j) full[j] = j <= N ? f[N - j] : parity * f[N - (M - j)];
  std::vector<double> a(M + 1);
  for (int k = 0; k <= M; ++k) {
    double s = 0;
    for (int j = 0; j <= M; ++j) {
      double t = full[j] * std::cos(std::numbers::pi * j * k / M);
      s += (j == 0 || j == M) ? t / 2 : t;
    }
    a[k] = 2 * s / M;
  }
  a[0] /= 2;
  a[M] /= 2;
  return a;
}

template <class Real>
double RadialGrid<Real>::tail_fraction(const std::vector<double>& f) const {
  auto a = cheb_coeffs(f);
  const int M = (int)a.size() - 1;
  double tot = 0, tail = 0;
  for (int k = 0; k <= M; ++k) {
    tot += a[k] * a[k];
    if (4 * k >= 3 * M) tail += a[k] * a[k];
  }
  return tot > 0 ? tail / tot : 0.0;
}

template <class Real>
RadialGrid<Real> make_radial_grid(int N, int ell) {
  if (N < 4) throw ArgumentError("grid needs N >= 4");
  if (ell < 0) throw ArgumentError("ell must be >= 0");
  const int M = 2 * N + 1;
  RadialGrid<Real> g;
  g.N = N;
  g.ell = ell;
  g.parity = ell % 2 ? -1 : 1;
  std::vector<Real> x(M + 1), c(M + 1);
  for (int j = 0; j <= M; ++j) {
    x[j] = rmath::cos(rmath::pi<Real>() * Real(j) / Real(M));
    c[j] = ((j == 0 || j == M) ? Real(2) : Real(1)) * (j % 2 ? Real(-1) : Real(1));
  }
  // exact symmetry
  for (int j = 0; j <= N; ++j) x[M - j] = -x[j];
  std::vector<Real> D((size_t)(M + 1) * (M + 1), Real(0));
  for (int i = 0; i <= M; ++i) {
    Real diag = 0;
    for (int j = 0; j <= M; ++j) {
      if (i == j) continue;
      Real v = c[i] / c[j] / (x[i] - x[j]);
      D[(size_t)i * (M + 1) + j] = v;
      diag -= v;
    }
    D[(size_t)i * (M + 1) + i] = diag;
  }
  // second derivative only needed on positive rows
  const int n = N + 1;
  std::vector<Real> D2full((size_t)n * (M + 1), Real(0));
  for (int i = 0; i <= N; ++i)
    for (int k = 0; k <= M; ++k) {
      Real dik = D[(size_t)i * (M + 1) + k];
      if (dik == Real(0)) continue;
      for (int j = 0; j <= M; ++j) D2full[(size_t)i * (M + 1) + j] += dik * D[(size_t)k * (M + 1) + j];
    }
  // rows/cols in increasing rho: positive node j <-> index N - j
  g.rho.resize(n);
  g.D1.assign((size_t)n * n, Real(0));
  g.D2.assign((size_t)n * n, Real(0));
  for (int a = 0; a <= N; ++a) {
    int i = N - a;
    g.rho[a] = x[i];
    for (int b = 0; b <= N; ++b) {
      int j = N - b;
      g.D1[(size_t)a * n + b] = D[(size_t)i * (M + 1) + j] + Real(g.parity) * D[(size_t)i * (M + 1) + (M - j)];
      g.D2[(size_t)a * n + b] = D2full[(size_t)i * (M + 1) + j] + Real(g.parity) * D2full[(size_t)i * (M + 1) + (M - j)];
    }
  }
  g.rho[N] = Real(1);

  // Clenshaw-Curtis weights on the full grid; the positive half integrates [0,1]
  std::vector<double> w(M + 1);
  for (int j = 0; j <= M; ++j) {
    double th = std::numbers::pi * j / M, s = 0;
    for (int k = 1; k <= M / 2; ++k) {
      double b = (2 * k == M) ? 1.0 : 2.0;
      s += b / (4.0 * k * k - 1) * std::cos(2 * k * th);
    }
    w[j] = ((j == 0 || j == M) ? 1.0 : 2.0) / M * (1 - s);
  }
  g.weights.resize(n);
  for (int a = 0; a <= N; ++a) g.weights[a] = w[N - a];

  // barycentric interpolation to x = 0 folded with parity
  g.origin_w.assign(n, 0.0);
  double den = 0;
  std::vector<double> num(n);
  for (int j = 0; j <= M; ++j) {
    double bw = ((j == 0 || j == M) ? 0.5 : 1.0) * (j % 2 ? -1.0 : 1.0);
    double t = bw / (0.0 - (double)x[j]);
    den += t;
    int a = j <= N ? N - j : N - (M - j);
    double sgn = j <= N ? 1.0 : g.parity;
    g.origin_w[a] += sgn * t;
  }
  for (auto& v : g.origin_w) v /= den;
  return g;
}

template struct RadialGrid<double>;
template struct RadialGrid<quad>;
template RadialGrid<double> make_radial_grid<double>(int, int);
template RadialGrid<quad> make_radial_grid<quad>(int, int);

}  // namespace blowuplab

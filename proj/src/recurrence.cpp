#include "blowuplab/recurrence.hpp"
#include "blowuplab/errors.hpp"

#include <cmath>
#include <limits>

namespace blowuplab {

std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::GenericEll: return "generic";
    case ProblemKind::EllZero: return "ell0";
    case ProblemKind::SusyEllOne: return "susy1";
  }
  return "?";
}

ProblemKind problem_kind_from_string(const std::string& s) {
  if (s == "generic") return ProblemKind::GenericEll;
  if (s == "ell0") return ProblemKind::EllZero;
  if (s == "susy1") return ProblemKind::SusyEllOne;
  throw ArgumentError("unknown problem kind '" + s + "'");
}

cplx coef_A(int n, int ell, cplx lam) {
  double N = n, L = ell;
  cplx num = 12 * N * N + 4.0 * N * (2.0 * lam + (3 * L + 12)) + lam * lam + 2 * (2 * L + 9) * lam +
             3 * (L * L + 8 * L - 1);
  return num / (4 * (2 * N + 2 * L + 9) * (N + 2));
}

cplx coef_B(int n, int ell, cplx lam) {
  double N = n, L = ell;
  return -(lam + (L + 2 * N + 7)) * (lam + (L + 2 * N - 3)) / (4 * (2 * N + 2 * L + 9) * (N + 2));
}

cplx susy_coef_A(int n, cplx lam) {
  double N = n;
  return (lam * lam + 2 * (4 * N + 15) * lam + 12 * (N + 5) * (N + 2)) / (4 * (2 * N + 15) * (N + 2));
}

cplx susy_coef_B(int n, cplx lam) {
  double N = n;
  return -(lam + (2 * N + 6)) * (lam + (2 * N + 4)) / (4 * (2 * N + 15) * (N + 2));
}

cplx kind_A(ProblemKind k, int ell, int n, cplx lam) {
  switch (k) {
    case ProblemKind::GenericEll: return coef_A(n, ell, lam);
    case ProblemKind::EllZero: return coef_A(n, 0, lam);
    case ProblemKind::SusyEllOne: return susy_coef_A(n, lam);
  }
  return 0;
}

cplx kind_B(ProblemKind k, int ell, int n, cplx lam) {
  switch (k) {
    case ProblemKind::GenericEll: return coef_B(n, ell, lam);
    case ProblemKind::EllZero: return coef_B(n, 0, lam);
    case ProblemKind::SusyEllOne: return susy_coef_B(n, lam);
  }
  return 0;
}

cplx Series::value(int n) const { return mant[n] * std::exp(log_scale[n]); }

cplx Series::ratio(int n) const { return mant[n + 1] / mant[n] * std::exp(log_scale[n + 1] - log_scale[n]); }

double Series::log_abs(int n) const {
  double m = std::abs(mant[n]);
  return m == 0 ? -std::numeric_limits<double>::infinity() : std::log(m) + log_scale[n];
}

Series series_coeffs(ProblemKind kind, int ell, cplx lam, int N) {
  if (N < 2) throw ArgumentError("series_coeffs needs N >= 2");
  Series s;
  s.mant.resize(N + 1);
  s.log_scale.assign(N + 1, 0.0);
  cplx prev = 1.0, cur = kind_A(kind, ell, -1, lam);
  double L = 0;
  s.mant[0] = prev;
  s.mant[1] = cur;
  for (int n = 0; n + 2 <= N; ++n) {
    cplx nxt = kind_A(kind, ell, n, lam) * cur + kind_B(kind, ell, n, lam) * prev;
    prev = cur;
    cur = nxt;
    double m = std::max(std::abs(cur), std::abs(prev));
    if (m > 1e150 || (m > 0 && m < 1e-150)) {
      prev /= m;
      cur /= m;
      L += std::log(m);
    }
    s.mant[n + 2] = cur;
    s.log_scale[n + 2] = L;
  }
  return s;
}

cplx series_coeffs_ell0_closed(int n, cplx l) {
  if (n == 2) return (l - 1.0) * (l - 3.0) * (l * l + 32.0 * l + 235.0) / 2016.0;
  if (n == 3)
    return (l - 1.0) * (l - 3.0) * (((l + 58.0) * l + 1052.0) * l * l + 6350.0 * l + 4971.0) / 266112.0;
  throw ArgumentError("closed-form a_n(0,lambda) only for n in {2,3}");
}

cplx ellzero_seed(cplx l) {
  cplx num = (((l + 58.0) * l + 1052.0) * l + 6350.0) * l + 4971.0;
  return num / (132.0 * (l * l + 32.0 * l + 235.0));
}

std::vector<cplx> ratio_seq(ProblemKind kind, int ell, cplx lam, int N) {
  std::vector<cplx> r(N + 1);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  int n0 = 0;
  r[0] = kind_A(kind, ell, -1, lam);
  if (kind == ProblemKind::EllZero) {
    if (N >= 1) r[1] = std::abs(r[0]) > 1e-300 ? kind_A(kind, 0, 0, lam) + kind_B(kind, 0, 0, lam) / r[0] : cplx(nan, nan);
    if (N >= 2) r[2] = ellzero_seed(lam);
    n0 = 2;
  }
  for (int n = n0; n < N; ++n) {
    if (std::abs(r[n]) < 1e-300) throw DegenerateRatioError("ratio recursion hit |r_n| < 1e-300 at n = " + std::to_string(n));
    r[n + 1] = kind_A(kind, ell, n, lam) + kind_B(kind, ell, n, lam) / r[n];
  }
  return r;
}

cplx quasi_solution(ProblemKind kind, int ell, int n, cplx l) {
  double N = n, L = ell;
  switch (kind) {
    case ProblemKind::GenericEll:
      return l * l / (4 * (N + 1) * (2 * N + 2 * L + 7)) + (4 * N + 2 * L + 5) * l / (2 * (N + 1) * (2 * N + 2 * L + 7)) +
             (N - 1) / (N + 1) + 3 * L / (8 * (N + 1));
    case ProblemKind::EllZero:
      return l * l / (4 * (N + 1) * (2 * N + 7)) + (4 * N + 3) * l / (2 * (N + 1) * (2 * N + 7)) + (N - 1) / (N + 1);
    case ProblemKind::SusyEllOne:
      return l * l / (4 * (2 * N + 13) * (N + 1)) + (2 * N + 5) * l / ((2 * N + 13) * (N + 1)) + (2 * N + 9) / (2 * N + 13);
  }
  return 0;
}

int delta_start(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::GenericEll: return 3;
    case ProblemKind::EllZero: return 5;
    case ProblemKind::SusyEllOne: return 1;
  }
  return 0;
}

RatioState delta_eps_C(ProblemKind kind, int ell, cplx lam, int N) {
  RatioState s;
  s.kind = kind;
  s.ell = kind == ProblemKind::EllZero ? 0 : ell;
  s.lambda = lam;
  s.n_max = N;
  s.r = ratio_seq(kind, s.ell, lam, N);
  Series ser = series_coeffs(kind, s.ell, lam, std::max(N, 2));
  s.a.resize(N + 1);
  for (int n = 0; n <= N; ++n) s.a[n] = ser.value(n);
  s.rtilde.resize(N + 2);
  for (int n = 0; n <= N + 1; ++n) s.rtilde[n] = quasi_solution(kind, s.ell, n, lam);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  s.delta.assign(N + 1, cplx(nan, nan));
  s.eps.assign(N + 1, cplx(nan, nan));
  s.C.assign(N + 1, cplx(nan, nan));
  for (int n = 0; n <= N; ++n) {
    s.delta[n] = s.r[n] / s.rtilde[n] - 1.0;
    cplx A = kind_A(kind, s.ell, n, lam), B = kind_B(kind, s.ell, n, lam);
    cplx rr = s.rtilde[n] * s.rtilde[n + 1];
    s.eps[n] = (A * s.rtilde[n] + B) / rr - 1.0;
    s.C[n] = B / rr;
  }
  return s;
}

double delta_recursion_residual(const RatioState& s) {
  double m = 0;
  for (int n = delta_start(s.kind); n < s.n_max; ++n) {
    cplx d = s.delta[n];
    cplx pred = s.eps[n] - s.C[n] * d / (1.0 + d);
    m = std::max(m, std::abs(s.delta[n + 1] - pred) / std::max(1.0, std::abs(s.delta[n + 1])));
  }
  return m;
}

}  // namespace blowuplab

#include "blowuplab/polyfield.hpp"
#include "blowuplab/errors.hpp"
#include "blowuplab/parallel.hpp"

#include <cmath>
#include <numbers>
#include <functional>
#include <mutex>
#include <sstream>

namespace blowuplab {

namespace {
// h(m) = prod_{j<m} (j + 1/2) = Gamma(m+1/2)/sqrt(pi)
const mpq_class& half_factorial(int m) {
  static std::vector<mpq_class> cache = {mpq_class(1)};
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  while ((int)cache.size() <= m) {
    int j = (int)cache.size() - 1;
    cache.push_back(cache.back() * mpq_class(2 * j + 1, 2));
  }
  return cache[m];
}

Exp7 sum(const Exp7& a, const Exp7& b) {
  Exp7 r;
  for (int i = 0; i < 7; ++i) r[i] = a[i] + b[i];
  return r;
}

Exp7 unit(int i) {
  Exp7 e{};
  e[i] = 1;
  return e;
}

template <class Fn>
ExactScalar integrate_with(const MultiPoly7& p, const MultiPoly7& q, Fn&& mono) {
  mpq_class acc = 0;
  for (const auto& [a, ca] : p.terms)
    for (const auto& [b, cb] : q.terms) {
      ExactScalar m = mono(sum(a, b));
      if (m.q != 0) acc += ca * cb * m.q;
    }
  return {acc};
}

// every ordered index tuple of length k; derivatives of u and v along it
template <class Fn>
void for_each_tuple(int k, Fn&& fn) {
  std::array<int, 3> idx{};
  int total = 1;
  for (int i = 0; i < k; ++i) total *= 7;
  for (int t = 0; t < total; ++t) {
    int r = t;
    Exp7 beta{};
    for (int i = 0; i < k; ++i) {
      idx[i] = r % 7;
      r /= 7;
      beta[idx[i]]++;
    }
    fn(beta);
  }
}

// sum over ordered tuples of the given order, grouped by multi-index with multinomial weight
ExactScalar contraction(const MultiPoly7& u, const MultiPoly7& v, int order, bool sphere) {
  std::map<Exp7, int> weight;
  for_each_tuple(order, [&](const Exp7& b) { weight[b]++; });
  ExactScalar acc{0};
  for (const auto& [beta, w] : weight) {
    MultiPoly7 du = u.diff(beta);
    if (du.is_zero()) continue;
    MultiPoly7 dv = v.diff(beta);
    if (dv.is_zero()) continue;
    ExactScalar s = sphere ? integrate_sphere(du, dv) : integrate_ball(du, dv);
    acc.q += w * s.q;
  }
  return acc;
}
}  // namespace

MultiPoly7 MultiPoly7::constant(const mpq_class& c) { return monomial(Exp7{}, c); }

MultiPoly7 MultiPoly7::monomial(const Exp7& e, const mpq_class& c) {
  MultiPoly7 p;
  p.add_term(e, c);
  return p;
}

MultiPoly7 MultiPoly7::coord(int i) {
  if (i < 0 || i > 6) throw ArgumentError("coordinate index must be in 0..6");
  return monomial(unit(i));
}

MultiPoly7 MultiPoly7::radius_sq() {
  MultiPoly7 p;
  for (int i = 0; i < 7; ++i) {
    Exp7 e{};
    e[i] = 2;
    p.add_term(e, 1);
  }
  return p;
}

int MultiPoly7::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms) {
    int s = 0;
    for (auto x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

void MultiPoly7::add_term(const Exp7& e, const mpq_class& c) {
  if (c == 0) return;
  auto it = terms.find(e);
  if (it == terms.end()) {
    terms.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms.erase(it);
}

MultiPoly7 MultiPoly7::operator+(const MultiPoly7& o) const {
  MultiPoly7 r = *this;
  for (const auto& [e, c] : o.terms) r.add_term(e, c);
  return r;
}

MultiPoly7 MultiPoly7::operator-(const MultiPoly7& o) const {
  MultiPoly7 r = *this;
  for (const auto& [e, c] : o.terms) r.add_term(e, -c);
  return r;
}

MultiPoly7 MultiPoly7::operator*(const MultiPoly7& o) const {
  MultiPoly7 r;
  for (const auto& [a, ca] : terms)
    for (const auto& [b, cb] : o.terms) r.add_term(sum(a, b), ca * cb);
  return r;
}

MultiPoly7 MultiPoly7::scaled(const mpq_class& c) const {
  if (c == 0) return {};
  MultiPoly7 r = *this;
  for (auto& [e, v] : r.terms) v *= c;
  return r;
}

MultiPoly7 MultiPoly7::diff(int i) const {
  MultiPoly7 r;
  for (const auto& [e, c] : terms) {
    if (e[i] == 0) continue;
    Exp7 f = e;
    f[i]--;
    r.add_term(f, c * e[i]);
  }
  return r;
}

MultiPoly7 MultiPoly7::diff(const Exp7& beta) const {
  MultiPoly7 r;
  for (const auto& [e, c] : terms) {
    Exp7 f = e;
    mpz_class k = 1;
    bool zero = false;
    for (int i = 0; i < 7 && !zero; ++i) {
      if (e[i] < beta[i]) {
        zero = true;
        break;
      }
      for (int j = 0; j < beta[i]; ++j) k *= e[i] - j;
      f[i] = e[i] - beta[i];
    }
    if (!zero) r.add_term(f, c * k);
  }
  return r;
}

MultiPoly7 MultiPoly7::euler() const {
  MultiPoly7 r;
  for (const auto& [e, c] : terms) {
    int d = 0;
    for (auto x : e) d += x;
    r.add_term(e, c * d);
  }
  return r;
}

MultiPoly7 MultiPoly7::laplacian() const {
  MultiPoly7 r;
  for (int i = 0; i < 7; ++i) r = r + diff(i).diff(i);
  return r;
}

double MultiPoly7::eval(const std::array<double, 7>& x) const {
  double s = 0;
  for (const auto& [e, c] : terms) {
    double t = c.get_d();
    for (int i = 0; i < 7; ++i) t *= std::pow(x[i], e[i]);
    s += t;
  }
  return s;
}

std::string MultiPoly7::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (int i = 0; i < 7; ++i)
      if (e[i]) os << "*x" << i + 1 << (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
  }
  return os.str();
}

int PairField::degree() const { return std::max(u1.degree(), u2.degree()); }

double ExactScalar::to_double() const {
  return q.get_d() * std::numbers::pi * std::numbers::pi * std::numbers::pi;
}

std::string ExactScalar::str() const { return q.get_str() + "*pi^3"; }

ExactScalar monomial_integral_sphere(const Exp7& a) {
  mpq_class prod = 2;
  int M = 0;
  for (auto x : a) {
    if (x % 2) return {0};
    prod *= half_factorial(x / 2);
    M += x / 2;
  }
  return {prod / half_factorial(M + 3)};
}

ExactScalar monomial_integral_ball(const Exp7& a) {
  ExactScalar s = monomial_integral_sphere(a);
  int M = 0;
  for (auto x : a) M += x;
  s.q /= M + 7;
  return s;
}

ExactScalar integrate_ball(const MultiPoly7& p, const MultiPoly7& q) {
  return integrate_with(p, q, monomial_integral_ball);
}

ExactScalar integrate_sphere(const MultiPoly7& p, const MultiPoly7& q) {
  return integrate_with(p, q, monomial_integral_sphere);
}

ExactScalar inner_1(const PairField& u, const PairField& v) {
  return contraction(u.u1, v.u1, 3, false) + contraction(u.u2, v.u2, 2, false) + contraction(u.u1, v.u1, 2, true);
}

ExactScalar inner_2(const PairField& u, const PairField& v) {
  MultiPoly7 lu = u.u1.laplacian(), lv = v.u1.laplacian();
  return contraction(lu, lv, 1, false) + contraction(u.u2, v.u2, 2, false) + contraction(u.u2, v.u2, 1, true);
}

ExactScalar inner_H(const PairField& u, const PairField& v) {
  ExactScalar r = inner_1(u, v);
  r.q *= 4;
  return r + inner_2(u, v) + contraction(u.u1, v.u1, 1, true) + integrate_sphere(u.u1, v.u1) +
         integrate_sphere(u.u2, v.u2);
}

ExactScalar sobolev_norm_sq(const PairField& u) {
  ExactScalar acc{0};
  auto add = [&](const MultiPoly7& p, int max_order) {
    Exp7 beta{};
    // all multi-indices with |beta| <= max_order
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == 7) {
        MultiPoly7 d = p.diff(beta);
        if (!d.is_zero()) acc.q += integrate_ball(d, d).q;
        return;
      }
      for (int k = 0; k <= left; ++k) {
        beta[i] = k;
        rec(i + 1, left - k);
      }
      beta[i] = 0;
    };
    rec(0, max_order);
  };
  add(u.u1, 3);
  add(u.u2, 2);
  return acc;
}

PairField apply_Ltilde(const PairField& u) {
  PairField r;
  r.u1 = u.u2 - u.u1.euler() - u.u1;
  r.u2 = u.u1.laplacian() - u.u2.euler() - u.u2.scaled(2);
  return r;
}

ExactScalar dissipativity_margin(const PairField& u) {
  ExactScalar a = inner_H(apply_Ltilde(u), u), b = inner_H(u, u);
  return {a.q + b.q / 2};
}

std::pair<ExactScalar, ExactScalar> equivalence_sample(const PairField& u) {
  if (u.is_zero()) throw ArgumentError("equivalence_sample needs a nonzero field");
  return {inner_H(u, u), sobolev_norm_sq(u)};
}

PairField random_pair(std::mt19937_64& rng, int max_degree) {
  if (max_degree < 0) throw ArgumentError("max_degree must be >= 0");
  std::uniform_int_distribution<int> nterms(8, 12), deg(0, max_degree), var(0, 6), coef(1, 5), sign(0, 1);
  auto one = [&] {
    MultiPoly7 p;
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
      Exp7 e{};
      int d = deg(rng);
      for (int k = 0; k < d; ++k) e[var(rng)]++;
      int c = coef(rng) * (sign(rng) ? 1 : -1);
      p.add_term(e, c);
    }
    return p;
  };
  PairField u;
  u.u1 = one();
  u.u2 = one();
  return u;
}

std::vector<SweepRow> dissipativity_sweep(int samples, std::uint64_t seed, int max_degree, unsigned threads) {
  std::vector<SweepRow> rows(samples);
  parallel_for(
      samples,
      [&](std::size_t i) {
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (i + 1));
        PairField u = random_pair(rng, max_degree);
        while (u.is_zero()) u = random_pair(rng, max_degree);
        SweepRow r;
        r.sample_id = (int)i;
        r.degree = u.degree();
        r.margin = dissipativity_margin(u).q;
        auto [h, s] = equivalence_sample(u);
        r.ratio = mpq_class(h.q / s.q).get_d();
        rows[i] = std::move(r);
      },
      threads);
  return rows;
}

}  // namespace blowuplab

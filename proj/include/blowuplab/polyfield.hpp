#pragma once
#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace blowuplab {

using Exp7 = std::array<std::uint8_t, 7>;

struct MultiPoly7 {
  std::map<Exp7, mpq_class> terms;

  static MultiPoly7 constant(const mpq_class& c);
  static MultiPoly7 monomial(const Exp7& e, const mpq_class& c = 1);
  static MultiPoly7 coord(int i);
  static MultiPoly7 radius_sq();

  bool is_zero() const { return terms.empty(); }
  int degree() const;
  void add_term(const Exp7& e, const mpq_class& c);

  MultiPoly7 operator+(const MultiPoly7& o) const;
  MultiPoly7 operator-(const MultiPoly7& o) const;
  MultiPoly7 operator*(const MultiPoly7& o) const;
  MultiPoly7 scaled(const mpq_class& c) const;
  bool operator==(const MultiPoly7& o) const { return terms == o.terms; }

  MultiPoly7 diff(int i) const;
  MultiPoly7 diff(const Exp7& beta) const;
  MultiPoly7 euler() const;  // xi . grad
  MultiPoly7 laplacian() const;
  double eval(const std::array<double, 7>& x) const;
  std::string str() const;
};

struct PairField {
  MultiPoly7 u1, u2;
  PairField operator+(const PairField& o) const { return {u1 + o.u1, u2 + o.u2}; }
  PairField scaled(const mpq_class& c) const { return {u1.scaled(c), u2.scaled(c)}; }
  bool is_zero() const { return u1.is_zero() && u2.is_zero(); }
  int degree() const;
};

// q * pi^3
struct ExactScalar {
  mpq_class q;
  double to_double() const;
  std::string str() const;
  ExactScalar operator+(const ExactScalar& o) const { return {q + o.q}; }
  ExactScalar operator-(const ExactScalar& o) const { return {q - o.q}; }
  bool operator==(const ExactScalar& o) const { return q == o.q; }
};

ExactScalar monomial_integral_ball(const Exp7& a);
ExactScalar monomial_integral_sphere(const Exp7& a);
// bilinear integrals of a product without forming it
ExactScalar integrate_ball(const MultiPoly7& p, const MultiPoly7& q);
ExactScalar integrate_sphere(const MultiPoly7& p, const MultiPoly7& q);

ExactScalar inner_1(const PairField& u, const PairField& v);
ExactScalar inner_2(const PairField& u, const PairField& v);
ExactScalar inner_H(const PairField& u, const PairField& v);
ExactScalar sobolev_norm_sq(const PairField& u);
PairField apply_Ltilde(const PairField& u);
ExactScalar dissipativity_margin(const PairField& u);
std::pair<ExactScalar, ExactScalar> equivalence_sample(const PairField& u);

// 8..12 terms per component, integer coefficients in [-5,5] \ {0}, total degree <= max_degree
PairField random_pair(std::mt19937_64& rng, int max_degree = 6);

struct SweepRow {
  int sample_id = 0;
  int degree = 0;
  mpq_class margin;  // coefficient of pi^3
  double ratio = 0;  // (u|u)_H / ||u||^2
};
std::vector<SweepRow> dissipativity_sweep(int samples, std::uint64_t seed, int max_degree = 6, unsigned threads = 0);

}  // namespace blowuplab

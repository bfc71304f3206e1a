#pragma once
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "blowuplab/chebyshev.hpp"
#include "blowuplab/fit.hpp"

namespace blowuplab {

using cplx = std::complex<double>;
using RadialFn = std::function<double(double)>;

struct RadialState {
  int ell = 0;
  std::vector<double> psi1, psi2;
  double tau = 0;
  // optional exact sampler used to re-seed quad-precision runs
  std::function<std::pair<quad, quad>(quad)> sampler;
};

struct EvolveConfig {
  int N = 64;
  double dt = 1e-3;
  double tau_end = 5;
  double filter_strength = 0;
  double blowup_cutoff = 20;
  double decay_cutoff = 1e-2;
  double sample_dt = 0.05;
  double cfl = 0.5;
  bool quad = false;
};

struct ModeAmplitudes {
  double alpha_h = 0;   // lambda = 3 (l = 0)
  double alpha_g0 = 0;  // lambda = 1 mode of the channel
  double alpha_q = 0;   // lambda = 0 (l = 1)
  double remainder_norm = 0;
};

struct TrajSample {
  double tau = 0;
  double norm = 0;          // surrogate norm of the state (linear) or of Psi - Psi*_0 (nonlinear)
  ModeAmplitudes modes;
  double sup_origin = 0;    // |psi1(0)|
  double dist_static = 0;   // max-norm distance to Psi*_0 (nonlinear runs)
  double drift = 0;         // max-norm distance to the initial state
};

enum class RunStatus { Completed, BlowupDetected, DecayDetected };
std::string to_string(RunStatus s);

struct Trajectory {
  int ell = 0;
  int N = 0;
  double dt = 0;
  bool nonlinear = false;
  RunStatus status = RunStatus::Completed;
  std::vector<TrajSample> samples;
  RadialState final_state;
  double max_drift = 0;
};

RadialGrid<double> radial_grid(int N, int ell);

// first-order system: f_t = -rho f' - f + g, g_t = f'' + 6 f'/rho - l(l+5) f/rho^2 - rho g' - 2 g + V0 f
Eigen::MatrixXd assemble_linear_operator(int ell, const RadialGrid<double>& g);
double spectral_radius(int ell, int N);
double max_stable_dt(int ell, int N, double cfl = 0.5);

struct SpectrumEntry {
  cplx lambda;           // double-precision eigenvalue
  cplx polished;         // refined in quad precision (= lambda when not refined)
  cplx polished_lo;      // low word of the refined value: polished + polished_lo
  double tail = 0;       // Chebyshev tail energy fraction of the eigenvector
  bool spurious = false;
};
struct SpectrumResult {
  int ell = 0, N = 0;
  std::vector<SpectrumEntry> entries;  // sorted by real part, descending
  // resolved eigenvalues with Re > threshold (polished values)
  std::vector<cplx> unstable(double threshold = -0.1) const;
};
SpectrumResult discrete_spectrum(int ell, int N, double polish_above = -0.5);

// sampled eigenpair (u1, rho u1' + (lambda+1) u1) for (l,lambda) in {(0,3),(0,1),(1,1),(1,0)}
RadialState sample_eigenpair(int ell, int lambda, const RadialGrid<double>& g);
RadialState static_state_psi_star(const RadialGrid<double>& g);
RadialState static_state_sqrt2(const RadialGrid<double>& g);

double surrogate_norm(const RadialState& s, const RadialGrid<double>& g);
ModeAmplitudes mode_amplitudes(const RadialState& s, const RadialGrid<double>& g);
// removes the eigencomponents with Re lambda > threshold using right/left eigenvectors
RadialState project_out_unstable(const RadialState& s, int N, double threshold = -0.1);

Trajectory evolve_linear(const RadialState& s, const EvolveConfig& cfg);
Trajectory evolve_nonlinear(const RadialState& s, const EvolveConfig& cfg);

// Phi(0) = R((f,g),T) + R(Psi*_0,T) - Psi*_0, R((f,g),T)(rho) = (T f(T rho), T^2 g(T rho))
RadialState initial_data_transform(const RadialFn& f, const RadialFn& g, double T, const RadialGrid<double>& grid);

struct RateFit {
  double omega = 0;
  LinearFit fit;
  bool decaying = false;
};
// log-slope of the norm (or dist_static for nonlinear runs) on [t0, t1]
LinearFit growth_fit(const Trajectory& t, double t0, double t1);
RateFit convergence_rate(const Trajectory& t, double t0, double t1);

enum class Label { Blowup, Dispersal, Undecided };
std::string to_string(Label l);
Label classify_run(const Trajectory& t);

struct BisectionStage {
  double lo = 0, hi = 0, mid = 0;
  Label mid_label = Label::Undecided;
  double plateau = 0;        // min over bracket ends of the time spent within plateau_radius of Psi*_0
  double min_dist_2_6 = 0;   // min distance to Psi*_0 over tau in [2,6] at the midpoint
};
struct ThresholdResult {
  double alpha_star = 0, lo = 0, hi = 0, width = 0;
  bool converged = false;
  std::vector<BisectionStage> stages;
  std::vector<std::pair<double, Label>> interior_checks;
  bool monotone = false;
  Trajectory near_threshold;
};
struct ThresholdConfig {
  EvolveConfig evolve;
  int iterations = 16;
  double T = 1.0;
  double plateau_radius = 0.1;
  int interior_points = 5;
  unsigned threads = 0;
};
ThresholdResult threshold_bisect(const RadialFn& v1, const RadialFn& v2, double alpha_lo, double alpha_hi,
                                 const ThresholdConfig& cfg);
double plateau_time(const Trajectory& t, double radius);

// error of the surrogate norm at tau_end against a dt/4 reference, per dt
struct OrderSweep {
  std::vector<double> dts, errors;
  LinearFit fit;  // log error vs log dt
};
OrderSweep temporal_order_sweep(const RadialState& s, int N, const std::vector<double>& dts, double tau_end);

}  // namespace blowuplab

#pragma once

#include <functional>
#include <optional>

#include "dimlab/lp_integral.hpp"
#include "dimlab/model.hpp"
#include "dimlab/subset_algebra.hpp"

namespace dimlab {

// ------------------------------------------------------------------
// Generator symbols
// ------------------------------------------------------------------

// Quasi-observable generator (L G)(eta) = -m|eta| G(eta) + sigma \int_W G(eta u x) dx.
// The added point runs over the window by tensor Gauss-Legendre quadrature,
// so G must decay or be supported inside it.
SetFunction apply_generator_symbol(SetFunction G, const ModelParams& params, const Window& window,
                                   int points_per_dim = 32);

// Dual generator (L* k)(eta) = -m|eta| k(eta) + sigma sum_{x in eta} k(eta \ x).
SetFunction apply_dual_generator(SetFunction k, const ModelParams& params);

// ------------------------------------------------------------------
// Correlation-function semigroup
// ------------------------------------------------------------------

// Two algebraically equal closed forms of k_t.  Thinned keeps every factor
// bounded by max(1, sigma/m) and is the default; Scaled carries the
// e^{-tm|eta|} prefactor against a growing coherent state and is exposed for
// the form-equivalence checks.
enum class EvolutionForm { Thinned, Scaled };

// k_t(eta) = sum_{xi subset eta} e^{-tm|xi|} k0(xi) ((sigma/m)(1-e^{-tm}))^{|eta\xi|}.
// Carries the sub-Poissonian growth bound when k0 declares one.
SetFunction evolve_correlation(SetFunction k0, double t, const ModelParams& params,
                               EvolutionForm form = EvolutionForm::Thinned);

// Growth envelopes for evolved correlation functions: the time-uniform
// max(C, sigma/m)^n and the tighter time-resolved interpolation.
struct SubPoissonBound {
  double k0_norm = 1.0;
  double C = 1.0;
  ModelParams params;

  double uniform(int n) const;
  double at_time(double t, int n) const;
};

SubPoissonBound sub_poisson_bound(double k0_norm, double C, const ModelParams& params);

// ------------------------------------------------------------------
// Quasi-observable semigroup and resolvents
// ------------------------------------------------------------------

// (T(t) G)(eta) = e^{-tm|eta|} \int G(eta u xi) ((sigma/m)(1-e^{-tm}))^{|xi|} dl(xi).
// The coherent weight is folded into the integrand; spec.z is overridden to 1.
SetFunction semigroup_quasi(SetFunction G, double t, const ModelParams& params,
                            LPIntegralSpec spec);

// Dual resolvent via the Euler beta function:
// (R_z k)(eta) = (1/m) sum_{xi subset eta} (sigma/m)^{|xi|}
//                B(z/m + |eta| - |xi|, |xi| + 1) k(eta \ xi),  z > 0.
SetFunction resolvent_dual(SetFunction k, double z, const ModelParams& params);

// (R_z G)(eta) = (1/m) \int G(eta u xi) (sigma/m)^{|xi|} B(z/m + |eta|, |xi| + 1) dl(xi).
SetFunction resolvent_quasi(SetFunction G, double z, const ModelParams& params,
                            LPIntegralSpec spec);

// ------------------------------------------------------------------
// Invariant state and ergodicity
// ------------------------------------------------------------------

// k_inv(eta) = (sigma/m)^{|eta|}; the fixed point of the dual evolution.
SetFunction invariant_correlation(const ModelParams& params);

// Exponential contraction towards k_inv.  bound(t) dominates the weighted
// sup distance; empirical_sup(t) is the observed left side over the probe
// family (a lower bound of the true norm).  Requires C > sigma/m.
class ErgodicBound {
 public:
  ErgodicBound(SetFunction k0, double C, const ModelParams& params, NormContext probes,
               std::optional<double> analytic_norm_diff = std::nullopt);

  double norm_diff() const { return norm_diff_; }
  double bound(double t) const;
  double empirical_sup(double t) const;

 private:
  SetFunction k0_;
  double C_;
  ModelParams params_;
  NormContext probes_;
  double norm_diff_;
};

// ------------------------------------------------------------------
// Local (window) projections of the state
// ------------------------------------------------------------------

struct ProjectionDensity {
  SetFunction density;  // eta -> \int_{window} (-1)^{|xi|} k(eta u xi) dl(xi)
  bool certified;       // alternating series carries a certified truncation tail
};

ProjectionDensity projection_density(SetFunction k, const Window& window, LPIntegralSpec spec);

// Weighted bound |proj_t - proj_inv| <= norm_diff/(1 - sigma/(Cm)) e^{-tm} e^{C|W|} C^{|eta|}.
double projection_ergodic_bound(double k0_norm_diff, double C, const ModelParams& params,
                                const Window& window, double t);

// ------------------------------------------------------------------
// Decay of correlations and Ursell functions
// ------------------------------------------------------------------

// v(eta, y) = k(eta u y) - k(eta) k({y}); zero identically for Poisson k.
double correlation_gap(const SetFunction& k, const Configuration& eta, const Point& y);

using GapFunction = std::function<double(const Configuration&, const Point&)>;

// Closed subset-sum evolution of the gap:
// v_t(eta,y) = e^{-tm(|eta|+1)} sum_{xi subset eta} ((sigma/m)(e^{tm}-1))^{|eta\xi|} v0(xi,y).
GapFunction evolve_gap(GapFunction v0, double t, const ModelParams& params);

// a(y) e^{-tm} with a(y) the empirical weighted norm of v0(., y).
double gap_norm_bound(const GapFunction& v0, const Point& y, double t, const ModelParams& params,
                      const NormContext& probes);

// u_t(eta) = e^{-tm|eta|} u0(eta) + 1_{|eta|=1} (sigma/m)(1-e^{-tm}); requires u0({}) = 0.
SetFunction evolve_ursell(SetFunction u0, double t, const ModelParams& params);

// ------------------------------------------------------------------
// Generating (Bogolyubov) functionals
// ------------------------------------------------------------------

// An integrable test function with declared support; <theta> and the L1 norm
// are taken from the declared values when present, else by window quadrature.
struct TestFunction {
  PointFunction eval;
  Window support = Window(Point{0.0}, Point{1.0});
  std::optional<double> integral;
  std::optional<double> l1_norm;

  double mean(int points_per_dim = 64) const;
  double l1(int points_per_dim = 64) const;
  TestFunction scaled(double factor) const;
};

using BogolyubovFunctional = std::function<double(const TestFunction&)>;

// B_t(theta) = exp{(sigma/m)(1-e^{-tm}) <theta>} B0(e^{-tm} theta).
double bogolyubov_evolve(const BogolyubovFunctional& B0, const TestFunction& theta, double t,
                         const ModelParams& params);

// Cross-check path: B(theta) = \int e(theta, eta) k(eta) dl(eta).
double bogolyubov_from_correlation(const SetFunction& k, const TestFunction& theta,
                                   LPIntegralSpec spec);

// B_inv(theta) = exp{(sigma/m) <theta>}.
double bogolyubov_invariant(const TestFunction& theta, const ModelParams& params);

// Contraction of generating functionals towards the invariant one:
// |B_t(theta) - B_inv(theta)| <= e^{-mt} norm_diff e^{C ||theta||_1} / (1 - sigma/(Cm)),
// with norm_diff a bound on the weighted distance of k0 from k_inv.
// Requires C > sigma/m.
double bogolyubov_distance_bound(double k0_norm_diff, double C, const ModelParams& params,
                                 const TestFunction& theta, double t);

// Sampled sup of |B(theta)| e^{-alpha ||theta||_1}; the evolution contracts
// these balls for alpha >= sigma/m.
double ball_norm_estimate(const BogolyubovFunctional& B, const std::vector<TestFunction>& thetas,
                          double alpha);

// ------------------------------------------------------------------
// Mean-ergodic averages
// ------------------------------------------------------------------

// (1/t) \int_0^t (T(s) G)(eta) ds by composite Simpson; the step count is
// doubled (from time_steps) until a halving changes the value by < 1e-6.
SetFunction mean_ergodic_average(SetFunction G, double t, const ModelParams& params,
                                 LPIntegralSpec spec, int time_steps = 32);

struct MeanErgodicTarget {
  double integral;      // \int G k_inv dl
  SetFunction limit;    // indicator of the empty configuration times the integral
};

MeanErgodicTarget mean_ergodic_target(const SetFunction& G, const ModelParams& params,
                                      LPIntegralSpec spec);

}  // namespace dimlab

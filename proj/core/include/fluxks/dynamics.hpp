#pragma once

#include <string>

#include "fluxks/chemo.hpp"
#include "fluxks/diagnostics.hpp"
#include "fluxks/grid.hpp"

namespace fluxks {

// Initial data families.  Both are positive, radially symmetric, have zero
// derivative at r = 0 and r = R, and are scaled to hit a target total mass.
//   cosine: c0 * (1 + amplitude * cos(pi r / R)),          |amplitude| < 1
//   bump:   c0 + amplitude * (1 + cos(pi r / R))^k,        amplitude >= 0, k >= 2
struct U0Spec {
  enum class Family { Cosine, Bump };
  Family family = Family::Cosine;
  double mass = 1.0;       // target integral of u0 over the ball
  double amplitude = 0.5;
  int k = 2;               // bump exponent, unused for cosine
};

std::vector<double> sample_u0(const RadialGrid& grid, const U0Spec& spec);

struct SimConfig {
  int dim = 2;
  double radius = 1.0;
  int ncells = 128;
  double chi = 0.5;
  U0Spec u0;
  double t_end = 1.0;
  double cfl = 0.9;
  double blowup_factor = 1e3;
  double dt_min = 1e-12;
  int sample_stride = 100;
  // Stores the full profile every snapshot_stride accepted steps (0 = off);
  // feeds the Lp inequality checks and the identity-residual studies.
  int snapshot_stride = 0;
};

struct SimState {
  double t = 0.0;
  std::vector<double> u;  // cell averages, positive on accepted states
  double mu = 0.0;        // mass / |Omega|
};

enum class Termination {
  ReachedTEnd,
  BlowupThreshold,
  DtUnderflow,
  PositivityLoss,
  NonFiniteState,
};

const char* to_string(Termination t);

enum class Classification { GlobalBounded, GrowthSuspected, Inconclusive };

const char* to_string(Classification c);

struct ClassificationResult {
  Classification label = Classification::Inconclusive;
  std::string reason;
  double peak_ratio = 0.0;
  double t_final = 0.0;
};

struct RunResult {
  ClassificationResult classification;  // filled by classify(); empty after integrate()
  SimState final_state;
  std::vector<DiagnosticsRecord> records;
  std::vector<Snapshot> snapshots;      // only if snapshot_stride > 0
  Termination termination = Termination::ReachedTEnd;
  long steps_total = 0;
  long steps_rejected = 0;
  double wall_seconds = 0.0;
  double initial_max_u = 0.0;
  double initial_min_u = 0.0;
  double initial_mass = 0.0;
  double peak_max_u = 0.0;
};

// Combined flux density
//   F = u u_r / sqrt(u^2 + u_r^2) - chi u v_r / sqrt(1 + v_r^2);
// the degenerate diffusive quotient extends by 0 at u = u_r = 0.
// |F| <= u (1 + chi) for u >= 0.
double total_flux(double u, double ur, double vr, double chi);

// Scratch buffers for the hot path; sized once per run.
struct StepWorkspace {
  std::vector<double> acc;   // cumulative radial integral at faces (N+1)
  std::vector<double> flux;  // face fluxes (N+1)
  std::vector<double> k1, umid, k2, unew;
  void resize(int ncells);
};

// Conservative form: (du/dt)_i = (area_{i+1} F_{i+1} - area_i F_i) / vol_i
// with arithmetic-mean face densities, adjacent-center face gradients,
// face-sampled v_r from the closed-form reconstruction, and zero flux at
// r = 0 and r = R.  The weighted sum over cells telescopes to zero, so mass
// is conserved to roundoff.
void rhs_divergence(const RadialGrid& grid, std::span<const double> u, double chi,
                    StepWorkspace& ws, std::span<double> dudt);
std::vector<double> rhs_divergence(const RadialGrid& grid, std::span<const double> u,
                                   double chi);

// Pointwise expanded form of the same right-hand side:
//   u_t = u^3 u_rr / s^3 + u_r^4 / s^3 + (n-1)/r u u_r / s
//         - chi u_r v_r / q - chi u (mu - u) / q^3 - chi (n-1)/r u v_r^3 / q^3,
// s = sqrt(u^2 + u_r^2), q = sqrt(1 + v_r^2).  Requires u > 0.
double expanded_rhs_value(double u, double ur, double urr, double vr, double mu, double chi,
                          int dim, double r);
std::vector<double> rhs_expanded(const RadialGrid& grid, std::span<const double> u,
                                 double chi);

// dt = cfl * min( dr^2 / (2 max A1 + eps), dr / (max |w| + eps) ) with
// A1 = u^3/s^3 <= 1 the effective diffusivity and w = chi v_r / sqrt(1+v_r^2)
// the advective velocity (|w| <= chi); eps = 1e-300 guards the divisions.
double stable_dt(const RadialGrid& grid, std::span<const double> u, double chi, double cfl);

struct StepResult {
  SimState state;
  bool finite = true;
  bool positive = true;
};

// One explicit midpoint (two-stage second-order Runge-Kutta) step of the
// conservative right-hand side; the chemo field is reconstructed at each
// stage.  Acceptance (positivity, finiteness) is the caller's decision.
StepResult step(const RadialGrid& grid, const SimState& state, double chi, double dt);

// Integrate from t = 0 until t_end, the blow-up threshold, or a step-size
// failure.  Diagnostics are recorded at t = 0, every sample_stride accepted
// steps, and at the final state.  Positivity loss rejects the step and
// retries with halved dt (up to 20 times).  classification is left empty;
// classify() (see classify.hpp) fills it.
RunResult integrate(const SimConfig& config);

}  // namespace fluxks

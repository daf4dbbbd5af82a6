#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "srbb/types.hpp"

namespace srbb {

/// Frobenius norm of A - B.
double frobenius_loss(const Matrix& a, const Matrix& b);

/// tr|rho - sigma| (no 1/2 factor); inputs must be density matrices.
double trace_distance(const Matrix& rho, const Matrix& sigma);

/// (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0, 1].
double fidelity(const Matrix& rho, const Matrix& sigma);

/// |psi><psi|.
Matrix density(const Vector& psi);

/// U divided by each d-th root of det U, paired with that root.
std::vector<std::pair<cplx, Matrix>> su_projections(const Matrix& u);

/// Multiplies su_approx by the root whose projection of u_ideal is nearest to it.
Matrix phase_recovery(const Matrix& su_approx, const Matrix& u_ideal);

/// Projection of U onto SU nearest the identity; ties go to the smallest principal root argument.
Matrix project_to_su(const Matrix& u);

/// Normalized real amplitudes as a 2^n state.
Vector amplitude_encode(const std::vector<double>& x, int n);

/// Hellinger distance between two histograms (normalized internally).
double hellinger(const std::vector<double>& p, const std::vector<double>& q);
double hellinger(const std::vector<std::uint64_t>& p, const std::vector<std::uint64_t>& q);

/// Haar-random pure state from normalized complex Gaussians.
Vector random_state(int n, std::uint64_t seed);

/// Deterministic sub-seed for an independent consumer.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Worker count: SRBB_THREADS when set, else hardware concurrency.
int thread_count();

using Objective = std::function<double(const std::vector<double>&)>;
/// Objective that may depend on the step index (mini-batch selection).
using StepObjective = std::function<double(const std::vector<double>&, long)>;

/// Optimizer result with per-iteration best-loss trace.
struct OptResult {
  std::vector<double> x;
  double f = 0.0;
  long iterations = 0;
  long evaluations = 0;
  std::vector<double> trace;
};

/// Nelder-Mead settings (coefficients 1, 2, 0.5, 0.5).
struct NMConfig {
  long max_iter = 200000;
  long max_evals = 0;           ///< 0 means unlimited
  double tol = 1e-16;           ///< stop when max f - min f over the simplex is below this
  double initial_step = 0.1;    ///< simplex edge length around x0
  double target = -1.0;         ///< stop once f_best <= target (disabled when negative)
  double time_limit_s = 0.0;    ///< wall-clock cap, 0 means none
  long trace_every = 100;       ///< record f_best every this many iterations
};

OptResult nelder_mead(const Objective& f, const std::vector<double>& x0, const NMConfig& cfg);

/// Adam with central finite-difference gradients.
struct AdamConfig {
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  long steps = 1000;
  double fd_step = 1e-6;
};

/// Central-difference gradient, coordinates split across workers.
std::vector<double> fd_gradient(const Objective& f, const std::vector<double>& x, double h);

OptResult adam(const StepObjective& f, const std::vector<double>& x0, const AdamConfig& cfg);
OptResult adam(const Objective& f, const std::vector<double>& x0, const AdamConfig& cfg);

enum class Loss { Frobenius, Trace, Fidelity };
enum class OptimizerKind { NelderMead, Adam };

Loss loss_from_name(const std::string& s);
std::string loss_name(Loss l);

/// Training settings.
struct TrainConfig {
  Loss loss = Loss::Frobenius;
  OptimizerKind optimizer = OptimizerKind::NelderMead;
  std::uint64_t seed = 0;
  int layers = 1;
  int dataset_size = 1000;
  int batch = 64;
  double lr = 0.01;
  int epochs = 20;
  double init_scale = 0.1;
  long nm_max_evals = 2000000;
  double nm_tol = 1e-16;
  double nm_step = 0.1;
  int nm_restarts = 50;
  double nm_target = 1e-12;     ///< restarts stop once the loss reaches this
  double time_budget_s = 0.0;   ///< 0 means no wall-clock cap
};

/// Training outcome.
struct TrainReport {
  std::map<std::string, double> final_loss;
  std::vector<std::string> param_names;
  std::vector<double> best_params;
  Matrix recovered_unitary;
  double wall_ms = 0.0;
  std::vector<double> loss_trace;
  double evolution_max_trace = 0.0;
  long evaluations = 0;
};

/// Fits the reduced circuit to the SU projection of the target.
TrainReport train(int n, const Matrix& target, const TrainConfig& cfg);

/// TrainReport JSON text.
std::string report_to_json(const TrainReport& r, int indent = 2);

}  // namespace srbb

#include "srbb/varopt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "srbb/circuit.hpp"
#include "srbb/json_io.hpp"
#include "srbb/synth.hpp"

namespace srbb {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void require_density(const Matrix& r, const char* which) {
  constexpr double tol = 1e-8;
  if (r.rows() != r.cols()) throw std::domain_error(std::string(which) + " must be square");
  if ((r - r.adjoint()).cwiseAbs().maxCoeff() > tol) throw std::domain_error(std::string(which) + " must be Hermitian");
  if (std::abs(r.trace() - cplx(1.0)) > tol) throw std::domain_error(std::string(which) + " must have unit trace");
  Eigen::SelfAdjointEigenSolver<Matrix> es(r, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) throw std::domain_error(std::string(which) + " must be positive semidefinite");
}

void require_unitary(const Matrix& u, double tol = 1e-8) {
  if (u.rows() != u.cols()) throw std::domain_error("matrix must be square");
  if ((u.adjoint() * u - identity(u.rows())).norm() > tol) throw std::domain_error("matrix is not unitary");
}

Matrix psd_sqrt(const Matrix& r) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(r);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::runtime_error(std::string(what) + ": objective returned a non-finite value");
}

Matrix haar_states(int n, int count, std::uint64_t seed) {
  const std::int64_t d = pow2(n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix s(d, count);
  for (int c = 0; c < count; ++c) {
    for (std::int64_t i = 0; i < d; ++i) s(i, c) = cplx(g(rng), g(rng));
    s.col(c).normalize();
  }
  return s;
}

// Per-column pure-state loss between two state blocks.
double pure_state_loss(Loss loss, const Matrix& got, const Matrix& want) {
  double acc = 0.0;
  for (Eigen::Index c = 0; c < got.cols(); ++c) {
    const double overlap = std::norm(got.col(c).dot(want.col(c)));
    const double f = std::clamp(overlap, 0.0, 1.0);
    acc += loss == Loss::Trace ? 2.0 * std::sqrt(1.0 - f) : 1.0 - f;
  }
  return acc / static_cast<double>(got.cols());
}

}  // namespace

double frobenius_loss(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("dimension mismatch");
  return (a - b).norm();
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  require_density(rho, "rho");
  require_density(sigma, "sigma");
  const Matrix diff = rho - sigma;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double fidelity(const Matrix& rho, const Matrix& sigma) {
  require_density(rho, "rho");
  require_density(sigma, "sigma");
  const Matrix s = psd_sqrt(rho);
  const Matrix m = s * sigma * s;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  const double t = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(t * t, 0.0, 1.0);
}

Matrix density(const Vector& psi) { return psi * psi.adjoint(); }

std::vector<std::pair<cplx, Matrix>> su_projections(const Matrix& u) {
  require_unitary(u);
  const auto d = u.rows();
  const cplx det = u.determinant();
  const double mag = std::pow(std::abs(det), 1.0 / static_cast<double>(d));
  std::vector<std::pair<cplx, Matrix>> out;
  out.reserve(static_cast<size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    const cplx root = std::polar(mag, (std::arg(det) + 2.0 * M_PI * static_cast<double>(k)) / static_cast<double>(d));
    out.emplace_back(root, u / root);
  }
  return out;
}

namespace {

// Index of the projection nearest to 'ref'; ties prefer the smallest principal root argument.
size_t nearest_projection(const std::vector<std::pair<cplx, Matrix>>& projs, const Matrix& ref) {
  size_t best = 0;
  double best_dist = (projs[0].second - ref).norm();
  for (size_t i = 1; i < projs.size(); ++i) {
    const double dist = (projs[i].second - ref).norm();
    const double slack = 1e-12 * std::max(1.0, best_dist);
    if (dist < best_dist - slack ||
        (std::abs(dist - best_dist) <= slack && std::arg(projs[i].first) < std::arg(projs[best].first))) {
      best = i;
      best_dist = std::min(best_dist, dist);
    }
  }
  return best;
}

}  // namespace

Matrix phase_recovery(const Matrix& su_approx, const Matrix& u_ideal) {
  const auto projs = su_projections(u_ideal);
  return su_approx * projs[nearest_projection(projs, su_approx)].first;
}

Matrix project_to_su(const Matrix& u) {
  const auto projs = su_projections(u);
  return projs[nearest_projection(projs, identity(u.rows()))].second;
}

Vector amplitude_encode(const std::vector<double>& x, int n) {
  if (static_cast<std::int64_t>(x.size()) != pow2(n)) throw std::invalid_argument("amplitude vector must have 2^n entries");
  Vector v(static_cast<Eigen::Index>(x.size()));
  for (size_t i = 0; i < x.size(); ++i) v[static_cast<Eigen::Index>(i)] = x[i];
  const double norm = v.norm();
  if (norm == 0.0) throw std::domain_error("cannot encode the zero vector");
  return v / norm;
}

double hellinger(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("histograms differ in support size");
  const double sp = std::accumulate(p.begin(), p.end(), 0.0), sq = std::accumulate(q.begin(), q.end(), 0.0);
  if (sp <= 0.0 || sq <= 0.0) throw std::domain_error("histogram is all zero");
  double bc = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || q[i] < 0.0) throw std::domain_error("histogram entries must be non-negative");
    bc += std::sqrt((p[i] / sp) * (q[i] / sq));
  }
  return std::sqrt(std::max(0.0, 1.0 - bc));
}

double hellinger(const std::vector<std::uint64_t>& p, const std::vector<std::uint64_t>& q) {
  return hellinger(std::vector<double>(p.begin(), p.end()), std::vector<double>(q.begin(), q.end()));
}

Vector random_state(int n, std::uint64_t seed) { return haar_states(n, 1, seed).col(0); }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined value
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

int thread_count() {
  if (const char* env = std::getenv("SRBB_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

OptResult nelder_mead(const Objective& f, const std::vector<double>& x0, const NMConfig& cfg) {
  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
  const size_t dim = x0.size();
  const auto t0 = Clock::now();
  OptResult res;
  auto eval = [&](const std::vector<double>& x) {
    const double v = f(x);
    check_finite(v, "nelder_mead");
    ++res.evaluations;
    return v;
  };

  std::vector<std::vector<double>> pts(dim + 1, x0);
  std::vector<double> fv(dim + 1);
  for (size_t i = 0; i < dim; ++i) pts[i + 1][i] += cfg.initial_step;
  for (size_t i = 0; i <= dim; ++i) fv[i] = eval(pts[i]);
  if (dim == 0) return {x0, fv[0], 0, res.evaluations, {fv[0]}};

  std::vector<size_t> order(dim + 1);
  std::vector<double> sum(dim, 0.0), centroid(dim), xr(dim), xe(dim), xc(dim);
  auto recompute_sum = [&] {
    std::fill(sum.begin(), sum.end(), 0.0);
    for (const auto& p : pts)
      for (size_t k = 0; k < dim; ++k) sum[k] += p[k];
  };
  auto replace = [&](size_t idx, const std::vector<double>& x, double v) {
    for (size_t k = 0; k < dim; ++k) sum[k] += x[k] - pts[idx][k];
    pts[idx] = x;
    fv[idx] = v;
  };
  recompute_sum();

  auto budget_left = [&] {
    if (cfg.max_evals > 0 && res.evaluations >= cfg.max_evals) return false;
    if (cfg.time_limit_s > 0.0 && (res.iterations & 255) == 0 && seconds_since(t0) > cfg.time_limit_s) return false;
    return true;
  };

  for (res.iterations = 0; res.iterations < cfg.max_iter; ++res.iterations) {
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return fv[a] < fv[b]; });
    const size_t best = order.front(), worst = order.back(), second = order[dim - 1];
    if (cfg.trace_every > 0 && res.iterations % cfg.trace_every == 0) res.trace.push_back(fv[best]);
    if (fv[worst] - fv[best] <= cfg.tol) break;
    if (cfg.target >= 0.0 && fv[best] <= cfg.target) break;
    if (!budget_left()) break;
    if (res.iterations % 4096 == 4095) recompute_sum();

    for (size_t k = 0; k < dim; ++k) centroid[k] = (sum[k] - pts[worst][k]) / static_cast<double>(dim);
    for (size_t k = 0; k < dim; ++k) xr[k] = centroid[k] + kReflect * (centroid[k] - pts[worst][k]);
    const double fr = eval(xr);
    if (fr < fv[best]) {
      for (size_t k = 0; k < dim; ++k) xe[k] = centroid[k] + kExpand * (xr[k] - centroid[k]);
      const double fe = eval(xe);
      if (fe < fr)
        replace(worst, xe, fe);
      else
        replace(worst, xr, fr);
      continue;
    }
    if (fr < fv[second]) {
      replace(worst, xr, fr);
      continue;
    }
    bool accepted = false;
    if (fr < fv[worst]) {
      for (size_t k = 0; k < dim; ++k) xc[k] = centroid[k] + kContract * (xr[k] - centroid[k]);
      const double fc = eval(xc);
      if (fc <= fr) {
        replace(worst, xc, fc);
        accepted = true;
      }
    } else {
      for (size_t k = 0; k < dim; ++k) xc[k] = centroid[k] + kContract * (pts[worst][k] - centroid[k]);
      const double fc = eval(xc);
      if (fc < fv[worst]) {
        replace(worst, xc, fc);
        accepted = true;
      }
    }
    if (!accepted) {
      for (size_t i = 0; i <= dim; ++i) {
        if (i == best) continue;
        for (size_t k = 0; k < dim; ++k) pts[i][k] = pts[best][k] + kShrink * (pts[i][k] - pts[best][k]);
        fv[i] = eval(pts[i]);
      }
      recompute_sum();
    }
  }
  const size_t best = static_cast<size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  res.x = pts[best];
  res.f = fv[best];
  res.trace.push_back(res.f);
  return res;
}

std::vector<double> fd_gradient(const Objective& f, const std::vector<double>& x, double h) {
  std::vector<double> g(x.size(), 0.0);
  const int workers = std::min<int>(thread_count(), static_cast<int>(x.size()));
  auto work = [&](int w) {
    std::vector<double> xp = x;
    for (size_t i = static_cast<size_t>(w); i < x.size(); i += static_cast<size_t>(workers)) {
      xp[i] = x[i] + h;
      const double fp = f(xp);
      xp[i] = x[i] - h;
      const double fm = f(xp);
      xp[i] = x[i];
      g[i] = (fp - fm) / (2.0 * h);
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (double v : g)
    if (!std::isfinite(v)) throw std::runtime_error("adam: non-finite gradient");
  return g;
}

OptResult adam(const StepObjective& f, const std::vector<double>& x0, const AdamConfig& cfg) {
  if (cfg.lr <= 0.0) throw std::invalid_argument("learning rate must be positive");
  OptResult res;
  std::vector<double> x = x0, m(x0.size(), 0.0), v(x0.size(), 0.0);
  res.x = x0;
  res.f = std::numeric_limits<double>::infinity();
  for (long t = 1; t <= cfg.steps; ++t) {
    const long step = t - 1;
    const Objective at_step = [&](const std::vector<double>& p) { return f(p, step); };
    const double fx = at_step(x);
    check_finite(fx, "adam");
    res.trace.push_back(fx);
    if (fx < res.f) {
      res.f = fx;
      res.x = x;
    }
    const auto g = fd_gradient(at_step, x, cfg.fd_step);
    res.evaluations += 1 + 2 * static_cast<long>(x.size());
    const double b1t = 1.0 - std::pow(cfg.beta1, static_cast<double>(t));
    const double b2t = 1.0 - std::pow(cfg.beta2, static_cast<double>(t));
    for (size_t i = 0; i < x.size(); ++i) {
      m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g[i];
      v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
      x[i] -= cfg.lr * (m[i] / b1t) / (std::sqrt(v[i] / b2t) + cfg.eps);
    }
    res.iterations = t;
  }
  const double fx = f(x, cfg.steps);
  check_finite(fx, "adam");
  ++res.evaluations;
  res.trace.push_back(fx);
  if (fx < res.f) {
    res.f = fx;
    res.x = x;
  }
  return res;
}

OptResult adam(const Objective& f, const std::vector<double>& x0, const AdamConfig& cfg) {
  return adam([&](const std::vector<double>& x, long) { return f(x); }, x0, cfg);
}

Loss loss_from_name(const std::string& s) {
  if (s == "frobenius") return Loss::Frobenius;
  if (s == "trace") return Loss::Trace;
  if (s == "fidelity") return Loss::Fidelity;
  throw std::invalid_argument("unknown loss '" + s + "'");
}

std::string loss_name(Loss l) {
  switch (l) {
    case Loss::Frobenius: return "frobenius";
    case Loss::Trace: return "trace";
    default: return "fidelity";
  }
}

TrainReport train(int n, const Matrix& target, const TrainConfig& cfg) {
  const auto t0 = Clock::now();
  const std::int64_t d = pow2(n);
  if (target.rows() != d || target.cols() != d) throw std::domain_error("target dimension must be 2^n");
  require_unitary(target);
  if (cfg.dataset_size < 1 || cfg.batch < 1 || cfg.epochs < 1) throw std::invalid_argument("sizes must be positive");

  const Matrix u_su = project_to_su(target);
  const Circuit circ = synthesize_circuit(n, cfg.layers);
  const Program prog(circ);

  std::mt19937_64 init_rng(derive_seed(cfg.seed, 1));
  std::uniform_real_distribution<double> uni(-cfg.init_scale, cfg.init_scale);
  std::vector<double> x0(prog.param_count());
  for (double& v : x0) v = uni(init_rng);

  const bool state_loss = cfg.loss != Loss::Frobenius;
  Matrix data, ideal;
  if (state_loss) {
    data = haar_states(n, cfg.dataset_size, derive_seed(cfg.seed, 2));
    ideal = u_su * data;
  }
  const long batches = (cfg.dataset_size + cfg.batch - 1) / cfg.batch;

  auto batch_loss = [&](const std::vector<double>& x, long first, long count) {
    const Matrix u = prog.unitary(x);
    if (!state_loss) return (u - u_su).norm();
    return pure_state_loss(cfg.loss, u * data.middleCols(first, count), ideal.middleCols(first, count));
  };

  OptResult best;
  if (cfg.optimizer == OptimizerKind::Adam) {
    AdamConfig ac;
    ac.lr = cfg.lr;
    ac.steps = static_cast<long>(cfg.epochs) * batches;
    const StepObjective obj = [&](const std::vector<double>& x, long step) {
      const long b = step % batches;
      const long first = b * cfg.batch;
      return batch_loss(x, first, std::min<long>(cfg.batch, cfg.dataset_size - first));
    };
    best = adam(obj, x0, ac);
  } else {
    const Objective obj = [&](const std::vector<double>& x) { return batch_loss(x, 0, cfg.dataset_size); };
    NMConfig nc;
    nc.tol = cfg.nm_tol;
    nc.initial_step = cfg.nm_step;
    nc.target = cfg.nm_target;
    std::vector<double> x = x0;
    best.f = std::numeric_limits<double>::infinity();
    for (int r = 0; r <= cfg.nm_restarts; ++r) {
      nc.max_evals = cfg.nm_max_evals > 0 ? cfg.nm_max_evals - best.evaluations : 0;
      if (cfg.nm_max_evals > 0 && nc.max_evals <= 0) break;
      if (cfg.time_budget_s > 0.0) {
        nc.time_limit_s = cfg.time_budget_s - seconds_since(t0);
        if (nc.time_limit_s <= 0.0) break;
      }
      OptResult run = nelder_mead(obj, x, nc);
      best.evaluations += run.evaluations;
      best.iterations += run.iterations;
      best.trace.insert(best.trace.end(), run.trace.begin(), run.trace.end());
      const bool improved = run.f < best.f;
      if (improved) {
        best.f = run.f;
        best.x = run.x;
      }
      if (best.f <= cfg.nm_target || !improved) break;
      x = best.x;
    }
  }

  TrainReport rep;
  rep.param_names = circ.params.names();
  rep.best_params = best.x;
  rep.loss_trace = best.trace;
  rep.evaluations = best.evaluations;
  const Matrix u = prog.unitary(best.x);
  rep.recovered_unitary = phase_recovery(u, target);

  const Matrix held = haar_states(n, 10, derive_seed(cfg.seed, 3));
  double tr = 0.0, fl = 0.0, evo = 0.0;
  for (Eigen::Index c = 0; c < held.cols(); ++c) {
    const Vector s = held.col(c);
    const Matrix rho_c = density(u * s), rho_i = density(u_su * s);
    tr += trace_distance(rho_c, rho_i);
    fl += 1.0 - fidelity(rho_c, rho_i);
    const Matrix rho0 = density(s);
    evo = std::max(evo, trace_distance(rep.recovered_unitary * rho0 * rep.recovered_unitary.adjoint(),
                                       target * rho0 * target.adjoint()));
  }
  rep.final_loss["frobenius"] = (u - u_su).norm();
  rep.final_loss["trace"] = tr / static_cast<double>(held.cols());
  rep.final_loss["fidelity"] = fl / static_cast<double>(held.cols());
  rep.final_loss["objective"] = best.f;
  rep.evolution_max_trace = evo;
  rep.wall_ms = seconds_since(t0) * 1e3;
  return rep;
}

std::string report_to_json(const TrainReport& r, int indent) {
  nlohmann::ordered_json j;
  j["loss"] = r.final_loss;
  j["params"] = r.best_params;
  j["param_names"] = r.param_names;
  j["unitary"] = matrix_to_json(r.recovered_unitary);
  j["wall_ms"] = r.wall_ms;
  j["trace_of_loss"] = r.loss_trace;
  j["evolution_max_trace"] = r.evolution_max_trace;
  j["evaluations"] = r.evaluations;
  return j.dump(indent);
}

}  // namespace srbb

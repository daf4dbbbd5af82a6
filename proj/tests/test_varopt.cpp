#include <doctest.h>

#include <cmath>
#include <random>

#include "srbb/synth.hpp"
#include "srbb/targets.hpp"
#include "srbb/varopt.hpp"

using namespace srbb;

namespace {

const cplx I{0.0, 1.0};

Vector rand_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(pow2(n));
  for (auto& x : v) x = cplx(g(rng), g(rng));
  return v.normalized();
}

}  // namespace

TEST_CASE("frobenius loss examples") {
  CHECK(frobenius_loss(identity(4), identity(4)) == 0.0);
  Matrix s1(2, 2);
  s1 << 0, 1, 1, 0;
  CHECK(frobenius_loss(identity(2), s1) == doctest::Approx(2.0).epsilon(1e-15));
  const Matrix a = random_unitary(2, 1), b = random_unitary(2, 2);
  CHECK(frobenius_loss(a, b) == frobenius_loss(b, a));
  CHECK_THROWS(frobenius_loss(identity(2), identity(4)));
}

TEST_CASE("trace distance and fidelity") {
  std::mt19937_64 rng(4);
  const Matrix rho = density(rand_state(2, rng));
  CHECK(trace_distance(rho, rho) < 1e-12);
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));

  Vector e0 = Vector::Zero(2), e1 = Vector::Zero(2);
  e0(0) = 1;
  e1(1) = 1;
  CHECK(fidelity(density(e0), density(e1)) < 1e-12);
  // Printed norm without the conventional one-half.
  CHECK(trace_distance(density(e0), density(e1)) == doctest::Approx(2.0));

  // Square roots of rank-one densities limit agreement to about sqrt(eps).
  for (int k = 0; k < 50; ++k) {
    const Vector a = rand_state(2, rng), b = rand_state(2, rng);
    CHECK(std::abs(fidelity(density(a), density(b)) - std::norm(a.dot(b))) < 1e-6);
  }

  // Monotone response along an interpolation towards a fixed state.
  const Matrix r0 = density(rand_state(2, rng)), r1 = density(rand_state(2, rng));
  double last_t = -1.0, last_f = 2.0;
  for (int i = 0; i <= 10; ++i) {
    const double t = i / 10.0;
    const Matrix r = (1.0 - t) * r0 + t * r1;
    const double td = trace_distance(r0, r), f = fidelity(r0, r);
    CHECK(td >= last_t - 1e-12);
    CHECK(f <= last_f + 1e-9);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    last_t = td;
    last_f = f;
  }
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = 2;
  bad(1, 1) = -1;
  CHECK_THROWS(trace_distance(bad, bad));
}

TEST_CASE("su projections") {
  const Matrix u = std::exp(I * M_PI / 4.0) * identity(2);
  const auto p = su_projections(u);
  REQUIRE(p.size() == 2);
  bool plus = false, minus = false;
  for (const auto& [root, m] : p) {
    plus |= (m - identity(2)).norm() < 1e-12;
    minus |= (m + identity(2)).norm() < 1e-12;
  }
  CHECK(plus);
  CHECK(minus);

  const Matrix su = random_su(2, 3).unitary;
  bool found = false;
  for (const auto& [root, m] : su_projections(su)) found |= (m - su).norm() < 1e-12;
  CHECK(found);

  for (int n = 2; n <= 4; ++n)
    for (const auto& [root, m] : su_projections(random_unitary(n, static_cast<std::uint64_t>(n))))
      CHECK(std::abs(m.determinant() - cplx(1.0)) < 1e-9);
  CHECK_THROWS(su_projections(2.0 * identity(2)));
}

TEST_CASE("phase recovery round trip") {
  for (int n = 2; n <= 3; ++n) {
    for (std::uint64_t s = 0; s < 50; ++s) {
      const Matrix u = random_unitary(n, 1000 + s);
      for (const auto& [root, m] : su_projections(u)) CHECK((phase_recovery(m, u) - u).norm() < 1e-12);
    }
  }
  const Matrix su = random_su(2, 9).unitary;
  CHECK((phase_recovery(su, su) - su).norm() < 1e-12);
}

TEST_CASE("project to su picks the root nearest the identity") {
  const Matrix u = std::exp(I * 0.3) * random_su(2, 5).unitary;
  const Matrix p = project_to_su(u);
  CHECK(std::abs(p.determinant() - cplx(1.0)) < 1e-9);
  for (const auto& [root, m] : su_projections(u)) CHECK((p - identity(4)).norm() <= (m - identity(4)).norm() + 1e-12);
}

TEST_CASE("amplitude encoding") {
  const Vector a = amplitude_encode({1, 0, 0, 0}, 2);
  CHECK(a(0) == cplx(1.0));
  const Vector b = amplitude_encode({1, 1, 1, 1}, 2);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(b(i) - 0.5) < 1e-15);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int k = 0; k < 100; ++k) {
    std::vector<double> x(8);
    for (double& v : x) v = g(rng);
    CHECK(std::abs(amplitude_encode(x, 3).norm() - 1.0) < 1e-12);
  }
  CHECK_THROWS(amplitude_encode({0, 0, 0, 0}, 2));
  CHECK_THROWS(amplitude_encode({1, 0}, 2));
}

TEST_CASE("hellinger distance") {
  const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  CHECK(hellinger(p, p) < 1e-8);
  CHECK(hellinger(std::vector<double>{1, 0}, std::vector<double>{0, 1}) == doctest::Approx(1.0));
  CHECK(hellinger(std::vector<double>{1, 1, 1, 1}, std::vector<double>{1, 0, 0, 0}) ==
        doctest::Approx(std::sqrt(0.5)));
  CHECK(hellinger(std::vector<std::uint64_t>{5, 5}, std::vector<std::uint64_t>{1, 1}) < 1e-8);
  CHECK_THROWS(hellinger(std::vector<double>{0, 0}, std::vector<double>{1, 0}));
}

TEST_CASE("seeds and random states") {
  CHECK(derive_seed(1, 1) != derive_seed(1, 2));
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
  CHECK((random_state(3, 5) - random_state(3, 5)).norm() == 0.0);
  CHECK(std::abs(random_state(3, 6).norm() - 1.0) < 1e-12);
}

TEST_CASE("nelder-mead quadratic sanity") {
  const std::vector<double> c{1.5, -2.0, 0.25};
  const Objective f = [&](const std::vector<double>& x) {
    double s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += (x[i] - c[i]) * (x[i] - c[i]);
    return s;
  };
  NMConfig cfg;
  cfg.tol = 1e-30;
  cfg.max_iter = 20000;
  const OptResult r = nelder_mead(f, {0, 0, 0}, cfg);
  for (size_t i = 0; i < c.size(); ++i) CHECK(std::abs(r.x[i] - c[i]) < 1e-8);
  const OptResult again = nelder_mead(f, r.x, cfg);
  CHECK(again.f <= r.f);
  const OptResult same = nelder_mead(f, {0, 0, 0}, cfg);
  CHECK(same.x == r.x);
  const Objective nan = [](const std::vector<double>&) { return std::nan(""); };
  CHECK_THROWS(nelder_mead(nan, {0.0}, cfg));
}

TEST_CASE("adam quadratic sanity") {
  const Objective f = [](const std::vector<double>& x) { return (x[0] - 0.3) * (x[0] - 0.3) + (x[1] + 0.7) * (x[1] + 0.7); };
  AdamConfig cfg;
  cfg.steps = 5000;
  const OptResult r = adam(f, {0.0, 0.0}, cfg);
  CHECK(r.f < 1e-6);
  for (double v : r.trace) CHECK(std::isfinite(v));
}

TEST_CASE("central differences agree with a four-point stencil") {
  const Program p(synthesize_circuit(2));
  const Matrix target = random_su(2, 12).unitary;
  const Objective f = [&](const std::vector<double>& x) { return frobenius_loss(p.unitary(x), target); };
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (int k = 0; k < 5; ++k) {
    std::vector<double> x(p.param_count());
    for (double& v : x) v = u(rng);
    const auto g = fd_gradient(f, x, 1e-6);
    const double h = 1e-3;
    for (size_t i = 0; i < x.size(); ++i) {
      auto at = [&](double dx) {
        auto y = x;
        y[i] += dx;
        return f(y);
      };
      const double ref = (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
      CHECK(std::abs(g[i] - ref) <= 1e-4 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("loss names") {
  for (Loss l : {Loss::Frobenius, Loss::Trace, Loss::Fidelity}) CHECK(loss_from_name(loss_name(l)) == l);
  CHECK_THROWS(loss_from_name("l2"));
}

TEST_CASE("training from zero parameters on the identity") {
  TrainConfig cfg;
  cfg.init_scale = 0.0;
  cfg.nm_max_evals = 10;
  const TrainReport r = train(2, identity(4), cfg);
  REQUIRE(!r.loss_trace.empty());
  CHECK(r.loss_trace.front() == 0.0);
  CHECK(r.final_loss.at("frobenius") == 0.0);
}

TEST_CASE("training is deterministic per seed") {
  const Matrix target = named_target("cnot", 2).unitary;
  for (OptimizerKind opt : {OptimizerKind::Adam, OptimizerKind::NelderMead}) {
    for (Loss loss : {Loss::Frobenius, Loss::Fidelity}) {
      if (opt == OptimizerKind::NelderMead && loss != Loss::Frobenius) continue;
      TrainConfig cfg;
      cfg.optimizer = opt;
      cfg.loss = loss;
      cfg.seed = 7;
      cfg.epochs = 2;
      cfg.dataset_size = 128;
      cfg.nm_max_evals = 3000;
      const TrainReport a = train(2, target, cfg);
      const TrainReport b = train(2, target, cfg);
      CHECK(a.loss_trace == b.loss_trace);
      CHECK(a.best_params == b.best_params);
      CHECK(a.final_loss == b.final_loss);
    }
  }
}

TEST_CASE("nelder-mead trains cnot and recovers its phase") {
  TrainConfig cfg;
  cfg.seed = 1;
  const Matrix target = named_target("cnot", 2).unitary;
  const TrainReport r = train(2, target, cfg);
  CHECK(r.final_loss.at("frobenius") <= 1e-8);
  CHECK((r.recovered_unitary - target).norm() < 1e-6);
  CHECK((r.recovered_unitary.adjoint() * r.recovered_unitary - identity(4)).norm() < 1e-8);
  CHECK(r.evolution_max_trace < 1e-6);
  for (const auto& [k, v] : r.final_loss) CHECK(v >= 0.0);
  const std::string js = report_to_json(r);
  for (const char* key : {"\"loss\"", "\"params\"", "\"unitary\"", "\"wall_ms\"", "\"trace_of_loss\""})
    CHECK(js.find(key) != std::string::npos);
}

TEST_CASE("training rejects bad targets") {
  TrainConfig cfg;
  CHECK_THROWS(train(2, 2.0 * identity(4), cfg));
  CHECK_THROWS(train(2, identity(2), cfg));
}

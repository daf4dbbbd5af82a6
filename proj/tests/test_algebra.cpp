#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <unsupported/Eigen/MatrixFunctions>

#include "srbb/algebra.hpp"

using namespace srbb;

namespace {

const cplx I{0.0, 1.0};

Matrix m4(std::initializer_list<cplx> v) {
  Matrix m(4, 4);
  auto it = v.begin();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = *it++;
  return m;
}

double dist(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

}  // namespace

TEST_CASE("rbb(2) is the Pauli basis in order") {
  const Basis b = build_rbb(2);
  REQUIRE(b.elements.size() == 4);
  Matrix s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, -I, I, 0;
  s3 << 1, 0, 0, -1;
  CHECK(dist(b.at(1), s1) == 0.0);
  CHECK(dist(b.at(2), s2) == 0.0);
  CHECK(dist(b.at(3), s3) == 0.0);
  CHECK(dist(b.at(4), identity(2)) == 0.0);
}

TEST_CASE("rbb(4) reproduces the printed order-4 elements") {
  const Basis b = build_rbb(4);
  // Rows typed in by hand from the published matrices.
  const std::vector<Matrix> want = {
      m4({0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1}),
      m4({0, -I, 0, 0, I, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1}),
      m4({1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1}),
      m4({1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, -1}),
      m4({0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1}),
      m4({1, 0, 0, 0, 0, 0, -I, 0, 0, I, 0, 0, 0, 0, 0, -1}),
      m4({0, 0, -I, 0, 0, 1, 0, 0, I, 0, 0, 0, 0, 0, 0, -1}),
      m4({1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1}),
      m4({1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}),
      m4({0, 0, 0, 1, 0, -1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0}),
      m4({1, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0, 1, 0, 0}),
      m4({1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, -I, 0, 0, I, 0}),
      m4({0, 0, 0, -I, 0, -1, 0, 0, 0, 0, 1, 0, I, 0, 0, 0}),
      m4({1, 0, 0, 0, 0, 0, 0, -I, 0, 0, -1, 0, 0, I, 0, 0}),
      m4({1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1}),
      m4({1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}),
  };
  for (int j = 1; j <= 16; ++j) {
    CAPTURE(j);
    CHECK(dist(b.at(j), want[static_cast<size_t>(j - 1)]) == 0.0);
    CHECK(dist(rbb_element(4, j), b.at(j)) == 0.0);
  }
}

TEST_CASE("rbb(3) traces equal one") {
  const Basis b = build_rbb(3);
  for (int j = 1; j <= 8; ++j) CHECK(std::abs(b.at(j).trace() - cplx(1.0)) < 1e-12);
}

TEST_CASE("srbb diagonal replacement") {
  const Basis b = build_srbb(2);
  CHECK(dist(b.at(15), m4({1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1})) == 0.0);
  CHECK(dist(b.at(3), m4({1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1})) == 0.0);

  // Every n=3 diagonal is a Z string and all seven strings appear once.
  const Basis b3 = build_srbb(3);
  std::set<std::vector<int>> seen;
  for (int j : {3, 8, 15, 24, 35, 48, 63}) {
    const Matrix& m = b3.at(j);
    Matrix off = m;
    off.diagonal().setZero();
    CHECK(off.norm() == 0.0);
    std::vector<int> sig;
    for (int i = 0; i < 8; ++i) sig.push_back(static_cast<int>(m(i, i).real()));
    seen.insert(sig);
    // A Z string is a product of per-qubit +-1 patterns, so entry 0 is 1.
    CHECK(sig[0] == 1);
  }
  CHECK(seen.size() == 7);
  CHECK(dist(b3.at(64), identity(8)) == 0.0);
  for (int j = 1; j <= 64; ++j) CHECK(dist(srbb_element(3, j), b3.at(j)) == 0.0);
}

TEST_CASE("property suite passes for rbb and srbb") {
  for (int d = 3; d <= 8; ++d) {
    CAPTURE(d);
    const PropertyReport r = check_basis_properties(build_rbb(d));
    for (const auto& c : r.checks)
      if (c.name != "d_span") CHECK(c.passed);
    if (d % 2) CHECK(r.get("d_span").passed);
  }
  for (int n = 1; n <= 4; ++n) {
    CAPTURE(n);
    const Basis b = build_srbb(n);
    CHECK(b.elements.size() == static_cast<size_t>(pow2(2 * n)));
    CHECK(check_basis_properties(b).all_passed());
  }
}

TEST_CASE("even-order rbb diagonals are linearly dependent") {
  // The D-method diagonal repeats an earlier one (B_15 equals B_3 at order 4),
  // so the span check falls short by d/2 - 1; the SRBB replacement restores it.
  CHECK(build_rbb(4).at(15) == build_rbb(4).at(3));
  for (int d : {4, 6, 8}) {
    CAPTURE(d);
    const PropertyCheck& c = check_basis_properties(build_rbb(d)).get("d_span");
    CHECK_FALSE(c.passed);
    CHECK(c.max_deviation == d / 2 - 1);
  }
  CHECK(check_basis_properties(build_srbb(3)).get("d_span").passed);
}

TEST_CASE("property suite flags a zeroed element") {
  Basis b = build_srbb(2);
  b.elements[0].matrix.setZero();
  const PropertyReport r = check_basis_properties(b);
  CHECK_FALSE(r.all_passed());
  CHECK_FALSE(r.get("c_square_identity").passed);
  CHECK(r.get("hermitian").passed);
}

TEST_CASE("closed-form exponential matches scaling and squaring") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (int n = 1; n <= 2; ++n) {
    const Basis b = build_srbb(n);
    for (const auto& e : b.elements) {
      for (int k = 0; k < 100; ++k) {
        const double t = u(rng);
        const Matrix ref = (I * t * e.matrix).exp();
        CHECK(dist(involutory_exp(t, e.matrix), ref) < 1e-10);
      }
    }
  }
}

TEST_CASE("index functions") {
  CHECK(f_index(4, 1) == 13);
  CHECK(f_index(3, 2) == 6);
  CHECK(h_index(4, 1) == 10);
  CHECK_THROWS_AS(f_index(1, 0), std::domain_error);
  CHECK_THROWS_AS(h_index(0, 0), std::domain_error);
}

TEST_CASE("grouping n=2 follows the shortcut table") {
  const FactorGrouping g = grouping(2);
  CHECK(g.z_indices == std::vector<int>{3, 8, 15});
  CHECK(g.psi_a_pairs == std::vector<std::pair<int, int>>{{1, 2}, {9, 12}});
  REQUIRE(g.x_max() == 1);
  CHECK(g.psi_b_quads[1] == std::vector<std::array<int, 4>>{{10, 13, 4, 6}});
  CHECK(g.phi_quads[1] == std::vector<std::array<int, 4>>{{5, 7, 11, 14}});
  CHECK(g.t_even[1].size() == 1);
  CHECK(g.t_odd[1].size() == 1);
}

TEST_CASE("grouping n=3 and n=4 listed quadruples") {
  const FactorGrouping g3 = grouping(3);
  CHECK(g3.psi_b_quads[1] == std::vector<std::array<int, 4>>{{10, 13, 4, 6}, {54, 61, 36, 42}});
  CHECK(g3.phi_quads[1] == std::vector<std::array<int, 4>>{{5, 7, 11, 14}, {41, 47, 55, 62}});
  CHECK(g3.t_even[1] == std::vector<std::pair<int, int>>{{2, 4}, {6, 8}});
  CHECK(g3.t_even[2] == std::vector<std::pair<int, int>>{{2, 6}, {4, 8}});
  CHECK(g3.t_even[3] == std::vector<std::pair<int, int>>{{2, 8}, {4, 6}});
  CHECK(g3.k_index[3] == 0);

  const FactorGrouping g4 = grouping(4);
  CHECK(g4.t_even[4].front() == std::pair<int, int>{2, 10});
  CHECK(g4.psi_b_quads[4].front() == std::array<int, 4>{82, 91, 66, 74});
  CHECK(g4.t_odd[4].front() == std::pair<int, int>{2, 9});
  CHECK(g4.phi_quads[4].front() == std::array<int, 4>{65, 73, 83, 92});
}

TEST_CASE("quadruples follow the f and h index rules") {
  for (int n = 2; n <= 4; ++n) {
    const FactorGrouping g = grouping(n);
    for (int x = 1; x <= g.x_max(); ++x) {
      for (size_t i = 0; i < g.t_even[static_cast<size_t>(x)].size(); ++i) {
        const auto [a, b] = g.t_even[static_cast<size_t>(x)][i];
        const auto q = g.psi_b_quads[static_cast<size_t>(x)][i];
        CHECK(q == std::array<int, 4>{h_index(b, a - 1), f_index(b, a - 1), h_index(b - 1, a), f_index(b - 1, a)});
      }
      for (size_t i = 0; i < g.t_odd[static_cast<size_t>(x)].size(); ++i) {
        const auto [a, b] = g.t_odd[static_cast<size_t>(x)][i];
        const auto q = g.phi_quads[static_cast<size_t>(x)][i];
        CHECK(q == std::array<int, 4>{h_index(b, a - 1), f_index(b, a - 1), h_index(b + 1, a), f_index(b + 1, a)});
      }
    }
  }
}

TEST_CASE("grouping partitions the non-identity positions") {
  for (int n = 2; n <= 4; ++n) {
    CAPTURE(n);
    const FactorGrouping g = grouping(n);
    const int d = static_cast<int>(pow2(n));
    std::vector<int> all(g.z_indices);
    for (auto [a, b] : g.psi_a_pairs) all.insert(all.end(), {a, b});
    for (int x = 1; x <= g.x_max(); ++x) {
      for (const auto& q : g.psi_b_quads[static_cast<size_t>(x)]) all.insert(all.end(), q.begin(), q.end());
      for (const auto& q : g.phi_quads[static_cast<size_t>(x)]) all.insert(all.end(), q.begin(), q.end());
      const size_t want = n == 2 ? 1u : static_cast<size_t>(pow2(n - 2));
      CHECK(g.t_even[static_cast<size_t>(x)].size() == want);
      CHECK(g.t_odd[static_cast<size_t>(x)].size() == want);
    }
    std::sort(all.begin(), all.end());
    std::vector<int> expect(static_cast<size_t>(d * d - 1));
    std::iota(expect.begin(), expect.end(), 1);
    CHECK(all == expect);
    for (int j = 2; j <= d; ++j) CHECK(std::count(g.z_indices.begin(), g.z_indices.end(), j * j - 1) == 1);
  }
  CHECK_THROWS_AS(grouping(1), std::domain_error);
}

TEST_CASE("transposition matrices") {
  Matrix p24 = Matrix::Zero(4, 4);
  p24(0, 0) = p24(2, 2) = p24(1, 3) = p24(3, 1) = 1;
  CHECK(dist(transposition_matrix(2, 4, 4), p24) == 0.0);
  Matrix s1(2, 2);
  s1 << 0, 1, 1, 0;
  CHECK(dist(transposition_matrix(1, 2, 2), s1) == 0.0);
  const Matrix p = transposition_matrix(2, 3, 8) * transposition_matrix(6, 7, 8);
  CHECK(dist(p * p, identity(8)) == 0.0);
  CHECK_THROWS_AS(transposition_matrix(3, 2, 4), std::domain_error);
  CHECK_THROWS_AS(transposition_matrix(1, 5, 4), std::domain_error);
}

TEST_CASE("exact unitary examples") {
  CHECK(dist(exact_unitary(2, std::vector<double>(15, 0.0)), identity(4)) == 0.0);

  std::vector<double> th(15, 0.0);
  const double t = 0.37;
  th[14] = t;
  Matrix want = Matrix::Zero(4, 4);
  want.diagonal() << std::exp(I * t), std::exp(-I * t), std::exp(-I * t), std::exp(I * t);
  CHECK(dist(exact_unitary(2, th), want) < 1e-14);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (int n = 2; n <= 3; ++n) {
    const size_t len = static_cast<size_t>(pow2(2 * n) - 1);
    std::vector<double> r(len);
    for (double& v : r) v = u(rng);
    const Matrix m = exact_unitary(n, r);
    CHECK(std::abs(std::abs(m.determinant()) - 1.0) < 1e-12);
    CHECK((m.adjoint() * m - identity(pow2(n))).norm() < 1e-12);
  }
  CHECK_THROWS_AS(exact_unitary(2, std::vector<double>(3, 0.0)), std::domain_error);
}

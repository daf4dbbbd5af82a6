#include <doctest.h>

#include <cmath>
#include <set>

#include "srbb/json_io.hpp"
#include "srbb/targets.hpp"

using namespace srbb;

namespace {

// Permutation matrix sending basis state s to perm[s].
Matrix perm_matrix(const std::vector<int>& perm) {
  const Eigen::Index d = static_cast<Eigen::Index>(perm.size());
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index s = 0; s < d; ++s) m(perm[static_cast<size_t>(s)], s) = 1;
  return m;
}

bool is_unitary(const Matrix& u, double tol) { return (u.adjoint() * u - identity(u.rows())).norm() < tol; }

}  // namespace

TEST_CASE("registry entries are unitary with the right size") {
  std::set<std::pair<std::string, int>> seen;
  for (const auto& e : target_registry()) {
    CAPTURE(e.name);
    CHECK(seen.insert({e.name, e.n}).second);
    const TargetSpec t = named_target(e.name, e.n);
    CHECK(t.unitary.rows() == pow2(e.n));
    CHECK(is_unitary(t.unitary, 1e-12));
  }
  for (int n = 5; n <= 6; ++n) {
    CHECK(seen.count({"qft", n}) == 1);
    CHECK(seen.count({"grover", n}) == 1);
  }
  for (const char* name : {"cnot", "swap", "iswap", "xx", "yy", "zz", "qft", "grover"}) CHECK(seen.count({name, 2}) == 1);
  for (const char* name : {"toffoli", "fredkin", "peres", "qft", "grover", "ccry"}) CHECK(seen.count({name, 3}) == 1);
  for (const char* name : {"c1c1c1x", "qft", "grover"}) CHECK(seen.count({name, 4}) == 1);
  CHECK_THROWS(named_target("no_such_gate", 2));
  CHECK_THROWS(named_target("toffoli", 2));
}

TEST_CASE("basic permutation targets") {
  CHECK((named_target("CNOT", 2).unitary - perm_matrix({0, 1, 3, 2})).norm() == 0.0);
  CHECK((named_target("swap", 2).unitary - perm_matrix({0, 2, 1, 3})).norm() == 0.0);
  CHECK((named_target("Toffoli", 3).unitary - perm_matrix({0, 1, 2, 3, 4, 5, 7, 6})).norm() == 0.0);
  // Controlled swap of qubits 1 and 2 on qubit 0.
  CHECK((named_target("fredkin", 3).unitary - perm_matrix({0, 1, 2, 3, 4, 6, 5, 7})).norm() == 0.0);
  // Toffoli followed by CNOT(0, 1).
  CHECK((named_target("peres", 3).unitary - perm_matrix({0, 1, 2, 3, 6, 7, 5, 4})).norm() == 0.0);
}

TEST_CASE("ccry central block") {
  // Control polarity (1, 0) selects states |100> and |101>.
  const Matrix u = named_target("ccry", 3).unitary;
  CHECK(std::abs(u(4, 4).real() - 0.92388) < 1e-5);
  CHECK(std::abs(u(5, 5).real() - 0.92388) < 1e-5);
  CHECK(std::abs(u(4, 5).real() + 0.38268) < 1e-5);
  CHECK(std::abs(u(5, 4).real() - 0.38268) < 1e-5);
  Matrix rest = u;
  rest.block(4, 4, 2, 2) = identity(2);
  CHECK((rest - identity(8)).norm() == 0.0);
}

TEST_CASE("qft") {
  const Matrix q = qft(2).unitary;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) CHECK(std::abs(std::abs(q(r, c)) - 0.5) < 1e-15);
  CHECK(std::abs(q(1, 1) - cplx(0.0, 0.5)) < 1e-15);
  CHECK(std::abs(q(2, 1) - cplx(-0.5, 0.0)) < 1e-15);
  for (int n = 2; n <= 6; ++n) CHECK(is_unitary(qft(n).unitary, 1e-12));
  CHECK((named_target("qft3", 3).unitary - qft(3).unitary).norm() == 0.0);
}

TEST_CASE("grover") {
  const Matrix g = grover(2).unitary;
  CHECK(is_unitary(g, 1e-12));
  CHECK(g.imag().norm() == 0.0);
  // One iteration on two qubits finds the marked state exactly.
  Vector s = Vector::Constant(4, 0.5);
  const Vector out = g * s;
  CHECK(std::abs(std::abs(out(3)) - 1.0) < 1e-12);
  for (int n = 2; n <= 6; ++n) CHECK(is_unitary(grover(n).unitary, 1e-12));
}

TEST_CASE("random special unitaries") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Matrix u = random_su(2, s).unitary;
    CHECK(std::abs(u.determinant() - cplx(1.0)) < 1e-10);
    for (Eigen::Index c = 0; c < 4; ++c) CHECK(std::abs(u.col(c).norm() - 1.0) < 1e-10);
  }
  CHECK((random_su(3, 4).unitary - random_su(3, 4).unitary).norm() == 0.0);
  CHECK((random_su(3, 4).unitary - random_su(3, 5).unitary).norm() > 0.1);
  CHECK(is_unitary(random_unitary(3, 1), 1e-12));
}

TEST_CASE("matrix json round trip") {
  const Matrix u = random_unitary(2, 3);
  CHECK((matrix_from_json(matrix_to_json(u)) - u).norm() == 0.0);
  const nlohmann::json wrapped = {{"name", "x"}, {"n", 2}, {"matrix", matrix_to_json(u)}};
  CHECK((matrix_from_json(wrapped) - u).norm() == 0.0);
  CHECK_THROWS(matrix_from_json(nlohmann::json::array()));
  CHECK_THROWS(matrix_from_json(nlohmann::json::parse("[[1, 0], [0]]")));
}

#include "srbb/algebra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

namespace srbb {
namespace {

const cplx kI{0.0, 1.0};

Matrix pauli(int which) {
  Matrix m = Matrix::Zero(2, 2);
  switch (which) {
    case 1: m(0, 1) = 1; m(1, 0) = 1; break;
    case 2: m(0, 1) = -kI; m(1, 0) = kI; break;
    case 3: m(0, 0) = 1; m(1, 1) = -1; break;
    default: m = Matrix::Identity(2, 2); break;
  }
  return m;
}

// 1-based row/column swap of k and l; k == l leaves the matrix untouched.
void conjugate_swap(Matrix& m, int k, int l) {
  if (k == l) return;
  m.row(k - 1).swap(m.row(l - 1));
  m.col(k - 1).swap(m.col(l - 1));
}

// Methods B and C: P diag(D, sigma) P with D = diag((-1)^(l-1)), l = 1..d-2.
Matrix method_bc(int d, int k, int sigma) {
  Matrix m = Matrix::Zero(d, d);
  for (int l = 1; l <= d - 2; ++l) m(l - 1, l - 1) = (l % 2 == 1) ? 1.0 : -1.0;
  m.block(d - 2, d - 2, 2, 2) = pauli(sigma);
  conjugate_swap(m, k, d - 1);
  return m;
}

// Method D: the single new diagonal element at position d^2 - 1.
Matrix method_d(int d) {
  Matrix m = Matrix::Zero(d, d);
  if (d % 2 == 1) {
    const int plus = d / 2 + 1;
    for (int i = 0; i < d; ++i) m(i, i) = (i < plus) ? 1.0 : -1.0;
  } else {
    const int half = d / 2 - 1;
    for (int i = 0; i < d - 2; ++i) m(i, i) = (i < half) ? 1.0 : -1.0;
    m(d - 2, d - 2) = 1.0;
    m(d - 1, d - 1) = -1.0;
  }
  return m;
}

// The k value of methods B/C whose position offset is r = k mod (d-1).
int k_for_offset(int d, int r) { return r == 0 ? d - 1 : r; }

// Element j of order d whose position lies beyond method A's range.
Matrix new_element(int d, int j) {
  const int base = (d - 1) * (d - 1);
  if (j < base + (d - 1)) return method_bc(d, k_for_offset(d, j - base), 1);
  if (j < base + 2 * (d - 1)) return method_bc(d, k_for_offset(d, j - base - (d - 1)), 2);
  if (j == d * d - 1) return method_d(d);
  return Matrix::Identity(d, d);
}

Matrix extend_a(const Matrix& prev, int d) {
  Matrix m = Matrix::Zero(d, d);
  m.topLeftCorner(d - 1, d - 1) = prev;
  m(d - 1, d - 1) = ((d - 1) % 2 == 0) ? 1.0 : -1.0;
  return m;
}

// Ordinal r of the Z string that replaces diagonal position j (or -1).
std::int64_t diagonal_ordinal(std::int64_t d, std::int64_t j) {
  if (j == d * d) return 0;
  const auto m = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(j + 1))));
  if (m * m == j + 1 && m >= 2 && m <= d) return m - 1;
  return -1;
}

Matrix z_string(int n, std::int64_t r) {
  const std::int64_t d = pow2(n);
  Matrix m = Matrix::Zero(d, d);
  for (std::int64_t s = 0; s < d; ++s) m(s, s) = (std::popcount(static_cast<std::uint64_t>(r & s)) % 2 == 0) ? 1.0 : -1.0;
  return m;
}

PropertyCheck make_check(const std::string& name, bool ok, double dev, std::string note = {}) {
  return PropertyCheck{name, ok, dev, std::move(note)};
}

void require_n(int n) {
  if (n < 2) throw std::domain_error("n must be >= 2");
}

}  // namespace

bool PropertyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.passed; });
}

const PropertyCheck& PropertyReport::get(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw std::out_of_range("no property check named " + name);
}

Basis build_rbb(int d) {
  if (d < 2) throw std::domain_error("RBB order must be >= 2");
  std::vector<Matrix> level = {pauli(1), pauli(2), pauli(3), pauli(4)};
  for (int dd = 3; dd <= d; ++dd) {
    std::vector<Matrix> next;
    next.reserve(static_cast<size_t>(dd * dd));
    const int prev_count = (dd - 1) * (dd - 1) - 1;
    for (int j = 1; j <= prev_count; ++j) next.push_back(extend_a(level[static_cast<size_t>(j - 1)], dd));
    for (int j = prev_count + 1; j <= dd * dd; ++j) next.push_back(new_element(dd, j));
    level = std::move(next);
  }
  Basis b;
  b.order = d;
  b.kind = BasisKind::RBB;
  b.elements.reserve(level.size());
  for (size_t i = 0; i < level.size(); ++i) b.elements.push_back({static_cast<int>(i + 1), std::move(level[i])});
  return b;
}

Matrix rbb_element(int d, int j) {
  if (d < 2) throw std::domain_error("RBB order must be >= 2");
  if (j < 1 || j > d * d) throw std::domain_error("basis position out of range");
  if (d == 2) return pauli(j);
  if (j <= (d - 1) * (d - 1) - 1) return extend_a(rbb_element(d - 1, j), d);
  return new_element(d, j);
}

bool is_diagonal_position(std::int64_t d, std::int64_t j) { return diagonal_ordinal(d, j) >= 0; }

Basis build_srbb(int n) {
  if (n < 1) throw std::domain_error("SRBB needs n >= 1");
  const int d = static_cast<int>(pow2(n));
  Basis b = build_rbb(d);
  b.kind = BasisKind::SRBB;
  for (auto& e : b.elements) {
    const auto r = diagonal_ordinal(d, e.index);
    if (r >= 0) e.matrix = z_string(n, r);
  }
  return b;
}

Matrix srbb_element(int n, int j) {
  if (n < 1) throw std::domain_error("SRBB needs n >= 1");
  const std::int64_t d = pow2(n);
  const auto r = diagonal_ordinal(d, j);
  if (r >= 0) return z_string(n, r);
  return rbb_element(static_cast<int>(d), j);
}

PropertyReport check_basis_properties(const Basis& basis) {
  PropertyReport rep;
  const std::int64_t d = basis.order;
  const auto count = static_cast<std::int64_t>(basis.elements.size());
  const Matrix id = identity(d);

  rep.checks.push_back(make_check("a_cardinality", count == d * d, static_cast<double>(std::llabs(count - d * d))));

  double herm_dev = 0.0, trace_dev = 0.0, square_dev = 0.0;
  for (const auto& e : basis.elements) {
    herm_dev = std::max(herm_dev, (e.matrix - e.matrix.adjoint()).cwiseAbs().maxCoeff());
    square_dev = std::max(square_dev, (e.matrix * e.matrix - id).cwiseAbs().maxCoeff());
    if (e.index < d * d) {
      const cplx want = (d % 2 == 0) ? 0.0 : 1.0;
      trace_dev = std::max(trace_dev, std::abs(e.matrix.trace() - want));
    }
  }
  constexpr double tol = 1e-12;
  rep.checks.push_back(make_check("hermitian", herm_dev <= tol, herm_dev));
  rep.checks.push_back(make_check("b_trace", trace_dev <= tol, trace_dev));
  rep.checks.push_back(make_check("c_square_identity", square_dev <= tol, square_dev));

  if (d % 2 == 0 && count >= 2) {
    // Real-linear independence of the non-identity elements.
    const std::int64_t rows = 2 * d * d, cols = std::min(count, d * d) - 1;
    Eigen::MatrixXd v(rows, cols);
    for (std::int64_t c = 0; c < cols; ++c) {
      const Matrix& m = basis.elements[static_cast<size_t>(c)].matrix;
      for (std::int64_t i = 0; i < d * d; ++i) {
        v(2 * i, c) = m.data()[i].real();
        v(2 * i + 1, c) = m.data()[i].imag();
      }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(v);
    qr.setThreshold(1e-9);
    const auto rank = static_cast<std::int64_t>(qr.rank());
    rep.checks.push_back(make_check("d_span", rank == d * d - 1, static_cast<double>(d * d - 1 - rank)));
  } else {
    rep.checks.push_back(make_check("d_span", true, 0.0, "not applicable for odd order"));
  }

  double diag_dev = 0.0;
  bool diag_ok = true;
  for (const auto& e : basis.elements) {
    Matrix off = e.matrix;
    off.diagonal().setZero();
    const double off_mag = off.cwiseAbs().maxCoeff();
    const bool is_diag = off_mag == 0.0;
    if (is_diag != is_diagonal_position(d, e.index)) {
      diag_ok = false;
      diag_dev = std::max(diag_dev, is_diag ? 1.0 : off_mag);
    }
  }
  rep.checks.push_back(make_check("e_diagonal_positions", diag_ok, diag_dev));

  const double last_dev = count > 0 ? (basis.elements.back().matrix - id).cwiseAbs().maxCoeff() : 1.0;
  rep.checks.push_back(make_check("f_last_identity", count > 0 && last_dev == 0.0, last_dev));
  return rep;
}

int f_index(int p, int q) {
  if (p < 2) throw std::domain_error("f_p needs p >= 2");
  return (p - 1) * (p - 1) + (p - 1) + (q % (p - 1));
}

int h_index(int p, int q) {
  if (p < 2) throw std::domain_error("h_p needs p >= 2");
  return (p - 1) * (p - 1) + (q % (p - 1));
}

FactorGrouping grouping(int n) {
  require_n(n);
  FactorGrouping g;
  g.n = n;
  const int d = static_cast<int>(pow2(n));
  const int half = d / 2;
  const int x_max = half - 1;
  for (int j = 2; j <= d; ++j) g.z_indices.push_back(j * j - 1);
  for (int m = 1; m <= half; ++m) g.psi_a_pairs.emplace_back((2 * m - 1) * (2 * m - 1), 4 * m * m - 2 * m);

  g.t_even.resize(static_cast<size_t>(x_max + 1));
  g.t_odd.resize(static_cast<size_t>(x_max + 1));
  g.psi_b_quads.resize(static_cast<size_t>(x_max + 1));
  g.phi_quads.resize(static_cast<size_t>(x_max + 1));
  g.k_index.assign(static_cast<size_t>(x_max + 1), -1);
  for (int x = 1; x <= x_max; ++x) {
    // Qubit q of x sits at bit (n-2-q); the leftmost 1 is the smallest q.
    const int k = (n - 2) - (std::bit_width(static_cast<unsigned>(x)) - 1);
    g.k_index[static_cast<size_t>(x)] = k;
    const int kbit = 1 << (n - 1 - k);
    for (int s = 1; s < d; s += 2) {
      const int pe = s ^ (x << 1);
      if (s < pe) g.t_even[static_cast<size_t>(x)].emplace_back(s + 1, pe + 1);
      if ((s & kbit) == 0) g.t_odd[static_cast<size_t>(x)].emplace_back(s + 1, (s ^ ((x << 1) | 1)) + 1);
    }
    for (auto [a, b] : g.t_even[static_cast<size_t>(x)])
      g.psi_b_quads[static_cast<size_t>(x)].push_back({h_index(b, a - 1), f_index(b, a - 1), h_index(b - 1, a), f_index(b - 1, a)});
    for (auto [a, b] : g.t_odd[static_cast<size_t>(x)])
      g.phi_quads[static_cast<size_t>(x)].push_back({h_index(b, a - 1), f_index(b, a - 1), h_index(b + 1, a), f_index(b + 1, a)});
  }
  return g;
}

Matrix transposition_matrix(int alpha, int beta, std::int64_t d) {
  if (alpha < 1 || beta <= alpha || beta > d) throw std::domain_error("transposition needs 1 <= alpha < beta <= d");
  Matrix m = identity(d);
  m.row(alpha - 1).swap(m.row(beta - 1));
  return m;
}

Matrix transposition_product(const std::vector<std::pair<int, int>>& pairs, std::int64_t d) {
  Matrix m = identity(d);
  for (auto [a, b] : pairs) m = m * transposition_matrix(a, b, d);
  return m;
}

Matrix involutory_exp(double theta, const Matrix& u) {
  return std::cos(theta) * identity(u.rows()) + kI * std::sin(theta) * u;
}

Matrix exact_z_factor(int n, const std::vector<double>& theta) {
  const std::int64_t d = pow2(n);
  if (static_cast<std::int64_t>(theta.size()) != d * d - 1) throw std::domain_error("theta must have 4^n - 1 entries");
  Matrix z = identity(d);
  for (std::int64_t j = 2; j <= d; ++j) {
    const auto idx = static_cast<int>(j * j - 1);
    z = z * involutory_exp(theta[static_cast<size_t>(idx - 1)], srbb_element(n, idx));
  }
  return z;
}

Matrix exact_unitary(int n, const std::vector<double>& theta) {
  require_n(n);
  const std::int64_t d = pow2(n);
  if (static_cast<std::int64_t>(theta.size()) != d * d - 1) throw std::domain_error("theta must have 4^n - 1 entries");
  const Basis basis = build_srbb(n);
  const FactorGrouping g = grouping(n);
  auto ex = [&](int j) { return involutory_exp(theta[static_cast<size_t>(j - 1)], basis.at(j)); };
  // T M T with M = T [quads] T collapses to the bare quad product.
  auto quad_product = [&](const std::vector<std::array<int, 4>>& quads) {
    Matrix m = identity(d);
    for (const auto& q : quads)
      for (int j : q) m = m * ex(j);
    return m;
  };

  Matrix psi = identity(d);
  for (auto [a, b] : g.psi_a_pairs) psi = psi * ex(a) * ex(b);
  for (int x = 1; x <= g.x_max(); ++x) psi = psi * quad_product(g.psi_b_quads[static_cast<size_t>(x)]);

  Matrix phi = identity(d);
  for (int x = 1; x <= g.x_max(); ++x) phi = phi * quad_product(g.phi_quads[static_cast<size_t>(x)]);

  return exact_z_factor(n, theta) * psi * phi;
}

}  // namespace srbb

#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "srbb/types.hpp"

namespace srbb {

/// Kind of a recursive block basis.
enum class BasisKind { RBB, SRBB };

/// One Hermitian unitary basis element with its 1-based position.
struct BasisElement {
  int index = 0;
  Matrix matrix;
};

/// Ordered basis of d*d elements; element j sits at elements[j-1].
struct Basis {
  std::int64_t order = 0;
  BasisKind kind = BasisKind::RBB;
  std::vector<BasisElement> elements;

  /// Element at 1-based position j.
  const Matrix& at(int j) const { return elements.at(static_cast<size_t>(j - 1)).matrix; }
};

/// Outcome of one property check.
struct PropertyCheck {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;
  std::string note;
};

/// Per-property results for a basis (a to f plus hermiticity).
struct PropertyReport {
  std::vector<PropertyCheck> checks;
  bool all_passed() const;
  const PropertyCheck& get(const std::string& name) const;
};

/// Index sets that assign every non-identity element to one factor.
struct FactorGrouping {
  int n = 0;
  std::vector<int> z_indices;
  std::vector<std::pair<int, int>> psi_a_pairs;
  // Per x in 1..x_max; slot 0 is unused so that x indexes directly.
  std::vector<std::vector<std::array<int, 4>>> psi_b_quads;
  std::vector<std::vector<std::array<int, 4>>> phi_quads;
  std::vector<std::vector<std::pair<int, int>>> t_even;
  std::vector<std::vector<std::pair<int, int>>> t_odd;
  std::vector<int> k_index;

  int x_max() const { return static_cast<int>(t_even.size()) - 1; }
};

/// Recursive block basis of order d (d >= 2).
Basis build_rbb(int d);

/// Single RBB element B_j of order d, built without materializing the basis.
Matrix rbb_element(int d, int j);

/// Standard recursive block basis for n qubits (n >= 1).
Basis build_srbb(int n);

/// Single SRBB element U_j for n qubits, built on demand.
Matrix srbb_element(int n, int j);

/// True when position j of an order-d basis holds a diagonal element.
bool is_diagonal_position(std::int64_t d, std::int64_t j);

/// Checks properties a to f; failures are report entries, never exceptions.
PropertyReport check_basis_properties(const Basis& basis);

/// f_p(q) = (p-1)^2 + (p-1) + (q mod (p-1)).
int f_index(int p, int q);

/// h_p(q) = (p-1)^2 + (q mod (p-1)).
int h_index(int p, int q);

/// Factor grouping of the n-qubit SRBB (n >= 2).
FactorGrouping grouping(int n);

/// Identity of order d with 1-based rows alpha and beta swapped.
Matrix transposition_matrix(int alpha, int beta, std::int64_t d);

/// Product of the transposition matrices of one T set.
Matrix transposition_product(const std::vector<std::pair<int, int>>& pairs, std::int64_t d);

/// exp(i theta U) for an involutory U.
Matrix involutory_exp(double theta, const Matrix& u);

/// Brute-force Z * Psi * Phi built from closed-form exponentials; theta[j-1] drives element j.
Matrix exact_unitary(int n, const std::vector<double>& theta);

/// Product of the Z-factor exponentials only (same theta layout).
Matrix exact_z_factor(int n, const std::vector<double>& theta);

}  // namespace srbb

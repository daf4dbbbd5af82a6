#pragma once

#include <string>
#include <vector>

#include "srbb/circuit.hpp"

namespace srbb {

/// CNOT, rotation and saved-CNOT tallies.
struct GateCounts {
  long long n_cnot = 0;
  long long n_rot = 0;
  long long cnot_reduction = 0;
  bool operator==(const GateCounts&) const = default;
};

/// Parity of a permutation factor.
enum class Parity { Even, Odd };

/// One recursion level m of the Z-factor plan (target qubit m-1).
struct GrayLevel {
  int m = 0;
  /// One row per emitted element; exactly one 1 marks the CNOT control qubit.
  std::vector<std::vector<int>> change_bit_rows;
  /// SRBB positions of the Z strings in emission order.
  std::vector<int> elements;
};

/// Gray-code schedule of the Z factor for levels m = n down to 2.
struct GrayPlan {
  int n = 0;
  std::vector<GrayLevel> levels;
};

/// Gray schedule for n >= 3.
GrayPlan gray_plan(int n);

/// SRBB position of the Z string whose qubit bits are 'r' (qubit 0 is the MSB).
int z_element_for_bits(std::int64_t r);

/// Diagonal Z factor; parameter "z/j" drives element j with phi = -2 theta_j.
Circuit z_factor(int n);

/// CNOT realization of the transposition set T_x of the given parity.
Circuit permutation_factor(int n, int x, Parity parity);

/// Three uniformly controlled RZ/RY/RZ blocks on the last qubit; names are prefix + slot.
Circuit m_zyz(int n, const std::string& prefix = "m/");

/// Odd block: RZ pre-scaling cascade, m_zyz core, mirrored post-scaling (n >= 3).
Circuit m_odd(int n, const std::string& prefix = "m/");

/// CNOT-reduced even factor including the trailing A block (n >= 3).
Circuit psi_factor(int n);

/// CNOT-reduced odd factor (n >= 3).
Circuit phi_factor(int n);

/// Full reduced circuit, Phi then Psi then Z, repeated for each layer.
Circuit synthesize_circuit(int n, int layers = 1);

/// Unreduced circuit with full permutation factors and per-element Z blocks.
Circuit naive_circuit(int n);

/// Closed-form counts.
GateCounts gate_counts(int n);

/// Tally of an actual circuit; cnot_reduction is left at zero.
GateCounts count_from_circuit(const Circuit& c);

}  // namespace srbb

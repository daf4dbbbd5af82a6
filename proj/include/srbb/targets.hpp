#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srbb/types.hpp"

namespace srbb {

/// Named ideal unitary on n qubits.
struct TargetSpec {
  std::string name;
  int n = 0;
  Matrix unitary;
};

/// Registry key.
struct TargetEntry {
  std::string name;
  int n = 0;
};

/// All registered (name, n) pairs in listing order.
const std::vector<TargetEntry>& target_registry();

/// Case-insensitive lookup; a trailing qubit count such as "qft3" is accepted.
TargetSpec named_target(const std::string& name, int n);

/// Quantum Fourier transform, entries w^(jk)/sqrt(d).
TargetSpec qft(int n);

/// One Grover iteration: diffusion after an oracle marking |1...1>.
TargetSpec grover(int n);

/// Haar-random special unitary, deterministic per seed.
TargetSpec random_su(int n, std::uint64_t seed);

/// Haar-random unitary (not phase-fixed), deterministic per seed.
Matrix random_unitary(int n, std::uint64_t seed);

}  // namespace srbb

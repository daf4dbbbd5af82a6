#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "srbb/types.hpp"

namespace srbb {

/// Gate vocabulary; CONTROLLED wraps a single-qubit base kind.
enum class GateKind { RZ, RY, CNOT, H, X, Y, Z, S, T, SX, SWAP, ISWAP, SQISWAP, CONTROLLED };

/// Lower-case mnemonic of a gate kind ("rz", "cx", ...).
std::string kind_name(GateKind k);

/// Inverse of kind_name; throws on unknown text.
GateKind kind_from_name(const std::string& s);

/// One gate. Rotations carry either a parameter name or a fixed angle.
struct Gate {
  GateKind kind = GateKind::X;
  std::vector<int> qubits;           ///< controls first, target last
  std::string param;                 ///< free parameter name, empty when fixed
  double angle = 0.0;                ///< fixed angle (RZ, RY, or a rotating base)
  GateKind base = GateKind::X;       ///< base kind for CONTROLLED
  std::vector<int> polarity;         ///< 1 closed, 0 open, one per control

  bool is_rotation() const { return kind == GateKind::RZ || kind == GateKind::RY; }
  bool is_cnot() const { return kind == GateKind::CNOT; }
  bool touches(int q) const;
  bool operator==(const Gate& o) const = default;
};

/// Ordered named angles; names unique.
class ParamTable {
 public:
  /// Adds a name (throws when it already exists) and returns its index.
  int add(const std::string& name, double value = 0.0);
  int index_of(const std::string& name) const;
  bool contains(const std::string& name) const { return index_.count(name) != 0; }
  double get(const std::string& name) const { return values_.at(static_cast<size_t>(index_of(name))); }
  void set(const std::string& name, double v) { values_.at(static_cast<size_t>(index_of(name))) = v; }
  size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

 private:
  std::vector<std::string> names_;
  std::vector<double> values_;
  std::map<std::string, int> index_;
};

/// Gate program over n qubits; gates[0] is applied first.
struct Circuit {
  int n = 0;
  std::vector<Gate> gates;
  ParamTable params;

  explicit Circuit(int qubits = 0) : n(qubits) {}

  void rz(int q, const std::string& name);
  void ry(int q, const std::string& name);
  void rz_fixed(int q, double angle);
  void ry_fixed(int q, double angle);
  void cnot(int control, int target);
  void gate(GateKind k, std::vector<int> qubits);
  void controlled(GateKind base, std::vector<int> controls, std::vector<int> polarity, int target, double angle = 0.0);
  /// Validates and appends any gate; free parameters are registered on first use.
  void add(Gate g);
  /// Appends all gates and parameters of another circuit on the same register.
  void append(const Circuit& other);

  int cnot_count() const;
  int rotation_count() const;
};

/// Flat, index-resolved form of a circuit for repeated simulation.
class Program {
 public:
  explicit Program(const Circuit& c);
  int n() const { return n_; }
  size_t param_count() const { return param_count_; }
  /// Applies the circuit in place to every column of m (a d x k block).
  void apply_in_place(Matrix& m, const std::vector<double>& values) const;
  Matrix unitary(const std::vector<double>& values) const;

 private:
  struct Op {
    GateKind kind;
    int a = -1, b = -1;
    int param = -1;
    double angle = 0.0;
    Eigen::Matrix2cd m2;
    Eigen::Matrix4cd m4;
    std::uint64_t cmask = 0, cval = 0;
  };
  int n_;
  size_t param_count_;
  std::vector<Op> ops_;
};

/// 2x2 matrix of a single-qubit kind (angle used by RZ/RY).
Eigen::Matrix2cd single_qubit_matrix(GateKind k, double angle = 0.0);

/// Dense unitary of the circuit under the given parameter values.
Matrix unitary_of(const Circuit& c, const ParamTable& params);
Matrix unitary_of(const Circuit& c);

/// Gate-by-gate state evolution without forming the full matrix.
Vector apply(const Circuit& c, const ParamTable& params, const Vector& state);

/// Multinomial histogram of measurement outcomes; deterministic per seed.
std::vector<std::uint64_t> sample(const Circuit& c, const ParamTable& params, const Vector& state, std::uint64_t shots,
                                  std::uint64_t seed);

/// Repeatedly removes identical CNOT pairs with no gate on either wire between them.
std::pair<Circuit, int> cancel_adjacent_cnots(const Circuit& c);

/// OpenQASM 2.0 text with parameters substituted numerically.
std::string to_qasm(const Circuit& c, const ParamTable& params);

/// Circuit JSON text: {"n", "gates", "params"}.
std::string circuit_to_json(const Circuit& c, const ParamTable& params, int indent = 2);
Circuit circuit_from_json(const std::string& text);

/// Copy of the circuit with every free parameter name prefixed.
Circuit prefixed(const Circuit& c, const std::string& prefix);

}  // namespace srbb

#include "srbb/targets.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "srbb/circuit.hpp"

namespace srbb {
namespace {

using G = GateKind;
using Builder = std::function<void(Circuit&)>;

struct Recipe {
  std::string name;
  int n;
  Builder build;  // empty for closed-form targets
};

void cx(Circuit& c, int a, int b) { c.cnot(a, b); }
void one(Circuit& c, G k, int q) { c.gate(k, {q}); }
void ctl(Circuit& c, G base, int control, int target) { c.controlled(base, {control}, {1}, target); }

// One single-qubit kind per qubit, qubit 0 first.
void layer(Circuit& c, std::initializer_list<G> kinds) {
  int q = 0;
  for (G k : kinds) one(c, k, q++);
}

const std::vector<Recipe>& recipes() {
  static const std::vector<Recipe> all = [] {
    std::vector<Recipe> r;
    // Two qubits.
    r.push_back({"cnot", 2, [](Circuit& c) { cx(c, 0, 1); }});
    r.push_back({"cnot_10", 2, [](Circuit& c) { cx(c, 1, 0); }});
    r.push_back({"xx", 2, [](Circuit& c) { layer(c, {G::X, G::X}); }});
    r.push_back({"yy", 2, [](Circuit& c) { layer(c, {G::Y, G::Y}); }});
    r.push_back({"zz", 2, [](Circuit& c) { layer(c, {G::Z, G::Z}); }});
    r.push_back({"sqrt_iswap", 2, [](Circuit& c) { c.gate(G::SQISWAP, {0, 1}); }});
    r.push_back({"xz", 2, [](Circuit& c) { layer(c, {G::X, G::Z}); }});
    r.push_back({"zx", 2, [](Circuit& c) { layer(c, {G::Z, G::X}); }});
    r.push_back({"zy", 2, [](Circuit& c) { layer(c, {G::Z, G::Y}); }});
    r.push_back({"h0", 2, [](Circuit& c) { one(c, G::H, 0); }});
    r.push_back({"hh", 2, [](Circuit& c) { layer(c, {G::H, G::H}); }});
    r.push_back({"iswap", 2, [](Circuit& c) { c.gate(G::ISWAP, {0, 1}); }});
    r.push_back({"cs", 2, [](Circuit& c) { ctl(c, G::S, 0, 1); }});
    r.push_back({"ct", 2, [](Circuit& c) { ctl(c, G::T, 0, 1); }});
    r.push_back({"sx0", 2, [](Circuit& c) { one(c, G::SX, 0); }});
    r.push_back({"xx_yy", 2, [](Circuit& c) { layer(c, {G::X, G::X}); layer(c, {G::Y, G::Y}); }});
    r.push_back({"swap", 2, [](Circuit& c) { c.gate(G::SWAP, {0, 1}); }});
    r.push_back({"bell", 2, [](Circuit& c) { one(c, G::H, 0); cx(c, 0, 1); }});
    r.push_back({"qft", 2, {}});
    r.push_back({"grover", 2, {}});
    // Three qubits.
    r.push_back({"cnot_01", 3, [](Circuit& c) { cx(c, 0, 1); }});
    r.push_back({"cnot_01_h2", 3, [](Circuit& c) { cx(c, 0, 1); one(c, G::H, 2); }});
    r.push_back({"cnot_21", 3, [](Circuit& c) { cx(c, 2, 1); }});
    r.push_back({"cnot_02", 3, [](Circuit& c) { cx(c, 0, 2); }});
    r.push_back({"cnot_01_x2", 3, [](Circuit& c) { cx(c, 0, 1); one(c, G::X, 2); }});
    r.push_back({"cnot_01_y2", 3, [](Circuit& c) { cx(c, 0, 1); one(c, G::Y, 2); }});
    r.push_back({"cnot_01_z2", 3, [](Circuit& c) { cx(c, 0, 1); one(c, G::Z, 2); }});
    r.push_back({"xxx", 3, [](Circuit& c) { layer(c, {G::X, G::X, G::X}); }});
    r.push_back({"xyx", 3, [](Circuit& c) { layer(c, {G::X, G::Y, G::X}); }});
    r.push_back({"xyz", 3, [](Circuit& c) { layer(c, {G::X, G::Y, G::Z}); }});
    r.push_back({"hhh", 3, [](Circuit& c) { layer(c, {G::H, G::H, G::H}); }});
    r.push_back({"cnot_12_01", 3, [](Circuit& c) { cx(c, 1, 2); cx(c, 0, 1); }});
    r.push_back({"cnot_21_10", 3, [](Circuit& c) { cx(c, 2, 1); cx(c, 1, 0); }});
    r.push_back({"cnot_02_12", 3, [](Circuit& c) { cx(c, 0, 2); cx(c, 1, 2); }});
    r.push_back({"toffoli", 3, [](Circuit& c) { c.controlled(G::X, {0, 1}, {1, 1}, 2); }});
    r.push_back({"grover", 3, {}});
    r.push_back({"cnot_20", 3, [](Circuit& c) { cx(c, 2, 0); }});
    r.push_back({"ccry", 3, [](Circuit& c) { c.controlled(G::RY, {0, 1}, {1, 0}, 2, M_PI / 4); }});
    r.push_back({"x0_cnot12_cnot01_y2", 3, [](Circuit& c) {
                   one(c, G::X, 0); cx(c, 1, 2); cx(c, 0, 1); one(c, G::Y, 2);
                 }});
    r.push_back({"hhh_xyx", 3, [](Circuit& c) { layer(c, {G::H, G::H, G::H}); layer(c, {G::X, G::Y, G::X}); }});
    r.push_back({"hhh_xyz", 3, [](Circuit& c) { layer(c, {G::H, G::H, G::H}); layer(c, {G::X, G::Y, G::Z}); }});
    r.push_back({"hhh_xxx", 3, [](Circuit& c) { layer(c, {G::H, G::H, G::H}); layer(c, {G::X, G::X, G::X}); }});
    r.push_back({"h0_xy1_xz2", 3, [](Circuit& c) {
                   layer(c, {G::H, G::X, G::X}); one(c, G::Y, 1); one(c, G::Z, 2);
                 }});
    r.push_back({"open_ccx", 3, [](Circuit& c) { c.controlled(G::X, {0, 1}, {0, 0}, 2); }});
    r.push_back({"sx0_hh_y0_cs12", 3, [](Circuit& c) {
                   one(c, G::SX, 0); one(c, G::H, 1); one(c, G::H, 2); one(c, G::Y, 0); ctl(c, G::S, 1, 2);
                 }});
    r.push_back({"h_cnot_ladder", 3, [](Circuit& c) {
                   one(c, G::H, 0); cx(c, 0, 1); one(c, G::H, 1); cx(c, 1, 2);
                 }});
    r.push_back({"qft", 3, {}});
    // Controlled swap of q1 and q2 as CX(2,1) CCX(0,1,2) CX(2,1).
    r.push_back({"fredkin", 3, [](Circuit& c) {
                   cx(c, 2, 1); c.controlled(G::X, {0, 1}, {1, 1}, 2); cx(c, 2, 1);
                 }});
    r.push_back({"peres", 3, [](Circuit& c) { c.controlled(G::X, {0, 1}, {1, 1}, 2); cx(c, 0, 1); }});
    // Four qubits.
    r.push_back({"cnot01_cnot23", 4, [](Circuit& c) { cx(c, 0, 1); cx(c, 2, 3); }});
    r.push_back({"cnot01_cnot32", 4, [](Circuit& c) { cx(c, 0, 1); cx(c, 3, 2); }});
    r.push_back({"fanout", 4, [](Circuit& c) { cx(c, 0, 1); cx(c, 0, 2); cx(c, 0, 3); }});
    r.push_back({"cnot_ring", 4, [](Circuit& c) { cx(c, 1, 0); cx(c, 0, 2); cx(c, 2, 3); cx(c, 3, 1); }});
    r.push_back({"hh_cnot12_hh", 4, [](Circuit& c) {
                   one(c, G::H, 0); one(c, G::H, 1); cx(c, 1, 2); one(c, G::H, 2); one(c, G::H, 3);
                 }});
    r.push_back({"hhhh_xyzx", 4, [](Circuit& c) {
                   layer(c, {G::H, G::H, G::H, G::H}); layer(c, {G::X, G::Y, G::Z, G::X});
                 }});
    r.push_back({"swap01_sx2_cnot23", 4, [](Circuit& c) { c.gate(G::SWAP, {0, 1}); one(c, G::SX, 2); cx(c, 2, 3); }});
    r.push_back({"grover", 4, {}});
    r.push_back({"h_cnot_ladder", 4, [](Circuit& c) {
                   one(c, G::H, 0); cx(c, 0, 1); one(c, G::H, 1); cx(c, 1, 2); one(c, G::H, 2); cx(c, 2, 3);
                 }});
    r.push_back({"c1c1c1x", 4, [](Circuit& c) { c.controlled(G::X, {0, 1, 2}, {1, 1, 1}, 3); }});
    r.push_back({"c0c1c0x", 4, [](Circuit& c) { c.controlled(G::X, {0, 1, 2}, {0, 1, 0}, 3); }});
    r.push_back({"c0c1c0ry", 4, [](Circuit& c) { c.controlled(G::RY, {0, 1, 2}, {0, 1, 0}, 3, M_PI / 4); }});
    r.push_back({"iswap01_cnot12_cs23", 4, [](Circuit& c) {
                   c.gate(G::ISWAP, {0, 1}); cx(c, 1, 2); ctl(c, G::S, 2, 3);
                 }});
    r.push_back({"x0_cnot12_y3_cnot01_y2_x3", 4, [](Circuit& c) {
                   one(c, G::X, 0); cx(c, 1, 2); one(c, G::Y, 3); cx(c, 0, 1); one(c, G::Y, 2); one(c, G::X, 3);
                 }});
    r.push_back({"toffoli", 4, [](Circuit& c) { c.controlled(G::X, {0, 1}, {1, 1}, 2); }});
    r.push_back({"qft", 4, {}});
    for (int n = 5; n <= 6; ++n) {
      r.push_back({"qft", n, {}});
      r.push_back({"grover", n, {}});
    }
    return r;
  }();
  return all;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return s;
}

const Recipe* find_recipe(const std::string& name, int n) {
  for (const auto& r : recipes())
    if (r.n == n && r.name == name) return &r;
  return nullptr;
}

TargetSpec realize(const Recipe& r) {
  if (r.name == "qft") return qft(r.n);
  if (r.name == "grover") return grover(r.n);
  Circuit c(r.n);
  r.build(c);
  return {r.name, r.n, unitary_of(c)};
}

}  // namespace

const std::vector<TargetEntry>& target_registry() {
  static const std::vector<TargetEntry> entries = [] {
    std::vector<TargetEntry> e;
    for (const auto& r : recipes()) e.push_back({r.name, r.n});
    return e;
  }();
  return entries;
}

TargetSpec named_target(const std::string& name, int n) {
  const std::string key = lower(name);
  if (const Recipe* r = find_recipe(key, n)) return realize(*r);
  const std::string suffix = std::to_string(n);
  if (key.size() > suffix.size() && key.compare(key.size() - suffix.size(), suffix.size(), suffix) == 0)
    if (const Recipe* r = find_recipe(key.substr(0, key.size() - suffix.size()), n)) return realize(*r);
  throw std::invalid_argument("unknown target '" + name + "' for n=" + std::to_string(n));
}

TargetSpec qft(int n) {
  if (n < 1) throw std::domain_error("qft needs n >= 1");
  const std::int64_t d = pow2(n);
  Matrix m(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::int64_t j = 0; j < d; ++j)
    for (std::int64_t k = 0; k < d; ++k)
      m(j, k) = std::polar(scale, 2.0 * M_PI * static_cast<double>((j * k) % d) / static_cast<double>(d));
  return {"qft", n, m};
}

TargetSpec grover(int n) {
  if (n < 1) throw std::domain_error("grover needs n >= 1");
  const std::int64_t d = pow2(n);
  Matrix oracle = identity(d);
  oracle(d - 1, d - 1) = -1.0;
  const Matrix diffusion = Matrix::Constant(d, d, 2.0 / static_cast<double>(d)) - identity(d);
  return {"grover", n, diffusion * oracle};
}

Matrix random_unitary(int n, std::uint64_t seed) {
  if (n < 1) throw std::domain_error("random unitary needs n >= 1");
  const std::int64_t d = pow2(n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix z(d, d);
  for (std::int64_t c = 0; c < d; ++c)
    for (std::int64_t r = 0; r < d; ++r) z(r, c) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * identity(d);
  const Matrix rm = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::int64_t i = 0; i < d; ++i) {
    const cplx rii = rm(i, i);
    q.col(i) *= rii / std::abs(rii);
  }
  return q;
}

TargetSpec random_su(int n, std::uint64_t seed) {
  Matrix u = random_unitary(n, seed);
  const cplx det = u.determinant();
  u /= std::polar(1.0, std::arg(det) / static_cast<double>(u.rows()));
  return {"random", n, u};
}

}  // namespace srbb

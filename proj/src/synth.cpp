#include "srbb/synth.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace srbb {
namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

int x_max_of(int n) { return static_cast<int>(pow2(n - 1)) - 1; }

// Qubits holding a 1 in the (n-1)-bit representation of x, ascending.
std::vector<int> bits_of(int n, int x) {
  std::vector<int> out;
  for (int q = 0; q <= n - 2; ++q)
    if ((x >> (n - 2 - q)) & 1) out.push_back(q);
  return out;
}

int k_of(int n, int x) { return (n - 2) - (std::bit_width(static_cast<unsigned>(x)) - 1); }

// Sequential rotation names prefix + slot.
struct Emitter {
  Circuit& c;
  std::string prefix;
  int slot = 0;

  void rot(GateKind k, int q) {
    const std::string name = prefix + std::to_string(slot++);
    if (k == GateKind::RZ)
      c.rz(q, name);
    else
      c.ry(q, name);
  }

  // Gray multiplexor on target t controlled by qubits 0..t-1.
  void mux(GateKind k, int t, bool closing) {
    const int count = 1 << t;
    for (int i = 1; i <= count; ++i) {
      rot(k, t);
      if (i < count)
        c.cnot((t - 1) - std::countr_zero(static_cast<unsigned>(i)), t);
      else if (closing)
        c.cnot(0, t);
    }
  }

  void zyz(int n) {
    mux(GateKind::RZ, n - 1, false);
    mux(GateKind::RY, n - 1, false);
    mux(GateKind::RZ, n - 1, true);
  }
};

// Gray rows on m bits ending in 1, starting from the second and wrapping.
std::vector<std::uint64_t> level_rows(int m) {
  std::vector<std::uint64_t> rows;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << m); ++i) {
    const std::uint64_t g = i ^ (i >> 1);
    if (g & 1) rows.push_back(g);
  }
  std::rotate(rows.begin(), rows.begin() + 1, rows.end());
  return rows;
}

// Control qubits of an m-bit row (all 1 bits except the last qubit).
std::vector<int> row_controls(int m, std::uint64_t row) {
  std::vector<int> out;
  for (int q = 0; q < m - 1; ++q)
    if ((row >> (m - 1 - q)) & 1) out.push_back(q);
  return out;
}

std::vector<int> set_minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> set_and(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Order of a set's CNOTs so that bits shared with the neighbours nest:
// shared-with-previous first (descending), private bits, shared-with-next last (ascending).
std::vector<int> nested_order(const std::vector<int>& cur, const std::vector<int>& prev, const std::vector<int>& next,
                              bool is_pre) {
  std::vector<int> out;
  if (is_pre) {
    const auto common = set_and(cur, prev);
    out.assign(common.rbegin(), common.rend());
    for (int q : set_minus(cur, prev)) out.push_back(q);
  } else {
    out = set_minus(cur, next);
    for (int q : set_and(cur, next)) out.push_back(q);
  }
  return out;
}

void z_two_qubit(Circuit& c) {
  c.cnot(0, 1);
  c.rz(1, "z/15");
  c.cnot(0, 1);
  c.rz(0, "z/8");
  c.rz(1, "z/3");
}

// Permutation factor with an explicit CNOT order for the bit flips.
void emit_perm(Circuit& c, int n, int x, Parity p, const std::vector<int>& order) {
  const int t = n - 1;
  if (p == Parity::Odd) c.cnot(k_of(n, x), t);
  for (int q : order) c.cnot(t, q);
  if (p == Parity::Odd) c.cnot(k_of(n, x), t);
}

void naive_chain(Circuit& c, int n, Parity p) {
  const int xm = x_max_of(n);
  const std::string tag = p == Parity::Even ? "psi/" : "phi/";
  for (int x = xm; x >= 1; --x) {
    const auto cur = bits_of(n, x);
    const auto prev = x < xm ? bits_of(n, x + 1) : std::vector<int>{};
    const auto next = x > 1 ? bits_of(n, x - 1) : std::vector<int>{};
    // Neighbouring odd factors only cancel through a shared wrapping CNOT.
    const bool pre_link = x < xm && (p == Parity::Even || k_of(n, x) == k_of(n, x + 1));
    const bool post_link = x > 1 && (p == Parity::Even || k_of(n, x) == k_of(n, x - 1));
    emit_perm(c, n, x, p, nested_order(cur, pre_link ? prev : std::vector<int>{}, {}, true));
    Emitter e{c, tag + std::to_string(x) + "/"};
    if (p == Parity::Even)
      e.zyz(n);
    else
      c.append(m_odd(n, e.prefix));
    emit_perm(c, n, x, p, nested_order(cur, {}, post_link ? next : std::vector<int>{}, false));
  }
}

void naive_z(Circuit& c, int n) {
  for (int m = n; m >= 2; --m) {
    const auto rows = level_rows(m);
    const int t = m - 1;
    for (size_t i = 0; i < rows.size(); ++i) {
      const auto cur = row_controls(m, rows[i]);
      const auto prev = i > 0 ? row_controls(m, rows[i - 1]) : std::vector<int>{};
      const auto next = i + 1 < rows.size() ? row_controls(m, rows[i + 1]) : std::vector<int>{};
      for (int q : nested_order(cur, prev, next, true)) c.cnot(q, t);
      c.rz(t, "z/" + std::to_string(z_element_for_bits(static_cast<std::int64_t>(rows[i]) << (n - m))));
      for (int q : nested_order(cur, prev, next, false)) c.cnot(q, t);
    }
  }
  c.rz(0, "z/" + std::to_string(z_element_for_bits(pow2(n - 1))));
}

// Fig. 9 layout for two qubits; 'reduced' drops the two cancelling CNOT pairs.
Circuit two_qubit_circuit(bool reduced) {
  Circuit c(2);
  auto drop_last = [](Circuit& k) { k.gates.pop_back(); };
  Circuit t_odd = permutation_factor(2, 1, Parity::Odd);
  Circuit t_even = permutation_factor(2, 1, Parity::Even);

  c.append(t_odd);
  Circuit mo = m_zyz(2, "phi/1/");
  if (reduced) drop_last(mo);
  c.append(mo);
  Circuit t_odd_post = t_odd;
  if (reduced) t_odd_post.gates.erase(t_odd_post.gates.begin());
  c.append(t_odd_post);

  c.append(t_even);
  c.append(m_zyz(2, "psi/1/"));
  c.append(t_even);
  Circuit a = m_zyz(2, "psi/0/");
  if (reduced) drop_last(a);
  c.append(a);

  Circuit z = z_factor(2);
  if (reduced) z.gates.erase(z.gates.begin());
  c.append(z);
  return c;
}

}  // namespace

int z_element_for_bits(std::int64_t r) {
  if (r == 0) throw std::domain_error("the all-zero string is the identity");
  return static_cast<int>((r + 1) * (r + 1) - 1);
}

GrayPlan gray_plan(int n) {
  require(n >= 3, "gray_plan needs n >= 3");
  GrayPlan plan;
  plan.n = n;
  for (int m = n; m >= 2; --m) {
    GrayLevel lv;
    lv.m = m;
    const auto rows = level_rows(m);
    for (size_t i = 0; i < rows.size(); ++i) {
      const std::uint64_t before = rows[(i + rows.size() - 1) % rows.size()];
      const std::uint64_t diff = before ^ rows[i];
      std::vector<int> row(static_cast<size_t>(m - 1), 0);
      for (int q = 0; q < m - 1; ++q)
        if ((diff >> (m - 1 - q)) & 1) row[static_cast<size_t>(q)] = 1;
      lv.change_bit_rows.push_back(std::move(row));
      lv.elements.push_back(z_element_for_bits(static_cast<std::int64_t>(rows[i]) << (n - m)));
    }
    plan.levels.push_back(std::move(lv));
  }
  return plan;
}

Circuit z_factor(int n) {
  require(n >= 2, "n must be >= 2");
  Circuit c(n);
  if (n == 2) {
    z_two_qubit(c);
    return c;
  }
  for (const auto& lv : gray_plan(n).levels) {
    const int t = lv.m - 1;
    for (size_t i = 0; i < lv.elements.size(); ++i) {
      const auto& row = lv.change_bit_rows[i];
      const int control = static_cast<int>(std::find(row.begin(), row.end(), 1) - row.begin());
      c.cnot(control, t);
      c.rz(t, "z/" + std::to_string(lv.elements[i]));
    }
  }
  c.rz(0, "z/" + std::to_string(z_element_for_bits(pow2(n - 1))));
  return c;
}

Circuit permutation_factor(int n, int x, Parity parity) {
  require(n >= 2, "n must be >= 2");
  require(x >= 1 && x <= x_max_of(n), "x out of range");
  Circuit c(n);
  emit_perm(c, n, x, parity, bits_of(n, x));
  return c;
}

Circuit m_zyz(int n, const std::string& prefix) {
  require(n >= 2, "n must be >= 2");
  Circuit c(n);
  Emitter{c, prefix}.zyz(n);
  return c;
}

Circuit m_odd(int n, const std::string& prefix) {
  require(n >= 3, "m_odd needs n >= 3");
  Circuit pre(n);
  Emitter e{pre, prefix};
  e.rot(GateKind::RZ, 0);
  for (int q = 1; q <= n - 2; ++q) e.mux(GateKind::RZ, q, true);

  Circuit c = pre;
  Emitter core{c, prefix, e.slot};
  core.zyz(n);
  int slot = core.slot;
  for (auto it = pre.gates.rbegin(); it != pre.gates.rend(); ++it) {
    Gate g = *it;
    if (g.is_rotation()) g.param = prefix + std::to_string(slot++);
    c.add(std::move(g));
  }
  return c;
}

Circuit psi_factor(int n) {
  require(n >= 3, "psi_factor needs n >= 3");
  const int xm = x_max_of(n), t = n - 1;
  Circuit c = permutation_factor(n, xm, Parity::Even);
  c.append(m_zyz(n, "psi/" + std::to_string(xm) + "/"));
  for (int x = xm - 1; x >= 1; --x) {
    for (int q : bits_of(n, (x + 1) ^ x)) c.cnot(t, q);
    c.append(m_zyz(n, "psi/" + std::to_string(x) + "/"));
  }
  c.append(permutation_factor(n, 1, Parity::Even));
  c.append(m_zyz(n, "psi/0/"));
  return c;
}

Circuit phi_factor(int n) {
  require(n >= 3, "phi_factor needs n >= 3");
  const int xm = x_max_of(n), t = n - 1;
  Circuit c = permutation_factor(n, xm, Parity::Odd);
  c.append(m_odd(n, "phi/" + std::to_string(xm) + "/"));
  for (int x = xm - 1; x >= 1; --x) {
    if ((x & (x + 1)) != 0) {
      const int k = k_of(n, x);
      c.cnot(k, t);
      for (int q : bits_of(n, (x + 1) ^ x)) c.cnot(t, q);
      c.cnot(k, t);
    } else {
      c.append(permutation_factor(n, x + 1, Parity::Odd));
      c.append(permutation_factor(n, x, Parity::Odd));
    }
    c.append(m_odd(n, "phi/" + std::to_string(x) + "/"));
  }
  c.append(permutation_factor(n, 1, Parity::Odd));
  return c;
}

Circuit synthesize_circuit(int n, int layers) {
  require(n >= 2, "n must be >= 2");
  require(layers >= 1, "layers must be >= 1");
  Circuit layer(n);
  if (n == 2) {
    layer = two_qubit_circuit(true);
  } else {
    layer.append(phi_factor(n));
    layer.append(psi_factor(n));
    layer.append(z_factor(n));
  }
  Circuit c = layer;
  for (int l = 2; l <= layers; ++l) c.append(prefixed(layer, "L" + std::to_string(l) + "/"));
  return c;
}

Circuit naive_circuit(int n) {
  require(n >= 2, "n must be >= 2");
  if (n == 2) return two_qubit_circuit(false);
  Circuit c(n);
  naive_chain(c, n, Parity::Odd);
  naive_chain(c, n, Parity::Even);
  c.append(m_zyz(n, "psi/0/"));
  naive_z(c, n);
  return c;
}

GateCounts gate_counts(int n) {
  require(n >= 2, "n must be >= 2");
  if (n == 2) return {18, 21, 4};
  const long long p = 1LL << n, h = 1LL << (n - 1);
  return {2 * p * p - 5 * h + 2 * n - 4, 2 * p * p - 5 * h + 1, p * (2 * n - 5) - 2 * n + 8};
}

GateCounts count_from_circuit(const Circuit& c) { return {c.cnot_count(), c.rotation_count(), 0}; }

}  // namespace srbb

#include "srbb/circuit.hpp"

#include <cmath>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace srbb {
namespace {

const cplx kI{0.0, 1.0};

struct KindInfo {
  GateKind kind;
  const char* name;
  int arity;
};

constexpr KindInfo kKinds[] = {
    {GateKind::RZ, "rz", 1},     {GateKind::RY, "ry", 1},       {GateKind::CNOT, "cx", 2},
    {GateKind::H, "h", 1},       {GateKind::X, "x", 1},         {GateKind::Y, "y", 1},
    {GateKind::Z, "z", 1},       {GateKind::S, "s", 1},         {GateKind::T, "t", 1},
    {GateKind::SX, "sx", 1},     {GateKind::SWAP, "swap", 2},   {GateKind::ISWAP, "iswap", 2},
    {GateKind::SQISWAP, "sqiswap", 2}, {GateKind::CONTROLLED, "ctrl", -1},
};

const KindInfo& info(GateKind k) {
  for (const auto& i : kKinds)
    if (i.kind == k) return i;
  throw std::logic_error("unknown gate kind");
}

bool single_qubit_kind(GateKind k) { return info(k).arity == 1; }

Eigen::Matrix4cd two_qubit_matrix(GateKind k) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
  if (k == GateKind::ISWAP) {
    m(1, 1) = 0; m(2, 2) = 0; m(1, 2) = kI; m(2, 1) = kI;
  } else if (k == GateKind::SQISWAP) {
    const double r = 1.0 / std::sqrt(2.0);
    m(1, 1) = r; m(2, 2) = r; m(1, 2) = kI * r; m(2, 1) = kI * r;
  } else if (k == GateKind::SWAP) {
    m(1, 1) = 0; m(2, 2) = 0; m(1, 2) = 1; m(2, 1) = 1;
  } else {
    throw std::logic_error("not a two-qubit matrix gate");
  }
  return m;
}

std::uint64_t bit_of(int n, int q) { return std::uint64_t{1} << (n - 1 - q); }

}  // namespace

std::string kind_name(GateKind k) { return info(k).name; }

GateKind kind_from_name(const std::string& s) {
  for (const auto& i : kKinds)
    if (s == i.name) return i.kind;
  throw std::invalid_argument("unknown gate kind '" + s + "'");
}

bool Gate::touches(int q) const {
  for (int x : qubits)
    if (x == q) return true;
  return false;
}

int ParamTable::add(const std::string& name, double value) {
  if (index_.count(name)) throw std::invalid_argument("duplicate parameter '" + name + "'");
  const int idx = static_cast<int>(names_.size());
  names_.push_back(name);
  values_.push_back(value);
  index_[name] = idx;
  return idx;
}

int ParamTable::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::domain_error("missing parameter '" + name + "'");
  return it->second;
}

void Circuit::rz(int q, const std::string& name) { add(Gate{GateKind::RZ, {q}, name}); }
void Circuit::ry(int q, const std::string& name) { add(Gate{GateKind::RY, {q}, name}); }
void Circuit::rz_fixed(int q, double angle) { add(Gate{GateKind::RZ, {q}, {}, angle}); }
void Circuit::ry_fixed(int q, double angle) { add(Gate{GateKind::RY, {q}, {}, angle}); }
void Circuit::cnot(int control, int target) { add(Gate{GateKind::CNOT, {control, target}}); }
void Circuit::gate(GateKind k, std::vector<int> qubits) { add(Gate{k, std::move(qubits)}); }

void Circuit::controlled(GateKind base, std::vector<int> controls, std::vector<int> polarity, int target, double angle) {
  Gate g{GateKind::CONTROLLED, std::move(controls), {}, angle, base, std::move(polarity)};
  g.qubits.push_back(target);
  add(std::move(g));
}

void Circuit::add(Gate g) {
  const int arity = info(g.kind).arity;
  if (g.kind == GateKind::CONTROLLED) {
    if (!single_qubit_kind(g.base)) throw std::invalid_argument("controlled base must be single-qubit");
    if (g.qubits.size() < 2 || g.polarity.size() != g.qubits.size() - 1)
      throw std::invalid_argument("controlled gate needs controls, a target and one polarity per control");
  } else if (static_cast<int>(g.qubits.size()) != arity) {
    throw std::invalid_argument("wrong qubit count for " + kind_name(g.kind));
  }
  std::set<int> seen;
  for (int q : g.qubits) {
    if (q < 0 || q >= n) throw std::invalid_argument("qubit index out of range");
    if (!seen.insert(q).second) throw std::invalid_argument("repeated qubit in gate");
  }
  if (!g.param.empty()) {
    if (!g.is_rotation()) throw std::invalid_argument("only rotations take free parameters");
    if (!params.contains(g.param)) params.add(g.param);
  }
  gates.push_back(std::move(g));
}

void Circuit::append(const Circuit& other) {
  if (other.n != n) throw std::invalid_argument("register size mismatch");
  for (size_t i = 0; i < other.params.size(); ++i)
    if (!params.contains(other.params.names()[i])) params.add(other.params.names()[i], other.params.values()[i]);
  for (const auto& g : other.gates) gates.push_back(g);
}

int Circuit::cnot_count() const {
  int c = 0;
  for (const auto& g : gates) c += g.is_cnot();
  return c;
}

int Circuit::rotation_count() const {
  int c = 0;
  for (const auto& g : gates) c += g.is_rotation();
  return c;
}

Eigen::Matrix2cd single_qubit_matrix(GateKind k, double angle) {
  Eigen::Matrix2cd m;
  const double r = 1.0 / std::sqrt(2.0);
  switch (k) {
    case GateKind::RZ: m << std::exp(-kI * (angle / 2)), 0, 0, std::exp(kI * (angle / 2)); break;
    case GateKind::RY: {
      const double c = std::cos(angle / 2), s = std::sin(angle / 2);
      m << c, -s, s, c;
      break;
    }
    case GateKind::H: m << r, r, r, -r; break;
    case GateKind::X: m << 0, 1, 1, 0; break;
    case GateKind::Y: m << 0, -kI, kI, 0; break;
    case GateKind::Z: m << 1, 0, 0, -1; break;
    case GateKind::S: m << 1, 0, 0, kI; break;
    case GateKind::T: m << 1, 0, 0, std::exp(kI * (M_PI / 4)); break;
    case GateKind::SX: m << cplx(0.5, 0.5), cplx(0.5, -0.5), cplx(0.5, -0.5), cplx(0.5, 0.5); break;
    default: throw std::logic_error("not a single-qubit kind");
  }
  return m;
}

Program::Program(const Circuit& c) : n_(c.n), param_count_(c.params.size()) {
  ops_.reserve(c.gates.size());
  for (const auto& g : c.gates) {
    Op op{g.kind};
    op.angle = g.angle;
    if (!g.param.empty()) op.param = c.params.index_of(g.param);
    switch (g.kind) {
      case GateKind::RZ:
      case GateKind::RY:
        op.a = g.qubits[0];
        break;
      case GateKind::CNOT:
      case GateKind::SWAP:
        op.a = g.qubits[0];
        op.b = g.qubits[1];
        break;
      case GateKind::ISWAP:
      case GateKind::SQISWAP:
        op.a = g.qubits[0];
        op.b = g.qubits[1];
        op.m4 = two_qubit_matrix(g.kind);
        break;
      case GateKind::CONTROLLED:
        op.a = g.qubits.back();
        op.m2 = single_qubit_matrix(g.base, g.angle);
        for (size_t i = 0; i + 1 < g.qubits.size(); ++i) {
          op.cmask |= bit_of(n_, g.qubits[i]);
          if (g.polarity[i]) op.cval |= bit_of(n_, g.qubits[i]);
        }
        break;
      default:
        op.a = g.qubits[0];
        op.m2 = single_qubit_matrix(g.kind);
        op.kind = GateKind::H;  // generic fixed 2x2 path
        break;
    }
    ops_.push_back(op);
  }
}

void Program::apply_in_place(Matrix& m, const std::vector<double>& values) const {
  const std::uint64_t d = std::uint64_t{1} << n_;
  if (static_cast<std::uint64_t>(m.rows()) != d) throw std::invalid_argument("state dimension mismatch");
  if (values.size() != param_count_) throw std::domain_error("parameter vector size mismatch");
  const auto cols = m.cols();
  for (const auto& op : ops_) {
    const double angle = op.param >= 0 ? values[static_cast<size_t>(op.param)] : op.angle;
    for (Eigen::Index c = 0; c < cols; ++c) {
      cplx* p = m.data() + c * static_cast<Eigen::Index>(d);
      switch (op.kind) {
        case GateKind::RZ: {
          const std::uint64_t tb = bit_of(n_, op.a);
          const cplx e0 = std::polar(1.0, -angle / 2), e1 = std::conj(e0);
          for (std::uint64_t i = 0; i < d; ++i) p[i] *= (i & tb) ? e1 : e0;
          break;
        }
        case GateKind::RY: {
          const std::uint64_t tb = bit_of(n_, op.a);
          const double cs = std::cos(angle / 2), sn = std::sin(angle / 2);
          for (std::uint64_t i = 0; i < d; ++i) {
            if (i & tb) continue;
            const cplx x = p[i], y = p[i | tb];
            p[i] = cs * x - sn * y;
            p[i | tb] = sn * x + cs * y;
          }
          break;
        }
        case GateKind::CNOT: {
          const std::uint64_t cb = bit_of(n_, op.a), tb = bit_of(n_, op.b);
          for (std::uint64_t i = 0; i < d; ++i)
            if ((i & cb) && !(i & tb)) std::swap(p[i], p[i | tb]);
          break;
        }
        case GateKind::SWAP: {
          const std::uint64_t ab = bit_of(n_, op.a), bb = bit_of(n_, op.b);
          for (std::uint64_t i = 0; i < d; ++i)
            if ((i & ab) && !(i & bb)) std::swap(p[i], p[i ^ ab ^ bb]);
          break;
        }
        case GateKind::ISWAP:
        case GateKind::SQISWAP: {
          const std::uint64_t ab = bit_of(n_, op.a), bb = bit_of(n_, op.b);
          for (std::uint64_t i = 0; i < d; ++i) {
            if (i & (ab | bb)) continue;
            const std::uint64_t idx[4] = {i, i | bb, i | ab, i | ab | bb};
            Eigen::Vector4cd v(p[idx[0]], p[idx[1]], p[idx[2]], p[idx[3]]);
            v = op.m4 * v;
            for (int k = 0; k < 4; ++k) p[idx[k]] = v[k];
          }
          break;
        }
        case GateKind::CONTROLLED:
        default: {
          const std::uint64_t tb = bit_of(n_, op.a);
          for (std::uint64_t i = 0; i < d; ++i) {
            if ((i & tb) || (i & op.cmask) != op.cval) continue;
            const cplx x = p[i], y = p[i | tb];
            p[i] = op.m2(0, 0) * x + op.m2(0, 1) * y;
            p[i | tb] = op.m2(1, 0) * x + op.m2(1, 1) * y;
          }
          break;
        }
      }
    }
  }
}

Matrix Program::unitary(const std::vector<double>& values) const {
  Matrix u = identity(pow2(n_));
  apply_in_place(u, values);
  return u;
}

Matrix unitary_of(const Circuit& c, const ParamTable& params) {
  std::vector<double> values(c.params.size());
  for (size_t i = 0; i < values.size(); ++i) values[i] = params.get(c.params.names()[i]);
  return Program(c).unitary(values);
}

Matrix unitary_of(const Circuit& c) { return unitary_of(c, c.params); }

Vector apply(const Circuit& c, const ParamTable& params, const Vector& state) {
  if (state.size() != pow2(c.n)) throw std::invalid_argument("state dimension mismatch");
  if (std::abs(state.norm() - 1.0) > 1e-9) throw std::domain_error("state must be normalized");
  std::vector<double> values(c.params.size());
  for (size_t i = 0; i < values.size(); ++i) values[i] = params.get(c.params.names()[i]);
  Matrix m = state;
  Program(c).apply_in_place(m, values);
  return m.col(0);
}

std::vector<std::uint64_t> sample(const Circuit& c, const ParamTable& params, const Vector& state, std::uint64_t shots,
                                  std::uint64_t seed) {
  if (shots == 0) throw std::domain_error("shots must be positive");
  const Vector out = apply(c, params, state);
  std::vector<double> probs(static_cast<size_t>(out.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) probs[static_cast<size_t>(i)] = std::norm(out[i]);
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> dist(probs.begin(), probs.end());
  std::vector<std::uint64_t> hist(probs.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) ++hist[dist(rng)];
  return hist;
}

std::pair<Circuit, int> cancel_adjacent_cnots(const Circuit& c) {
  std::vector<Gate> gates = c.gates;
  int removed = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<bool> dead(gates.size(), false);
    for (size_t i = 0; i < gates.size(); ++i) {
      if (dead[i] || !gates[i].is_cnot()) continue;
      const int a = gates[i].qubits[0], b = gates[i].qubits[1];
      for (size_t j = i + 1; j < gates.size(); ++j) {
        if (dead[j] || !(gates[j].touches(a) || gates[j].touches(b))) continue;
        if (gates[j] == gates[i]) {
          dead[i] = dead[j] = true;
          removed += 2;
          changed = true;
        }
        break;
      }
    }
    std::vector<Gate> kept;
    kept.reserve(gates.size());
    for (size_t i = 0; i < gates.size(); ++i)
      if (!dead[i]) kept.push_back(std::move(gates[i]));
    gates = std::move(kept);
  }
  Circuit out(c.n);
  out.params = c.params;
  out.gates = std::move(gates);
  return {std::move(out), removed};
}

namespace {

std::string fmt_angle(double a) {
  std::ostringstream os;
  os << std::setprecision(17) << a;
  return os.str();
}

std::string qreg(int q) { return "q[" + std::to_string(q) + "]"; }

double resolved_angle(const Gate& g, const ParamTable& params) {
  return g.param.empty() ? g.angle : params.get(g.param);
}

}  // namespace

std::string to_qasm(const Circuit& c, const ParamTable& params) {
  std::ostringstream os;
  os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << c.n << "];\n";
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case GateKind::RZ:
      case GateKind::RY:
        os << kind_name(g.kind) << "(" << fmt_angle(resolved_angle(g, params)) << ") " << qreg(g.qubits[0]) << ";\n";
        break;
      case GateKind::CNOT:
      case GateKind::SWAP:
        os << kind_name(g.kind) << " " << qreg(g.qubits[0]) << "," << qreg(g.qubits[1]) << ";\n";
        break;
      case GateKind::ISWAP:
      case GateKind::SQISWAP:
        throw std::invalid_argument(kind_name(g.kind) + " has no OpenQASM 2.0 equivalent");
      case GateKind::CONTROLLED: {
        const size_t nc = g.qubits.size() - 1;
        std::string head;
        if (nc == 1) {
          switch (g.base) {
            case GateKind::X: head = "cx"; break;
            case GateKind::Y: head = "cy"; break;
            case GateKind::Z: head = "cz"; break;
            case GateKind::H: head = "ch"; break;
            case GateKind::S: head = "cu1(" + fmt_angle(M_PI / 2) + ")"; break;
            case GateKind::T: head = "cu1(" + fmt_angle(M_PI / 4) + ")"; break;
            case GateKind::RY: head = "cry(" + fmt_angle(g.angle) + ")"; break;
            case GateKind::RZ: head = "crz(" + fmt_angle(g.angle) + ")"; break;
            default: break;
          }
        } else if (nc == 2 && g.base == GateKind::X) {
          head = "ccx";
        }
        if (head.empty()) throw std::invalid_argument("controlled gate has no OpenQASM 2.0 equivalent");
        std::string flips;
        for (size_t i = 0; i < nc; ++i)
          if (!g.polarity[i]) flips += "x " + qreg(g.qubits[i]) + ";\n";
        os << flips << head << " ";
        for (size_t i = 0; i < g.qubits.size(); ++i) os << (i ? "," : "") << qreg(g.qubits[i]);
        os << ";\n" << flips;
        break;
      }
      default:
        os << kind_name(g.kind) << " " << qreg(g.qubits[0]) << ";\n";
        break;
    }
  }
  return os.str();
}

std::string circuit_to_json(const Circuit& c, const ParamTable& params, int indent) {
  using ojson = nlohmann::ordered_json;
  ojson j;
  j["n"] = c.n;
  ojson gates = ojson::array();
  for (const auto& g : c.gates) {
    ojson e;
    e["kind"] = kind_name(g.kind);
    e["qubits"] = g.qubits;
    if (g.kind == GateKind::CONTROLLED) {
      e["base"] = kind_name(g.base);
      e["polarity"] = g.polarity;
    }
    if (!g.param.empty())
      e["param"] = g.param;
    else if (g.is_rotation() || (g.kind == GateKind::CONTROLLED && (g.base == GateKind::RY || g.base == GateKind::RZ)))
      e["param"] = g.angle;
    gates.push_back(std::move(e));
  }
  j["gates"] = std::move(gates);
  ojson ps = ojson::object();
  for (const auto& name : c.params.names()) ps[name] = params.get(name);
  j["params"] = std::move(ps);
  return j.dump(indent);
}

Circuit circuit_from_json(const std::string& text) {
  const auto j = nlohmann::ordered_json::parse(text);
  Circuit c(j.at("n").get<int>());
  for (const auto& e : j.at("gates")) {
    Gate g;
    g.kind = kind_from_name(e.at("kind").get<std::string>());
    g.qubits = e.at("qubits").get<std::vector<int>>();
    if (g.kind == GateKind::CONTROLLED) {
      g.base = kind_from_name(e.at("base").get<std::string>());
      g.polarity = e.at("polarity").get<std::vector<int>>();
    }
    if (e.contains("param")) {
      if (e["param"].is_string())
        g.param = e["param"].get<std::string>();
      else
        g.angle = e["param"].get<double>();
    }
    c.add(std::move(g));
  }
  if (j.contains("params"))
    for (const auto& [name, v] : j["params"].items()) c.params.set(name, v.get<double>());
  return c;
}

Circuit prefixed(const Circuit& c, const std::string& prefix) {
  Circuit out(c.n);
  for (size_t i = 0; i < c.params.size(); ++i) out.params.add(prefix + c.params.names()[i], c.params.values()[i]);
  out.gates = c.gates;
  for (auto& g : out.gates)
    if (!g.param.empty()) g.param = prefix + g.param;
  return out;
}

}  // namespace srbb

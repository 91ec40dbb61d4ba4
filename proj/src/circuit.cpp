#include "dtc/circuit.hpp"

#include "dtc/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace dtc {

std::string_view gate_name(GateKind kind) {
  switch (kind) {
  case GateKind::H:
    return "h";
  case GateKind::X:
    return "x";
  case GateKind::RZ:
    return "rz";
  case GateKind::CP:
    return "cp";
  case GateKind::CZ:
    return "cz";
  }
  return "?";
}

bool is_two_qubit(GateKind kind) {
  return kind == GateKind::CP || kind == GateKind::CZ;
}

bool has_angle(GateKind kind) {
  return kind == GateKind::RZ || kind == GateKind::CP;
}

void Circuit::validate() const {
  if (num_qubits < 1) {
    throw Error("circuit must declare at least one qubit");
  }
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    const auto where = " (gate " + std::to_string(i) + ")";
    if (g.q0 < 0 || g.q0 >= num_qubits) {
      throw Error("qubit index " + std::to_string(g.q0) + " out of range" +
                  where);
    }
    if (g.two_qubit()) {
      if (g.q1 < 0 || g.q1 >= num_qubits) {
        throw Error("qubit index " + std::to_string(g.q1) + " out of range" +
                    where);
      }
      if (g.q0 == g.q1) {
        throw Error("two-qubit gate on identical qubits" + where);
      }
    } else if (g.q1 != -1) {
      throw Error("single-qubit gate with a second operand" + where);
    }
    if (has_angle(g.kind) != g.angle.has_value()) {
      throw Error("angle present iff gate is rz or cp" + where);
    }
  }
}

std::size_t Circuit::count(GateKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      gates.begin(), gates.end(), [kind](const Gate& g) { return g.kind == kind; }));
}

std::size_t Circuit::two_qubit_count() const {
  return static_cast<std::size_t>(std::count_if(
      gates.begin(), gates.end(), [](const Gate& g) { return g.two_qubit(); }));
}

// ---------------------------------------------------------------------------
// Benchmarks

BenchmarkFamily parse_family(std::string_view name) {
  if (name == "qft") {
    return BenchmarkFamily::Qft;
  }
  if (name == "ising") {
    return BenchmarkFamily::Ising;
  }
  if (name == "bv") {
    return BenchmarkFamily::Bv;
  }
  if (name == "cat") {
    return BenchmarkFamily::Cat;
  }
  if (name == "adder") {
    return BenchmarkFamily::Adder;
  }
  throw Error("unknown benchmark family '" + std::string(name) + "'");
}

std::string_view family_name(BenchmarkFamily family) {
  switch (family) {
  case BenchmarkFamily::Qft:
    return "qft";
  case BenchmarkFamily::Ising:
    return "ising";
  case BenchmarkFamily::Bv:
    return "bv";
  case BenchmarkFamily::Cat:
    return "cat";
  case BenchmarkFamily::Adder:
    return "adder";
  }
  return "?";
}

int family_min_qubits(BenchmarkFamily family) {
  return family == BenchmarkFamily::Adder ? 4 : 2;
}

namespace {

// std::uniform_real_distribution is implementation defined; this is not.
double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11U) * 0x1.0p-53;
}

class Builder {
public:
  explicit Builder(int n) { c_.num_qubits = n; }

  void h(int q) { c_.gates.push_back(Gate::h(q)); }
  void x(int q) { c_.gates.push_back(Gate::x(q)); }
  void rz(double t, int q) { c_.gates.push_back(Gate::rz(t, q)); }
  void cz(int a, int b) { c_.gates.push_back(Gate::cz(a, b)); }
  void cp(double t, int a, int b) { c_.gates.push_back(Gate::cp(t, a, b)); }
  void cnot(int control, int target) {
    h(target);
    cz(control, target);
    h(target);
  }
  // CCZ = CP(pi/2)(b,c) CNOT(a,b) CP(-pi/2)(b,c) CNOT(a,b) CP(pi/2)(a,c)
  void toffoli(int a, int b, int target) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    h(target);
    cp(half_pi, b, target);
    cnot(a, b);
    cp(-half_pi, b, target);
    cnot(a, b);
    cp(half_pi, a, target);
    h(target);
  }

  Circuit take() { return std::move(c_); }

private:
  Circuit c_;
};

Circuit make_qft(int n) {
  Builder b(n);
  for (int i = 0; i < n; ++i) {
    b.h(i);
    for (int j = i + 1; j < n; ++j) {
      b.cp(std::numbers::pi / std::ldexp(1.0, j - i), j, i);
    }
  }
  return b.take();
}

Circuit make_ising(int n, std::mt19937_64& rng) {
  Builder b(n);
  const double coupling = 0.1 + unit_interval(rng);
  const double field = 0.1 + unit_interval(rng);
  for (int q = 0; q < n; ++q) {
    b.h(q);
  }
  for (int q = 0; q + 1 < n; ++q) {
    b.cz(q, q + 1);
  }
  for (int q = 0; q < n; ++q) {
    b.rz(coupling, q);
  }
  for (int q = 0; q < n; ++q) {
    b.h(q);
    b.rz(field, q);
    b.h(q);
  }
  return b.take();
}

Circuit make_bv(int n, std::mt19937_64& rng) {
  Builder b(n);
  const int oracle = n - 1;
  std::vector<bool> secret(static_cast<std::size_t>(n - 1));
  bool any = false;
  for (auto&& bit : secret) {
    bit = (rng() & 1U) != 0;
    any = any || bit;
  }
  if (!any) {
    secret[0] = true;
  }
  b.x(oracle);
  for (int q = 0; q < n; ++q) {
    b.h(q);
  }
  for (int q = 0; q < oracle; ++q) {
    if (secret[static_cast<std::size_t>(q)]) {
      b.cnot(q, oracle);
    }
  }
  for (int q = 0; q < oracle; ++q) {
    b.h(q);
  }
  return b.take();
}

Circuit make_cat(int n) {
  Builder b(n);
  b.h(0);
  for (int q = 0; q + 1 < n; ++q) {
    b.cnot(q, q + 1);
  }
  return b.take();
}

// Cuccaro ripple-carry adder: carry-in, interleaved a_i/b_i, carry-out.
Circuit make_adder(int n, std::mt19937_64& rng) {
  Builder b(n);
  const int bits = (n - 2) / 2;
  const auto a = [](int i) { return 1 + 2 * i; };
  const auto bq = [](int i) { return 2 + 2 * i; };
  const int cin = 0;
  const int cout = 2 * bits + 1;
  for (int q = 0; q < n; ++q) {
    if (q != cin && q != cout && (rng() & 1U) != 0) {
      b.x(q);
    }
  }
  const auto maj = [&](int x, int y, int z) {
    b.cnot(z, y);
    b.cnot(z, x);
    b.toffoli(x, y, z);
  };
  const auto uma = [&](int x, int y, int z) {
    b.toffoli(x, y, z);
    b.cnot(z, x);
    b.cnot(x, y);
  };
  maj(cin, bq(0), a(0));
  for (int i = 1; i < bits; ++i) {
    maj(a(i - 1), bq(i), a(i));
  }
  b.cnot(a(bits - 1), cout);
  for (int i = bits - 1; i >= 1; --i) {
    uma(a(i - 1), bq(i), a(i));
  }
  uma(cin, bq(0), a(0));
  return b.take();
}

} // namespace

Circuit gen_benchmark(BenchmarkFamily family, int n, std::uint64_t seed) {
  if (n < family_min_qubits(family)) {
    throw Error(std::string(family_name(family)) + " needs at least " +
                std::to_string(family_min_qubits(family)) + " qubits, got " +
                std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  switch (family) {
  case BenchmarkFamily::Qft:
    return make_qft(n);
  case BenchmarkFamily::Ising:
    return make_ising(n, rng);
  case BenchmarkFamily::Bv:
    return make_bv(n, rng);
  case BenchmarkFamily::Cat:
    return make_cat(n);
  case BenchmarkFamily::Adder:
    return make_adder(n, rng);
  }
  throw Error("unreachable benchmark family");
}

Circuit gen_benchmark(std::string_view family, int n, std::uint64_t seed) {
  return gen_benchmark(parse_family(family), n, seed);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  struct Pos {
    int line;
    int column;
  };

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') {
          advance();
        }
      } else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        advance();
      } else {
        break;
      }
    }
  }

  [[nodiscard]] bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  [[nodiscard]] Pos where() const { return {line_, column_}; }

  [[nodiscard]] char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  std::string identifier() {
    skip_space();
    const auto start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 ||
            text_[pos_] == '_')) {
      advance();
    }
    if (start == pos_) {
      fail("expected a gate name");
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  int integer() {
    skip_space();
    const Pos at = where();
    const auto start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
      advance();
    }
    if (start == pos_) {
      throw ParseError("expected a non-negative integer", at.line, at.column);
    }
    int value = 0;
    const auto digits = text_.substr(start, pos_ - start);
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
      throw ParseError("integer out of range", at.line, at.column);
    }
    return value;
  }

  double real() {
    skip_space();
    const Pos at = where();
    const auto start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0 ||
            text_[pos_] == '.' || text_[pos_] == '-' || text_[pos_] == '+' ||
            text_[pos_] == 'e' || text_[pos_] == 'E')) {
      advance();
    }
    const auto token = std::string(text_.substr(start, pos_ - start));
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} ||
        ptr != token.data() + token.size() || !std::isfinite(value)) {
      throw ParseError("expected a finite real number", at.line, at.column);
    }
    return value;
  }

  void expect(char c) {
    if (peek() != c) {
      fail(std::string("expected '") + c + "'");
    }
    advance();
  }

  [[noreturn]] void fail(const std::string& msg) {
    skip_space();
    throw ParseError(msg, line_, column_);
  }

private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

} // namespace

Circuit parse_circuit(std::string_view text) {
  Lexer lex(text);
  Circuit circuit;
  if (lex.at_end()) {
    lex.fail("empty circuit, expected 'qreg <n>;'");
  }
  const auto header = lex.where();
  if (lex.identifier() != "qreg") {
    throw ParseError("circuit must start with 'qreg <n>;'", header.line,
                     header.column);
  }
  const auto size_at = lex.where();
  circuit.num_qubits = lex.integer();
  if (circuit.num_qubits < 1) {
    throw ParseError("qreg size must be positive", size_at.line,
                     size_at.column);
  }
  lex.expect(';');

  const auto operand = [&] {
    lex.skip_space();
    const auto at = lex.where();
    const int q = lex.integer();
    if (q >= circuit.num_qubits) {
      throw ParseError("qubit index " + std::to_string(q) +
                           " out of range for qreg " +
                           std::to_string(circuit.num_qubits),
                       at.line, at.column);
    }
    return q;
  };

  while (!lex.at_end()) {
    const auto at = lex.where();
    const std::string name = lex.identifier();
    Gate g;
    if (name == "h") {
      g = Gate::h(operand());
    } else if (name == "x") {
      g = Gate::x(operand());
    } else if (name == "rz") {
      lex.expect('(');
      const double theta = lex.real();
      lex.expect(')');
      g = Gate::rz(theta, operand());
    } else if (name == "cz" || name == "cp") {
      std::optional<double> theta;
      if (name == "cp") {
        lex.expect('(');
        theta = lex.real();
        lex.expect(')');
      }
      const int a = operand();
      lex.skip_space();
      const auto b_at = lex.where();
      const int b = operand();
      if (a == b) {
        throw ParseError("two-qubit gate needs distinct qubits", b_at.line,
                         b_at.column);
      }
      g = theta ? Gate::cp(*theta, a, b) : Gate::cz(a, b);
    } else if (name == "qreg") {
      throw ParseError("duplicate qreg declaration", at.line, at.column);
    } else {
      throw ParseError("unsupported gate '" + name + "'", at.line, at.column);
    }
    lex.expect(';');
    circuit.gates.push_back(g);
  }
  return circuit;
}

std::string format_circuit(const Circuit& circuit) {
  std::ostringstream out;
  out.precision(17);
  out << "qreg " << circuit.num_qubits << ";\n";
  for (const Gate& g : circuit.gates) {
    out << gate_name(g.kind);
    if (g.angle) {
      out << '(' << *g.angle << ')';
    }
    out << ' ' << g.q0;
    if (g.two_qubit()) {
      out << ' ' << g.q1;
    }
    out << ";\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Scheduling

std::vector<Stage> asap_schedule(const Circuit& circuit) {
  std::vector<int> ready(static_cast<std::size_t>(circuit.num_qubits), 0);
  std::vector<Stage> stages;
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const Gate& g = circuit.gates[i];
    int s = ready[static_cast<std::size_t>(g.q0)];
    if (g.two_qubit()) {
      s = std::max(s, ready[static_cast<std::size_t>(g.q1)]);
    }
    while (static_cast<int>(stages.size()) <= s) {
      stages.push_back(Stage{static_cast<int>(stages.size()), {}, {}});
    }
    auto& stage = stages[static_cast<std::size_t>(s)];
    stage.gates.push_back(i);
    if (g.two_qubit()) {
      stage.pairs.emplace_back(g.q0, g.q1);
      ready[static_cast<std::size_t>(g.q1)] = s + 1;
    }
    ready[static_cast<std::size_t>(g.q0)] = s + 1;
  }
  return stages;
}

PriorityTable priority_scores(const Circuit& circuit,
                              const std::vector<Stage>& stages) {
  PriorityTable pri(static_cast<std::size_t>(circuit.num_qubits), 0.0);
  for (const Stage& stage : stages) {
    const double weight = 1.0 / static_cast<double>(stage.index + 1);
    for (const std::size_t gi : stage.gates) {
      const Gate& g = circuit.gates[gi];
      pri[static_cast<std::size_t>(g.q0)] += weight;
      if (g.two_qubit()) {
        pri[static_cast<std::size_t>(g.q1)] += weight;
      }
    }
  }
  return pri;
}

std::vector<int> stage_of_gates(const Circuit& circuit,
                                const std::vector<Stage>& stages) {
  std::vector<int> out(circuit.gates.size(), -1);
  for (const Stage& s : stages) {
    for (const std::size_t gi : s.gates) {
      out[gi] = s.index;
    }
  }
  return out;
}

} // namespace dtc

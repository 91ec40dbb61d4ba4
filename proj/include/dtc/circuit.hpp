#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dtc {

enum class GateKind : std::uint8_t { H, X, RZ, CP, CZ };

[[nodiscard]] std::string_view gate_name(GateKind kind);
[[nodiscard]] bool is_two_qubit(GateKind kind);
[[nodiscard]] bool has_angle(GateKind kind);

struct Gate {
  GateKind kind = GateKind::H;
  int q0 = 0;
  int q1 = -1; ///< second qubit for two-qubit gates, -1 otherwise
  std::optional<double> angle;

  [[nodiscard]] bool two_qubit() const { return is_two_qubit(kind); }
  [[nodiscard]] bool touches(int q) const { return q0 == q || q1 == q; }

  static Gate h(int q) { return {GateKind::H, q, -1, std::nullopt}; }
  static Gate x(int q) { return {GateKind::X, q, -1, std::nullopt}; }
  static Gate rz(double theta, int q) { return {GateKind::RZ, q, -1, theta}; }
  static Gate cz(int a, int b) { return {GateKind::CZ, a, b, std::nullopt}; }
  static Gate cp(double theta, int a, int b) {
    return {GateKind::CP, a, b, theta};
  }

  bool operator==(const Gate&) const = default;
};

using QubitPair = std::pair<int, int>;

struct Circuit {
  int num_qubits = 0;
  std::vector<Gate> gates;

  /// Throws dtc::Error if a gate violates arity, angle or index invariants.
  void validate() const;

  [[nodiscard]] std::size_t count(GateKind kind) const;
  [[nodiscard]] std::size_t two_qubit_count() const;

  bool operator==(const Circuit&) const = default;
};

/// One ASAP layer. `gates` indexes into the circuit; `pairs` lists the
/// two-qubit interactions of the layer in gate order.
struct Stage {
  int index = 0;
  std::vector<std::size_t> gates;
  std::vector<QubitPair> pairs;

  [[nodiscard]] bool has_two_qubit() const { return !pairs.empty(); }
};

/// Accumulated priority per qubit, indexed by qubit.
using PriorityTable = std::vector<double>;

enum class BenchmarkFamily : std::uint8_t { Qft, Ising, Bv, Cat, Adder };

[[nodiscard]] BenchmarkFamily parse_family(std::string_view name);
[[nodiscard]] std::string_view family_name(BenchmarkFamily family);
[[nodiscard]] int family_min_qubits(BenchmarkFamily family);

/// Deterministic benchmark circuit for (family, n, seed). CNOTs are expanded
/// to H.CZ.H on the target.
[[nodiscard]] Circuit gen_benchmark(BenchmarkFamily family, int n,
                                    std::uint64_t seed);
[[nodiscard]] Circuit gen_benchmark(std::string_view family, int n,
                                    std::uint64_t seed);

/// Parses the line-oriented subset grammar:
///   qreg <n>; h <q>; x <q>; rz(<f>) <q>; cz <a> <b>; cp(<f>) <a> <b>;
/// `//` starts a comment. Throws ParseError with line/column diagnostics.
[[nodiscard]] Circuit parse_circuit(std::string_view text);

/// Inverse of parse_circuit; angles printed with round-trip precision.
[[nodiscard]] std::string format_circuit(const Circuit& circuit);

[[nodiscard]] std::vector<Stage> asap_schedule(const Circuit& circuit);

/// Pri(q) = sum over gates touching q of 1/(p+1), p the gate's stage.
[[nodiscard]] PriorityTable priority_scores(const Circuit& circuit,
                                            const std::vector<Stage>& stages);

/// Stage index of every gate, derived from a stage list.
[[nodiscard]] std::vector<int> stage_of_gates(const Circuit& circuit,
                                              const std::vector<Stage>& stages);

} // namespace dtc

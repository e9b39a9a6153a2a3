#pragma once

#include "netcfg/distribution.hpp"
#include "netcfg/topology.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <complex>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace netcfg {

using Complex = std::complex<double>;

/// Largest total Hilbert-space dimension accepted by assemble().
inline constexpr long kMaxTotalDimension = 1L << 14;

/// A density matrix over the tensor product of `dims` (first subsystem most
/// significant). Hermitian and unit trace within 1e-12, minimum eigenvalue
/// >= -1e-10.
class QuantumComponent {
 public:
  QuantumComponent(Eigen::MatrixXcd rho, std::vector<int> dims);

  static QuantumComponent pure(const Eigen::VectorXcd& psi, std::vector<int> dims);

  const Eigen::MatrixXcd& rho() const noexcept { return rho_; }
  const std::vector<int>& dims() const noexcept { return dims_; }
  int subsystem_count() const noexcept { return static_cast<int>(dims_.size()); }
  long dimension() const noexcept { return rho_.rows(); }
  double purity() const;

 private:
  Eigen::MatrixXcd rho_;
  std::vector<int> dims_;
};

namespace state {
/// cos(theta)|0..0> + sin(theta)|1..1>
struct Ghz { double theta; int qubits = 3; };
/// cos(t)cos(g)|001> + sin(t)cos(g)|010> + sin(g)|100>
struct W3 { double theta; double gamma; };
/// sum_i alpha_i |0..1_i..0>; requires sum alpha_i^2 = 1
struct WN { std::vector<double> alphas; };
/// cos(theta)|00> + sin(theta)|11>
struct Epr { double theta; };
/// a0|000> + a1 e^{i phi}|100> + a2|101> + a3|110> + a4|111>
struct Acin { double a0, a1, a2, a3, a4, phi; };
/// tensor product of single-system vectors
struct Product { std::vector<Eigen::VectorXcd> factors; };
/// explicit vector (normalised within 1e-9) or density matrix
struct Custom { Eigen::MatrixXcd data; std::vector<int> dims; };
}  // namespace state

using StateSpec = std::variant<state::Ghz, state::W3, state::WN, state::Epr, state::Acin,
                               state::Product, state::Custom>;

QuantumComponent make_state(const StateSpec& spec);

/// v * rho + (1 - v)/d * I.
QuantumComponent add_noise(const QuantumComponent& c, double v);

/// Components plus, for each component subsystem, the owning party
/// (0-based). A party's local space is the product of its subsystems taken in
/// component order, then subsystem order.
class NetworkQuantumState {
 public:
  struct Slot {
    int component;
    int subsystem;
  };

  const std::vector<QuantumComponent>& components() const noexcept { return components_; }
  const std::vector<std::vector<int>>& assignment() const noexcept { return assignment_; }
  int party_count() const noexcept { return static_cast<int>(party_dims_.size()); }
  const std::vector<int>& party_dims() const noexcept { return party_dims_; }
  const std::vector<Slot>& party_slots(int party) const { return party_slots_.at(party); }
  long total_dimension() const noexcept { return total_dim_; }

  /// One hyperedge per component over its owning parties.
  const NetworkTopology& topology() const noexcept { return topology_; }

  /// Product of component purities.
  double purity() const;

 private:
  friend NetworkQuantumState assemble(std::vector<QuantumComponent>, std::vector<std::vector<int>>, int);
  std::vector<QuantumComponent> components_;
  std::vector<std::vector<int>> assignment_;
  std::vector<int> party_dims_;
  std::vector<std::vector<Slot>> party_slots_;
  long total_dim_ = 1;
  NetworkTopology topology_;
};

/// `assignment[c][i]` is the party owning subsystem i of component c. With
/// `party_count` = 0 the count is one more than the largest index used.
NetworkQuantumState assemble(std::vector<QuantumComponent> components,
                             std::vector<std::vector<int>> assignment, int party_count = 0);

/// Orthonormal, complete basis of one party's local space. Columns are the
/// basis vectors; outcome label = column index.
class MeasurementBasis {
 public:
  explicit MeasurementBasis(Eigen::MatrixXcd vectors);
  static MeasurementBasis computational(int dim);

  int dimension() const noexcept { return static_cast<int>(vectors_.rows()); }
  const Eigen::MatrixXcd& vectors() const noexcept { return vectors_; }
  bool is_computational() const noexcept { return computational_; }

 private:
  Eigen::MatrixXcd vectors_;
  bool computational_ = false;
};

namespace basis {
struct Computational {};
/// (|00>+|11>)/r2, (|01>+|10>)/r2, (|01>-|10>)/r2, (|00>-|11>)/r2
struct Bell2 {};
/// |00>, cos(g)|01>+sin(g)|10>, sin(g)|01>-cos(g)|10>, |11>
struct Gamma { double gamma; };
/// GHZ-type basis on q qubits: index i -> (|i> + |2^q-1-i>)/r2 and
/// index 2^(q-1)+i -> (|i> - |2^q-1-i>)/r2, for i < 2^(q-1).
struct StarGhz { int qubits; };
/// columns U|j>; U must be unitary within 1e-9
struct Rotated { Eigen::MatrixXcd unitary; };
/// explicit columns
struct Custom { Eigen::MatrixXcd vectors; };
}  // namespace basis

using BasisSpec = std::variant<basis::Computational, basis::Bell2, basis::Gamma, basis::StarGhz,
                               basis::Rotated, basis::Custom>;

MeasurementBasis make_basis(const BasisSpec& spec, int dim);

/// P(a) = tr[(M_{a_1} x ... x M_{a_n}) rho], exactly. `bases` has one entry
/// per party; an empty span means computational everywhere.
OutcomeDistribution born_distribution(const NetworkQuantumState& s,
                                      std::span<const MeasurementBasis> bases = {});

/// Largest total dimension merge_components() will densify.
inline constexpr long kMaxMergedDimension = 1L << 10;

/// One component holding the whole state, with one subsystem per party (its
/// flattened local space). The induced topology becomes a single source.
NetworkQuantumState merge_components(const NetworkQuantumState& s);

/// rho -> U^dagger rho U with U = U_1 x ... x U_n, where `party_unitaries[j]`
/// acts on party j's flattened space. Every party's slots must lie in one
/// component (merge_components() guarantees this).
NetworkQuantumState rotate_locally(const NetworkQuantumState& s,
                                   std::span<const Eigen::MatrixXcd> party_unitaries);

/// State document:
///   {"parties": n (optional),
///    "components": [{"family": "ghz"|"w3"|"wn"|"epr"|"acin"|"product"|"custom",
///                    "params": {...}, "dims": [...] (custom only),
///                    "visibility": v (optional),
///                    "assignment": [1-based party per subsystem]}]}
NetworkQuantumState state_from_json(const nlohmann::json& doc);
NetworkQuantumState parse_state(std::string_view text);

/// Basis document: {"parties": [{"kind": "computational"|"bell2"|"gamma"|
/// "star_ghz"|"rotated"|"custom", "params": {...}, "vectors": [[[re,im],...],...]}]}
std::vector<MeasurementBasis> bases_from_json(const nlohmann::json& doc, const NetworkQuantumState& s);
std::vector<MeasurementBasis> parse_bases(std::string_view text, const NetworkQuantumState& s);

}  // namespace netcfg

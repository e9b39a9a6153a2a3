#include "netcfg/quantum.hpp"

#include "netcfg/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace netcfg {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

long product(const std::vector<int>& dims) {
  long d = 1;
  for (int x : dims) {
    if (x < 1) fail(ErrorCategory::validation, "subsystem dimensions must be >= 1");
    if (d > kMaxTotalDimension / x) {
      fail(ErrorCategory::limit, "Hilbert-space dimension exceeds " + std::to_string(kMaxTotalDimension));
    }
    d *= x;
  }
  return d;
}

VectorXcd kron(const VectorXcd& a, const VectorXcd& b) {
  VectorXcd out(a.size() * b.size());
  for (long i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i) {
    for (long j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

void check_normalised(double norm2, const char* what) {
  if (std::abs(norm2 - 1.0) > 1e-9) {
    fail(ErrorCategory::validation, std::string(what) + " is not normalised (squared norm " + std::to_string(norm2) + ")");
  }
}

int qubit_count(long dim) {
  int q = 0;
  while ((1L << q) < dim) ++q;
  if ((1L << q) != dim) fail(ErrorCategory::validation, "dimension " + std::to_string(dim) + " is not a power of two");
  return q;
}

// For a list of slot dimensions in "source" order and a permutation giving
// each slot's position in "target" order, maps every source index to its
// target index.
std::vector<long> layout_map(const std::vector<int>& dims, const std::vector<int>& target_pos) {
  const int k = static_cast<int>(dims.size());
  std::vector<int> target_dims(k);
  for (int s = 0; s < k; ++s) target_dims[target_pos[s]] = dims[s];
  std::vector<long> target_stride(k, 1);
  for (int t = k - 2; t >= 0; --t) target_stride[t] = target_stride[t + 1] * target_dims[t + 1];
  long total = 1;
  for (int d : dims) total *= d;
  std::vector<long> map(total);
  std::vector<int> digit(k, 0);
  for (long g = 0; g < total; ++g) {
    long idx = 0;
    for (int s = 0; s < k; ++s) idx += digit[s] * target_stride[target_pos[s]];
    map[g] = idx;
    for (int s = k - 1; s >= 0; --s) {
      if (++digit[s] < dims[s]) break;
      digit[s] = 0;
    }
  }
  return map;
}

// Slot dims in component-major order, and each slot's position in the
// party-major layout.
void global_layout(const NetworkQuantumState& s, std::vector<int>& dims, std::vector<int>& party_pos) {
  std::vector<int> offset(s.components().size() + 1, 0);
  for (std::size_t c = 0; c < s.components().size(); ++c) {
    offset[c + 1] = offset[c] + s.components()[c].subsystem_count();
    for (int d : s.components()[c].dims()) dims.push_back(d);
  }
  party_pos.assign(dims.size(), 0);
  int pos = 0;
  for (int p = 0; p < s.party_count(); ++p) {
    for (const auto& slot : s.party_slots(p)) party_pos[offset[slot.component] + slot.subsystem] = pos++;
  }
}

}  // namespace

QuantumComponent::QuantumComponent(MatrixXcd rho, std::vector<int> dims) : rho_(std::move(rho)), dims_(std::move(dims)) {
  if (dims_.empty()) fail(ErrorCategory::validation, "component needs at least one subsystem");
  const long d = product(dims_);
  if (rho_.rows() != d || rho_.cols() != d) {
    fail(ErrorCategory::validation, "density matrix is " + std::to_string(rho_.rows()) + "x" +
                                        std::to_string(rho_.cols()) + ", subsystems give dimension " + std::to_string(d));
  }
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) fail(ErrorCategory::validation, "density matrix is not Hermitian");
  const Complex tr = rho_.trace();
  if (std::abs(tr - Complex(1, 0)) > 1e-12) fail(ErrorCategory::validation, "density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) fail(ErrorCategory::validation, "density matrix is not positive semidefinite");
}

QuantumComponent QuantumComponent::pure(const VectorXcd& psi, std::vector<int> dims) {
  check_normalised(psi.squaredNorm(), "state vector");
  const VectorXcd v = psi / psi.norm();
  return QuantumComponent(v * v.adjoint(), std::move(dims));
}

double QuantumComponent::purity() const { return (rho_ * rho_).trace().real(); }

QuantumComponent make_state(const StateSpec& spec) {
  struct Visitor {
    QuantumComponent operator()(const state::Ghz& g) const {
      if (g.qubits < 2 || g.qubits > 14) fail(ErrorCategory::validation, "GHZ state needs 2..14 qubits");
      const long d = 1L << g.qubits;
      VectorXcd v = VectorXcd::Zero(d);
      v(0) = std::cos(g.theta);
      v(d - 1) = std::sin(g.theta);
      return QuantumComponent::pure(v, std::vector<int>(g.qubits, 2));
    }
    QuantumComponent operator()(const state::W3& w) const {
      VectorXcd v = VectorXcd::Zero(8);
      v(1) = std::cos(w.theta) * std::cos(w.gamma);
      v(2) = std::sin(w.theta) * std::cos(w.gamma);
      v(4) = std::sin(w.gamma);
      return QuantumComponent::pure(v, {2, 2, 2});
    }
    QuantumComponent operator()(const state::WN& w) const {
      const int n = static_cast<int>(w.alphas.size());
      if (n < 2 || n > 14) fail(ErrorCategory::validation, "W state needs 2..14 qubits");
      VectorXcd v = VectorXcd::Zero(1L << n);
      for (int i = 0; i < n; ++i) v(1L << (n - 1 - i)) = w.alphas[i];
      return QuantumComponent::pure(v, std::vector<int>(n, 2));
    }
    QuantumComponent operator()(const state::Epr& e) const {
      VectorXcd v = VectorXcd::Zero(4);
      v(0) = std::cos(e.theta);
      v(3) = std::sin(e.theta);
      return QuantumComponent::pure(v, {2, 2});
    }
    QuantumComponent operator()(const state::Acin& a) const {
      VectorXcd v = VectorXcd::Zero(8);
      v(0) = a.a0;
      v(4) = a.a1 * std::polar(1.0, a.phi);
      v(5) = a.a2;
      v(6) = a.a3;
      v(7) = a.a4;
      return QuantumComponent::pure(v, {2, 2, 2});
    }
    QuantumComponent operator()(const state::Product& p) const {
      if (p.factors.empty()) fail(ErrorCategory::validation, "product state needs at least one factor");
      VectorXcd v = VectorXcd::Ones(1);
      std::vector<int> dims;
      for (const auto& f : p.factors) {
        if (f.size() < 1) fail(ErrorCategory::validation, "empty product factor");
        check_normalised(f.squaredNorm(), "product factor");
        v = kron(v, f);
        dims.push_back(static_cast<int>(f.size()));
      }
      return QuantumComponent::pure(v, dims);
    }
    QuantumComponent operator()(const state::Custom& c) const {
      if (c.data.cols() == 1) return QuantumComponent::pure(c.data.col(0), c.dims);
      return QuantumComponent(c.data, c.dims);
    }
  };
  return std::visit(Visitor{}, spec);
}

QuantumComponent add_noise(const QuantumComponent& c, double v) {
  if (!(v >= 0 && v <= 1)) fail(ErrorCategory::usage, "visibility must lie in [0,1]");
  if (v == 1) return c;
  const long d = c.dimension();
  MatrixXcd rho = v * c.rho();
  rho.diagonal().array() += (1 - v) / static_cast<double>(d);
  return QuantumComponent(rho, c.dims());
}

double NetworkQuantumState::purity() const {
  double p = 1;
  for (const auto& c : components_) p *= c.purity();
  return p;
}

NetworkQuantumState assemble(std::vector<QuantumComponent> components, std::vector<std::vector<int>> assignment,
                             int party_count) {
  if (components.empty()) fail(ErrorCategory::validation, "network state needs at least one component");
  if (assignment.size() != components.size()) {
    fail(ErrorCategory::validation, "assignment lists " + std::to_string(assignment.size()) + " components, state has " +
                                        std::to_string(components.size()));
  }
  int max_party = -1;
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (static_cast<int>(assignment[c].size()) != components[c].subsystem_count()) {
      fail(ErrorCategory::validation, "component " + std::to_string(c + 1) + " has " +
                                          std::to_string(components[c].subsystem_count()) +
                                          " subsystems but the assignment lists " + std::to_string(assignment[c].size()));
    }
    for (int p : assignment[c]) {
      if (p < 0) fail(ErrorCategory::validation, "assignment party index out of range");
      max_party = std::max(max_party, p);
    }
  }
  if (party_count == 0) party_count = max_party + 1;
  if (max_party >= party_count) fail(ErrorCategory::validation, "assignment references a party beyond the party count");

  NetworkQuantumState s;
  s.party_slots_.assign(party_count, {});
  s.party_dims_.assign(party_count, 1);
  std::vector<Source> sources;
  long total = 1;
  for (std::size_t c = 0; c < components.size(); ++c) {
    Source src;
    for (int i = 0; i < components[c].subsystem_count(); ++i) {
      const int p = assignment[c][i];
      s.party_slots_[p].push_back({static_cast<int>(c), i});
      s.party_dims_[p] *= components[c].dims()[i];
      if (std::find(src.parties.begin(), src.parties.end(), p) == src.parties.end()) src.parties.push_back(p);
    }
    if (total > kMaxTotalDimension / components[c].dimension()) {
      fail(ErrorCategory::limit, "total Hilbert-space dimension exceeds " + std::to_string(kMaxTotalDimension));
    }
    total *= components[c].dimension();
    sources.push_back(std::move(src));
  }
  s.total_dim_ = total;
  s.topology_ = NetworkTopology::with_party_count(party_count, std::move(sources));
  s.components_ = std::move(components);
  s.assignment_ = std::move(assignment);
  return s;
}

MeasurementBasis::MeasurementBasis(MatrixXcd vectors) : vectors_(std::move(vectors)) {
  if (vectors_.rows() < 1 || vectors_.rows() != vectors_.cols()) {
    fail(ErrorCategory::validation, "basis must have exactly as many vectors as the local dimension");
  }
  const MatrixXcd gram = vectors_.adjoint() * vectors_;
  const double dev = (gram - MatrixXcd::Identity(vectors_.rows(), vectors_.cols())).cwiseAbs().maxCoeff();
  if (dev > 1e-9) fail(ErrorCategory::validation, "basis is not orthonormal (Gram deviation " + std::to_string(dev) + ")");
  computational_ = vectors_ == MatrixXcd::Identity(vectors_.rows(), vectors_.cols());
}

MeasurementBasis MeasurementBasis::computational(int dim) {
  if (dim < 1) fail(ErrorCategory::validation, "basis dimension must be >= 1");
  return MeasurementBasis(MatrixXcd::Identity(dim, dim));
}

MeasurementBasis make_basis(const BasisSpec& spec, int dim) {
  const double r = 1 / std::sqrt(2.0);
  struct Visitor {
    int dim;
    double r;
    void need(int d, const char* name) const {
      if (dim != d) {
        fail(ErrorCategory::validation, std::string(name) + " basis has dimension " + std::to_string(d) +
                                            ", party dimension is " + std::to_string(dim));
      }
    }
    MeasurementBasis operator()(const basis::Computational&) const { return MeasurementBasis::computational(dim); }
    MeasurementBasis operator()(const basis::Bell2&) const {
      need(4, "bell2");
      MatrixXcd m = MatrixXcd::Zero(4, 4);
      m(0, 0) = r; m(3, 0) = r;
      m(1, 1) = r; m(2, 1) = r;
      m(1, 2) = r; m(2, 2) = -r;
      m(0, 3) = r; m(3, 3) = -r;
      return MeasurementBasis(m);
    }
    MeasurementBasis operator()(const basis::Gamma& g) const {
      need(4, "gamma");
      MatrixXcd m = MatrixXcd::Zero(4, 4);
      m(0, 0) = 1;
      m(1, 1) = std::cos(g.gamma); m(2, 1) = std::sin(g.gamma);
      m(1, 2) = std::sin(g.gamma); m(2, 2) = -std::cos(g.gamma);
      m(3, 3) = 1;
      return MeasurementBasis(m);
    }
    MeasurementBasis operator()(const basis::StarGhz& s) const {
      if (s.qubits < 1 || s.qubits > 14) fail(ErrorCategory::validation, "star_ghz basis needs 1..14 qubits");
      const long d = 1L << s.qubits;
      need(static_cast<int>(d), "star_ghz");
      const long half = d / 2;
      MatrixXcd m = MatrixXcd::Zero(d, d);
      for (long i = 0; i < half; ++i) {
        m(i, i) = r; m(d - 1 - i, i) = r;
        m(i, half + i) = r; m(d - 1 - i, half + i) = -r;
      }
      return MeasurementBasis(m);
    }
    MeasurementBasis operator()(const basis::Rotated& u) const {
      need(static_cast<int>(u.unitary.rows()), "rotated");
      if (u.unitary.rows() != u.unitary.cols() ||
          (u.unitary.adjoint() * u.unitary - MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-9) {
        fail(ErrorCategory::validation, "rotation matrix is not unitary");
      }
      return MeasurementBasis(u.unitary);
    }
    MeasurementBasis operator()(const basis::Custom& c) const {
      need(static_cast<int>(c.vectors.rows()), "custom");
      return MeasurementBasis(c.vectors);
    }
  };
  return std::visit(Visitor{dim, r}, spec);
}

OutcomeDistribution born_distribution(const NetworkQuantumState& s, std::span<const MeasurementBasis> bases) {
  const int n = s.party_count();
  if (!bases.empty() && static_cast<int>(bases.size()) != n) {
    fail(ErrorCategory::validation, "expected " + std::to_string(n) + " bases, got " + std::to_string(bases.size()));
  }
  for (int p = 0; p < static_cast<int>(bases.size()); ++p) {
    if (bases[p].dimension() != s.party_dims()[p]) {
      fail(ErrorCategory::validation, "basis for party " + std::to_string(p + 1) + " has dimension " +
                                          std::to_string(bases[p].dimension()) + ", local dimension is " +
                                          std::to_string(s.party_dims()[p]));
    }
  }

  std::vector<int> dims, party_pos;
  global_layout(s, dims, party_pos);
  const std::vector<long> to_party = layout_map(dims, party_pos);
  const long total = s.total_dimension();

  const bool all_computational =
      std::all_of(bases.begin(), bases.end(), [](const MeasurementBasis& b) { return b.is_computational(); });
  if (all_computational) {
    Eigen::VectorXd diag = Eigen::VectorXd::Ones(1);
    for (const auto& c : s.components()) {
      const Eigen::VectorXd dc = c.rho().diagonal().real();
      Eigen::VectorXd next(diag.size() * dc.size());
      for (long i = 0; i < diag.size(); ++i) next.segment(i * dc.size(), dc.size()) = diag(i) * dc;
      diag.swap(next);
    }
    std::vector<double> probs(total);
    for (long g = 0; g < total; ++g) {
      double p = diag(g);
      if (p < 0 && p >= -1e-12) p = 0;
      if (p < 0) fail(ErrorCategory::internal, "negative Born probability");
      probs[to_party[g]] = p;
    }
    return OutcomeDistribution(s.party_dims(), std::move(probs));
  }

  struct Term {
    double weight;
    VectorXcd vec;
  };
  std::vector<std::vector<Term>> terms;
  long term_count = 1;
  for (const auto& c : s.components()) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(c.rho());
    std::vector<Term> list;
    for (long i = 0; i < es.eigenvalues().size(); ++i) {
      if (es.eigenvalues()(i) > 1e-14) list.push_back({es.eigenvalues()(i), es.eigenvectors().col(i)});
    }
    term_count *= static_cast<long>(list.size());
    if (term_count * total > (1L << 28)) fail(ErrorCategory::limit, "mixed state too large to simulate exactly");
    terms.push_back(std::move(list));
  }

  std::vector<double> probs(total, 0.0);
  std::vector<std::size_t> pick(terms.size(), 0);
  VectorXcd psi(total), tmp(total);
  for (long t = 0; t < term_count; ++t) {
    double weight = 1;
    VectorXcd prod = VectorXcd::Ones(1);
    for (std::size_t c = 0; c < terms.size(); ++c) {
      weight *= terms[c][pick[c]].weight;
      prod = kron(prod, terms[c][pick[c]].vec);
    }
    for (long g = 0; g < total; ++g) psi(to_party[g]) = prod(g);
    long left = 1;
    for (int p = 0; p < n; ++p) {
      const int d = s.party_dims()[p];
      const long right = total / (left * d);
      if (!bases.empty() && !bases[p].is_computational()) {
        const MatrixXcd& b = bases[p].vectors();
        for (long l = 0; l < left; ++l) {
          for (int a = 0; a < d; ++a) {
            for (long r = 0; r < right; ++r) {
              Complex acc = 0;
              for (int k = 0; k < d; ++k) acc += std::conj(b(k, a)) * psi((l * d + k) * right + r);
              tmp((l * d + a) * right + r) = acc;
            }
          }
        }
        psi.swap(tmp);
      }
      left *= d;
    }
    for (long i = 0; i < total; ++i) probs[i] += weight * std::norm(psi(i));
    for (int c = static_cast<int>(pick.size()) - 1; c >= 0; --c) {
      if (++pick[c] < terms[c].size()) break;
      pick[c] = 0;
    }
  }
  double sum = 0;
  for (double p : probs) sum += p;
  for (auto& p : probs) {
    if (p < -1e-12) fail(ErrorCategory::internal, "negative Born probability");
    p /= sum;
  }
  return OutcomeDistribution(s.party_dims(), std::move(probs));
}

NetworkQuantumState merge_components(const NetworkQuantumState& s) {
  if (s.total_dimension() > kMaxMergedDimension) {
    fail(ErrorCategory::limit, "merging needs total dimension <= " + std::to_string(kMaxMergedDimension));
  }
  std::vector<int> dims, party_pos;
  global_layout(s, dims, party_pos);
  const std::vector<long> to_party = layout_map(dims, party_pos);
  MatrixXcd rho = MatrixXcd::Ones(1, 1);
  for (const auto& c : s.components()) rho = kron(rho, c.rho());
  const long total = s.total_dimension();
  MatrixXcd out(total, total);
  for (long i = 0; i < total; ++i) {
    for (long j = 0; j < total; ++j) out(to_party[i], to_party[j]) = rho(i, j);
  }
  std::vector<int> parties(s.party_count());
  std::iota(parties.begin(), parties.end(), 0);
  std::vector<QuantumComponent> comps{QuantumComponent(out, s.party_dims())};
  return assemble(std::move(comps), {parties}, s.party_count());
}

NetworkQuantumState rotate_locally(const NetworkQuantumState& s, std::span<const MatrixXcd> party_unitaries) {
  const int n = s.party_count();
  if (static_cast<int>(party_unitaries.size()) != n) {
    fail(ErrorCategory::validation, "expected one unitary per party");
  }
  std::vector<int> owner_component(n, -1);
  for (int p = 0; p < n; ++p) {
    const auto& u = party_unitaries[p];
    if (u.rows() != s.party_dims()[p] || u.cols() != s.party_dims()[p]) {
      fail(ErrorCategory::validation, "unitary for party " + std::to_string(p + 1) + " has the wrong dimension");
    }
    if ((u.adjoint() * u - MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() > 1e-9) {
      fail(ErrorCategory::validation, "matrix for party " + std::to_string(p + 1) + " is not unitary");
    }
    for (const auto& slot : s.party_slots(p)) {
      if (owner_component[p] >= 0 && owner_component[p] != slot.component) {
        fail(ErrorCategory::validation, "party " + std::to_string(p + 1) + " spans several components; merge first");
      }
      owner_component[p] = slot.component;
    }
  }
  std::vector<QuantumComponent> comps;
  for (int c = 0; c < static_cast<int>(s.components().size()); ++c) {
    const auto& comp = s.components()[c];
    const auto& owners = s.assignment()[c];
    // Group the component's subsystems by party, parties in ascending order.
    std::vector<int> order;
    for (int p : owners) {
      if (std::find(order.begin(), order.end(), p) == order.end()) order.push_back(p);
    }
    std::sort(order.begin(), order.end());
    std::vector<int> pos(owners.size());
    int next = 0;
    MatrixXcd u = MatrixXcd::Ones(1, 1);
    for (int p : order) {
      for (std::size_t i = 0; i < owners.size(); ++i) {
        if (owners[i] == p) pos[i] = next++;
      }
      u = kron(u, party_unitaries[p]);
    }
    const std::vector<long> map = layout_map(comp.dims(), pos);
    const long d = comp.dimension();
    MatrixXcd uc(d, d);
    for (long i = 0; i < d; ++i) {
      for (long j = 0; j < d; ++j) uc(i, j) = u(map[i], map[j]);
    }
    MatrixXcd rho = uc.adjoint() * comp.rho() * uc;
    rho = (rho + rho.adjoint()) / 2.0;
    comps.emplace_back(rho, comp.dims());
  }
  return assemble(std::move(comps), s.assignment(), n);
}

namespace {

Complex parse_complex(const nlohmann::json& x) {
  if (x.is_number()) return {x.get<double>(), 0.0};
  if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number()) {
    return {x[0].get<double>(), x[1].get<double>()};
  }
  fail(ErrorCategory::input, "complex entries are numbers or [re, im] pairs");
}

VectorXcd parse_vector(const nlohmann::json& x) {
  if (!x.is_array() || x.empty()) fail(ErrorCategory::input, "vector must be a non-empty array");
  VectorXcd v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v(i) = parse_complex(x[i]);
  return v;
}

// Rows of complex entries.
MatrixXcd parse_matrix(const nlohmann::json& x) {
  if (!x.is_array() || x.empty()) fail(ErrorCategory::input, "matrix must be a non-empty array of rows");
  const std::size_t cols = x[0].is_array() ? x[0].size() : 0;
  MatrixXcd m(x.size(), cols);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].is_array() || x[i].size() != cols) fail(ErrorCategory::input, "matrix rows must have equal length");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = parse_complex(x[i][j]);
  }
  return m;
}

double number(const nlohmann::json& params, const char* key) {
  if (!params.contains(key) || !params.at(key).is_number()) {
    fail(ErrorCategory::input, std::string("missing numeric parameter '") + key + "'");
  }
  return params.at(key).get<double>();
}

double number_or(const nlohmann::json& params, const char* key, double fallback) {
  return params.contains(key) ? number(params, key) : fallback;
}

std::vector<double> numbers(const nlohmann::json& params, const char* key) {
  if (!params.contains(key) || !params.at(key).is_array()) {
    fail(ErrorCategory::input, std::string("missing array parameter '") + key + "'");
  }
  std::vector<double> out;
  for (const auto& x : params.at(key)) {
    if (!x.is_number()) fail(ErrorCategory::input, std::string("'") + key + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

nlohmann::json parse_text(std::string_view text, const char* what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCategory::input, std::string("malformed ") + what + " JSON: " + e.what());
  }
}

StateSpec parse_state_spec(const std::string& family, const nlohmann::json& params, const nlohmann::json& comp) {
  if (family == "ghz") {
    const double q = number_or(params, "qubits", 3);
    return state::Ghz{number(params, "theta"), static_cast<int>(q)};
  }
  if (family == "w3") return state::W3{number(params, "theta"), number(params, "gamma")};
  if (family == "wn") return state::WN{numbers(params, "alphas")};
  if (family == "epr") return state::Epr{number(params, "theta")};
  if (family == "acin") {
    const auto a = numbers(params, "alphas");
    if (a.size() != 5) fail(ErrorCategory::input, "acin needs five 'alphas'");
    return state::Acin{a[0], a[1], a[2], a[3], a[4], number_or(params, "phi", 0.0)};
  }
  if (family == "product") {
    if (!params.contains("factors") || !params.at("factors").is_array()) {
      fail(ErrorCategory::input, "product state needs 'factors'");
    }
    state::Product p;
    for (const auto& f : params.at("factors")) p.factors.push_back(parse_vector(f));
    return p;
  }
  if (family == "custom") {
    state::Custom c;
    if (!comp.contains("dims") || !comp.at("dims").is_array()) fail(ErrorCategory::input, "custom state needs 'dims'");
    for (const auto& d : comp.at("dims")) {
      if (!d.is_number_integer()) fail(ErrorCategory::input, "dims must be integers");
      c.dims.push_back(d.get<int>());
    }
    if (params.contains("vector")) {
      c.data = parse_vector(params.at("vector"));
    } else if (params.contains("matrix")) {
      c.data = parse_matrix(params.at("matrix"));
    } else {
      fail(ErrorCategory::input, "custom state needs 'vector' or 'matrix'");
    }
    return c;
  }
  fail(ErrorCategory::input, "unknown state family '" + family + "'");
}

}  // namespace

NetworkQuantumState state_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("components") || !doc.at("components").is_array()) {
    fail(ErrorCategory::input, "state document needs a 'components' array");
  }
  int parties = 0;
  if (doc.contains("parties")) {
    if (!doc.at("parties").is_number_integer() || doc.at("parties").get<int>() < 1) {
      fail(ErrorCategory::input, "'parties' must be a positive integer");
    }
    parties = doc.at("parties").get<int>();
  }
  std::vector<QuantumComponent> comps;
  std::vector<std::vector<int>> assignment;
  for (const auto& c : doc.at("components")) {
    if (!c.is_object() || !c.contains("family") || !c.at("family").is_string()) {
      fail(ErrorCategory::input, "each component needs a 'family'");
    }
    const nlohmann::json params = c.contains("params") ? c.at("params") : nlohmann::json::object();
    if (!params.is_object()) fail(ErrorCategory::input, "'params' must be an object");
    QuantumComponent q = make_state(parse_state_spec(c.at("family").get<std::string>(), params, c));
    if (c.contains("visibility")) {
      if (!c.at("visibility").is_number()) fail(ErrorCategory::input, "'visibility' must be a number");
      q = add_noise(q, c.at("visibility").get<double>());
    }
    if (!c.contains("assignment") || !c.at("assignment").is_array()) {
      fail(ErrorCategory::input, "each component needs an 'assignment'");
    }
    std::vector<int> owners;
    for (const auto& p : c.at("assignment")) {
      if (!p.is_number_integer()) fail(ErrorCategory::input, "assignment entries must be integers");
      owners.push_back(p.get<int>() - 1);
    }
    comps.push_back(std::move(q));
    assignment.push_back(std::move(owners));
  }
  return assemble(std::move(comps), std::move(assignment), parties);
}

NetworkQuantumState parse_state(std::string_view text) { return state_from_json(parse_text(text, "state")); }

std::vector<MeasurementBasis> bases_from_json(const nlohmann::json& doc, const NetworkQuantumState& s) {
  if (!doc.is_object() || !doc.contains("parties") || !doc.at("parties").is_array()) {
    fail(ErrorCategory::input, "basis document needs a 'parties' array");
  }
  const auto& jp = doc.at("parties");
  if (static_cast<int>(jp.size()) != s.party_count()) {
    fail(ErrorCategory::validation, "basis document lists " + std::to_string(jp.size()) + " parties, state has " +
                                        std::to_string(s.party_count()));
  }
  std::vector<MeasurementBasis> out;
  for (int p = 0; p < s.party_count(); ++p) {
    const auto& b = jp[p];
    const int dim = s.party_dims()[p];
    if (!b.is_object()) fail(ErrorCategory::input, "each basis entry must be an object");
    std::string kind = b.contains("kind") && b.at("kind").is_string() ? b.at("kind").get<std::string>()
                                                                      : (b.contains("vectors") ? "custom" : "");
    const nlohmann::json params = b.contains("params") ? b.at("params") : nlohmann::json::object();
    BasisSpec spec;
    if (kind == "computational") {
      spec = basis::Computational{};
    } else if (kind == "bell2") {
      spec = basis::Bell2{};
    } else if (kind == "gamma") {
      spec = basis::Gamma{number(params, "gamma")};
    } else if (kind == "star_ghz") {
      spec = basis::StarGhz{static_cast<int>(number_or(params, "qubits", qubit_count(dim)))};
    } else if (kind == "rotated") {
      if (!params.contains("unitary")) fail(ErrorCategory::input, "rotated basis needs 'unitary'");
      spec = basis::Rotated{parse_matrix(params.at("unitary"))};
    } else if (kind == "custom") {
      if (!b.contains("vectors") || !b.at("vectors").is_array() || b.at("vectors").empty()) {
        fail(ErrorCategory::input, "custom basis needs 'vectors'");
      }
      const auto& vs = b.at("vectors");
      MatrixXcd m(dim, static_cast<long>(vs.size()));
      for (std::size_t j = 0; j < vs.size(); ++j) {
        const VectorXcd v = parse_vector(vs[j]);
        if (v.size() != dim) fail(ErrorCategory::validation, "custom basis vector has the wrong dimension");
        m.col(j) = v;
      }
      spec = basis::Custom{m};
    } else {
      fail(ErrorCategory::input, "unknown basis kind '" + kind + "'");
    }
    out.push_back(make_basis(spec, dim));
  }
  return out;
}

std::vector<MeasurementBasis> parse_bases(std::string_view text, const NetworkQuantumState& s) {
  return bases_from_json(parse_text(text, "basis"), s);
}

}  // namespace netcfg

#ifndef QOCT_MODEL_HPP
#define QOCT_MODEL_HPP

#include <optional>

#include "qoct/linalg.hpp"

namespace qoct {

// Unknown single-qubit state a|0> + b|1> carried by qubit 1.
struct InputQubit {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};

  double norm_sq() const { return std::norm(a) + std::norm(b); }
};

// The control problem instance: driving Hamiltonian H0 with ground state
// psi0, problem Hamiltonian H1 with ground state `target`, and the target
// projector O = |target><target|. Energies in units of hbar*omega0, times
// in units of tau0 = 1/omega0.
struct ProtocolSpec {
  int n_qubits = 3;
  ComplexMatrix h0;
  ComplexMatrix h1;
  ComplexVector psi0;
  ComplexVector target;
  ComplexMatrix observable;

  Eigen::Index dim() const { return h0.rows(); }
};

/// Three-qubit teleportation instance:
///   H0 = -(sx2 sx3 + sz2 sz3),  H1 = -(sx1 sx2 + sz1 sz2),
///   psi0 = (a|0> + b|1>) (x) |Phi>,  target = |Phi> (x) (a|0> + b|1>),
/// with |Phi> = (|00> + |11>)/sqrt(2).
ProtocolSpec build_teleportation(const InputQubit& input);

/// He = alpha * sigma_axis on the given qubit (3-qubit register).
ComplexMatrix build_error_hamiltonian(PauliAxis axis, int qubit, double alpha);

/// eps0*H0 + eps1*H1 (+ err when present).
ComplexMatrix total_hamiltonian(const ProtocolSpec& spec, double eps0,
                                double eps1,
                                const ComplexMatrix* err = nullptr);

}  // namespace qoct

#endif

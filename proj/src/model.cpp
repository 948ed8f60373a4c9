#include "qoct/model.hpp"

namespace qoct {

namespace {

ComplexVector bell_pair() {
  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = Complex(1.0 / std::sqrt(2.0), 0.0);
  phi(3) = Complex(1.0 / std::sqrt(2.0), 0.0);
  return phi;
}

ComplexMatrix two_qubit_coupling(int j, int k) {
  // -(sx_j sx_k + sz_j sz_k) on 3 qubits, hbar*omega0 = 1
  const int n = 3;
  return -(pauli_embed(PauliAxis::X, j, n) * pauli_embed(PauliAxis::X, k, n) +
           pauli_embed(PauliAxis::Z, j, n) * pauli_embed(PauliAxis::Z, k, n));
}

}  // namespace

ProtocolSpec build_teleportation(const InputQubit& input) {
  if (std::abs(input.norm_sq() - 1.0) > 1e-12)
    throw std::invalid_argument("build_teleportation: input qubit not normalized");

  ProtocolSpec spec;
  spec.n_qubits = 3;
  spec.h0 = two_qubit_coupling(2, 3);
  spec.h1 = two_qubit_coupling(1, 2);

  ComplexVector q(2);
  q(0) = input.a;
  q(1) = input.b;
  const ComplexVector phi = bell_pair();
  spec.psi0 = kron(q, phi);
  spec.target = kron(phi, q);
  spec.observable = spec.target * spec.target.adjoint();
  return spec;
}

ComplexMatrix build_error_hamiltonian(PauliAxis axis, int qubit, double alpha) {
  return alpha * pauli_embed(axis, qubit, 3);
}

ComplexMatrix total_hamiltonian(const ProtocolSpec& spec, double eps0,
                                double eps1, const ComplexMatrix* err) {
  ComplexMatrix h = eps0 * spec.h0 + eps1 * spec.h1;
  if (err) {
    if (err->rows() != h.rows() || err->cols() != h.cols())
      throw std::invalid_argument("total_hamiltonian: dimension mismatch");
    h += *err;
  }
  return h;
}

}  // namespace qoct

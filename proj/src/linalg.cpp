#include "qoct/linalg.hpp"

namespace qoct {

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix pauli(PauliAxis axis) {
  ComplexMatrix s(2, 2);
  const Complex i(0.0, 1.0);
  switch (axis) {
    case PauliAxis::X:
      s << 0, 1, 1, 0;
      break;
    case PauliAxis::Y:
      s << 0, -i, i, 0;
      break;
    case PauliAxis::Z:
      s << 1, 0, 0, -1;
      break;
  }
  return s;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexMatrix pauli_embed(PauliAxis axis, int qubit, int n_qubits) {
  if (qubit < 1 || qubit > n_qubits)
    throw std::out_of_range("pauli_embed: qubit index out of range");
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int q = 1; q <= n_qubits; ++q) {
    out = kron(out, q == qubit ? pauli(axis)
                               : ComplexMatrix::Identity(2, 2));
  }
  return out;
}

EigenDecomposition eig_hermitian(const ComplexMatrix& h) {
  if (!is_hermitian(h))
    throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
  ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: decomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix expm_unitary(const EigenDecomposition& eig, double dt) {
  const Eigen::Index d = eig.eigenvalues.size();
  ComplexVector phases(d);
  for (Eigen::Index k = 0; k < d; ++k)
    phases(k) = std::exp(Complex(0.0, -eig.eigenvalues(k) * dt));
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix expm_unitary(const ComplexMatrix& h, double dt) {
  return expm_unitary(eig_hermitian(h), dt);
}

double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

}  // namespace qoct

#ifndef QOCT_LINALG_HPP
#define QOCT_LINALG_HPP

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace qoct {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class PauliAxis { X, Y, Z };

// Absolute tolerance below which a matrix is accepted as Hermitian.
inline constexpr double kHermitianTol = 1e-12;

struct EigenDecomposition {
  RealVector eigenvalues;   // ascending
  ComplexMatrix eigenvectors;  // columns, orthonormal
};

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

/// 2x2 Pauli matrix for the given axis.
ComplexMatrix pauli(PauliAxis axis);

/// I (x) ... (x) sigma_axis (x) ... (x) I on an n-qubit register.
/// Qubit indices are 1-based; qubit 1 is the leftmost (most significant)
/// factor of the tensor product.
ComplexMatrix pauli_embed(PauliAxis axis, int qubit, int n_qubits);

/// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// Eigendecomposition of a Hermitian matrix; eigenvalues ascending.
/// The input is symmetrized as (H + H^dag)/2 before decomposition.
/// Throws std::invalid_argument if the input is not Hermitian within tol.
EigenDecomposition eig_hermitian(const ComplexMatrix& h);

/// exp(-i H dt) via Hermitian eigendecomposition; exactly unitary up to
/// roundoff for any step size.
ComplexMatrix expm_unitary(const ComplexMatrix& h, double dt);

/// Same propagator built from a precomputed decomposition of H.
ComplexMatrix expm_unitary(const EigenDecomposition& eig, double dt);

double frobenius_norm(const ComplexMatrix& m);

}  // namespace qoct

#endif

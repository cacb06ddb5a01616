#pragma once

// Dense complex matrices sized for two-spin problems.
//
// Basis ordering for the two-spin space is |uu>, |ud>, |du>, |dd> with spin I
// as the left tensor factor, so sigma_z^I = diag(1, 1, -1, -1).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace stirling {

using cplx = std::complex<double>;

class Operator {
 public:
  Operator() = default;
  explicit Operator(std::size_t dim);
  Operator(std::size_t dim, std::initializer_list<cplx> row_major);

  static Operator zero(std::size_t dim) { return Operator(dim); }
  static Operator identity(std::size_t dim);
  static Operator diagonal(std::span<const double> values);
  /// |ket><bra| for two column vectors of the same length.
  static Operator outer(std::span<const cplx> ket, std::span<const cplx> bra);

  std::size_t dim() const { return dim_; }

  cplx& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const cplx& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  std::span<const cplx> data() const { return data_; }

  Operator adjoint() const;
  cplx trace() const;
  double max_norm() const;
  double frobenius_norm() const;
  /// max |A_ij - conj(A_ji)| <= tol * max(max_norm, 1e-300).
  bool is_hermitian(double rel_tol = 1e-12) const;
  /// (A + A^dagger) / 2
  Operator hermitian_part() const;

  std::vector<cplx> column(std::size_t col) const;

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(cplx scale);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, cplx s) { return a *= s; }
  friend Operator operator*(cplx s, Operator a) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);
  friend bool operator==(const Operator& a, const Operator& b) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

Operator tensor_product(const Operator& a, const Operator& b);
Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);
/// max |a_ij - b_ij|; throws DimensionMismatch on differing sizes.
double max_abs_diff(const Operator& a, const Operator& b);

enum class PauliAxis { X, Y, Z, Plus, Minus };
enum class Site { I, S };

/// Single-spin 2x2 matrix. sigma_+ = (sigma_x + i sigma_y) / 2 = |u><d|.
Operator pauli2(PauliAxis axis);
/// 4x4 operator acting with pauli2(axis) on `site` and identity on the other spin.
Operator pauli_operator(PauliAxis axis, Site site);

/// Eigenvalues sorted ascending with orthonormal eigenvectors stored as the
/// columns of `vectors`, paired by index.
struct Spectrum {
  std::vector<double> values;
  Operator vectors;

  std::vector<cplx> vector(std::size_t k) const { return vectors.column(k); }
};

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// Output is deterministic: eigenvalues ascending, each eigenvector phased so
/// its largest-magnitude component is real positive, and degenerate
/// eigenspaces re-orthonormalised by Gram-Schmidt seeded from the standard
/// basis. Throws NotHermitian if the symmetry check fails.
Spectrum hermitian_eig(const Operator& h);

enum class MatrixFunction { Exp, Log, Sqrt };

/// V f(diag(lambda)) V^dagger. For Log and Sqrt, eigenvalues in [-1e-12, 0)
/// are clamped to zero and anything lower raises DomainError; Log is applied
/// only on eigenvalues above 1e-15 and maps the rest to 0.
Operator matrix_function(const Operator& h, MatrixFunction f);

}  // namespace stirling

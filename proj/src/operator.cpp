#include "stirling/operator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "stirling/errors.hpp"

namespace stirling {

namespace {

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(a.dim()) +
                            " and " + std::to_string(b.dim()) + " differ");
  }
}

// Index of the first entry whose magnitude is within a relative 1e-12 of the
// largest one. Keeps the choice stable against rounding-level ties.
std::size_t dominant_index(std::span<const double> magnitudes) {
  const double top = *std::max_element(magnitudes.begin(), magnitudes.end());
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    if (magnitudes[i] >= top * (1.0 - 1e-12)) return i;
  }
  return 0;
}

void normalise_phase(std::vector<cplx>& v) {
  std::vector<double> mags(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) mags[i] = std::abs(v[i]);
  const std::size_t k = dominant_index(mags);
  if (mags[k] == 0.0) return;
  const cplx phase = std::conj(v[k]) / mags[k];
  for (auto& x : v) x *= phase;
  v[k] = cplx(std::abs(v[k]), 0.0);
}

void jacobi_rotate(Operator& a, Operator& v, std::size_t p, std::size_t q) {
  const std::size_t n = a.dim();
  const cplx apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  if (mag <= 1e-18 * (std::abs(app) + std::abs(aqq))) {
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    return;
  }
  const cplx phase = apq / mag;
  const double tau = (aqq - app) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // J = diag(1, .., conj(phase) at q, ..) * real Givens rotation in (p, q).
  const cplx jpp = c;
  const cplx jpq = s;
  const cplx jqp = -s * std::conj(phase);
  const cplx jqq = c * std::conj(phase);

  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = akp * jpp + akq * jqp;
    a(k, q) = akp * jpq + akq * jqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = vkp * jpp + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * jqq;
  }
}

double off_diagonal_norm(const Operator& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

// Replaces the columns `members` of `vecs` by a deterministic orthonormal
// basis of the same subspace: repeatedly project each standard basis vector
// onto the subspace, remove what is already chosen, and keep the largest
// residual.
void canonical_eigenspace_basis(Operator& vecs, std::span<const std::size_t> members) {
  const std::size_t n = vecs.dim();
  Operator projector(n);
  for (std::size_t k : members) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        projector(i, j) += vecs(i, k) * std::conj(vecs(j, k));
      }
    }
  }
  std::vector<std::vector<cplx>> chosen;
  for (std::size_t m = 0; m < members.size(); ++m) {
    std::vector<std::vector<cplx>> residuals(n, std::vector<cplx>(n));
    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) {
      auto& r = residuals[j];
      for (std::size_t i = 0; i < n; ++i) r[i] = projector(i, j);
      for (const auto& u : chosen) {
        const cplx overlap = std::conj(u[j]);  // u^dagger e_j
        for (std::size_t i = 0; i < n; ++i) r[i] -= u[i] * overlap;
      }
      double s = 0.0;
      for (const auto& x : r) s += std::norm(x);
      norms[j] = std::sqrt(s);
    }
    const std::size_t best = dominant_index(norms);
    auto u = residuals[best];
    for (auto& x : u) x /= norms[best];
    normalise_phase(u);
    chosen.push_back(std::move(u));
  }
  for (std::size_t m = 0; m < members.size(); ++m) {
    for (std::size_t i = 0; i < n; ++i) vecs(i, members[m]) = chosen[m][i];
  }
}

}  // namespace

Operator::Operator(std::size_t dim) : dim_(dim), data_(dim * dim, cplx(0.0, 0.0)) {}

Operator::Operator(std::size_t dim, std::initializer_list<cplx> row_major) : Operator(dim) {
  if (row_major.size() != dim * dim) {
    throw DimensionMismatch("Operator: expected " + std::to_string(dim * dim) + " entries, got " +
                            std::to_string(row_major.size()));
  }
  std::copy(row_major.begin(), row_major.end(), data_.begin());
}

Operator Operator::identity(std::size_t dim) {
  Operator out(dim);
  for (std::size_t i = 0; i < dim; ++i) out(i, i) = 1.0;
  return out;
}

Operator Operator::diagonal(std::span<const double> values) {
  Operator out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out(i, i) = values[i];
  return out;
}

Operator Operator::outer(std::span<const cplx> ket, std::span<const cplx> bra) {
  if (ket.size() != bra.size()) throw DimensionMismatch("Operator::outer: length mismatch");
  Operator out(ket.size());
  for (std::size_t i = 0; i < ket.size(); ++i) {
    for (std::size_t j = 0; j < bra.size(); ++j) out(i, j) = ket[i] * std::conj(bra[j]);
  }
  return out;
}

Operator Operator::adjoint() const {
  Operator out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

cplx Operator::trace() const {
  cplx sum = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) sum += (*this)(i, i);
  return sum;
}

double Operator::max_norm() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

double Operator::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

bool Operator::is_hermitian(double rel_tol) const {
  const double scale = std::max(max_norm(), 1e-300);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > rel_tol * scale) return false;
    }
  }
  return true;
}

Operator Operator::hermitian_part() const {
  Operator out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      out(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    }
  }
  return out;
}

std::vector<cplx> Operator::column(std::size_t col) const {
  std::vector<cplx> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = (*this)(i, col);
  return out;
}

Operator& Operator::operator+=(const Operator& other) {
  require_same_dim(*this, other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  require_same_dim(*this, other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Operator& Operator::operator*=(cplx scale) {
  for (auto& x : data_) x *= scale;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "operator*");
  const std::size_t n = a.dim();
  Operator out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Operator tensor_product(const Operator& a, const Operator& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  Operator out(na * nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      for (std::size_t k = 0; k < nb; ++k) {
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
      }
    }
  }
  return out;
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

Operator anticommutator(const Operator& a, const Operator& b) { return a * b + b * a; }

double max_abs_diff(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  }
  return m;
}

Operator pauli2(PauliAxis axis) {
  const cplx i(0.0, 1.0);
  switch (axis) {
    case PauliAxis::X: return Operator(2, {0.0, 1.0, 1.0, 0.0});
    case PauliAxis::Y: return Operator(2, {0.0, -i, i, 0.0});
    case PauliAxis::Z: return Operator(2, {1.0, 0.0, 0.0, -1.0});
    case PauliAxis::Plus: return Operator(2, {0.0, 1.0, 0.0, 0.0});
    case PauliAxis::Minus: return Operator(2, {0.0, 0.0, 1.0, 0.0});
  }
  return Operator(2);
}

Operator pauli_operator(PauliAxis axis, Site site) {
  const Operator single = pauli2(axis);
  const Operator id = Operator::identity(2);
  return site == Site::I ? tensor_product(single, id) : tensor_product(id, single);
}

Spectrum hermitian_eig(const Operator& h) {
  if (!h.is_hermitian()) throw NotHermitian("hermitian_eig: input is not Hermitian");
  const std::size_t n = h.dim();
  Operator a = h.hermitian_part();
  Operator v = Operator::identity(n);

  const double scale = a.frobenius_norm();
  constexpr int kMaxSweeps = 64;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double off = off_diagonal_norm(a);
    if (off == 0.0 || off <= 1e-16 * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });

  Spectrum out{std::vector<double>(n), Operator(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }

  double largest = 0.0;
  for (double x : out.values) largest = std::max(largest, std::abs(x));
  const double degenerate_tol = 1e-12 * std::max(largest, 1e-300);

  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && out.values[end] - out.values[end - 1] <= degenerate_tol) ++end;
    if (end - start > 1) {
      std::vector<std::size_t> members(end - start);
      std::iota(members.begin(), members.end(), start);
      canonical_eigenspace_basis(out.vectors, members);
    } else {
      auto col = out.vectors.column(start);
      normalise_phase(col);
      for (std::size_t i = 0; i < n; ++i) out.vectors(i, start) = col[i];
    }
    start = end;
  }
  return out;
}

Operator matrix_function(const Operator& h, MatrixFunction f) {
  const Spectrum spec = hermitian_eig(h);
  const std::size_t n = h.dim();
  std::vector<double> mapped(n);
  for (std::size_t k = 0; k < n; ++k) {
    double x = spec.values[k];
    if (f != MatrixFunction::Exp) {
      if (x < -1e-12) {
        throw DomainError("matrix_function: eigenvalue " + std::to_string(x) +
                          " is negative beyond tolerance");
      }
      x = std::max(x, 0.0);
    }
    switch (f) {
      case MatrixFunction::Exp: mapped[k] = std::exp(x); break;
      case MatrixFunction::Log: mapped[k] = x > 1e-15 ? std::log(x) : 0.0; break;
      case MatrixFunction::Sqrt: mapped[k] = std::sqrt(x); break;
    }
  }
  Operator out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        sum += spec.vectors(i, k) * mapped[k] * std::conj(spec.vectors(j, k));
      }
      out(i, j) = sum;
    }
  }
  return out.hermitian_part();
}

}  // namespace stirling

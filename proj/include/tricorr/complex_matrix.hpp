#pragma once

// Dense complex matrices for dimensions up to 8, plus the density-matrix
// plumbing (Kronecker products, partial trace, purity, Jacobi eigenvalues,
// validation) used throughout the library. Qubit 1 is the leftmost tensor
// factor; basis states are ordered |000>, |001>, ..., |111>.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tricorr {

using cplx = std::complex<double>;

namespace tol {
inline constexpr double hermiticity = 1e-12;
inline constexpr double trace_dev = 1e-12;
inline constexpr double min_eigenvalue = -1e-10;  // positivity floor
inline constexpr double jacobi_off = 1e-13;       // off-diagonal Frobenius norm
}  // namespace tol

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, cplx{0.0, 0.0}) {
    if (rows == 0 || cols == 0) {
      throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = rows.begin()->size();
    ComplexMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw std::invalid_argument("from_rows: ragged rows");
      std::size_t j = 0;
      for (const auto& v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  // Column vector from amplitudes.
  static ComplexMatrix column(const std::vector<cplx>& v) {
    ComplexMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  ComplexMatrix dagger() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
  }

  ComplexMatrix operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matmul: shape mismatch");
    ComplexMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const cplx v = (*this)(r, k);
        if (v == cplx{0.0, 0.0}) continue;
        for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += v * rhs(k, c);
      }
    }
    return out;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs) {
    check_same_shape(rhs);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& rhs) {
    check_same_shape(rhs);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= rhs.a_[i];
    return *this;
  }
  ComplexMatrix& operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
  }
  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix m) { return m *= s; }

  cplx trace() const {
    require_square("trace");
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs_diff(const ComplexMatrix& rhs) const {
    check_same_shape(rhs);
    double m = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - rhs.a_[i]));
    return m;
  }

  // max |a_ij - conj(a_ji)|
  double hermiticity_deviation() const {
    require_square("hermiticity_deviation");
    double m = 0.0;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = r; c < cols_; ++c)
        m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return m;
  }

  bool is_hermitian(double eps) const { return hermiticity_deviation() <= eps; }

  bool all_finite() const {
    for (const auto& v : a_) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
  }

 private:
  void check_same_shape(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
      throw std::invalid_argument("shape mismatch");
    }
  }
  void require_square(const char* op) const {
    if (!square()) throw std::invalid_argument(std::string(op) + ": matrix not square");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> a_;
};

inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const cplx v = a(ar, ac);
      if (v == cplx{0.0, 0.0}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = v * b(br, bc);
    }
  return out;
}

// Tr(m^2) for a Hermitian matrix; real by construction.
inline double purity(const ComplexMatrix& m) {
  if (!m.square()) throw std::invalid_argument("purity: matrix not square");
  double s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) s += (m(r, c) * m(c, r)).real();
  return s;
}

// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, ascending.
// Iterates sweeps until the off-diagonal Frobenius norm drops below
// tol::jacobi_off. Input must be Hermitian within 1e-10.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& input) {
  if (!input.square()) throw std::invalid_argument("hermitian_eigenvalues: matrix not square");
  if (!input.is_hermitian(1e-10)) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix not Hermitian");
  }
  const std::size_t n = input.rows();
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      m(r, c) = 0.5 * (input(r, c) + std::conj(input(c, r)));

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r + 1; c < n; ++c) s += 2.0 * std::norm(m(r, c));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100 && off_norm() > tol::jacobi_off; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double ab = std::abs(m(p, q));
        if (ab == 0.0) continue;
        const cplx phase = m(p, q) / ab;
        const double theta =
            0.5 * std::atan2(2.0 * ab, m(p, p).real() - m(q, q).real());
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        // Unitary J: J(p,p)=c, J(p,q)=-s*phase, J(q,p)=s*conj(phase), J(q,q)=c.
        // Apply m <- J^dagger m J on rows/columns p and q.
        for (std::size_t k = 0; k < n; ++k) {
          const cplx mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp + s * std::conj(phase) * mkq;
          m(k, q) = -s * phase * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk + s * phase * mqk;
          m(q, k) = -s * std::conj(phase) * mpk + c * mqk;
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = m(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

struct DensityValidation {
  double hermiticity_deviation = 0.0;
  double trace_deviation = 0.0;
  double min_eigenvalue = 0.0;
  bool finite_ok = false;
  bool hermitian_ok = false;
  bool trace_ok = false;
  bool positive_ok = false;

  bool passed() const { return finite_ok && hermitian_ok && trace_ok && positive_ok; }

  std::string summary() const {
    std::ostringstream os;
    os << (passed() ? "valid" : "invalid") << " density matrix:"
       << " hermiticity_deviation=" << hermiticity_deviation
       << " trace_deviation=" << trace_deviation
       << " min_eigenvalue=" << min_eigenvalue;
    if (!finite_ok) os << " [non-finite entries]";
    return os.str();
  }
};

// Report-style validation of an 8x8 candidate density matrix.
inline DensityValidation validate_density(const ComplexMatrix& rho) {
  if (rho.rows() != 8 || rho.cols() != 8) {
    throw std::invalid_argument("validate_density: expected an 8x8 matrix");
  }
  DensityValidation v;
  v.finite_ok = rho.all_finite();
  if (!v.finite_ok) return v;
  v.hermiticity_deviation = rho.hermiticity_deviation();
  v.hermitian_ok = v.hermiticity_deviation <= tol::hermiticity;
  v.trace_deviation = std::abs(rho.trace() - cplx{1.0, 0.0});
  v.trace_ok = v.trace_deviation <= tol::trace_dev;
  // Eigenvalues of the Hermitian part; for a valid input this is rho itself.
  ComplexMatrix h(8, 8);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) h(r, c) = 0.5 * (rho(r, c) + std::conj(rho(c, r)));
  v.min_eigenvalue = hermitian_eigenvalues(h).front();
  v.positive_ok = v.min_eigenvalue >= tol::min_eigenvalue;
  return v;
}

// A validated three-qubit density matrix.
class DensityMatrix3Q {
 public:
  static constexpr std::size_t kDim = 8;

  explicit DensityMatrix3Q(ComplexMatrix m) : m_(std::move(m)) {
    const DensityValidation v = validate_density(m_);
    if (!v.passed()) {
      throw std::invalid_argument("DensityMatrix3Q: " + v.summary());
    }
  }

  const ComplexMatrix& matrix() const { return m_; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  ComplexMatrix m_;
};

namespace detail {

// Bit of qubit q (1..3) within a basis index; qubit 1 is the leftmost factor.
inline int qubit_bit(std::size_t index, int q) { return static_cast<int>(index >> (3 - q)) & 1; }

inline std::size_t compose_index(const std::vector<int>& qubits, const std::vector<int>& bits) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    idx |= static_cast<std::size_t>(bits[i]) << (3 - qubits[i]);
  }
  return idx;
}

}  // namespace detail

// Reduced density matrix after tracing out `discard` (a nonempty strict
// subset of {1,2,3}); kept qubits stay in ascending order.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, std::vector<int> discard) {
  if (rho.rows() != 8 || rho.cols() != 8) {
    throw std::invalid_argument("partial_trace: expected an 8x8 matrix");
  }
  std::sort(discard.begin(), discard.end());
  discard.erase(std::unique(discard.begin(), discard.end()), discard.end());
  if (discard.empty() || discard.size() > 2 ||
      std::any_of(discard.begin(), discard.end(), [](int q) { return q < 1 || q > 3; })) {
    throw std::invalid_argument("partial_trace: discard must be a nonempty strict subset of {1,2,3}");
  }
  std::vector<int> keep;
  for (int q = 1; q <= 3; ++q) {
    if (!std::binary_search(discard.begin(), discard.end(), q)) keep.push_back(q);
  }
  const std::size_t nk = keep.size();
  const std::size_t nd = discard.size();
  const std::size_t dim = std::size_t{1} << nk;
  ComplexMatrix out(dim, dim);
  std::vector<int> rb(nk), cb(nk), sb(nd);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t i = 0; i < nk; ++i) rb[i] = static_cast<int>(r >> (nk - 1 - i)) & 1;
    for (std::size_t c = 0; c < dim; ++c) {
      for (std::size_t i = 0; i < nk; ++i) cb[i] = static_cast<int>(c >> (nk - 1 - i)) & 1;
      cplx acc = 0.0;
      for (std::size_t s = 0; s < (std::size_t{1} << nd); ++s) {
        for (std::size_t i = 0; i < nd; ++i) sb[i] = static_cast<int>(s >> (nd - 1 - i)) & 1;
        const std::size_t fr = detail::compose_index(keep, rb) | detail::compose_index(discard, sb);
        const std::size_t fc = detail::compose_index(keep, cb) | detail::compose_index(discard, sb);
        acc += rho(fr, fc);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

inline ComplexMatrix partial_trace(const DensityMatrix3Q& rho, const std::vector<int>& discard) {
  return partial_trace(rho.matrix(), discard);
}

// Relabel qubits: new qubit k carries what old qubit perm[k-1] carried.
// perm must be a permutation of {1,2,3}.
inline DensityMatrix3Q permute_qubits(const DensityMatrix3Q& rho, const std::array<int, 3>& perm) {
  std::array<int, 3> seen{0, 0, 0};
  for (int q : perm) {
    if (q < 1 || q > 3) throw std::invalid_argument("permute_qubits: bad permutation");
    seen[q - 1]++;
  }
  if (seen != std::array<int, 3>{1, 1, 1}) {
    throw std::invalid_argument("permute_qubits: bad permutation");
  }
  ComplexMatrix out(8, 8);
  auto map_index = [&](std::size_t i) {
    std::size_t j = 0;
    for (int k = 1; k <= 3; ++k) {
      j |= static_cast<std::size_t>(detail::qubit_bit(i, perm[k - 1])) << (3 - k);
    }
    return j;
  };
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) out(map_index(r), map_index(c)) = rho(r, c);
  return DensityMatrix3Q(std::move(out));
}

}  // namespace tricorr

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ultracat {

// Dense complex matrix, just big enough for the finite representation
// machinery (dimensions stay in the dozens).
struct CMatrix {
  int rows = 0, cols = 0;
  std::vector<std::complex<double>> a;

  CMatrix() = default;
  CMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  std::complex<double>& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const std::complex<double>& at(int i, int j) const {
    return a[static_cast<size_t>(i) * cols + j];
  }

  static CMatrix identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }
  static CMatrix zero(int n) { return CMatrix(n, n); }
};

CMatrix operator*(const CMatrix& x, const CMatrix& y);
CMatrix adjoint(const CMatrix& x);
double max_abs_diff(const CMatrix& x, const CMatrix& y);
bool approx_eq(const CMatrix& x, const CMatrix& y, double tol);
bool is_unitary(const CMatrix& x, double tol);

// Largest singular value, via power iteration on x* x.
double operator_norm(const CMatrix& x);

// True when every entry lies in {0, +-1, +-i}; products of such matrices
// keep integer coordinates, so comparisons can be exact.
bool has_unit_entries(const CMatrix& x);

}  // namespace ultracat

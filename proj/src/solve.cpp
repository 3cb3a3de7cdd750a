#include "qgids/solve.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace qgids {

namespace {

double right_shift(double lambda) { return 1e-9 * (1.0 + std::abs(lambda)); }

// ---- inertia ------------------------------------------------------------

// Negative-eigenvalue count from the diagonal of a sparse LDL^H; returns -1
// on breakdown (non-finite or zero pivots).
template <typename Scalar>
int sparse_inertia(const Eigen::SparseMatrix<Scalar>& a) {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<Scalar>, Eigen::Lower> ldlt(a);
  if (ldlt.info() != Eigen::Success) return -1;
  auto d = ldlt.vectorD();
  int neg = 0;
  double scale = 0.0;
  for (Eigen::Index i = 0; i < d.size(); ++i) scale = std::max(scale, std::abs(std::real(d(i))));
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    double x = std::real(d(i));
    if (!std::isfinite(x) || std::abs(x) <= 1e-14 * std::max(1.0, scale)) return -1;
    if (x < 0) ++neg;
  }
  return neg;
}

// Dense Bunch-Kaufman inertia via LAPACK sytrf/hetrf.
int dense_inertia_real(Eigen::MatrixXd a) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  std::vector<lapack_int> ipiv(static_cast<size_t>(n));
  lapack_int info = LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', n, a.data(), n, ipiv.data());
  if (info != 0) return -1;
  int neg = 0;
  for (lapack_int k = 0; k < n;) {
    if (ipiv[static_cast<size_t>(k)] > 0) {
      if (a(k, k) < 0) ++neg;
      ++k;
    } else {
      // 2x2 block [[a,b],[b,c]]: one positive and one negative when det<0
      double p = a(k, k), q = a(k + 1, k), r = a(k + 1, k + 1);
      double det = p * r - q * q, tr = p + r;
      if (det < 0)
        ++neg;
      else if (tr < 0)
        neg += 2;
      k += 2;
    }
  }
  return neg;
}

int dense_inertia_cplx(Eigen::MatrixXcd a) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  std::vector<lapack_int> ipiv(static_cast<size_t>(n));
  lapack_int info = LAPACKE_zhetrf(LAPACK_COL_MAJOR, 'L', n, a.data(), n, ipiv.data());
  if (info != 0) return -1;
  int neg = 0;
  for (lapack_int k = 0; k < n;) {
    if (ipiv[static_cast<size_t>(k)] > 0) {
      if (std::real(a(k, k)) < 0) ++neg;
      ++k;
    } else {
      double p = std::real(a(k, k)), r = std::real(a(k + 1, k + 1));
      double q2 = std::norm(a(k + 1, k));
      double det = p * r - q2, tr = p + r;
      if (det < 0)
        ++neg;
      else if (tr < 0)
        neg += 2;
      k += 2;
    }
  }
  return neg;
}

int inertia_at(const AssembledPencil& p, double lambda) {
  Eigen::SparseMatrix<Complex> a = p.K - Complex(lambda, 0.0) * p.M;
  if (p.is_real) {
    Eigen::SparseMatrix<double> ar = a.real();
    int r = sparse_inertia(ar);
    if (r >= 0) return r;
    if (p.dim <= kDenseLimit) return dense_inertia_real(Eigen::MatrixXd(ar));
    return -1;
  }
  int r = sparse_inertia(a);
  if (r >= 0) return r;
  if (p.dim <= kDenseLimit) return dense_inertia_cplx(Eigen::MatrixXcd(a));
  return -1;
}

// ---- dense / banded LAPACK eigensolvers ----------------------------------

Spectrum dense_pairs(const AssembledPencil& p, double vl, double vu, bool want_vectors) {
  const lapack_int n = p.dim;
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  std::vector<double> w(static_cast<size_t>(n));
  std::vector<lapack_int> ifail(static_cast<size_t>(n));
  lapack_int m = 0;
  Spectrum out;
  if (p.is_real) {
    Eigen::SparseMatrix<double> ks = p.K.real(), ms = p.M.real();
    Eigen::MatrixXd a(ks), b(ms);
    Eigen::MatrixXd z(n, want_vectors ? n : 1);
    lapack_int info = LAPACKE_dsygvx(LAPACK_COL_MAJOR, 1, want_vectors ? 'V' : 'N', 'V', 'L', n, a.data(), n, b.data(),
                                     n, vl, vu, 0, 0, abstol, &m, w.data(), z.data(), n, ifail.data());
    if (info != 0) throw SolverError("dsygvx failed, info=" + std::to_string(info));
    out.values.assign(w.begin(), w.begin() + m);
    if (want_vectors) out.vectors = z.leftCols(m).cast<Complex>();
  } else {
    Eigen::MatrixXcd a(p.K), b(p.M);
    Eigen::MatrixXcd z(n, want_vectors ? n : 1);
    lapack_int info = LAPACKE_zhegvx(LAPACK_COL_MAJOR, 1, want_vectors ? 'V' : 'N', 'V', 'L', n, a.data(), n, b.data(),
                                     n, vl, vu, 0, 0, abstol, &m, w.data(), z.data(), n, ifail.data());
    if (info != 0) throw SolverError("zhegvx failed, info=" + std::to_string(info));
    out.values.assign(w.begin(), w.begin() + m);
    if (want_vectors) out.vectors = z.leftCols(m);
  }
  out.has_vectors = want_vectors;
  return out;
}

template <typename Scalar>
void fill_band(const Eigen::SparseMatrix<Complex>& s, int kd, Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& ab) {
  const int n = static_cast<int>(s.rows());
  ab.setZero(kd + 1, n);
  for (int col = 0; col < n; ++col)
    for (Eigen::SparseMatrix<Complex>::InnerIterator it(s, col); it; ++it) {
      int i = static_cast<int>(it.row()), j = col;
      if (i < j) continue;  // lower storage
      if constexpr (std::is_same_v<Scalar, double>)
        ab(i - j, j) = it.value().real();
      else
        ab(i - j, j) = it.value();
    }
}

// Two passes when vectors are wanted: first count the eigenvalues in range,
// then allocate Z for exactly that many columns (chains can be very long).
Spectrum banded_pairs(const AssembledPencil& p, double vl, double vu, bool want_vectors) {
  const lapack_int n = p.dim;
  const lapack_int kd = p.bandwidth;
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  std::vector<double> w(static_cast<size_t>(n));
  std::vector<lapack_int> ifail(static_cast<size_t>(n));
  lapack_int m = 0;
  Spectrum out;
  if (p.is_real) {
    Eigen::MatrixXd ab0, bb0;
    fill_band<double>(p.K, kd, ab0);
    fill_band<double>(p.M, kd, bb0);
    for (int pass = 0; pass < (want_vectors ? 2 : 1); ++pass) {
      const bool jobv = want_vectors && pass == 1;
      Eigen::MatrixXd ab = ab0, bb = bb0;
      Eigen::MatrixXd q(jobv ? n : 1, jobv ? n : 1), z(n, jobv ? std::max<lapack_int>(m, 1) : 1);
      lapack_int info = LAPACKE_dsbgvx(LAPACK_COL_MAJOR, jobv ? 'V' : 'N', 'V', 'L', n, kd, kd, ab.data(), kd + 1,
                                       bb.data(), kd + 1, q.data(), jobv ? n : 1, vl, vu, 0, 0, abstol, &m, w.data(),
                                       z.data(), n, ifail.data());
      if (info != 0) throw SolverError("dsbgvx failed, info=" + std::to_string(info));
      out.values.assign(w.begin(), w.begin() + m);
      if (jobv) out.vectors = z.leftCols(m).cast<Complex>();
    }
  } else {
    Eigen::MatrixXcd ab0, bb0;
    fill_band<Complex>(p.K, kd, ab0);
    fill_band<Complex>(p.M, kd, bb0);
    for (int pass = 0; pass < (want_vectors ? 2 : 1); ++pass) {
      const bool jobv = want_vectors && pass == 1;
      Eigen::MatrixXcd ab = ab0, bb = bb0;
      Eigen::MatrixXcd q(jobv ? n : 1, jobv ? n : 1), z(n, jobv ? std::max<lapack_int>(m, 1) : 1);
      lapack_int info = LAPACKE_zhbgvx(LAPACK_COL_MAJOR, jobv ? 'V' : 'N', 'V', 'L', n, kd, kd, ab.data(), kd + 1,
                                       bb.data(), kd + 1, q.data(), jobv ? n : 1, vl, vu, 0, 0, abstol, &m, w.data(),
                                       z.data(), n, ifail.data());
      if (info != 0) throw SolverError("zhbgvx failed, info=" + std::to_string(info));
      out.values.assign(w.begin(), w.begin() + m);
      if (jobv) out.vectors = z.leftCols(m);
    }
  }
  out.has_vectors = want_vectors;
  return out;
}

// ---- sparse fallback: bisection on inertia + shift-invert vectors --------

void bisect_eigenvalues(const AssembledPencil& p, double lo, int clo, double hi, int chi, double tol,
                        std::vector<double>& out) {
  if (chi == clo) return;
  if (hi - lo <= tol * (1.0 + std::abs(hi))) {
    double mid = 0.5 * (lo + hi);
    for (int k = 0; k < chi - clo; ++k) out.push_back(mid);
    return;
  }
  double mid = 0.5 * (lo + hi);
  int cm = count_below(p, mid);
  bisect_eigenvalues(p, lo, clo, mid, cm, tol, out);
  bisect_eigenvalues(p, mid, cm, hi, chi, tol, out);
}

Spectrum sparse_pairs(const AssembledPencil& p, double lo, double hi, bool want_vectors) {
  Spectrum out;
  int clo = count_below(p, lo - right_shift(lo));
  int chi = count_below(p, hi);
  bisect_eigenvalues(p, lo - right_shift(lo), clo, hi + right_shift(hi), chi, 1e-11, out.values);
  std::sort(out.values.begin(), out.values.end());
  if (!want_vectors) return out;

  // shift-invert iteration with deflation against found vectors
  out.vectors.resize(p.dim, static_cast<Eigen::Index>(out.values.size()));
  Eigen::Index col = 0;
  for (size_t i = 0; i < out.values.size();) {
    size_t j = i;
    while (j < out.values.size() && out.values[j] - out.values[i] <= 1e-9 * (1.0 + std::abs(out.values[i]))) ++j;
    const int mult = static_cast<int>(j - i);
    const double shift = out.values[i] + 1e-7 * (1.0 + std::abs(out.values[i]));
    Eigen::SparseMatrix<Complex> a = p.K - Complex(shift, 0.0) * p.M;
    Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu(a);
    if (lu.info() != Eigen::Success) throw SolverError("sparse LU breakdown in shift-invert");
    for (int k = 0; k < mult; ++k) {
      Eigen::VectorXcd x = Eigen::VectorXcd::Zero(p.dim);
      for (int t = 0; t < p.dim; ++t) x(t) = Complex(std::cos(0.7 * (t + 1) * (k + 1)), std::sin(0.3 * (t + 2) * (k + 1)));
      for (int it = 0; it < 8; ++it) {
        Eigen::VectorXcd rhs = p.M * x;
        x = lu.solve(rhs);
        for (Eigen::Index c = 0; c < col + k; ++c) {
          Complex proj = out.vectors.col(c).adjoint() * (p.M * x);
          x -= proj * out.vectors.col(c);
        }
        double nrm = std::sqrt(std::abs((x.adjoint() * (p.M * x))(0, 0).real()));
        if (nrm <= 0) throw SolverError("shift-invert produced a null vector");
        x /= nrm;
      }
      out.vectors.col(col + k) = x;
    }
    col += mult;
    i = j;
  }
  out.has_vectors = true;
  return out;
}

}  // namespace

int count_below(const AssembledPencil& p, double lambda) {
  const double delta = right_shift(lambda);
  for (double probe : {lambda + delta, lambda + 11 * delta, lambda - 9 * delta, lambda + 23 * delta}) {
    int r = inertia_at(p, probe);
    if (r >= 0) return r;
  }
  throw SolverError("inertia factorization breakdown near lambda=" + std::to_string(lambda));
}

Spectrum eigenpairs(const AssembledPencil& p, double lambda_max, bool want_vectors) {
  if (p.dim == 0) return {};
  // safe lower bound below the ground state, certified by inertia
  double lo = std::min(-10.0, lambda_max);
  while (count_below(p, lo) > 0) lo = 2.0 * lo - 10.0;

  const double vu = lambda_max + right_shift(lambda_max);
  Spectrum s;
  const bool banded_ok = p.bandwidth >= 1 && p.bandwidth <= 24 && p.dim > 96 && !(want_vectors && p.dim > 40000);
  if (banded_ok)
    s = banded_pairs(p, lo, vu, want_vectors);
  else if (p.dim <= kDenseLimit)
    s = dense_pairs(p, lo, vu, want_vectors);
  else
    s = sparse_pairs(p, lo, lambda_max, want_vectors);

  const int expected = count_below(p, lambda_max);
  if (static_cast<int>(s.values.size()) != expected)
    throw SolverError("eigenpair count " + std::to_string(s.values.size()) + " disagrees with inertia count " +
                      std::to_string(expected));
  return s;
}

}  // namespace qgids

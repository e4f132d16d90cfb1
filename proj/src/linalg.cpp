#include "irscep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace irscep {

CMat CMat::identity(std::size_t n) {
  CMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMat operator*(const CMat& a, const CMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("CMat multiply: inner dims differ");
  CMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

CMat operator+(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("CMat add: shape mismatch");
  CMat c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] += b.data()[i];
  return c;
}

CMat operator-(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("CMat sub: shape mismatch");
  CMat c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] -= b.data()[i];
  return c;
}

CMat adjoint(const CMat& a) {
  CMat c(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
  return c;
}

std::vector<cplx> mat_vec(const CMat& a, std::span<const cplx> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("mat_vec: shape mismatch");
  std::vector<cplx> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx acc{};
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

std::vector<cplx> adjoint_vec(const CMat& a, std::span<const cplx> x) {
  if (a.rows() != x.size()) throw std::invalid_argument("adjoint_vec: shape mismatch");
  std::vector<cplx> y(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const cplx xi = x[i];
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += std::conj(a(i, j)) * xi;
  }
  return y;
}

double frob_norm(const CMat& a) {
  double s = 0.0;
  for (const cplx& v : a.data()) s += std::norm(v);
  return std::sqrt(s);
}

double max_abs(const CMat& a) {
  double s = 0.0;
  for (const cplx& v : a.data()) s = std::max(s, std::abs(v));
  return s;
}

bool is_hermitian(const CMat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
  return true;
}

cplx vdot(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw std::invalid_argument("vdot: length mismatch");
  cplx acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

cplx dot_plain(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot_plain: length mismatch");
  cplx acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(std::span<const cplx> a) {
  double s = 0.0;
  for (const cplx& v : a) s += std::norm(v);
  return s;
}

HermEig hermitian_eig(CMat a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("hermitian_eig: matrix not square");
  CMat v = CMat::identity(n);
  if (n == 0) return {{}, v};

  // Enforce exact Hermitian structure before sweeping.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = cplx(a(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = m;
      a(j, i) = std::conj(m);
    }
  }

  double scale2 = 0.0;
  for (const cplx& x : a.data()) scale2 += std::norm(x);
  const double off_stop = scale2 * 1e-30 + 1e-300;

  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (off <= off_stop) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag * mag <= off_stop / (double)(n * n)) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        // Small-magnitude root of t^2 - 2 tau t - 1 = 0.
        const double t = (tau >= 0.0) ? (-1.0 / (tau + std::sqrt(tau * tau + 1.0)))
                                      : (1.0 / (-tau + std::sqrt(tau * tau + 1.0)));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx phase = apq / mag;
        const cplx sp = s * phase;
        const cplx spc = s * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp + spc * akq;
          a(k, q) = -sp * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + sp * aqk;
          a(q, k) = -spc * apk + c * aqk;
        }
        a(p, q) = cplx{};
        a(q, p) = cplx{};
        a(p, p) = cplx(a(p, p).real(), 0.0);
        a(q, q) = cplx(a(q, q).real(), 0.0);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp + spc * vkq;
          v(k, q) = -sp * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });

  HermEig out;
  out.values.resize(n);
  out.vectors = CMat(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = diag[order[j]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

CMat psd_project(const CMat& a) {
  HermEig e = hermitian_eig(a);
  const std::size_t n = a.rows();
  CMat y(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = e.values[k];
    if (w <= 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx wi = w * e.vectors(i, k);
      for (std::size_t j = i; j < n; ++j) y(i, j) += wi * std::conj(e.vectors(j, k));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    y(i, i) = cplx(y(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) y(j, i) = std::conj(y(i, j));
  }
  return y;
}

namespace {

bool cholesky_attempt(const CMat& a, CMat& l, double jitter, double pivot_floor) {
  const std::size_t n = a.rows();
  l = CMat(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j).real() + jitter;
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > pivot_floor)) return false;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = a(i, j);
      if (i == j) s += jitter;
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return true;
}

}  // namespace

CMat cholesky(const CMat& a, double max_jitter) {
  if (a.rows() != a.cols()) throw std::invalid_argument("cholesky: matrix not square");
  CMat l;
  double jitter = 0.0;
  while (true) {
    if (cholesky_attempt(a, l, jitter, 0.0)) return l;
    jitter = (jitter == 0.0) ? 1e-12 : jitter * 10.0;
    if (jitter > max_jitter) {
      std::ostringstream os;
      os << "cholesky: matrix not positive definite within jitter " << max_jitter;
      throw std::runtime_error(os.str());
    }
  }
}

bool try_cholesky(const CMat& a, CMat& l, double rel_tol) {
  if (a.rows() != a.cols()) throw std::invalid_argument("try_cholesky: matrix not square");
  double max_diag = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) max_diag = std::max(max_diag, a(i, i).real());
  const double floor = rel_tol * std::max(max_diag, 1e-300);
  return cholesky_attempt(a, l, 0.0, floor);
}

std::vector<cplx> lu_solve(CMat a, std::vector<cplx> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("lu_solve: shape mismatch");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = std::abs(a(i, k));
      if (m > best) {
        best = m;
        piv = i;
      }
    }
    if (best == 0.0) throw std::runtime_error("lu_solve: singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = a(i, k) / a(k, k);
      a(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  for (std::size_t ik = n; ik-- > 0;) {
    cplx s = b[ik];
    for (std::size_t j = ik + 1; j < n; ++j) s -= a(ik, j) * b[j];
    b[ik] = s / a(ik, ik);
  }
  return b;
}

double trace_of_inverse(const CMat& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("trace_of_inverse: matrix not square");
  double tr = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<cplx> e(n);
    e[k] = 1.0;
    const std::vector<cplx> x = lu_solve(a, std::move(e));
    tr += x[k].real();
  }
  return tr;
}

}  // namespace irscep

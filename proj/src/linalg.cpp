#include "gepr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "gepr/errors.hpp"

namespace gepr::linalg {

TridiagonalEigen tridiagonal_eigen(std::span<const double> diagonal,
                                   std::span<const double> off_diagonal,
                                   int max_iterations) {
  const int n = static_cast<int>(diagonal.size());
  if (n == 0 || off_diagonal.size() + 1 != diagonal.size()) {
    throw ParameterError("tridiagonal_eigen: off-diagonal must have n-1 entries");
  }
  std::vector<double> d(diagonal.begin(), diagonal.end());
  std::vector<double> e(off_diagonal.begin(), off_diagonal.end());
  e.push_back(0.0);
  std::vector<double> z(n, 0.0);
  z[0] = 1.0;

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iterations = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (iterations++ == max_iterations) {
        throw NumericalError("tridiagonal QL did not converge for eigenvalue " +
                             std::to_string(l));
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      int i = m - 1;
      for (; i >= l; --i) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        const double zf = z[i + 1];
        z[i + 1] = s * z[i] + c * zf;
        z[i] = c * z[i] - s * zf;
      }
      if (r == 0.0 && i >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }

  std::vector<int> order(n);
  for (int k = 0; k < n; ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
  TridiagonalEigen out;
  out.values.reserve(n);
  out.first_components.reserve(n);
  for (int k : order) {
    out.values.push_back(d[k]);
    out.first_components.push_back(z[k]);
  }
  return out;
}

std::vector<double> singular_values(Matrix a, JacobiOptions options) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();

  double frobenius = 0.0;
  for (std::size_t j = 0; j < cols; ++j) {
    for (double v : a.column(j)) frobenius += v * v;
  }
  // Columns below this squared norm carry no resolvable information.
  const double negligible = frobenius * 1e-32;

  std::vector<double> norms(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    double sum = 0.0;
    for (double v : a.column(j)) sum += v * v;
    norms[j] = sum;
  }

  bool converged = false;
  for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        const double alpha = norms[p];
        const double beta = norms[q];
        if (alpha < negligible || beta < negligible) continue;
        double* cp = a.column(p).data();
        double* cq = a.column(q).data();
        double gamma = 0.0;
        for (std::size_t i = 0; i < rows; ++i) gamma += cp[i] * cq[i];
        if (std::abs(gamma) <= options.tolerance * std::sqrt(alpha * beta)) continue;
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t =
            std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        double np = 0.0;
        double nq = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
          const double x = cp[i];
          const double y = cq[i];
          const double xr = c * x - s * y;
          const double yr = s * x + c * y;
          cp[i] = xr;
          cq[i] = yr;
          np += xr * xr;
          nq += yr * yr;
        }
        norms[p] = np;
        norms[q] = nq;
      }
    }
  }
  if (!converged) {
    throw NumericalError("one-sided Jacobi SVD did not converge within " +
                         std::to_string(options.max_sweeps) + " sweeps");
  }

  std::vector<double> values(cols);
  std::transform(norms.begin(), norms.end(), values.begin(),
                 [](double v) { return std::sqrt(v); });
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

std::vector<double> symmetric_eigenvalues(Matrix a, JacobiOptions options) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw ParameterError("symmetric_eigenvalues: matrix must be square");

  auto off_norm = [&] {
    double sum = 0.0;
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        const double v = a(i, j) * a(i, j);
        total += v;
        if (i != j) sum += v;
      }
    }
    return std::pair{sum, total};
  };

  bool converged = false;
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    const auto [off, total] = off_norm();
    if (off <= options.tolerance * options.tolerance * total) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t =
            std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  if (!converged) {
    const auto [off, total] = off_norm();
    if (off > options.tolerance * options.tolerance * total) {
      throw NumericalError("Jacobi eigenvalue iteration did not converge");
    }
  }
  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) values[k] = a(k, k);
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace gepr::linalg

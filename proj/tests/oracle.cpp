#include "oracle.hpp"

#include <cmath>

namespace oracle {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix kron_power(const Matrix& m, int n) {
  Matrix out = m;
  for (int i = 1; i < n; ++i) {
    out = kron(out, m);
  }
  return out;
}

std::vector<double> enumerate_product_eigs(const std::vector<double>& spectrum, int n) {
  std::vector<double> eigs{1.0};
  for (int copy = 0; copy < n; ++copy) {
    std::vector<double> next;
    next.reserve(eigs.size() * spectrum.size());
    for (double e : eigs) {
      for (double s : spectrum) {
        next.push_back(e * s);
      }
    }
    eigs = std::move(next);
  }
  return eigs;
}

double positive_part(const Matrix& herm) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < herm.rows(); ++i) {
    const double v = solver.eigenvalues()(i);
    if (v >= 0.0) {
      sum += v;
    }
  }
  return sum;
}

double dense_pi_trace(const Matrix& rho, const Matrix& omega, double gamma, int n) {
  return positive_part(rho - std::exp(n * gamma) * omega);
}

namespace {

double log_binom(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

double qubit_pi_trace(double p, int n, double gamma) {
  const double lp = std::log(p), lq = std::log(1.0 - p);
  const double thr = n * gamma;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double le = k * lp + (n - k) * lq;
    if (le >= thr) {
      const double lm = log_binom(n, k);
      sum += std::exp(lm + le) - std::exp(lm + thr);
    }
  }
  return sum;
}

double qubit_tail_mass(double p, int n, double log_threshold) {
  const double lp = std::log(p), lq = std::log(1.0 - p);
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double le = k * lp + (n - k) * lq;
    if (le >= log_threshold) {
      sum += std::exp(log_binom(n, k) + le);
    }
  }
  return sum;
}

double qubit_tail_excess(double p, int n, double log_threshold) {
  const double lp = std::log(p), lq = std::log(1.0 - p);
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double le = k * lp + (n - k) * lq;
    if (le >= log_threshold) {
      sum += std::exp(log_binom(n, k) + le) - std::exp(log_binom(n, k) + log_threshold);
    }
  }
  return sum;
}

namespace {

double mixture_log_eig(double p, double q, double t, int n, int k) {
  const double a = std::log(t) + k * std::log(p) + (n - k) * std::log(1.0 - p);
  const double b = std::log(1.0 - t) + k * std::log(q) + (n - k) * std::log(1.0 - q);
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace

double mixture_pi_trace(double p, double q, double t, int n, double gamma) {
  const double thr = n * gamma;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double le = mixture_log_eig(p, q, t, n, k);
    if (le >= thr) {
      const double lm = log_binom(n, k);
      sum += std::exp(lm + le) - std::exp(lm + thr);
    }
  }
  return sum;
}

double mixture_tail_mass(double p, double q, double t, int n, double log_threshold) {
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double le = mixture_log_eig(p, q, t, n, k);
    if (le >= log_threshold) {
      sum += std::exp(log_binom(n, k) + le);
    }
  }
  return sum;
}

double mixture_tail_excess(double p, double q, double t, int n, double log_threshold) {
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double le = mixture_log_eig(p, q, t, n, k);
    if (le >= log_threshold) {
      sum += std::exp(log_binom(n, k) + le) - std::exp(log_binom(n, k) + log_threshold);
    }
  }
  return sum;
}

double dense_conditional_pi_trace(const Matrix& amplitudes, double gamma, int n) {
  const Eigen::Index da = amplitudes.rows();
  const Eigen::Index db = amplitudes.cols();
  Eigen::VectorXcd psi(da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < db; ++j) {
      psi(i * db + j) = amplitudes(i, j);
    }
  }
  const Matrix rho_b = (amplitudes.transpose() * amplitudes.conjugate());
  const Matrix joint = psi * psi.adjoint();
  const Matrix pi =
      joint - std::exp(n * gamma) * kron(Matrix::Identity(da, da), rho_b);
  return positive_part(pi);
}

}  // namespace oracle

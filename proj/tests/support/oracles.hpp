#pragma once
// Independent reference computations for the tests. Everything here is written
// directly from definitions and deliberately avoids the library's algorithms.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Solves pi (K - I) = 0, sum pi = 1 as an overdetermined least-squares system.
inline Vector lu_stationary(const Matrix& k) {
  const auto n = k.rows();
  Matrix a(n + 1, n);
  a.topRows(n) = (k - Matrix::Identity(n, n)).transpose();
  a.row(n).setOnes();
  Vector rhs = Vector::Zero(n + 1);
  rhs(n) = 1.0;
  return a.colPivHouseholderQr().solve(rhs);
}

// K^(2^squarings) by repeated squaring.
inline Matrix high_power(Matrix k, int squarings) {
  for (int i = 0; i < squarings; ++i) k = k * k;
  return k;
}

// SIA by definition: the powers converge to a matrix with identical rows.
inline bool brute_sia(const Matrix& k, int squarings = 14, double tol = 1e-6) {
  const Matrix p = high_power(k, squarings);
  const Matrix q = p * k;
  for (Eigen::Index x = 0; x < p.rows(); ++x) {
    if ((p.row(x) - p.row(0)).cwiseAbs().maxCoeff() > tol) return false;
    if ((q.row(x) - p.row(0)).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

inline double brute_tv(const Matrix& p) {
  double best = 0.0;
  for (Eigen::Index x = 0; x < p.rows(); ++x) {
    for (Eigen::Index y = 0; y < p.rows(); ++y) {
      double s = 0.0;
      for (Eigen::Index z = 0; z < p.cols(); ++z) s += std::abs(p(x, z) - p(y, z));
      best = std::max(best, 0.5 * s);
    }
  }
  return best;
}

// max over x, x', y of |P(x,y)/P(x',y) - 1|, with 0/0 read as 1 and c/0 as infinity.
inline double brute_relsup(const Matrix& p) {
  double best = 0.0;
  for (Eigen::Index y = 0; y < p.cols(); ++y) {
    for (Eigen::Index x = 0; x < p.rows(); ++x) {
      for (Eigen::Index z = 0; z < p.rows(); ++z) {
        const double a = p(x, y), b = p(z, y);
        if (a == 0.0 && b == 0.0) continue;
        if (b == 0.0) return std::numeric_limits<double>::infinity();
        best = std::max(best, std::abs(a / b - 1.0));
      }
    }
  }
  return best;
}

inline double brute_tv_measures(const Vector& a, const Vector& b) { return 0.5 * (a - b).cwiseAbs().sum(); }

// Random stochastic matrix; each off-diagonal entry is zeroed with probability `sparsity`.
inline Matrix random_stochastic(std::mt19937_64& gen, int n, double sparsity = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix k(n, n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) k(x, y) = (x != y && u(gen) < sparsity) ? 0.0 : 0.5 + 0.5 * u(gen);
    k.row(x) /= k.row(x).sum();
  }
  return k;
}

inline Vector random_positive(std::mt19937_64& gen, int n) {
  std::uniform_real_distribution<double> u(0.2, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = u(gen);
  return v / v.sum();
}

// Alternating pair Q0 = [[0,1],[1-a,a]], Q1 = [[b,1-b],[1,0]].
inline Matrix two_point_q0(double a) {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0 - a, a;
  return m;
}
inline Matrix two_point_q1(double b) {
  Matrix m(2, 2);
  m << b, 1.0 - b, 1.0, 0.0;
  return m;
}

// Simple random walk on an edge list (loops counted once), built directly.
inline Matrix srw_matrix(int n, const std::vector<std::pair<int, int>>& edges) {
  Matrix k = Matrix::Zero(n, n);
  for (auto [x, y] : edges) {
    k(x, y) += 1.0;
    if (x != y) k(y, x) += 1.0;
  }
  for (int x = 0; x < n; ++x) k.row(x) /= k.row(x).sum();
  return k;
}

// Eigenvalues of a matrix with real spectrum, sorted descending.
inline std::vector<double> real_eigenvalues(const Matrix& m) {
  Eigen::EigenSolver<Matrix> es(m, false);
  std::vector<double> ev;
  for (Eigen::Index i = 0; i < m.rows(); ++i) ev.push_back(es.eigenvalues()(i).real());
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

}  // namespace oracle

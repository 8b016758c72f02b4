#include "nagflow/catalog.hpp"

#include <Eigen/QR>
#include <cmath>
#include <fstream>
#include <sstream>

namespace nagflow {
namespace catalog {

namespace {

Vec logspaced(int dim, double kappa) {
  Vec ev(dim);
  if (dim == 1) {
    ev[0] = kappa;
    return ev;
  }
  const double step = std::log(kappa) / (dim - 1);
  for (int i = 0; i < dim; ++i) ev[i] = std::exp(i * step);
  return ev;
}

double softplus(double u) {
  // log(1 + e^u) without overflow.
  return u > 0.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u));
}

double sigmoid(double u) { return 1.0 / (1.0 + std::exp(-u)); }

}  // namespace

QuadraticProblem quadratic_identity(int dim) {
  return make_quadratic(Mat::Identity(dim, dim));
}

QuadraticProblem quadratic_diag(int dim, double kappa, bool zero_smallest) {
  if (!(kappa >= 1.0)) throw std::invalid_argument("quadratic_diag: kappa must be >= 1");
  Vec ev = logspaced(dim, kappa);
  if (zero_smallest) ev[0] = 0.0;
  return make_quadratic(Mat(ev.asDiagonal()));
}

QuadraticProblem quadratic_random(int dim, double kappa, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat G(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) G(i, j) = normal(rng);
  Eigen::HouseholderQR<Mat> qr(G);
  Mat Q = qr.householderQ();
  Vec ev = logspaced(dim, kappa);
  Mat A = Q * ev.asDiagonal() * Q.transpose();
  return make_quadratic(0.5 * (A + A.transpose()));
}

QuadraticProblem quadratic_from_text(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<double> row;
    double x;
    while (ls >> x) row.push_back(x);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("matrix text is empty");
  const std::size_t n = rows.size();
  Mat A(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw std::invalid_argument("matrix text is not square: row " + std::to_string(i + 1) +
                                  " has " + std::to_string(rows[i].size()) + " entries");
    }
    for (std::size_t j = 0; j < n; ++j) A(i, j) = rows[i][j];
  }
  return make_quadratic(A);
}

QuadraticProblem quadratic_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return quadratic_from_text(buf.str());
}

SmoothProblem logistic_1d() {
  // f(x) = softplus(2x) + softplus(-x-1) + 0.05 x^2
  // f'' <= 0.25*4 + 0.25*1 + 0.1 = 1.35.
  SmoothProblem f;
  f.dim = 1;
  f.mu = 0.1;
  f.lip = 1.35;
  f.value = [](const Vec& x) {
    return softplus(2.0 * x[0]) + softplus(-x[0] - 1.0) + 0.05 * x[0] * x[0];
  };
  f.gradient = [](const Vec& x) {
    Vec g(1);
    g[0] = 2.0 * sigmoid(2.0 * x[0]) - sigmoid(-x[0] - 1.0) + 0.1 * x[0];
    return g;
  };
  // Root of the gradient, polished offline to full precision.
  Vec xs(1);
  xs[0] = -0.6015581893689445;
  f.minimizer = xs;
  return f;
}

SmoothProblem logistic_2d() {
  const std::vector<Vec> a = {
      (Vec(2) << 1.0, -0.5).finished(),
      (Vec(2) << -0.3, 0.8).finished(),
      (Vec(2) << 0.6, 0.4).finished(),
  };
  const std::vector<double> b = {0.2, -0.5, 0.1};
  const double q = 0.1;
  // L = 0.25 lambda_max(sum a a') + q via the closed 2x2 eigenvalue formula.
  Mat S = Mat::Zero(2, 2);
  for (const auto& ai : a) S += ai * ai.transpose();
  const double half_tr = 0.5 * (S(0, 0) + S(1, 1));
  const double det = S(0, 0) * S(1, 1) - S(0, 1) * S(1, 0);
  const double lam_max = half_tr + std::sqrt(half_tr * half_tr - det);

  SmoothProblem f;
  f.dim = 2;
  f.mu = q;
  f.lip = 0.25 * lam_max + q;
  f.value = [a, b, q](const Vec& x) {
    double val = 0.5 * q * x.squaredNorm();
    for (std::size_t i = 0; i < a.size(); ++i) val += softplus(a[i].dot(x) + b[i]);
    return val;
  };
  f.gradient = [a, b, q](const Vec& x) {
    Vec g = q * x;
    for (std::size_t i = 0; i < a.size(); ++i) g += sigmoid(a[i].dot(x) + b[i]) * a[i];
    return g;
  };
  Vec xs(2);
  xs << -2.2313483383518714, -1.5231249506143586;  // Newton root, offline
  f.minimizer = xs;
  return f;
}

CompositeProblem lasso_diag5() {
  Vec d(5), c(5);
  d << 0.5, 1.0, 2.0, 3.0, 5.0;
  c << 2.0, -1.5, 0.5, -0.04, 1.0;
  const double w = 0.3;
  SmoothProblem f;
  f.dim = 5;
  f.mu = 0.5;
  f.lip = 5.0;
  f.value = [d, c](const Vec& x) { return 0.5 * (x - c).dot(d.cwiseProduct(x - c)); };
  f.gradient = [d, c](const Vec& x) { return Vec(d.cwiseProduct(x - c)); };

  CompositeProblem p;
  p.smooth = f;
  p.nonsmooth = prox_l1(w);
  Vec xs(5);
  for (int i = 0; i < 5; ++i) {
    const double t = w / d[i];
    const double m = std::abs(c[i]) - t;
    xs[i] = m > 0.0 ? (c[i] > 0.0 ? m : -m) : 0.0;  // componentwise soft threshold
  }
  p.minimizer = xs;
  p.optimal_value = p.value(xs);
  return p;
}

CompositeProblem lasso_flat5() {
  Mat B(3, 5);
  B << 1.0, 0.5, -0.2, 0.3, 0.1,
      -0.4, 1.2, 0.7, -0.6, 0.2,
       0.3, -0.1, 0.9, 0.8, -0.5;
  Vec c(3);
  c << 1.0, -2.0, 0.5;
  const double w = 0.25;
  Mat H = B.transpose() * B;
  Eigen::SelfAdjointEigenSolver<Mat> es(H);

  SmoothProblem f;
  f.dim = 5;
  f.mu = 0.0;  // rank-3 Hessian
  f.lip = es.eigenvalues().maxCoeff();
  f.value = [B, c](const Vec& x) { return 0.5 * (B * x - c).squaredNorm(); };
  f.gradient = [B, c](const Vec& x) { return Vec(B.transpose() * (B * x - c)); };

  CompositeProblem p;
  p.smooth = f;
  p.nonsmooth = prox_l1(w);
  // Support {0, 1} with signs (+, -), identified by a long accelerated run;
  // the active-set optimality system then gives the minimizer exactly.
  Mat BS = B.leftCols(2);
  Vec s(2);
  s << 1.0, -1.0;
  Vec xS = (BS.transpose() * BS).llt().solve(BS.transpose() * c - w * s);
  Vec xs = Vec::Zero(5);
  xs.head(2) = xS;
  p.minimizer = xs;
  p.optimal_value = p.value(xs);
  return p;
}

CompositeProblem lasso_random(int dim, double kappa, double weight,
                              std::mt19937_64& rng) {
  QuadraticProblem q = quadratic_random(dim, kappa, rng);
  CompositeProblem p;
  p.smooth = q.smooth();
  p.smooth.minimizer.reset();  // 0 no longer minimizes f + g
  p.nonsmooth = prox_l1(weight);
  return p;
}

std::vector<Entry> reference_catalog() {
  std::vector<Entry> entries;
  entries.push_back({"quadratic_identity_d2", as_composite(quadratic_identity(2).smooth())});
  entries.push_back({"quadratic_diag_k10_d4", as_composite(quadratic_diag(4, 10.0).smooth())});
  entries.push_back({"quadratic_diag_k100_d8", as_composite(quadratic_diag(8, 100.0).smooth())});
  entries.push_back(
      {"quadratic_diag_k1e4_d8", as_composite(quadratic_diag(8, 1e4).smooth())});
  entries.push_back(
      {"quadratic_mu0_d4", as_composite(quadratic_diag(4, 10.0, /*zero_smallest=*/true).smooth())});
  entries.push_back({"logistic_1d", as_composite(logistic_1d())});
  entries.push_back({"logistic_2d", as_composite(logistic_2d())});
  entries.push_back({"lasso_diag5", lasso_diag5()});
  entries.push_back({"lasso_flat5", lasso_flat5()});
  return entries;
}

std::vector<Entry> smooth_reference_catalog() {
  std::vector<Entry> all = reference_catalog();
  std::vector<Entry> smooth;
  for (auto& e : all) {
    if (e.problem.nonsmooth.zero) smooth.push_back(std::move(e));
  }
  return smooth;
}

}  // namespace catalog
}  // namespace nagflow

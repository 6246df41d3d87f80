#include "mclab/merging.hpp"

#include "format.hpp"
#include "mclab/chain.hpp"
#include "mclab/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mclab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMonotoneSlack = 1e-12;

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

nlohmann::json series(const std::vector<double>& v) {
  auto out = nlohmann::json::array();
  for (double x : v) out.push_back(finite_or_null(x));
  return out;
}

}  // namespace

const char* to_string(Metric m) noexcept { return m == Metric::tv ? "tv" : "relsup"; }

Metric parse_metric(const std::string& name) {
  if (name == "tv") return Metric::tv;
  if (name == "relsup") return Metric::relsup;
  throw InvalidArgument("unknown metric '" + name + "' (expected tv or relsup)");
}

double tv_pairwise(const Matrix& p) { return contraction_coefficient(p); }

double relsup_pairwise(const Matrix& p) {
  double worst = 0.0;
  for (Eigen::Index y = 0; y < p.cols(); ++y) {
    const double hi = p.col(y).maxCoeff();
    if (hi <= 0.0) continue;
    const double lo = p.col(y).minCoeff();
    if (lo <= 0.0) return kInf;
    worst = std::max(worst, hi / lo - 1.0);
  }
  return worst;
}

double relsup_pairwise(const Matrix& p, const Matrix& support) {
  if (support.rows() != p.rows() || support.cols() != p.cols()) throw DimensionError("relsup_pairwise: support shape mismatch");
  double worst = 0.0;
  for (Eigen::Index y = 0; y < p.cols(); ++y) {
    const auto positive = (support.col(y).array() > 0.0).count();
    if (positive == 0) continue;
    if (positive < p.rows()) return kInf;
    const double lo = p.col(y).minCoeff();
    if (lo <= 0.0) return kInf;
    worst = std::max(worst, p.col(y).maxCoeff() / lo - 1.0);
  }
  return worst;
}

PairwiseDistances pairwise_distances(const Matrix& p) { return {tv_pairwise(p), relsup_pairwise(p)}; }

PairwiseDistances pairwise_distances(const KernelSequence& seq, std::int64_t n) {
  return pairwise_distances(product(seq, 0, n).matrix());
}

double doeblin_epsilon(const StochasticKernel& k) { return std::clamp(k.matrix().colwise().minCoeff().maxCoeff(), 0.0, 1.0); }

DoeblinCertificate doeblin_bound(const KernelSequence& seq, std::int64_t n, double divergence_threshold) {
  if (n < 1) throw InvalidArgument("doeblin_bound: n must be >= 1");
  DoeblinCertificate cert;
  cert.cumulative_bound.push_back(1.0);
  for (std::int64_t i = 1; i <= n; ++i) {
    const double eps = doeblin_epsilon(seq.kernel(i));
    cert.epsilons.push_back(eps);
    cert.epsilon_sum += eps;
    cert.cumulative_bound.push_back(cert.cumulative_bound.back() * (1.0 - eps));
  }
  cert.diverges = cert.epsilon_sum > divergence_threshold;
  return cert;
}

std::vector<double> block_contraction_trajectory(const KernelSequence& seq, std::int64_t n, std::int64_t block) {
  if (block < 1) throw InvalidArgument("block_contraction_bound: block must be >= 1");
  if (n < 0) throw InvalidArgument("block_contraction_bound: n must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 1.0);
  double bound = 1.0;
  Matrix acc = Matrix::Identity(static_cast<Eigen::Index>(seq.size()), static_cast<Eigen::Index>(seq.size()));
  for (std::int64_t k = 1; k <= n; ++k) {
    acc = acc * seq.kernel(k).matrix();
    if (k % block == 0) {
      bound *= contraction_coefficient(acc);
      acc.setIdentity();
    }
    out[static_cast<std::size_t>(k)] = bound;
  }
  return out;
}

double block_contraction_bound(const KernelSequence& seq, std::int64_t n, std::int64_t block) {
  return block_contraction_trajectory(seq, n, block).back();
}

MergingReport merging_time(const KernelSequence& seq, double epsilon, Metric metric, std::int64_t n_max,
                           const MergingOptions& options) {
  if (n_max < 1) throw InvalidArgument("merging_time: n_max must be >= 1");
  if (metric == Metric::tv && !(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("merging_time: tv epsilon must lie in (0, 1)");
  if (metric == Metric::relsup && !(epsilon > 0.0)) throw InvalidArgument("merging_time: relsup epsilon must be positive");
  if (options.block < 1) throw InvalidArgument("merging_time: block must be >= 1");

  MergingReport r;
  r.epsilon = epsilon;
  r.metric = metric;
  const auto size = static_cast<Eigen::Index>(seq.size());
  Matrix p = Matrix::Identity(size, size);
  // Exact support of the product: entries can underflow to zero while still being positive.
  Matrix support = p;
  Matrix block_acc = p;
  double doeblin = 1.0;
  double block_bound = 1.0;

  auto record = [&](std::int64_t n) {
    const PairwiseDistances d{tv_pairwise(p), relsup_pairwise(p, support)};
    r.tv_trajectory.push_back(d.tv);
    r.relsup_trajectory.push_back(d.relsup);
    if (!r.tv_time && d.tv <= epsilon) r.tv_time = n;
    if (!r.relsup_time && d.relsup <= epsilon) r.relsup_time = n;
    if (options.with_bounds) {
      r.doeblin_trajectory.push_back(doeblin);
      r.block_trajectory.push_back(block_bound);
    }
    r.horizon = n;
  };

  record(0);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    if (options.stop_when_reached && r.time()) break;
    const auto k = seq.kernel(n);
    p = p * k.matrix();
    support = (support * k.matrix().cwiseSign()).cwiseSign();
    r.max_drift = std::max(r.max_drift, renormalize_rows(p));
    if (options.with_bounds) {
      doeblin *= 1.0 - doeblin_epsilon(k);
      block_acc = block_acc * k.matrix();
      if (n % options.block == 0) {
        block_bound *= contraction_coefficient(block_acc);
        block_acc.setIdentity();
      }
    }
    record(n);
  }
  return r;
}

std::string MergingReport::csv() const {
  std::ostringstream out;
  out << "n,tv,relsup,doeblin_bound,block_bound\n";
  for (std::size_t n = 0; n < tv_trajectory.size(); ++n) {
    out << n << ',' << detail::fmt(tv_trajectory[n]) << ',' << detail::fmt(relsup_trajectory[n]) << ',';
    if (!doeblin_trajectory.empty()) out << detail::fmt(doeblin_trajectory[n]);
    out << ',';
    if (!block_trajectory.empty()) out << detail::fmt(block_trajectory[n]);
    out << '\n';
  }
  return out.str();
}

std::string MergingReport::json() const {
  nlohmann::json j;
  j["horizon"] = horizon;
  j["epsilon"] = epsilon;
  j["metric"] = to_string(metric);
  j["tv_time"] = tv_time ? nlohmann::json(*tv_time) : nlohmann::json("not reached");
  j["relsup_time"] = relsup_time ? nlohmann::json(*relsup_time) : nlohmann::json("not reached");
  j["max_drift"] = max_drift;
  j["tv"] = series(tv_trajectory);
  j["relsup"] = series(relsup_trajectory);
  if (!doeblin_trajectory.empty()) {
    j["doeblin_bound"] = series(doeblin_trajectory);
    j["block_bound"] = series(block_trajectory);
  }
  return j.dump(2);
}

std::string MergingReport::plotdata() const {
  std::ostringstream out;
  auto block = [&](const char* label, const std::vector<double>& v) {
    if (v.empty()) return;
    if (out.tellp() > 0) out << "\n\n";
    out << "# " << label << '\n';
    for (std::size_t n = 0; n < v.size(); ++n) out << n << ' ' << detail::fmt(v[n]) << '\n';
  };
  block("tv", tv_trajectory);
  block("relsup", relsup_trajectory);
  block("doeblin_bound", doeblin_trajectory);
  block("block_bound", block_trajectory);
  return out.str();
}

UniformConditionsCertificate uniform_conditions_certificate(const KernelSet& kernels, std::int64_t ell_max) {
  if (kernels.empty()) throw InvalidArgument("uniform_conditions_certificate: empty kernel set");
  if (ell_max < 1) throw InvalidArgument("uniform_conditions_certificate: ell_max must be >= 1");
  UniformConditionsCertificate cert;
  cert.epsilon = 1.0;
  cert.eta = 1.0;
  const auto n = static_cast<Eigen::Index>(kernels.front().size());
  for (const auto& k : kernels) {
    if (!(k.space() == kernels.front().space())) throw DimensionError("uniform_conditions_certificate: kernels on different spaces");
    Eigen::MatrixXi a = (k.matrix().array() > 0.0).cast<int>();
    for (Eigen::Index x = 0; x < n; ++x) {
      for (Eigen::Index y = 0; y < n; ++y) {
        if (a(x, y)) cert.epsilon = std::min(cert.epsilon, k.matrix()(x, y));
      }
    }
    cert.eta = std::min(cert.eta, k.matrix().diagonal().minCoeff());
    cert.adjacency_witnesses.push_back(std::move(a));
  }

  // Boolean powers; the smallest ell at which every A_i^ell is positive.
  std::vector<Eigen::MatrixXi> powers = cert.adjacency_witnesses;
  for (std::int64_t ell = 1; ell <= ell_max; ++ell) {
    if (ell > 1) {
      for (std::size_t i = 0; i < powers.size(); ++i) {
        powers[i] = ((powers[i] * cert.adjacency_witnesses[i]).array() > 0).cast<int>();
      }
    }
    const bool all_positive =
        std::all_of(powers.begin(), powers.end(), [](const Eigen::MatrixXi& m) { return (m.array() > 0).all(); });
    if (all_positive) {
      cert.ell = ell;
      break;
    }
  }
  cert.satisfied = cert.ell > 0 && cert.eta > 0.0;
  return cert;
}

BackwardEnvelopes backward_envelopes(const KernelSequence& seq, std::int64_t n) {
  if (n < 1) throw InvalidArgument("backward_envelopes: n must be >= 1");
  const auto size = static_cast<Eigen::Index>(seq.size());
  Matrix b = Matrix::Identity(size, size);
  BackwardEnvelopes env;
  env.lower.push_back(b.colwise().minCoeff().transpose());
  env.upper.push_back(b.colwise().maxCoeff().transpose());
  for (std::int64_t k = 1; k <= n; ++k) {
    b = seq.kernel(k).matrix() * b;
    renormalize_rows(b);
    Vector lo = b.colwise().minCoeff().transpose();
    Vector hi = b.colwise().maxCoeff().transpose();
    if ((hi - env.upper.back()).maxCoeff() > kMonotoneSlack || (env.lower.back() - lo).maxCoeff() > kMonotoneSlack) {
      env.monotone = false;
    }
    env.lower.push_back(std::move(lo));
    env.upper.push_back(std::move(hi));
  }
  return env;
}

}  // namespace mclab

#include "mclab/zoo.hpp"

#include "mclab/chain.hpp"
#include "mclab/error.hpp"
#include "mclab/io.hpp"
#include "mclab/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace mclab {

namespace {

constexpr double kSimplexTolerance = 1e-12;

void check_rates(double p, double q, double r, const char* what) {
  if (!(p >= 0.0 && q >= 0.0 && r >= 0.0) || std::abs(p + q + r - 1.0) > kSimplexTolerance) {
    throw InvalidArgument(std::string(what) + ": need p, q, r >= 0 with p + q + r = 1");
  }
}

// Neumaier compensated sum.
double compensated_sum(const std::vector<double>& v) {
  double sum = 0.0;
  double c = 0.0;
  for (double x : v) {
    const double t = sum + x;
    c += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + c;
}

StateSpace one_based(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return StateSpace(std::move(labels));
}

WeightedGraph unit_graph(const StateSpace& space, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<Edge> edges;
  for (auto [x, y] : pairs) edges.push_back({x - 1, y - 1, 1.0});
  return WeightedGraph(space, std::move(edges));
}

double get(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::size_t get_size(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  const double v = get(params, key, fallback);
  if (!(v >= 0.0) || v != std::floor(v)) throw ConfigError(key, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

StochasticKernel constant_rate_bd(std::size_t N, double p, double q, double r) {
  check_rates(p, q, r, "constant_rate_bd");
  if (N < 1) throw InvalidArgument("constant_rate_bd: N must be >= 1");
  const auto n = static_cast<Eigen::Index>(N);
  Matrix k = Matrix::Zero(n + 1, n + 1);
  for (Eigen::Index x = 0; x <= n; ++x) {
    if (x < n) k(x, x + 1) = p;
    if (x > 0) k(x, x - 1) = q;
    k(x, x) = r;
  }
  k(0, 0) += q;
  k(n, n) += p;
  return StochasticKernel(StateSpace(N + 1), std::move(k));
}

BirthDeathSpec general_bd(std::vector<double> up, std::vector<double> down) {
  if (up.size() != down.size() || up.size() < 2) throw InvalidArgument("general_bd: need up and down vectors of equal length >= 2");
  const std::size_t N = up.size() - 1;
  if (up[N] != 0.0 || down[0] != 0.0) throw InvalidArgument("general_bd: up[N] and down[0] must be 0");
  std::vector<double> hold(N + 1);
  for (std::size_t x = 0; x <= N; ++x) {
    if (!(up[x] >= 0.0 && down[x] >= 0.0)) throw InvalidArgument("general_bd: rates must be non-negative");
    hold[x] = 1.0 - up[x] - down[x];
    if (hold[x] < -kSimplexTolerance) throw InvalidArgument("general_bd: up + down exceeds 1 at site " + std::to_string(x));
    hold[x] = std::max(hold[x], 0.0);
  }
  for (std::size_t x = 0; x < N; ++x) {
    if (!(up[x] > 0.0 && down[x + 1] > 0.0)) throw InvalidArgument("general_bd: interior rates must be positive");
  }

  const auto n = static_cast<Eigen::Index>(N);
  Matrix k = Matrix::Zero(n + 1, n + 1);
  Vector log_pi(n + 1);
  log_pi(0) = 0.0;
  for (Eigen::Index x = 0; x <= n; ++x) {
    const auto i = static_cast<std::size_t>(x);
    if (x < n) k(x, x + 1) = up[i];
    if (x > 0) k(x, x - 1) = down[i];
    k(x, x) = hold[i];
    if (x < n) log_pi(x + 1) = log_pi(x) + std::log(up[i]) - std::log(down[i + 1]);
  }
  Vector pi = (log_pi.array() - log_pi.maxCoeff()).exp();
  pi /= pi.sum();

  const StateSpace space(N + 1);
  BirthDeathSpec spec(StochasticKernel(space, std::move(k)), ProbMeasure(space, pi));
  spec.N = N;
  spec.up = std::move(up);
  spec.down = std::move(down);
  spec.hold = std::move(hold);
  spec.detailed_balance_residual = detailed_balance_residual(spec.kernel, spec.pi);
  spec.rates_in_band = true;
  for (std::size_t x = 0; x <= N; ++x) {
    auto in = [](double v) { return v >= 0.25 && v <= 0.75; };
    if (!in(spec.hold[x]) || (x < N && !in(spec.up[x])) || (x > 0 && !in(spec.down[x]))) spec.rates_in_band = false;
  }
  const double scale = static_cast<double>(N + 1);
  spec.measure_in_band = (spec.pi.weights().array() * scale >= 0.25).all() && (spec.pi.weights().array() * scale <= 4.0).all();
  return spec;
}

BirthDeathSpec sample_pb0_chain(std::size_t N, CounterRng& rng) {
  if (N < 1) throw InvalidArgument("sample_pb0_chain: N must be >= 1");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<double> log_pi(N + 1, 0.0);
    for (std::size_t x = 1; x <= N; ++x) log_pi[x] = log_pi[x - 1] + rng.uniform(std::log(0.9), std::log(1.11));
    std::vector<double> up(N + 1, 0.0), down(N + 1, 0.0);
    for (std::size_t x = 0; x < N; ++x) {
      const double u = rng.uniform(0.28, 0.33);
      const double half = 0.5 * (log_pi[x + 1] - log_pi[x]);
      up[x] = u * std::exp(half);
      down[x + 1] = u * std::exp(-half);
    }
    auto spec = general_bd(std::move(up), std::move(down));
    if (spec.pb0_class()) return spec;
  }
  throw Error("sample_pb0_chain: rejection sampling did not produce a chain in 1000 attempts");
}

ConstantRates sample_constant_rates(double a, double A, double r_max, CounterRng& rng) {
  if (!(a > 0.0 && A >= a)) throw InvalidArgument("sample_constant_rates: need 0 < a <= A");
  if (!(r_max >= 0.0 && r_max < 1.0)) throw InvalidArgument("sample_constant_rates: r_max must lie in [0, 1)");
  const double r = rng.uniform(0.0, r_max);
  const double rho = rng.uniform(a, A);
  const double p = (1.0 - r) * rho / (1.0 + rho);
  const double q = (1.0 - r) / (1.0 + rho);
  return {p, q, 1.0 - p - q};
}

KernelSequence random_constant_rate_sequence(std::size_t N, double a, double A, std::uint64_t seed, double r_max) {
  // Validate once so that errors surface at construction.
  CounterRng probe(seed);
  sample_constant_rates(a, A, r_max, probe);
  return KernelSequence::generated(StateSpace(N + 1), [=](std::int64_t i) {
    CounterRng rng(CounterRng::derive(seed, static_cast<std::uint64_t>(i)));
    const auto rates = sample_constant_rates(a, A, r_max, rng);
    return constant_rate_bd(N, rates.p, rates.q, rates.r);
  });
}

KernelSequence random_pb0_sequence(std::size_t N, std::uint64_t seed) {
  return KernelSequence::generated(StateSpace(N + 1), [=](std::int64_t i) {
    CounterRng rng(CounterRng::derive(seed, static_cast<std::uint64_t>(i)));
    return sample_pb0_chain(N, rng).kernel;
  });
}

KernelSequence mirrored_pair_sequence(std::size_t N, double p, double q, double r) {
  return KernelSequence::cyclic({constant_rate_bd(N, p, q, r), constant_rate_bd(N, q, p, r)}, {0, 1});
}

StickPair perturbed_stick_pair(std::size_t N, double p, double q, double r, double eta1, double eta2) {
  check_rates(p, q, r, "perturbed_stick_pair");
  if (N < 1 || N % 2 == 0) throw InvalidArgument("perturbed_stick_pair: N must be odd");
  if (!(eta1 >= 0.0 && eta1 < 1.0 && eta2 >= 0.0 && eta2 < 1.0)) throw InvalidArgument("perturbed_stick_pair: eta must lie in [0, 1)");
  const auto n = static_cast<Eigen::Index>((N - 1) / 2);
  const auto last = static_cast<Eigen::Index>(N);
  const StateSpace space(N + 1);

  auto build = [&](double pp, double qq, double eta) {
    Matrix k = Matrix::Zero(last + 1, last + 1);
    for (Eigen::Index x = 0; x <= n; ++x) k(2 * x, 2 * x + 1) = pp;
    for (Eigen::Index x = 1; x <= n; ++x) {
      k(2 * x, 2 * x - 1) = qq;
      k(2 * x - 1, 2 * x) = qq;
    }
    for (Eigen::Index x = 0; x < n; ++x) k(2 * x + 1, 2 * x) = pp;
    for (Eigen::Index x = 1; x <= 2 * n; ++x) k(x, x) = r;
    k(0, 0) = qq + r;
    k(last, last) = eta;
    k(last, last - 1) = 1.0 - eta;
    return StochasticKernel(space, std::move(k));
  };
  auto reversible = [&](double pp, double eta) {
    // pi(0) = ... = pi(N-1) = (1-eta) pp^{-1} pi(N).
    Vector pi = Vector::Constant(last + 1, (1.0 - eta) / pp);
    pi(last) = 1.0;
    return ProbMeasure(space, pi / pi.sum());
  };
  return {build(p, q, eta1), build(q, p, eta2), reversible(p, eta1), reversible(q, eta2)};
}

std::vector<std::size_t> stick_relabeling(std::size_t N) {
  if (N % 2 == 0) throw InvalidArgument("stick_relabeling: N must be odd");
  std::vector<std::size_t> xs;
  for (std::size_t v = N;; v -= 2) {
    xs.push_back(v);
    if (v == 1) break;
  }
  for (std::size_t v = 0; v < N; v += 2) xs.push_back(v);
  return xs;
}

ProbMeasure closed_form_invariant(std::size_t N, double p, double q, double eta1, double eta2) {
  if (std::abs(p + q - 1.0) > kSimplexTolerance || !(p > 0.0 && q > 0.0)) throw InvalidArgument("closed_form_invariant: need p, q > 0 with p + q = 1");
  if (p == q) throw InvalidArgument("closed_form_invariant: p = q makes the denominator degenerate");
  const auto xs = stick_relabeling(N);

  const double log_t = 2.0 * (std::log(p) - std::log(q));  // log (p/q)^2
  const double log_g = static_cast<double>(N) * log_t;      // log (p/q)^{2N}
  const double log_s = std::max(0.0, log_g);                // scale Gs = max(1, G)
  const double g_over_s = std::exp(log_g - log_s);
  const double inv_s = std::exp(-log_s);

  // Numerators and the common denominator of alpha, beta (pi(x_0) = 1), all divided by Gs.
  const double den = (q - p + p * eta2) * inv_s - p * eta2 * g_over_s;
  const double beta_coef = (1.0 - eta1) * (q / p) - (1.0 - eta2);
  const double alpha_num = (1.0 - eta2) * eta1 * inv_s - (1.0 - eta1) * eta2 * g_over_s;

  // Weight of x_i is den * pi(x_i); a common factor does not change the normalized measure.
  std::vector<double> w(N + 1);
  w[0] = den;
  for (std::size_t i = 1; i <= N; ++i) {
    w[i] = alpha_num + beta_coef * std::exp(static_cast<double>(i) * log_t - log_s);
  }
  const double total = compensated_sum(w);
  Vector pi(static_cast<Eigen::Index>(N + 1));
  for (std::size_t i = 0; i <= N; ++i) pi(static_cast<Eigen::Index>(xs[i])) = w[i] / total;
  if ((pi.array() < 0.0).any()) throw Error("closed_form_invariant: negative weight (parameters outside the formula's range)");
  return ProbMeasure(StateSpace(N + 1), pi);
}

KernelSet two_point(double a, double b) {
  if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0)) throw InvalidArgument("two_point: a, b must lie in [0, 1]");
  Matrix q0(2, 2), q1(2, 2);
  q0 << 0.0, 1.0, 1.0 - a, a;
  q1 << b, 1.0 - b, 1.0, 0.0;
  const StateSpace space(2);
  return {StochasticKernel(space, q0), StochasticKernel(space, q1)};
}

// Five-point figure, labels 1..5. Q0: loop at 1, 1-2, 2-3, 2-4, 3-5, 4-5.
// Q1 is drawn on the same shape with positions relabeled 1,3,2,5,4.
WeightedGraph five_point_graph(int which) {
  static const StateSpace space = one_based(5);
  if (which == 0) return unit_graph(space, {{1, 1}, {1, 2}, {2, 3}, {2, 4}, {3, 5}, {4, 5}});
  if (which == 1) return unit_graph(space, {{1, 1}, {1, 3}, {3, 2}, {3, 5}, {2, 4}, {5, 4}});
  throw InvalidArgument("five_point_graph: which must be 0 or 1");
}

// Seven-point figure, labels 1..7. Q0: path 1-2-3, loop at 3, 3-4, 4-5, 4-6, 5-7, 6-7.
// Q1 relabels the positions by 1<->2, 4<->5, 6<->7 (3 fixed).
WeightedGraph seven_point_graph(int which) {
  static const StateSpace space = one_based(7);
  if (which == 0) return unit_graph(space, {{1, 2}, {2, 3}, {3, 3}, {3, 4}, {4, 5}, {4, 6}, {5, 7}, {6, 7}});
  if (which == 1) return unit_graph(space, {{2, 1}, {1, 3}, {3, 3}, {3, 5}, {5, 4}, {5, 7}, {4, 6}, {7, 6}});
  throw InvalidArgument("seven_point_graph: which must be 0 or 1");
}

KernelSet five_point() { return {graph_kernel(five_point_graph(0)).kernel, graph_kernel(five_point_graph(1)).kernel}; }
KernelSet seven_point() { return {graph_kernel(seven_point_graph(0)).kernel, graph_kernel(seven_point_graph(1)).kernel}; }

KernelSet adjoint_pair(const StochasticKernel& q0) { return {q0, adjoint_kernel(q0, stationary_measure(q0))}; }

StochasticKernel rotation_with_holding(const std::vector<double>& hold) {
  const auto n = static_cast<Eigen::Index>(hold.size());
  if (n < 2) throw InvalidArgument("rotation_with_holding: need at least 2 states");
  Matrix k = Matrix::Zero(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    const double h = hold[static_cast<std::size_t>(x)];
    if (!(h >= 0.0 && h <= 1.0)) throw InvalidArgument("rotation_with_holding: holding must lie in [0, 1]");
    k(x, x) += h;
    k(x, (x + 1) % n) += 1.0 - h;
  }
  return StochasticKernel(StateSpace(static_cast<std::size_t>(n)), std::move(k));
}

KernelSet small_example(const std::string& name, const std::map<std::string, double>& params) {
  if (name == "two_point") return two_point(get(params, "a", 0.5), get(params, "b", 0.5));
  if (name == "five_point") return five_point();
  if (name == "seven_point") return seven_point();
  if (name == "adjoint_pair") return adjoint_pair(rotation_with_holding({0.0, 0.0, 0.5}));
  throw InvalidArgument("small_example: unknown example '" + name + "'");
}

GraphKernel graph_kernel(const WeightedGraph& g) {
  if (!g.connected()) throw InvalidArgument("graph_kernel: graph is disconnected");
  const auto n = static_cast<Eigen::Index>(g.size());
  Matrix k = Matrix::Zero(n, n);
  for (const auto& e : g.edges()) {
    const auto x = static_cast<Eigen::Index>(e.x);
    const auto y = static_cast<Eigen::Index>(e.y);
    k(x, y) = e.weight / g.weight_sum(e.x);
    if (!e.loop()) k(y, x) = e.weight / g.weight_sum(e.y);
  }
  Vector pi(n);
  for (Eigen::Index x = 0; x < n; ++x) pi(x) = g.weight_sum(static_cast<std::size_t>(x)) / g.normalization();
  GraphKernel out{StochasticKernel(g.space(), std::move(k)), ProbMeasure(g.space(), pi)};

  const Vector ratio = out.pi.weights().cwiseQuotient(g.degree_measure().weights());
  const double b = g.weight_ratio() * (1.0 + 1e-12);
  if (ratio.maxCoeff() > b || ratio.minCoeff() < 1.0 / b) throw Error("graph_kernel: pi(w) outside the band [delta/R(w), R(w) delta]");
  return out;
}

MetropolisResult metropolis_reweight(const WeightedGraph& g, const ProbMeasure& pi_target) {
  if (!g.has_all_loops()) throw InvalidArgument("metropolis_reweight: the graph needs a loop at every vertex");
  if (pi_target.size() != g.size()) throw DimensionError("metropolis_reweight: target on a different space");
  if (!pi_target.positive()) throw NonPositiveMeasureError("metropolis_reweight: target must be strictly positive", 0, pi_target.min_weight());

  const std::size_t n = g.size();
  const double c = g.normalization();
  std::vector<double> factor(n);
  for (std::size_t x = 0; x < n; ++x) factor[x] = pi_target[x] / (g.weight_sum(x) / c);

  std::vector<double> w = g.weights();
  std::vector<double> off(n, 0.0);
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto& e = g.edges()[i];
    if (e.loop()) continue;
    w[i] = e.weight * std::min(factor[e.x], factor[e.y]);
    off[e.x] += w[i];
    off[e.y] += w[i];
  }
  for (std::size_t x = 0; x < n; ++x) w[g.loop_index(x)] = c * pi_target[x] - off[x];

  MetropolisResult r(g.with_weights(w));
  const Vector rel = pi_target.weights().cwiseQuotient(g.degree_measure().weights());
  r.a = std::max(rel.maxCoeff(), 1.0 / rel.minCoeff());
  r.b = g.weight_ratio();
  r.max_degree = g.max_degree();
  r.ratio_bound = r.a * r.a * (r.b * r.b * r.b + r.b * static_cast<double>(r.max_degree));
  for (std::size_t x = 0; x < n; ++x) r.residual = std::max(r.residual, std::abs(r.graph.weight_sum(x) / r.graph.normalization() - pi_target[x]));
  return r;
}

WeightedGraph random_weights(const WeightedGraph& g, double b, std::uint64_t seed) {
  if (!(b >= 1.0) || !std::isfinite(b)) throw InvalidArgument("random_weights: b must be >= 1");
  CounterRng rng(seed);
  const double log_b = std::log(b);
  std::vector<double> w(g.edges().size());
  for (auto& x : w) x = std::min(b, std::exp(rng.uniform() * log_b));
  return g.with_weights(w);
}

WeightedGraph lazy_stick(std::size_t N) {
  if (N < 1) throw InvalidArgument("lazy_stick: N must be >= 1");
  std::vector<Edge> edges;
  for (std::size_t x = 0; x <= N; ++x) {
    edges.push_back({x, x, 1.0});
    if (x < N) edges.push_back({x, x + 1, 1.0});
  }
  return WeightedGraph(StateSpace(N + 1), std::move(edges));
}

WeightedGraph random_regular_graph(std::size_t n, std::size_t d, std::uint64_t seed, bool loops) {
  if (n < 2 || d < 1 || d >= n || (n * d) % 2 != 0) throw InvalidArgument("random_regular_graph: need 1 <= d < n and n d even");
  for (std::uint64_t attempt = 0; attempt < 100000; ++attempt) {
    CounterRng rng(CounterRng::derive(seed, attempt));
    std::vector<std::size_t> points(n * d);
    for (std::size_t i = 0; i < points.size(); ++i) points[i] = i / d;
    for (std::size_t i = points.size(); i > 1; --i) std::swap(points[i - 1], points[static_cast<std::size_t>(rng.below(i))]);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    bool simple = true;
    for (std::size_t i = 0; i < points.size() && simple; i += 2) {
      auto x = points[i], y = points[i + 1];
      if (x == y) simple = false;
      if (x > y) std::swap(x, y);
      if (!seen.emplace(x, y).second) simple = false;
    }
    if (!simple) continue;
    std::vector<Edge> edges;
    if (loops) {
      for (std::size_t x = 0; x < n; ++x) edges.push_back({x, x, 1.0});
    }
    for (auto [x, y] : seen) edges.push_back({x, y, 1.0});
    WeightedGraph g(StateSpace(n), std::move(edges));
    if (g.connected()) return g;
  }
  throw Error("random_regular_graph: no simple connected pairing found");
}

WeightedGraph complete_graph_with_loops(std::size_t n) {
  if (n < 1) throw InvalidArgument("complete_graph_with_loops: n must be >= 1");
  std::vector<Edge> edges;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) edges.push_back({x, y, 1.0});
  }
  return WeightedGraph(StateSpace(n), std::move(edges));
}

const std::vector<ZooEntry>& zoo_catalog() {
  static const std::vector<ZooEntry> catalog{
      {"constant_rate_bd", "constant-rate birth and death kernel on {0..N}", {{"N", 10}, {"p", 1.0 / 3}, {"q", 1.0 / 3}, {"r", 1.0 / 3}}},
      {"pb0_chain", "random birth and death kernel with rates in [1/4,3/4] and near-uniform measure", {{"N", 16}}},
      {"q_n_sequence", "explicit list of random constant-rate kernels with p/q in [a,A]", {{"N", 16}, {"a", 1.2}, {"A", 2.0}, {"length", 100}}},
      {"mirrored_pair", "constant-rate pair (p,q,r), (q,p,r) alternating", {{"N", 16}, {"p", 0.5}, {"q", 0.25}, {"r", 0.25}}},
      {"stick_pair", "perturbed stick pair Q1, Q2 alternating (q = 1 - p - r)", {{"N", 5}, {"p", 0.6}, {"r", 0.0}, {"eta1", 0.0}, {"eta2", 0.0}}},
      {"two_point", "two-point pair Q0, Q1 with K_i = Q_{i mod 2}", {{"a", 0.5}, {"b", 0.5}}},
      {"five_point", "five-point graph pair with K_i = Q_{i mod 2}", {}},
      {"seven_point", "seven-point graph pair with K_i = Q_{i mod 2}", {}},
      {"adjoint_pair", "rotation with holding (0,0,1/2) and its adjoint, K_i = Q_{i mod 2}", {}},
      {"lazy_stick", "path 0..N with a loop at every vertex", {{"N", 8}}},
      {"random_regular", "random simple connected d-regular graph (loops=1 adds a loop per vertex)", {{"n", 16}, {"d", 3}, {"loops", 0}}},
      {"complete_graph", "complete graph with a loop at every vertex", {{"n", 5}}},
  };
  return catalog;
}

std::string zoo_emit(const std::string& name, const std::map<std::string, double>& params, std::uint64_t seed) {
  const auto& catalog = zoo_catalog();
  auto entry = std::find_if(catalog.begin(), catalog.end(), [&](const ZooEntry& e) { return e.name == name; });
  if (entry == catalog.end()) throw ConfigError("name", "unknown zoo entry '" + name + "'");
  for (const auto& [key, value] : params) {
    if (!entry->defaults.count(key)) throw ConfigError(key, "unknown parameter for '" + name + "'");
  }
  std::map<std::string, double> p = entry->defaults;
  for (const auto& [key, value] : params) p[key] = value;

  if (name == "constant_rate_bd") return to_json(constant_rate_bd(get_size(p, "N", 0), p["p"], p["q"], p["r"]));
  if (name == "pb0_chain") {
    CounterRng rng(seed);
    return to_json(sample_pb0_chain(get_size(p, "N", 0), rng).kernel);
  }
  if (name == "q_n_sequence") {
    const auto seq = random_constant_rate_sequence(get_size(p, "N", 0), p["a"], p["A"], seed);
    KernelSet list;
    for (std::size_t i = 1; i <= get_size(p, "length", 0); ++i) list.push_back(seq.kernel(static_cast<std::int64_t>(i)));
    return to_json(KernelSequence::explicit_list(std::move(list)));
  }
  if (name == "mirrored_pair") return to_json(mirrored_pair_sequence(get_size(p, "N", 0), p["p"], p["q"], p["r"]));
  if (name == "stick_pair") {
    const double q = 1.0 - p["p"] - p["r"];
    const auto pair = perturbed_stick_pair(get_size(p, "N", 0), p["p"], q, p["r"], p["eta1"], p["eta2"]);
    return to_json(KernelSequence::cyclic({pair.q1, pair.q2}, {0, 1}));
  }
  if (name == "two_point" || name == "five_point" || name == "seven_point" || name == "adjoint_pair") {
    return to_json(alternating(small_example(name, p)));
  }
  if (name == "lazy_stick") return to_json(lazy_stick(get_size(p, "N", 0)));
  if (name == "random_regular") return to_json(random_regular_graph(get_size(p, "n", 0), get_size(p, "d", 0), seed, p["loops"] != 0.0));
  return to_json(complete_graph_with_loops(get_size(p, "n", 0)));
}

}  // namespace mclab

#include "mclab/stability.hpp"

#include "format.hpp"
#include "mclab/chain.hpp"
#include "mclab/error.hpp"
#include "mclab/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

namespace mclab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const StateSpace& check_set(const KernelSet& q_set, const char* what) {
  if (q_set.empty()) throw InvalidArgument(std::string(what) + ": kernel set is empty");
  for (const auto& k : q_set) {
    if (!(k.space() == q_set.front().space())) throw DimensionError(std::string(what) + ": kernels on different spaces");
  }
  return q_set.front().space();
}

void require_positive(const ProbMeasure& mu, const char* what, const char* name) {
  for (std::size_t x = 0; x < mu.size(); ++x) {
    if (!(mu[x] > 0.0)) throw NonPositiveMeasureError(std::string(what) + ": " + name + " must be strictly positive", x, mu[x]);
  }
}

// Largest |log mu(x) - log pi(x)| and the first state attaining it.
std::pair<double, std::size_t> log_deviation(const Vector& mu, const Vector& log_pi) {
  double best = -1.0;
  std::size_t arg = 0;
  for (Eigen::Index x = 0; x < mu.size(); ++x) {
    const double d = mu(x) > 0.0 ? std::abs(std::log(mu(x)) - log_pi(x)) : kInf;
    if (d > best) {
      best = d;
      arg = static_cast<std::size_t>(x);
    }
  }
  return {best, arg};
}

struct EnvelopeAccumulator {
  std::vector<double> by_depth;  // log deviation maxima per exact depth
  double best = -1.0;
  Word witness;
  std::size_t state = 0;
  std::size_t nodes = 0;

  explicit EnvelopeAccumulator(std::size_t depth) : by_depth(depth + 1, -1.0) {}

  void visit(const Vector& mu, const Vector& log_pi, const Word& w) {
    ++nodes;
    const auto [d, x] = log_deviation(mu, log_pi);
    by_depth[w.size()] = std::max(by_depth[w.size()], d);
    if (d > best) {
      best = d;
      witness = w;
      state = x;
    }
  }

  // Folds `other`, which comes later in preorder.
  void merge(const EnvelopeAccumulator& other) {
    nodes += other.nodes;
    for (std::size_t d = 0; d < by_depth.size(); ++d) by_depth[d] = std::max(by_depth[d], other.by_depth[d]);
    if (other.best > best) {
      best = other.best;
      witness = other.witness;
      state = other.state;
    }
  }
};

struct TreeWalker {
  const std::vector<Matrix>& transposed;
  const Vector& log_pi;
  std::size_t depth;

  void walk(const Vector& mu, Word& w, EnvelopeAccumulator& acc) const {
    acc.visit(mu, log_pi, w);
    if (w.size() == depth) return;
    for (std::size_t a = 0; a < transposed.size(); ++a) {
      w.push_back(a);
      Vector next = transposed[a] * mu;
      walk(next, w, acc);
      w.pop_back();
    }
  }
};

StabilityReport make_report(const ProbMeasure& mu0, const ProbMeasure& pi, std::size_t depth, const EnvelopeAccumulator& acc) {
  StabilityReport r{pi, mu0};
  r.depth = depth;
  r.c_estimate = std::exp(acc.best);
  r.witness_word = acc.witness;
  r.witness_state = acc.state;
  r.nodes_visited = acc.nodes;
  double running = 0.0;
  for (double d : acc.by_depth) {
    running = std::max(running, d);
    r.c_by_depth.push_back(std::exp(running));
  }
  return r;
}

nlohmann::json vec_json(const Vector& v) { return std::vector<double>(v.begin(), v.end()); }

double envelope_log(const KernelSet& q_set, const ProbMeasure& mu0, const ProbMeasure& pi, std::size_t depth,
                    const EnvelopeOptions& options) {
  return std::log(ratio_envelope(q_set, mu0, pi, depth, options).c_estimate);
}

}  // namespace

WordEnumeration::WordEnumeration(std::size_t letters, std::size_t depth) : letters_(letters), depth_(depth) {
  if (letters == 0) throw InvalidArgument("word enumeration: empty alphabet");
}

std::size_t WordEnumeration::node_count() const noexcept {
  constexpr auto cap = std::numeric_limits<std::size_t>::max();
  std::size_t total = 1;
  std::size_t level = 1;
  for (std::size_t d = 1; d <= depth_; ++d) {
    if (level > cap / letters_) return cap;
    level *= letters_;
    if (total > cap - level) return cap;
    total += level;
  }
  return total;
}

bool WordEnumeration::next(Word& w) const {
  if (w.size() < depth_) {
    w.push_back(0);
    return true;
  }
  while (!w.empty()) {
    if (w.back() + 1 < letters_) {
      ++w.back();
      return true;
    }
    w.pop_back();
  }
  return false;
}

void WordEnumeration::check_budget(std::size_t budget) const {
  const auto required = node_count();
  if (required > budget) throw BudgetExceededError(required, budget);
}

StabilityReport ratio_envelope(const KernelSet& q_set, const ProbMeasure& mu0, const ProbMeasure& pi, std::size_t depth,
                               const EnvelopeOptions& options) {
  const auto& space = check_set(q_set, "ratio_envelope");
  if (!(mu0.space() == space) || !(pi.space() == space)) throw DimensionError("ratio_envelope: measures on a different space");
  require_positive(mu0, "ratio_envelope", "mu0");
  require_positive(pi, "ratio_envelope", "pi");
  WordEnumeration(q_set.size(), depth).check_budget(options.budget_nodes);

  std::vector<Matrix> transposed;
  for (const auto& k : q_set) transposed.push_back(k.matrix().transpose());
  const Vector log_pi = pi.weights().array().log();
  const TreeWalker walker{transposed, log_pi, depth};

  EnvelopeAccumulator total(depth);
  Word root;
  total.visit(mu0.weights(), log_pi, root);
  if (depth == 0) return make_report(mu0, pi, depth, total);

  const std::size_t branches = q_set.size();
  std::vector<EnvelopeAccumulator> parts(branches, EnvelopeAccumulator(depth));
  auto run_branch = [&](std::size_t a) {
    Word w{a};
    walker.walk(transposed[a] * mu0.weights(), w, parts[a]);
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(branches)));
  if (threads == 1) {
    for (std::size_t a = 0; a < branches; ++a) run_branch(a);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t a = t; a < branches; a += threads) run_branch(a);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& part : parts) total.merge(part);
  return make_report(mu0, pi, depth, total);
}

StabilityReport sampled_ratio_envelope(const KernelSet& q_set, const ProbMeasure& mu0, const ProbMeasure& pi,
                                       std::size_t depth, std::size_t samples, std::uint64_t seed) {
  const auto& space = check_set(q_set, "sampled_ratio_envelope");
  if (!(mu0.space() == space) || !(pi.space() == space)) throw DimensionError("sampled_ratio_envelope: measures on a different space");
  require_positive(mu0, "sampled_ratio_envelope", "mu0");
  require_positive(pi, "sampled_ratio_envelope", "pi");
  std::vector<Matrix> transposed;
  for (const auto& k : q_set) transposed.push_back(k.matrix().transpose());
  const Vector log_pi = pi.weights().array().log();

  EnvelopeAccumulator acc(depth);
  Word w;
  acc.visit(mu0.weights(), log_pi, w);
  for (std::size_t s = 0; s < samples; ++s) {
    CounterRng rng(CounterRng::derive(seed, s));
    Vector mu = mu0.weights();
    w.clear();
    for (std::size_t d = 0; d < depth; ++d) {
      const auto a = static_cast<std::size_t>(rng.below(q_set.size()));
      w.push_back(a);
      mu = transposed[a] * mu;
      acc.visit(mu, log_pi, w);
    }
  }
  auto r = make_report(mu0, pi, depth, acc);
  r.sampled = true;
  return r;
}

std::string StabilityReport::json() const {
  nlohmann::json j;
  j["depth"] = depth;
  j["c_estimate"] = std::isfinite(c_estimate) ? nlohmann::json(c_estimate) : nlohmann::json(nullptr);
  j["witness_word"] = witness_word;
  j["witness_state"] = witness_state;
  j["c_by_depth"] = nlohmann::json::array();
  for (double c : c_by_depth) j["c_by_depth"].push_back(std::isfinite(c) ? nlohmann::json(c) : nlohmann::json(nullptr));
  j["nodes_visited"] = nodes_visited;
  j["sampled"] = sampled;
  j["candidate_pi"] = vec_json(candidate_pi.weights());
  j["mu0"] = vec_json(mu0.weights());
  j["criterion_pass"] = criterion_pass ? nlohmann::json(*criterion_pass) : nlohmann::json(nullptr);
  return j.dump(2);
}

std::string StabilityReport::csv() const {
  std::ostringstream out;
  out << "depth,c_estimate\n";
  for (std::size_t d = 0; d < c_by_depth.size(); ++d) out << d << ',' << detail::fmt(c_by_depth[d]) << '\n';
  return out.str();
}

CriterionResult product_invariant_criterion(const KernelSet& q_set, const ProbMeasure& pi, std::size_t depth, double c,
                                            std::size_t budget_nodes) {
  const auto& space = check_set(q_set, "product_invariant_criterion");
  if (!(pi.space() == space)) throw DimensionError("product_invariant_criterion: pi on a different space");
  require_positive(pi, "product_invariant_criterion", "pi");
  if (!(c >= 1.0)) throw InvalidArgument("product_invariant_criterion: c must be >= 1");
  WordEnumeration words(q_set.size(), depth);
  words.check_budget(budget_nodes);

  CriterionResult result;
  const auto n = static_cast<Eigen::Index>(space.size());
  const Vector& w = pi.weights();
  constexpr double rel = 1e-12;
  auto fail = [&](const Word& word, std::string reason) {
    if (result.pass) {
      result.pass = false;
      result.witness = word;
      result.reason = std::move(reason);
    }
  };

  // Products along the current path: stack[d] is the product of the first d letters.
  std::vector<Matrix> stack{Matrix::Identity(n, n)};
  Word word;
  while (words.next(word)) {
    stack.resize(word.size());
    stack.push_back(stack.back() * q_set[word.back()].matrix());
    ++result.words_checked;
    const StochasticKernel p(space, stack.back());
    const auto structure = classify_structure(p);
    if (!structure.sia) {
      result.worst_ratio = kInf;
      fail(word, structure.recurrent_classes.size() > 1 ? "product has several recurrent classes" : "product is periodic");
      continue;
    }
    const Vector pp = stationary_measure(p).weights();
    double ratio = 1.0;
    for (Eigen::Index x = 0; x < n; ++x) ratio = std::max({ratio, pp(x) > 0.0 ? w(x) / pp(x) : kInf, pp(x) / w(x)});
    result.worst_ratio = std::max(result.worst_ratio, ratio);
    if (ratio > c * (1.0 + rel)) fail(word, "invariant measure of the product leaves the band [pi/c, c pi]");
  }
  return result;
}

StableMeasureResult search_stable_measure(const KernelSet& q_set, const ProbMeasure& pi, std::size_t depth,
                                          const SearchOptions& options) {
  const auto& space = check_set(q_set, "search_stable_measure");
  require_positive(pi, "search_stable_measure", "pi");
  WordEnumeration words(q_set.size(), depth);
  words.check_budget(options.envelope.budget_nodes);
  const auto n = static_cast<Eigen::Index>(space.size());

  std::vector<std::pair<std::string, ProbMeasure>> starts{{"pi", pi}, {"uniform", ProbMeasure::uniform(space)}};
  {
    // Barycenter of the invariant measures of the leaf products that have one.
    Vector sum = Vector::Zero(n);
    std::size_t count = 0;
    std::vector<Matrix> stack{Matrix::Identity(n, n)};
    Word word;
    while (words.next(word)) {
      stack.resize(word.size());
      stack.push_back(stack.back() * q_set[word.back()].matrix());
      if (word.size() != depth) continue;
      const StochasticKernel p(space, stack.back());
      if (!classify_structure(p).sia) continue;
      sum += stationary_measure(p).weights();
      ++count;
    }
    if (count > 0 && (sum.array() > 0.0).all()) starts.emplace_back("barycenter", ProbMeasure(space, sum / static_cast<double>(count)));
  }

  StableMeasureResult best{pi};
  double best_f = kInf;
  std::size_t evaluations = 0;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    Vector mu = starts[s].second.weights();
    double f = envelope_log(q_set, starts[s].second, pi, depth, options.envelope);
    ++evaluations;
    double step = options.initial_step;
    for (std::size_t sweep = 0; sweep < options.max_sweeps && f > 0.0 && step >= options.min_step; ++sweep) {
      std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), Eigen::Index{0});
      CounterRng rng(CounterRng::derive(options.seed, s, sweep));
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[static_cast<std::size_t>(rng.below(i))]);
      bool improved = false;
      for (Eigen::Index x : order) {
        for (double sign : {1.0, -1.0}) {
          Vector cand = mu;
          cand(x) *= std::exp(sign * step);
          cand /= cand.sum();
          const double fc = envelope_log(q_set, ProbMeasure(space, cand), pi, depth, options.envelope);
          ++evaluations;
          if (fc < f) {
            f = fc;
            mu = std::move(cand);
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    if (f < best_f) {
      best_f = f;
      best.mu0 = ProbMeasure(space, mu);
      best.start = starts[s].first;
    }
  }
  // Report the envelope of the returned measure itself.
  best.c = ratio_envelope(q_set, best.mu0, pi, depth, options.envelope).c_estimate;
  best.evaluations = evaluations + 1;
  return best;
}

TwoPointClassification two_point_classify(const KernelSet& q_set) {
  for (const auto& k : q_set) {
    if (k.size() != 2) throw DimensionError("two_point_classify: every kernel must be 2x2");
  }
  TwoPointClassification out;
  for (std::size_t i = 0; i < q_set.size() && out.stable; ++i) {
    for (std::size_t j = 0; j < q_set.size(); ++j) {
      if (q_set[i](0, 0) == 0.0 && q_set[j](1, 1) == 0.0 && !(q_set[i].matrix() == q_set[j].matrix())) {
        out.stable = false;
        out.witness = std::make_pair(i, j);
        break;
      }
    }
  }
  return out;
}

LimitRowEstimate limit_row_estimate(const KernelSequence& seq, std::int64_t n, std::int64_t m_min) {
  if (m_min >= n) throw InvalidArgument("limit_row_estimate: need m_min < n");
  const auto size = static_cast<Eigen::Index>(seq.size());
  Matrix p = Matrix::Identity(size, size);
  LimitRowEstimate out{ProbMeasure::uniform(seq.space())};
  out.reused_explicit_list = seq.extends_by_reuse() && m_min < 0;
  for (std::int64_t m = n - 1; m >= m_min; --m) {
    p = seq.kernel(m + 1).matrix() * p;
    renormalize_rows(p);
    const double spread = contraction_coefficient(p);
    if (!out.spread.empty() && spread > out.spread.back() + 1e-12) out.monotone = false;
    out.spread.push_back(spread);
  }
  out.diag = out.spread.back();
  out.row = ProbMeasure(seq.space(), p.colwise().mean().transpose());
  return out;
}

}  // namespace mclab

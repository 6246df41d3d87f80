#include "mclab/sequence.hpp"

#include "mclab/error.hpp"
#include "mclab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mclab {

namespace {

const StateSpace& common_space(const KernelSet& kernels, const char* what) {
  if (kernels.empty()) throw InvalidArgument(std::string(what) + ": kernel set is empty");
  for (const auto& k : kernels) {
    if (!(k.space() == kernels.front().space())) {
      throw DimensionError(std::string(what) + ": kernels live on different state spaces");
    }
  }
  return kernels.front().space();
}

std::size_t wrap(std::int64_t i, std::size_t n) {
  // index i >= 1 maps to (i-1) mod n; i <= 0 continues the pattern backwards.
  const auto m = static_cast<std::int64_t>(n);
  return static_cast<std::size_t>(((i - 1) % m + m) % m);
}

}  // namespace

KernelSequence KernelSequence::explicit_list(KernelSet kernels) {
  KernelSequence seq(Kind::explicit_list, common_space(kernels, "explicit sequence"));
  seq.kernels_ = std::move(kernels);
  return seq;
}

KernelSequence KernelSequence::cyclic(KernelSet alphabet, std::vector<std::size_t> word) {
  KernelSequence seq(Kind::cyclic, common_space(alphabet, "cyclic sequence"));
  if (word.empty()) throw InvalidArgument("cyclic sequence: word is empty");
  for (auto letter : word) {
    if (letter >= alphabet.size()) throw InvalidArgument("cyclic sequence: word letter " + std::to_string(letter) + " out of range");
  }
  seq.kernels_ = std::move(alphabet);
  seq.word_ = std::move(word);
  return seq;
}

KernelSequence KernelSequence::iid(KernelSet alphabet, std::vector<double> probs, std::uint64_t seed) {
  KernelSequence seq(Kind::iid, common_space(alphabet, "iid sequence"));
  if (probs.size() != alphabet.size()) throw InvalidArgument("iid sequence: need one probability per kernel");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidArgument("iid sequence: probabilities must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > kRenormalizeTolerance) throw InvalidArgument("iid sequence: probabilities must sum to 1");
  seq.cumulative_.resize(probs.size());
  std::partial_sum(probs.begin(), probs.end(), seq.cumulative_.begin());
  for (auto& c : seq.cumulative_) c /= total;
  seq.cumulative_.back() = 1.0;
  seq.kernels_ = std::move(alphabet);
  seq.probs_ = std::move(probs);
  seq.seed_ = seed;
  return seq;
}

KernelSequence KernelSequence::generated(StateSpace space, Generator generator) {
  if (!generator) throw InvalidArgument("generated sequence: empty generator");
  KernelSequence seq(Kind::generated, std::move(space));
  seq.generator_ = std::move(generator);
  return seq;
}

std::size_t KernelSequence::letter(std::int64_t i) const {
  switch (kind_) {
    case Kind::cyclic:
      return word_[wrap(i, word_.size())];
    case Kind::iid: {
      const double u = CounterRng::to_unit(CounterRng(seed_).at(static_cast<std::uint64_t>(i)));
      const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
      return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), kernels_.size() - 1);
    }
    case Kind::explicit_list:
      return wrap(i, kernels_.size());
    case Kind::generated:
      break;
  }
  throw InvalidArgument("generated sequences have no alphabet");
}

StochasticKernel KernelSequence::kernel(std::int64_t i) const {
  switch (kind_) {
    case Kind::explicit_list:
      if (i > static_cast<std::int64_t>(kernels_.size())) {
        throw std::out_of_range("explicit sequence has " + std::to_string(kernels_.size()) + " kernels, asked for K_" +
                                std::to_string(i));
      }
      return kernels_[wrap(i, kernels_.size())];
    case Kind::cyclic:
    case Kind::iid:
      return kernels_[letter(i)];
    case Kind::generated: {
      auto k = generator_(i);
      if (!(k.space() == space_)) throw DimensionError("generated kernel is on the wrong state space");
      return k;
    }
  }
  return kernels_.front();
}

KernelSequence alternating(const KernelSet& pair) {
  if (pair.size() != 2) throw InvalidArgument("alternating: expected a pair of kernels");
  return KernelSequence::cyclic(pair, {1, 0});
}

}  // namespace mclab

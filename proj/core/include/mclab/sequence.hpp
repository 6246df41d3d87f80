#pragma once

#include "mclab/state.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace mclab {

/// A finite, ordered set of kernels on one state space (the alphabet of words and sequences).
using KernelSet = std::vector<StochasticKernel>;

/// Rule producing K_1, K_2, ... .
///
/// Indices i <= 0 are also defined so that doubly infinite products can be
/// formed: cyclic and i.i.d. rules extend naturally, explicit lists are reused
/// cyclically (reported by `extends_by_reuse()`), generated rules receive the
/// index unchanged.
class KernelSequence {
 public:
  enum class Kind { explicit_list, cyclic, iid, generated };

  using Generator = std::function<StochasticKernel(std::int64_t)>;

  static KernelSequence explicit_list(KernelSet kernels);
  /// K_i = alphabet[word[(i-1) mod |word|]].
  static KernelSequence cyclic(KernelSet alphabet, std::vector<std::size_t> word);
  /// K_i = alphabet[j] with probability probs[j], drawn from a counter-based stream keyed by `seed`.
  static KernelSequence iid(KernelSet alphabet, std::vector<double> probs, std::uint64_t seed);
  /// K_i = generator(i). The generator must be deterministic and return kernels on `space`.
  static KernelSequence generated(StateSpace space, Generator generator);

  Kind kind() const noexcept { return kind_; }
  const StateSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return space_.size(); }

  /// K_i. Throws std::out_of_range for an explicit list when i exceeds its length.
  StochasticKernel kernel(std::int64_t i) const;
  /// Alphabet index used at step i (cyclic and i.i.d. rules only).
  std::size_t letter(std::int64_t i) const;

  const KernelSet& kernels() const noexcept { return kernels_; }
  const std::vector<std::size_t>& word() const noexcept { return word_; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  std::uint64_t seed() const noexcept { return seed_; }
  /// Length of an explicit list, 0 for the other rules.
  std::size_t length() const noexcept { return kind_ == Kind::explicit_list ? kernels_.size() : 0; }
  bool extends_by_reuse() const noexcept { return kind_ == Kind::explicit_list; }

 private:
  KernelSequence(Kind kind, StateSpace space) : kind_(kind), space_(std::move(space)) {}

  Kind kind_;
  StateSpace space_;
  KernelSet kernels_;
  std::vector<std::size_t> word_;
  std::vector<double> probs_;
  std::vector<double> cumulative_;
  std::uint64_t seed_ = 0;
  Generator generator_;
};

/// K_i = Q_{i mod 2} for a pair (Q_0, Q_1): K_1 = Q_1, K_2 = Q_0, ...
KernelSequence alternating(const KernelSet& pair);

}  // namespace mclab

#include "mclab/error.hpp"
#include "mclab/experiment.hpp"

#include <map>

namespace mclab {

namespace {

const std::map<std::string, std::string>& table() {
  static const std::map<std::string, std::string> scenarios{
      {"thm43-scaling", R"({
  "name": "thm43-scaling",
  "description": "Relative-sup merging time of random constant-rate birth-death sequences, a = 1.2, A = 2",
  "analysis": "merging",
  "family": "constant_rate_random",
  "grid": {"N": [16, 32, 64]},
  "params": {"a": 1.2, "A": 2.0},
  "runs": 50,
  "seed": 20240301,
  "metric": "relsup",
  "epsilon": 0.25,
  "n_max": 20000,
  "ratio_check": {"column": "time", "min": 1.4, "max": 2.8}
}
)"},
      {"mirrored-pair", R"({
  "name": "mirrored-pair",
  "description": "Alternating mirrored constant-rate pair; total variation merging time",
  "analysis": "merging",
  "family": "mirrored_pair",
  "grid": {"N": [8, 16, 32]},
  "params": {"p": 0.5, "q": 0.25, "r": 0.25},
  "runs": 1,
  "seed": 7,
  "metric": "tv",
  "epsilon": 0.25,
  "n_max": 100000,
  "ratio_check": {"column": "time", "min": 3.2}
}
)"},
      {"pb0-probe", R"({
  "name": "pb0-probe",
  "description": "Random sequences from the banded birth-death class; reports T/N^2 without a verdict",
  "analysis": "merging",
  "family": "pb0",
  "grid": {"N": [8, 16, 32]},
  "runs": 20,
  "seed": 11,
  "metric": "tv",
  "epsilon": 0.25,
  "n_max": 100000,
  "mode": "report"
}
)"},
      {"thsing-domination", R"({
  "name": "thsing-domination",
  "description": "Singular-value bounds against exact tv and relative-sup distances",
  "analysis": "bounds",
  "family": ["constant_rate_random", "lazy_stick_weights", "stick_pair_random"],
  "grid": {"N": [5, 11, 15]},
  "params": {"a": 1.2, "A": 2.0, "b": 3.0, "horizon": 200},
  "runs": 67,
  "seed": 31
}
)"},
      {"comparison", R"({
  "name": "comparison",
  "description": "Spectral gap comparison and the homogeneous convergence bound for random weightings",
  "analysis": "comparison",
  "family": ["lazy_stick", "random_regular"],
  "grid": {"N": [16, 32, 64], "b": [2, 4]},
  "params": {"d": 3},
  "runs": 42,
  "seed": 41
}
)"},
      {"metropolis", R"({
  "name": "metropolis",
  "description": "Metropolis re-weighting hits the target measure and respects the weight-ratio bound",
  "analysis": "metropolis",
  "family": ["lazy_stick", "random_regular"],
  "grid": {"N": [8, 16, 32]},
  "params": {"b": 2.0, "d": 3, "loops": 1, "tilt": 0.5},
  "runs": 17,
  "seed": 43
}
)"},
      {"stability-stick", R"({
  "name": "stability-stick",
  "description": "Ratio envelope of the two-kernel stick pair against the uniform measure",
  "analysis": "stability",
  "family": "stick_pair",
  "grid": {"N": [5, 7, 9]},
  "params": {"p": 0.6, "r": 0.0, "depth": 10},
  "runs": 1,
  "seed": 5,
  "mode": "report"
}
)"},
      {"lazy-stick-gap", R"({
  "name": "lazy-stick-gap",
  "description": "Spectral gap of the simple random walk on the lazy stick shrinks like 1/N^2",
  "analysis": "spectral",
  "family": "lazy_stick",
  "grid": {"N": [8, 16, 32, 64]},
  "runs": 1,
  "seed": 1,
  "ratio_check": {"column": "gap", "min": 0.2, "max": 0.3}
}
)"},
      {"wpb1-probe", R"({
  "name": "wpb1-probe",
  "description": "Merging of time-varying random weightings of the lazy stick, scaled by the unweighted gap",
  "analysis": "merging",
  "family": "lazy_stick_weights",
  "grid": {"N": [8, 16, 32]},
  "params": {"b": 2.0},
  "runs": 10,
  "seed": 53,
  "metric": "tv",
  "epsilon": 0.25,
  "n_max": 100000,
  "mode": "report"
}
)"},
      {"thw1-probe", R"({
  "name": "thw1-probe",
  "description": "Merging of Metropolis-reweighted sequences sharing one tilted invariant measure",
  "analysis": "merging",
  "family": "metropolis_weights",
  "grid": {"N": [8, 16, 32]},
  "params": {"b": 2.0, "tilt": 0.5},
  "runs": 10,
  "seed": 59,
  "metric": "relsup",
  "epsilon": 0.25,
  "n_max": 100000,
  "mode": "report"
}
)"},
  };
  return scenarios;
}

}  // namespace

std::vector<std::string> builtin_scenarios() {
  std::vector<std::string> names;
  for (const auto& [name, text] : table()) names.push_back(name);
  return names;
}

std::string builtin_scenario_text(const std::string& name) {
  auto it = table().find(name);
  if (it == table().end()) throw ConfigError("scenario", "no file or built-in scenario named '" + name + "'");
  return it->second;
}

}  // namespace mclab

#pragma once

#include "mclab/graph.hpp"
#include "mclab/sequence.hpp"
#include "mclab/state.hpp"

#include <filesystem>
#include <string>

namespace mclab {

// JSON documents:
//   kernel    {"space": {"labels": [...]}, "matrix": [[...], ...]}
//   measure   {"space": {...}, "weights": [...]}
//   sequence  {"kind": "cyclic"|"explicit"|"iid", "space": {...}, "kernels": [kernel, ...],
//              "word": [...], "probs": [...], "seed": u64}
//   graph     {"space": {...}, "edges": [[x, y], [x], ...], "weights": [...]}
// "space" is optional everywhere; kernels inside a sequence inherit the outer one.
// Malformed input raises ConfigError naming the offending field.

std::string to_json(const StochasticKernel& k);
std::string to_json(const ProbMeasure& mu);
std::string to_json(const KernelSequence& seq);
std::string to_json(const WeightedGraph& g);
/// A kernel set is written as a sequence document without "kind".
std::string to_json(const KernelSet& kernels);

StochasticKernel kernel_from_json(const std::string& text);
ProbMeasure measure_from_json(const std::string& text);
KernelSequence sequence_from_json(const std::string& text);
/// Reads the "kernels" array of a sequence or kernel set document.
KernelSet kernel_set_from_json(const std::string& text);
WeightedGraph graph_from_json(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);
/// Creates parent directories as needed. Throws mclab::Error on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace mclab

#pragma once

#include <iosfwd>
#include <string>

#include "polytree/graph.hpp"
#include "polytree/hard_instances.hpp"
#include "polytree/sem.hpp"

namespace polytree {

// Model JSON: {"d": int, "edges": [[parent, child, beta], ...],
//              "noise_var": [d floats]}
std::string model_to_json(const GaussianSem& sem);
GaussianSem model_from_json(const std::string& text);

// Tree JSON: {"d": int, "root": int, "edges": [[parent, child], ...]}
std::string directed_tree_to_json(const DirectedTree& tree);
DirectedTree directed_tree_from_json(const std::string& text);

// Skeleton JSON: {"d": int, "edges": [[a, b], ...]} with unordered pairs.
std::string skeleton_to_json(const Skeleton& skeleton);
Skeleton skeleton_from_json(const std::string& text);

// CPDAG JSON: {"d": int, "directed": [[from, to], ...],
//              "undirected": [[a, b], ...]}
std::string cpdag_to_json(const Cpdag& cpdag);
Cpdag cpdag_from_json(const std::string& text);

// Gadget JSON: {"epsilon": e, "d": 3, "sigma1": [[...]], "sigma2": [[...]]}
std::string gadget_pair_to_json(const GadgetPair& pair);

/// Headerless by default; with_header emits x0,...,x{d-1}. Doubles are
/// written with enough digits to round-trip.
void write_sample_csv(const SampleMatrix& data, std::ostream& out, bool with_header);
/// Skips a leading header line when the first field does not parse as a number.
SampleMatrix read_sample_csv(std::istream& in);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace polytree

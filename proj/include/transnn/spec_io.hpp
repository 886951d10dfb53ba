#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "transnn/network_model.hpp"

namespace transnn {

/// Parses a network document:
///
///   { "n": 2, "horizon": 3, "initial_p": [1, 0],
///     "frames": [ { "edges": [ { "src": 1, "dst": 2, "type": "excitatory",
///                                "w": 0.5, "a": 1, "lambda": 0.5 } ] } ] }
///
/// Node indices in documents are one-based. A top-level "edges" array is
/// accepted in place of "frames" and means a single constant frame. When
/// omitted, "a" defaults to 1 and "lambda" to w * a.
///
/// Throws SpecError on malformed documents, unknown edge type tags and node
/// indices outside [1, n]. Other invariants are left to validate().
NetworkSpec load_spec(std::string_view document);
NetworkSpec load_spec_file(const std::filesystem::path& path);

/// Pretty-printed document; load_spec(save_spec(s)) == s bit for bit.
std::string save_spec(const NetworkSpec& spec);
void save_spec_file(const NetworkSpec& spec, const std::filesystem::path& path);

/// Compact document with keys and edges in a fixed order, independent of
/// how the input was formatted. Used for content digests.
std::string canonical_document(const NetworkSpec& spec);

}  // namespace transnn

#pragma once

#include <string>

#include "transnn/network_model.hpp"

namespace transnn::cli {

/// Hex SHA-256 of the canonical document, so formatting-only edits to a spec
/// file keep the same digest.
std::string spec_digest(const NetworkSpec& spec);

std::string sha256_hex(const std::string& data);

}  // namespace transnn::cli

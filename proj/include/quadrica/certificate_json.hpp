#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "quadrica/certify.hpp"

namespace quadrica {

nlohmann::json certificate_to_json(const Certificate& c);
/// Throws DomainError on schema violations and ParseError on malformed
/// polynomial strings.
Certificate certificate_from_json(const nlohmann::json& j);

/// Compact single-line JSON.
std::string emit_certificate(const Certificate& c);
Certificate parse_certificate(std::string_view text);

nlohmann::json verdict_to_json(const Verdict& v);

std::uint64_t fnv1a64(std::string_view data);
/// 16 hex digits of the FNV-1a hash of the compact certificate JSON.
std::string certificate_digest(const Certificate& c);

}  // namespace quadrica

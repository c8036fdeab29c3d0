#include "bistab/errors.hpp"

#include <fmt/format.h>

#include <utility>

namespace bistab {

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& message)
    : ConfigError(message), offset_(offset), expected_(std::move(expected)) {}

UnknownIdentifierError::UnknownIdentifierError(std::size_t offset, const std::string& identifier)
    : ParseError(offset, {}, fmt::format("unknown identifier '{}' at offset {}", identifier, offset)),
      identifier_(identifier) {}

DomainError::DomainError(const std::string& subexpression, double point, const std::string& reason)
    : Error(fmt::format("{} in '{}' at x = {}", reason, subexpression, point)),
      subexpression_(subexpression),
      point_(point) {}

}  // namespace bistab

#pragma once

#include <stdexcept>
#include <string>

namespace dcjx {

/// Raised when a function is called outside its documented precondition,
/// e.g. asking for the plain DCJ distance of genomes with unequal content.
class ContractViolation : public std::logic_error {
public:
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace dcjx

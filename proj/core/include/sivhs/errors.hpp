#pragma once

#include <stdexcept>
#include <string>

namespace sivhs {

class Error : public std::runtime_error {
public:
    Error(std::string kind, std::string module, const std::string& message)
        : std::runtime_error(module + ": " + kind + " error: " + message),
          kind_(std::move(kind)),
          module_(std::move(module)) {}

    const std::string& kind() const noexcept { return kind_; }
    const std::string& module() const noexcept { return module_; }

private:
    std::string kind_;
    std::string module_;
};

#define SIVHS_DEFINE_ERROR(Name, tag)                                 \
    class Name : public Error {                                       \
    public:                                                           \
        Name(std::string module, const std::string& message)          \
            : Error(tag, std::move(module), message) {}               \
    };

SIVHS_DEFINE_ERROR(ArgumentError, "argument")
SIVHS_DEFINE_ERROR(StructuralError, "structural")
SIVHS_DEFINE_ERROR(InversionError, "inversion")
SIVHS_DEFINE_ERROR(WindowOverflow, "window-overflow")
SIVHS_DEFINE_ERROR(ConfigurationError, "configuration")
SIVHS_DEFINE_ERROR(ValidationError, "validation")
SIVHS_DEFINE_ERROR(InvariantViolation, "invariant-violation")
SIVHS_DEFINE_ERROR(DomainError, "domain")
SIVHS_DEFINE_ERROR(ParseError, "parse")
SIVHS_DEFINE_ERROR(PreconditionError, "precondition")
SIVHS_DEFINE_ERROR(DegreeOverflow, "degree-overflow")

#undef SIVHS_DEFINE_ERROR

} // namespace sivhs

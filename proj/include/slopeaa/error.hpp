#pragma once

#include <stdexcept>
#include <string>

namespace slopeaa {

// Caller broke a documented precondition (bad coordinates, mismatched sizes,
// out-of-range parameters).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ImageIoError : public std::runtime_error {
public:
    enum class Kind { FileNotFound, UnsupportedFormat, CorruptFile, WriteFailed };

    ImageIoError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

} // namespace slopeaa

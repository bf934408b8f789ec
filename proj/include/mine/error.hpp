#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mine {

enum class ErrorKind {
    Empty,
    NonFinite,
    LengthExceedsSeries,
    OutOfRange,
    ZeroVariance,
    SeriesTooShort,
    AllConstant,
    NoValidNeighbor,
    InvalidParameters,
    Unpopulated,
    ZeroDistance,
    Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `kind()` is the stable discriminator;
/// `position()` carries the offending index where one exists.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, std::size_t position = npos)
        : std::runtime_error(what), kind_(kind), position_(position) {}

    ErrorKind kind() const noexcept { return kind_; }
    std::size_t position() const noexcept { return position_; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    ErrorKind kind_;
    std::size_t position_;
};

}  // namespace mine

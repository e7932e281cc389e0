#pragma once

#include <stdexcept>
#include <string>

namespace simocap {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotHermitian : Error {
    using Error::Error;
};
struct NonPositiveDefinite : Error {
    using Error::Error;
};
struct Singular : Error {
    using Error::Error;
};
struct ZeroDirection : Error {
    using Error::Error;
};
struct ZeroVector : Error {
    using Error::Error;
};
struct NotPSD : Error {
    using Error::Error;
};
struct DegenerateDraw : Error {
    using Error::Error;
};
struct DegenerateChannel : Error {
    using Error::Error;
};
struct Unbounded : Error {
    using Error::Error;
};
struct AlphabetTooLarge : Error {
    using Error::Error;
};
struct CertificateViolated : Error {
    using Error::Error;
};

} // namespace simocap

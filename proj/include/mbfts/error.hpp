#pragma once

#include <stdexcept>
#include <string>

namespace mbfts {

/// Base of every error raised by the library.  The CLI maps UsageError to
/// exit code 1 and everything else to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error { public: using Error::Error; };
class OutOfUniverse   : public Error { public: using Error::Error; };
class DomainError     : public Error { public: using Error::Error; };
class InsufficientData: public Error { public: using Error::Error; };
class NoMatch         : public Error { public: using Error::Error; };
class Inconsistency   : public Error { public: using Error::Error; };
class ParseError      : public Error { public: using Error::Error; };
class DataError       : public Error { public: using Error::Error; };
class IoError         : public Error { public: using Error::Error; };
class UsageError      : public Error { public: using Error::Error; };

} // namespace mbfts

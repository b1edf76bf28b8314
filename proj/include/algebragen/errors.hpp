#pragma once

#include <stdexcept>
#include <string>

namespace algebragen {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live over different scalar kinds (e.g. GF(p) with different p).
class KindMismatch : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Zero pivot (exact kinds) or pivot below tolerance (approximate kinds).
class SingularMatrix : public Error {
public:
    using Error::Error;
};

/// No cheap consistent norm of the Kronecker sum is below one.
class NormBoundViolation : public Error {
public:
    using Error::Error;
};

/// The requested prime range exceeds what the deterministic primality test covers.
class OutOfRange : public Error {
public:
    using Error::Error;
};

}  // namespace algebragen

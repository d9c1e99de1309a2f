#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bt {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

class NonUnitResidue : public Error {
public:
    NonUnitResidue() : Error("residue of an element of nonzero valuation") {}
};

class FieldMismatch : public Error {
public:
    using Error::Error;
};

class RamificationBound : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    SingularMatrix() : Error("matrix is singular") {}
};

class ComplexityGuard : public Error {
public:
    using Error::Error;
};

class NotSemistableForTorus : public Error {
public:
    NotSemistableForTorus() : Error("apartment retraction unbounded: point not torus-semistable") {}
};

class NonUniqueMaximizer : public Error {
public:
    // active support of the optimal face, as 0-based index sets
    explicit NonUniqueMaximizer(std::vector<std::vector<int>> face_support)
        : Error("apartment retraction has a positive-dimensional optimal face"),
          support(std::move(face_support))
    {
    }
    std::vector<std::vector<int>> support;
};

class NotStable : public Error {
public:
    using Error::Error;
};

class MaxIterationsExceeded : public Error {
public:
    MaxIterationsExceeded(std::string msg, std::vector<std::string> visited)
        : Error(std::move(msg)), trail(std::move(visited))
    {
    }
    std::vector<std::string> trail;
};

}  // namespace bt

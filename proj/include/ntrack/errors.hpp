#pragma once

#include <stdexcept>
#include <string>

namespace ntrack {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

struct SporadicSurface : Error {
    using Error::Error;
};

struct InvalidTriangle : Error {
    int triangle;
    InvalidTriangle(int tri, const std::string& what) : Error(what), triangle(tri) {}
};

struct IllegalMove : Error {
    using Error::Error;
};

struct UnaryBoundExceeded : Error {
    using Error::Error;
};

struct InvalidMatrix : Error {
    using Error::Error;
};

struct UnknownGenerator : Error {
    using Error::Error;
};

}  // namespace ntrack

#pragma once

#include <stdexcept>
#include <string>

namespace liereduce {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedNode : public Error {
public:
    using Error::Error;
};

class CyclicBinding : public Error {
public:
    using Error::Error;
};

class NotPolynomialInAtoms : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

class ExponentOverflow : public Error {
public:
    using Error::Error;
};

} // namespace liereduce

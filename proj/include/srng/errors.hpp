#pragma once

#include <stdexcept>
#include <string>

namespace srng {

// Base class for all library errors. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidParams : public Error {
public:
    explicit InvalidParams(const std::string& what) : Error(what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

class DecodeError : public Error {
public:
    explicit DecodeError(const std::string& what) : Error(what) {}
};

class EmptyImage : public Error {
public:
    explicit EmptyImage(const std::string& what) : Error(what) {}
};

class TooFewSamples : public Error {
public:
    explicit TooFewSamples(const std::string& what) : Error(what) {}
};

class NonFiniteInput : public Error {
public:
    explicit NonFiniteInput(const std::string& what) : Error(what) {}
};

class EmptyFrame : public Error {
public:
    explicit EmptyFrame(const std::string& what) : Error(what) {}
};

class DegenerateSource : public Error {
public:
    explicit DegenerateSource(const std::string& what) : Error(what) {}
};

class EmptyInput : public Error {
public:
    explicit EmptyInput(const std::string& what) : Error(what) {}
};

class InputTooShort : public Error {
public:
    explicit InputTooShort(const std::string& what) : Error(what) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

}  // namespace srng

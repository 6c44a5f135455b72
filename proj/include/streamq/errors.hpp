#pragma once

#include <stdexcept>
#include <string>

namespace streamq {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidRange : public Error {
public:
    using Error::Error;
};

class InvalidShares : public Error {
public:
    using Error::Error;
};

class NonFiniteValue : public Error {
public:
    using Error::Error;
};

class GridMismatch : public Error {
public:
    using Error::Error;
};

// subtract would drive a counter below zero
class NegativeCount : public Error {
public:
    using Error::Error;
};

class EmptySketch : public Error {
public:
    using Error::Error;
};

class InvalidProbability : public Error {
public:
    using Error::Error;
};

class InvalidWindowConfig : public Error {
public:
    using Error::Error;
};

class CountSaturation : public Error {
public:
    using Error::Error;
};

class MalformedRecord : public Error {
public:
    using Error::Error;
};

class InvalidConfig : public Error {
public:
    using Error::Error;
};

class SourceUnavailable : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

}  // namespace streamq

#pragma once

#include <stdexcept>
#include <string>

namespace alphatree {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Tree does not cover the weight sequence, or violates arity / ordering.
class StructuralError : public Error {
public:
    using Error::Error;
};

class InvalidLevelSequence : public Error {
public:
    using Error::Error;
};

// Trace references a leaf or circle that does not exist, or replays inconsistently.
class TraceError : public Error {
public:
    using Error::Error;
};

class PreconditionViolation : public Error {
public:
    using Error::Error;
};

// Requested arity mode cannot produce a tree for this input (pure ternary, even n).
class Infeasible : public Error {
public:
    using Error::Error;
};

class RefusedSize : public Error {
public:
    using Error::Error;
};

// Malformed user input (weight text, JSON documents).
class InputError : public Error {
public:
    using Error::Error;
};

// The ternary combination phase found no candidate whose application keeps a valid forest.
class EngineStuck : public Error {
public:
    using Error::Error;
};

} // namespace alphatree

#pragma once

#include <stdexcept>
#include <string>

namespace coopt {

/// Base class for all toolkit faults.
class Fault : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (bad index, mismatched shapes, ...).
class ContractFault : public Fault {
public:
    using Fault::Fault;
};

/// A resource guard tripped (state space above cap, impossible edge count, ...).
class GuardFault : public Fault {
public:
    using Fault::Fault;
};

/// A numeric failure (underflow to an all-zero table, non-finite values, ...).
class NumericFault : public Fault {
public:
    using Fault::Fault;
};

/// Malformed input text. Carries the 1-based line number when known.
class ParseFault : public Fault {
public:
    explicit ParseFault(const std::string& msg, int line = 0)
        : Fault(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}

    int line() const { return line_; }

private:
    int line_ = 0;
};

}  // namespace coopt

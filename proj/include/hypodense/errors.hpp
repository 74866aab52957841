#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hypodense {

// Base of every error raised by the library. The CLI maps ConfigError to
// exit status 2 and everything else to 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ParseError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// A power of two (or index) would have to be materialized beyond the
// configured exponent cap.
class ExponentOverflow : public Error {
public:
    using Error::Error;
};

class HorizonExhausted : public Error {
public:
    HorizonExhausted(std::uint64_t block, const std::string& what)
        : Error(what), block_(block) {}
    std::uint64_t block() const noexcept { return block_; }

private:
    std::uint64_t block_;
};

class ScanExhausted : public Error {
public:
    ScanExhausted(std::uint64_t n, const std::string& what) : Error(what), n_(n) {}
    std::uint64_t n() const noexcept { return n_; }

private:
    std::uint64_t n_;
};

class Infeasible : public Error {
public:
    using Error::Error;
};

class CertificateFailed : public Error {
public:
    using Error::Error;
};

// Raised by the C-type validator; carries the violated invariant and the
// offending block/index so callers can report it verbatim.
class ValidationError : public Error {
public:
    ValidationError(std::string invariant, std::uint64_t index, const std::string& detail)
        : Error(invariant + " violated at " + std::to_string(index) + ": " + detail),
          invariant_(std::move(invariant)), index_(index) {}
    const std::string& invariant() const noexcept { return invariant_; }
    std::uint64_t index() const noexcept { return index_; }

private:
    std::string invariant_;
    std::uint64_t index_;
};

class SupportOutOfRange : public Error {
public:
    using Error::Error;
};

class HypothesisViolated : public Error {
public:
    HypothesisViolated(std::uint64_t m, const std::string& what) : Error(what), m_(m) {}
    std::uint64_t m() const noexcept { return m_; }

private:
    std::uint64_t m_;
};

class NoFeasibleK : public Error {
public:
    using Error::Error;
};

class NoFeasibleFiber : public Error {
public:
    using Error::Error;
};

}  // namespace hypodense

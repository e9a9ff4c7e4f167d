#ifndef FPKS_ERRORS_HPP
#define FPKS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fpks {

/// Input violated a documented precondition (range, normalization, shape).
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure did not reach its tolerance. Carries the best estimate reached.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

class LookupError : public std::out_of_range {
public:
    explicit LookupError(const std::string& what) : std::out_of_range(what) {}
};

/// Stored data failed an exact consistency check.
class DataIntegrityError : public std::runtime_error {
public:
    explicit DataIntegrityError(const std::string& what) : std::runtime_error(what) {}
};

class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

} // namespace fpks

#endif

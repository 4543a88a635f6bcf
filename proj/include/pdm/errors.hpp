#ifndef PDM_ERRORS_HPP
#define PDM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pdm {

// Function returned NaN/Inf or an exponent left the representable range.
class evaluation_error : public std::runtime_error {
public:
    explicit evaluation_error(const std::string& what) : std::runtime_error(what) {}
};

// Requested accuracy could not be met; carries the best available estimate.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, double best)
        : std::runtime_error(what), best_estimate(best) {}
    double best_estimate;
};

// Ambiguity parameters outside the two orderings the splitting admits.
class restriction_error : public std::invalid_argument {
public:
    explicit restriction_error(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace pdm

#endif

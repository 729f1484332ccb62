#ifndef POINCARE_ERROR_HPP
#define POINCARE_ERROR_HPP

#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>

namespace poincare
{

// Root of the library's exception hierarchy. Every failure that a caller can
// act on has its own type so the CLI can map it to a stage verdict.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
    virtual const char *kind() const noexcept { return "error"; }
};

#define POINCARE_DECLARE_ERROR(name)                                                                                   \
    class name : public error                                                                                         \
    {                                                                                                                  \
    public:                                                                                                            \
        using error::error;                                                                                            \
        const char *kind() const noexcept override { return #name; }                                                  \
    }

POINCARE_DECLARE_ERROR(NumericError);
POINCARE_DECLARE_ERROR(NotApplicable);
POINCARE_DECLARE_ERROR(BranchError);
POINCARE_DECLARE_ERROR(DivergenceError);
POINCARE_DECLARE_ERROR(BudgetExceeded);
POINCARE_DECLARE_ERROR(NotEscaping);
POINCARE_DECLARE_ERROR(OutsideValidity);
POINCARE_DECLARE_ERROR(NotAttracted);
POINCARE_DECLARE_ERROR(ConfigError);

#undef POINCARE_DECLARE_ERROR

class NormalizationError : public error
{
public:
    NormalizationError(const std::string &what, std::complex<double> multiplier)
        : error(what), multiplier_(multiplier)
    {
    }
    const char *kind() const noexcept override { return "NormalizationError"; }
    std::complex<double> multiplier() const noexcept { return multiplier_; }

private:
    std::complex<double> multiplier_;
};

class OverflowError : public error
{
public:
    OverflowError(const std::string &what, int lifts_done) : error(what), lifts_done_(lifts_done) {}
    const char *kind() const noexcept override { return "Overflow"; }
    int lifts_done() const noexcept { return lifts_done_; }

private:
    int lifts_done_;
};

namespace detail
{

template <typename... Args>
std::string concat(const Args &...args)
{
    std::ostringstream os;
    os.precision(17);
    (os << ... << args);
    return os.str();
}

} // namespace detail

} // namespace poincare

#endif

#ifndef PF_ERRORS_HPP
#define PF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pf {

// Input validation failures (bad distributions, shape mismatches).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

class NegativeEntry : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class SumNotOne : public ValidationError {
public:
    SumNotOne(const std::string& what, std::size_t index, double deviation)
        : ValidationError(what + " at index " + std::to_string(index) +
                          " deviates from 1 by " + std::to_string(deviation)),
          index(index), deviation(deviation) {}
    std::size_t index;
    double deviation;
};

class DimensionMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ShapeMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Solver-side failures.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// A row of the u-update has no column with positive weight.
class AllWeightsZeroRow : public SolverError {
public:
    explicit AllWeightsZeroRow(std::size_t row)
        : SolverError("row " + std::to_string(row) +
                      " has no column with positive weight"),
          row(row) {}
    std::size_t row;
};

// G(lambda) stays negative up to the bracket cap: the disclosure threshold is
// unattainable with the current w support.
class NoRoot : public SolverError {
public:
    explicit NoRoot(double g_at_cap)
        : SolverError("G(lambda) < 0 up to the bracket cap (G = " +
                      std::to_string(g_at_cap) + "); threshold unattainable"),
          g_at_cap(g_at_cap) {}
    double g_at_cap;
};

class NewtonStall : public SolverError {
public:
    NewtonStall(double lo, double hi, double g)
        : SolverError("Newton budget exhausted; best bracket [" +
                      std::to_string(lo) + ", " + std::to_string(hi) +
                      "], |G| = " + std::to_string(g)),
          bracket_lo(lo), bracket_hi(hi), g_value(g) {}
    double bracket_lo;
    double bracket_hi;
    double g_value;
};

// Oracle guard.
class TooLarge : public std::runtime_error {
public:
    explicit TooLarge(std::size_t dims)
        : std::runtime_error("grid search dimension guard tripped: " +
                             std::to_string(dims) + " free coordinates") {}
};

// Ingestion failures.
class IngestError : public std::runtime_error {
public:
    explicit IngestError(const std::string& msg) : std::runtime_error(msg) {}
};

class MissingColumn : public IngestError {
public:
    explicit MissingColumn(const std::string& name)
        : IngestError("column not found: " + name) {}
};

class EmptyFile : public IngestError {
public:
    explicit EmptyFile(const std::string& path)
        : IngestError("no data rows in " + path) {}
};

}  // namespace pf

#endif  // PF_ERRORS_HPP

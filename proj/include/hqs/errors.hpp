#pragma once

#include <stdexcept>
#include <string>

namespace hqs {

// Every operation-level failure carries a stable name; the CLI echoes it
// verbatim and maps the error class to its exit code.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define HQS_DEFINE_ERROR(NAME)                                         \
    class NAME : public Error {                                        \
    public:                                                            \
        explicit NAME(const std::string& what) : Error(#NAME, what) {} \
    }

// operation-level errors (CLI exit 3)
HQS_DEFINE_ERROR(StructureMismatch);
HQS_DEFINE_ERROR(NotNormalized);
HQS_DEFINE_ERROR(IndexOutOfRange);
HQS_DEFINE_ERROR(DimensionMismatch);
HQS_DEFINE_ERROR(ZeroProbability);
HQS_DEFINE_ERROR(PathInvalid);
HQS_DEFINE_ERROR(DuplicateSibling);
HQS_DEFINE_ERROR(NotAdmissible);
HQS_DEFINE_ERROR(GridMismatch);
HQS_DEFINE_ERROR(NonpositiveCpsi);
HQS_DEFINE_ERROR(ZeroSignal);

// input errors (CLI exit 1)
HQS_DEFINE_ERROR(ParseError);
HQS_DEFINE_ERROR(ValidationError);

// a produced value violated its own numeric contract (CLI exit 2)
HQS_DEFINE_ERROR(ContractViolation);

#undef HQS_DEFINE_ERROR

}  // namespace hqs

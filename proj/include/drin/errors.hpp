#pragma once

#include <stdexcept>
#include <string>

namespace drin {

// Every library failure carries a stable kind string; the CLI prints it verbatim.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define DRIN_ERROR(Name)                                                   \
    struct Name : Error {                                                  \
        explicit Name(const std::string& what) : Error(#Name, what) {}     \
    };

DRIN_ERROR(ZeroParameter)
DRIN_ERROR(NotIrreducible)
DRIN_ERROR(GradeMismatch)
DRIN_ERROR(NotAUnit)
DRIN_ERROR(NotOneUnit)
DRIN_ERROR(RootOrderDivisibleByP)
DRIN_ERROR(InsufficientPrecision)
DRIN_ERROR(InexactDivision)
DRIN_ERROR(OutsideLogDomain)
DRIN_ERROR(NotUniformizable)
DRIN_ERROR(RootNotInField)
DRIN_ERROR(NoStabilization)
DRIN_ERROR(NotTorsionCase)
DRIN_ERROR(TailNotVanishing)
DRIN_ERROR(NonIntegralCoefficient)
DRIN_ERROR(ArityMismatch)
DRIN_ERROR(GradeResidue)
DRIN_ERROR(ReconstructionFailed)
DRIN_ERROR(PreconditionViolated)
DRIN_ERROR(NotPIntegral)
DRIN_ERROR(NotPrime)
DRIN_ERROR(QuotientTooShallow)
DRIN_ERROR(ParseError)
DRIN_ERROR(FieldMismatch)

#undef DRIN_ERROR

}  // namespace drin

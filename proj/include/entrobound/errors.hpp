#pragma once

// Exception types shared across the library. Each names the violated
// precondition or constraint in its what() string.

#include <stdexcept>

namespace entrobound {

#define ENTROBOUND_ERROR(Name)                    \
    struct Name : std::runtime_error {            \
        using std::runtime_error::runtime_error;  \
    }

// simplex
ENTROBOUND_ERROR(NegativeEntry);
ENTROBOUND_ERROR(SumNotOne);
ENTROBOUND_ERROR(TooShort);

// measures
ENTROBOUND_ERROR(ParseError);
ENTROBOUND_ERROR(ParamOutOfRange);
ENTROBOUND_ERROR(DerivativeAtEndpoint);
ENTROBOUND_ERROR(DisplayDomainError);

// spectra
ENTROBOUND_ERROR(NotHermitian);
ENTROBOUND_ERROR(NotNormalized);
ENTROBOUND_ERROR(NotDensityMatrix);

// extremal
ENTROBOUND_ERROR(Lambda0OutOfRange);
ENTROBOUND_ERROR(MinerOverflow);
ENTROBOUND_ERROR(TargetOutOfRange);
ENTROBOUND_ERROR(NoConvergence);
ENTROBOUND_ERROR(ConditionIndeterminate);
ENTROBOUND_ERROR(SecondDerivativeVanishes);

// oracle
ENTROBOUND_ERROR(EmptySlab);
ENTROBOUND_ERROR(DimensionTooLarge);

#undef ENTROBOUND_ERROR

}  // namespace entrobound

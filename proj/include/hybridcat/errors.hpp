#pragma once

#include <stdexcept>
#include <string>

namespace hybridcat {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define HYBRIDCAT_ERROR(Name)                                                  \
    class Name : public Error {                                                \
    public:                                                                    \
        using Error::Error;                                                    \
    }

HYBRIDCAT_ERROR(DuplicateMode);
HYBRIDCAT_ERROR(ZeroCutoff);
HYBRIDCAT_ERROR(UnknownMode);
HYBRIDCAT_ERROR(SpaceMismatch);
HYBRIDCAT_ERROR(OverlappingModes);
HYBRIDCAT_ERROR(CutoffExceeded);
HYBRIDCAT_ERROR(CutoffTooSmall);
HYBRIDCAT_ERROR(DegenerateAmplitude);
HYBRIDCAT_ERROR(NotNormalized);
HYBRIDCAT_ERROR(BadReflectivity);
HYBRIDCAT_ERROR(BadEta);
HYBRIDCAT_ERROR(TapNotVacuum);
HYBRIDCAT_ERROR(OutputNotVacuum);
HYBRIDCAT_ERROR(MultiModeInput);
HYBRIDCAT_ERROR(BadPartition);
HYBRIDCAT_ERROR(BadVariant);

#undef HYBRIDCAT_ERROR

// Raised by drivers that refuse to allocate a Hilbert space above the
// configured amplitude budget. Carries the estimate for diagnostics.
class DimensionLimitExceeded : public CutoffTooSmall {
public:
    DimensionLimitExceeded(const std::string& what, std::size_t dim, std::size_t limit)
        : CutoffTooSmall(what), total_dim(dim), max_dim(limit) {}
    std::size_t total_dim;
    std::size_t max_dim;
};

}  // namespace hybridcat

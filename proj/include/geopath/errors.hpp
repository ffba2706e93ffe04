#pragma once

#include <stdexcept>
#include <string>

namespace geopath {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PointOutsideDomain : Error { using Error::Error; };
struct NotOnBoundary : Error { using Error::Error; };
struct GenerationFailed : Error { using Error::Error; };
struct RetryBudgetExceeded : Error { using Error::Error; };
struct OverlapUnsupported : Error { using Error::Error; };
struct DegenerateInput : Error { using Error::Error; };
struct NonRelevantPair : Error { using Error::Error; };
struct OutsideBoundingBox : Error { using Error::Error; };
struct DisconnectedDomain : Error { using Error::Error; };
struct DegenerateInstance : Error { using Error::Error; };

}  // namespace geopath

#pragma once

#include <stdexcept>
#include <string>

namespace resolvent_lab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Construction / validation failures.
struct EmptyMeasure : Error { using Error::Error; };
struct NegativeMass : Error { using Error::Error; };
struct NotProbability : Error { using Error::Error; };
struct BadOrder : Error { using Error::Error; };
struct BadQ : Error { using Error::Error; };
struct BadClass : Error { using Error::Error; };

// Evaluation domain failures.
struct OutsideDisk : Error { using Error::Error; };
struct OutsideDomain : Error { using Error::Error; };
struct BelowThreshold : Error { using Error::Error; };
struct ThetaOutOfRange : Error { using Error::Error; };
struct ZeroDivision : Error { using Error::Error; };
struct BranchAmbiguous : Error { using Error::Error; };
struct WindingAmbiguous : Error { using Error::Error; };

// Iteration failures.
struct NoConvergence : Error { using Error::Error; };
struct DomainEscape : Error { using Error::Error; };
struct StepUnderflow : Error { using Error::Error; };

} // namespace resolvent_lab

#pragma once

#include <stdexcept>
#include <string>

namespace ddea {

/// Base class for every domain error thrown by the engine. Carries an
/// identifier stable enough for machine parsing plus optional context
/// (kinematic chain index, sample index, time).
class Error : public std::runtime_error {
public:
    Error(std::string name, std::string detail, int chain = -1, long sample = -1,
          double time = std::nan(""))
        : std::runtime_error(format(name, detail, chain, sample, time)),
          name_(std::move(name)),
          chain_(chain),
          sample_(sample),
          time_(time) {}

    const std::string& name() const { return name_; }
    int chain() const { return chain_; }         // 1-based, -1 if not applicable
    long sample() const { return sample_; }      // 0-based, -1 if not applicable
    double time() const { return time_; }

private:
    static std::string format(const std::string& name, const std::string& detail, int chain,
                              long sample, double time) {
        std::string s = name;
        if (chain >= 1) s += " chain=" + std::to_string(chain);
        if (sample >= 0) s += " sample=" + std::to_string(sample);
        if (!std::isnan(time)) s += " t=" + std::to_string(time);
        if (!detail.empty()) s += " (" + detail + ")";
        return s;
    }

    std::string name_;
    int chain_;
    long sample_;
    double time_;
};

#define DDEA_DEFINE_ERROR(NAME)                                                              \
    class NAME : public Error {                                                              \
    public:                                                                                  \
        explicit NAME(std::string detail = "", int chain = -1, long sample = -1,             \
                      double time = std::nan(""))                                            \
            : Error(#NAME, std::move(detail), chain, sample, time) {}                        \
    }

// geometry
DDEA_DEFINE_ERROR(OutOfWorkspace);
DDEA_DEFINE_ERROR(LinkageLocked);
DDEA_DEFINE_ERROR(SingularLinkage);
DDEA_DEFINE_ERROR(NoSolution);
DDEA_DEFINE_ERROR(DegenerateProjection);
DDEA_DEFINE_ERROR(NearSingular);
// material
DDEA_DEFINE_ERROR(GentLimit);
DDEA_DEFINE_ERROR(StepUnstable);
DDEA_DEFINE_ERROR(NoRoot);
// dynamics
DDEA_DEFINE_ERROR(InfeasibleActuation);
DDEA_DEFINE_ERROR(DegenerateDirection);
DDEA_DEFINE_ERROR(NoEquilibrium);
DDEA_DEFINE_ERROR(MismatchedGrids);
// calibration
DDEA_DEFINE_ERROR(NonConvergence);
DDEA_DEFINE_ERROR(InfeasibleDuringFit);
DDEA_DEFINE_ERROR(UnidentifiableAnchor);
// io
DDEA_DEFINE_ERROR(InvalidParams);
DDEA_DEFINE_ERROR(ConfigError);
DDEA_DEFINE_ERROR(IoError);

#undef DDEA_DEFINE_ERROR

}  // namespace ddea

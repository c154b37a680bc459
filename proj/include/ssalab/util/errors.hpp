#pragma once

#include <stdexcept>
#include <string>

namespace ssalab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define SSALAB_DEFINE_ERROR(Name)                         \
  struct Name : Error {                                   \
    explicit Name(const std::string& what)                \
        : Error(std::string(#Name) + ": " + what) {}      \
  }

SSALAB_DEFINE_ERROR(InvalidParams);
SSALAB_DEFINE_ERROR(InadmissibleAction);
SSALAB_DEFINE_ERROR(ResourceLimit);
SSALAB_DEFINE_ERROR(UnknownToken);
SSALAB_DEFINE_ERROR(MalformedTrace);
SSALAB_DEFINE_ERROR(IndexOutOfRange);
SSALAB_DEFINE_ERROR(InvalidLayout);
SSALAB_DEFINE_ERROR(ShapeMismatch);
SSALAB_DEFINE_ERROR(PositionOverflow);
SSALAB_DEFINE_ERROR(NonFiniteLoss);
SSALAB_DEFINE_ERROR(VocabularyMismatch);
SSALAB_DEFINE_ERROR(InsufficientData);
SSALAB_DEFINE_ERROR(FitDiverged);
SSALAB_DEFINE_ERROR(DegenerateFeatures);
SSALAB_DEFINE_ERROR(MissingArtifact);
SSALAB_DEFINE_ERROR(ConfigError);

#undef SSALAB_DEFINE_ERROR

}  // namespace ssalab

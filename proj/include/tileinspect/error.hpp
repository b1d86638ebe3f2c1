#pragma once

#include <stdexcept>
#include <string>

namespace tileinspect {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TILEINSPECT_ERROR(Name)      \
  class Name : public Error {        \
   public:                           \
    using Error::Error;              \
  }

TILEINSPECT_ERROR(FileNotFound);
TILEINSPECT_ERROR(DecodeError);
TILEINSPECT_ERROR(IoError);
TILEINSPECT_ERROR(DimensionError);
TILEINSPECT_ERROR(DimensionMismatch);
TILEINSPECT_ERROR(ParamError);
TILEINSPECT_ERROR(ModeError);
TILEINSPECT_ERROR(ParseError);
TILEINSPECT_ERROR(ConfigError);
TILEINSPECT_ERROR(GeometryError);
TILEINSPECT_ERROR(ManifestError);

#undef TILEINSPECT_ERROR

}  // namespace tileinspect

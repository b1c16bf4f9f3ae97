#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace htkgh {

enum class Errc {
  EmptyActors,
  TooFewEntities,
  UnknownSymbol,
  Io,
  Encoding,
  Parse,
  ConfigInvalid,
  UncoveredSymbol,
  LengthMismatch,
  ProviderUnavailable,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::EmptyActors: return "EmptyActors";
    case Errc::TooFewEntities: return "TooFewEntities";
    case Errc::UnknownSymbol: return "UnknownSymbol";
    case Errc::Io: return "Io";
    case Errc::Encoding: return "Encoding";
    case Errc::Parse: return "Parse";
    case Errc::ConfigInvalid: return "ConfigInvalid";
    case Errc::UncoveredSymbol: return "UncoveredSymbol";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::ProviderUnavailable: return "ProviderUnavailable";
  }
  return "Unknown";
}

// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace htkgh

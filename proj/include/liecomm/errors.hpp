#ifndef LIECOMM_ERRORS_HPP
#define LIECOMM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace liecomm {

/// Exit-code groups used by the CLI (see tools/main.cpp).
enum class ErrorCode {
  generic = 1,
  parse = 2,
  dimension_mismatch = 3,
  max_iterations = 4,
  certificate_invalid = 5,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

struct InvalidSpec : Error {
  explicit InvalidSpec(const std::string& w) : Error(ErrorCode::parse, w) {}
};
struct AlgebraMismatch : Error {
  explicit AlgebraMismatch(const std::string& w) : Error(ErrorCode::generic, w) {}
};
struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& w)
      : Error(ErrorCode::dimension_mismatch, w) {}
};
struct NotSkewAdjoint : Error {
  explicit NotSkewAdjoint(const std::string& w) : Error(ErrorCode::generic, w) {}
};
struct PairingFailure : Error {
  explicit PairingFailure(const std::string& w) : Error(ErrorCode::generic, w) {}
};
struct CsaNotFound : Error {
  explicit CsaNotFound(const std::string& w) : Error(ErrorCode::generic, w) {}
};
struct DegenerateReference : Error {
  explicit DegenerateReference(const std::string& w) : Error(ErrorCode::generic, w) {}
};
struct NotACsa : Error {
  explicit NotACsa(const std::string& w) : Error(ErrorCode::generic, w) {}
};
struct NotInCsa : Error {
  explicit NotInCsa(const std::string& w) : Error(ErrorCode::generic, w) {}
};
struct DegenerateRoot : Error {
  explicit DegenerateRoot(const std::string& w) : Error(ErrorCode::generic, w) {}
};
struct ZeroH : Error {
  explicit ZeroH(const std::string& w) : Error(ErrorCode::generic, w) {}
};
struct PreconditionViolated : Error {
  explicit PreconditionViolated(const std::string& w) : Error(ErrorCode::generic, w) {}
};
struct RegularNotFound : Error {
  explicit RegularNotFound(const std::string& w) : Error(ErrorCode::generic, w) {}
};
struct NotRegular : Error {
  explicit NotRegular(const std::string& w) : Error(ErrorCode::generic, w) {}
};
struct NotInImage : Error {
  explicit NotInImage(const std::string& w) : Error(ErrorCode::generic, w) {}
};
struct CertificateInvalid : Error {
  explicit CertificateInvalid(const std::string& w)
      : Error(ErrorCode::certificate_invalid, w) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorCode::parse, w) {}
};

}  // namespace liecomm

#endif

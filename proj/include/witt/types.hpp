#ifndef WITT_TYPES_HPP
#define WITT_TYPES_HPP

#include <Eigen/Dense>
#include <unsupported/Eigen/CXX11/Tensor>

#include <stdexcept>
#include <string>

namespace witt {

using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::VectorXd;
using Tensor3 = Eigen::Tensor<double, 3>;
using Tensor4 = Eigen::Tensor<double, 4>;
using Tensor5 = Eigen::Tensor<double, 5>;

/// Failure categories surfaced by the engine. The CLI maps them to exit codes.
enum class ErrorCode {
  DegeneratePairing,
  DimensionMismatch,
  IndefiniteAnisotropicBlock,
  OverlappingSlots,
  UnknownBlock,
  SingularFrame,
  Order2Unavailable,
  StepOutOfDomain,
  NonFinite,
  NotNullPairModel,
  NotLightlike,
  NonHorizontalStart,
  NegativeSpeedSquare,
  ShootingDiverged,
  ParityUnassigned,
  NotScreen,
  JNotAdapted,
  NotFeffermanModel,
  BadParams,
  ParseError,
  ValidationError,
  DomainGuard,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline double max_abs(const Tensor3& t) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < t.size(); ++i) m = std::max(m, std::abs(t.data()[i]));
  return m;
}

inline double max_abs(const Tensor4& t) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < t.size(); ++i) m = std::max(m, std::abs(t.data()[i]));
  return m;
}

inline Tensor3 zero3(int m) {
  Tensor3 t(m, m, m);
  t.setZero();
  return t;
}

inline Tensor4 zero4(int m, int last) {
  Tensor4 t(m, m, m, last);
  t.setZero();
  return t;
}

}  // namespace witt

#endif

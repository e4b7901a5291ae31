#ifndef WITT_FRAME_MODEL_HPP
#define WITT_FRAME_MODEL_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "witt/expression.hpp"
#include "witt/grading.hpp"
#include "witt/types.hpp"

namespace witt {

/// Left-invariant backend: constant bracket table c(a,b,k) with
/// [E_a, E_b] = c(a,b,k) E_k. Points are group coordinates of the first kind;
/// the frame matrix comes from the inverse differential of the exponential.
struct LieConstantBackend {
  Tensor3 c;
};

/// Single-chart backend: frame[a][mu] is the coordinate component of E_a
/// along the mu-th coordinate direction.
struct ChartBackend {
  std::vector<std::string> coordinates;
  std::vector<std::vector<Expression>> frame;
};

/// Frame slots spanning the rank-1 isotropic pair, with g(n,n)=g(n*,n*)=0 and
/// g(n,n*)=1 read off the Gram matrix.
struct NullPair {
  int n_slot = -1;
  int nstar_slot = -1;
};

/// Curvature data of the base pulled back to the total space, supplied as
/// fields on frame pairs. All zero for the flat built-in.
struct FeffermanFields {
  int cr_dim = 0;
  std::vector<std::vector<Expression>> ricci_form;
  Expression scalar;
  std::vector<std::vector<Expression>> reeb_lie_g;
};

struct ModelOptions {
  std::optional<NullPair> null_pair;
  std::optional<MatrixXd> screen_j;
  std::optional<FeffermanFields> fefferman;
  ValidationMode mode = ValidationMode::Strict;
};

/// Adapted-frame model of a Witt pseudo-Riemannian manifold: grading,
/// constant Gram matrix and a backend producing structure functions.
/// Immutable after construction; construction validates every invariant.
class FrameModel {
public:
  FrameModel(std::string name, WittGrading grading, MatrixXd gram, LieConstantBackend backend,
             ModelOptions options = {});
  FrameModel(std::string name, WittGrading grading, MatrixXd gram, ChartBackend backend,
             ModelOptions options = {});

  const std::string& name() const { return name_; }
  int dimension() const { return grading_.dimension(); }
  const WittGrading& grading() const { return grading_; }
  const MatrixXd& gram() const { return gram_; }
  const MatrixXd& gram_inverse() const { return gram_inv_; }

  bool is_chart() const { return std::holds_alternative<ChartBackend>(backend_); }
  const LieConstantBackend* lie() const { return std::get_if<LieConstantBackend>(&backend_); }
  const ChartBackend* chart() const { return std::get_if<ChartBackend>(&backend_); }

  const std::optional<NullPair>& null_pair() const { return options_.null_pair; }
  const std::optional<MatrixXd>& screen_j() const { return options_.screen_j; }
  const std::optional<FeffermanFields>& fefferman() const { return options_.fefferman; }
  ValidationMode validation_mode() const { return options_.mode; }

  std::vector<std::string> coordinate_names() const;

  double inner(const VectorXd& v, const VectorXd& w) const { return v.dot(gram_ * w); }
  VectorXd flat(const VectorXd& v) const { return gram_ * v; }
  VectorXd sharp(const VectorXd& alpha) const { return gram_inv_ * alpha; }
  /// Block component of the sharped covector (the paper's restricted sharp).
  VectorXd sharp_in_block(const VectorXd& alpha, int block) const {
    return project(grading_, sharp(alpha), block);
  }

  /// Covector extracting the n-component of a vector (the 1-form dual to n*).
  VectorXd sigma_covector() const;
  /// Covector extracting the n*-component.
  VectorXd sigma_star_covector() const;

private:
  void validate();

  std::string name_;
  WittGrading grading_;
  MatrixXd gram_, gram_inv_;
  std::variant<LieConstantBackend, ChartBackend> backend_;
  ModelOptions options_;
};

/// Coordinate components of the frame at x: column a holds E_a. Throws
/// SingularFrame when the chart frame degenerates at x.
MatrixXd frame_matrix(const FrameModel& model, const VectorXd& x);

/// Structure functions c(a,b,k) at x, antisymmetric in (a,b).
Tensor3 structure_functions(const FrameModel& model, const VectorXd& x);

struct StructureJet {
  Tensor3 c;        // c(a,b,k)
  Tensor4 dc;       // coordinate derivative dc(a,b,k,mu); zero for constant backends
  MatrixXd frame;   // frame matrix F(mu,a)
  bool has_derivatives = false;
};

/// Structure functions together with their coordinate derivatives (order-2
/// jets of the chart frame). Constant backends report zero derivatives.
StructureJet structure_jet(const FrameModel& model, const VectorXd& x, bool with_derivatives);

/// Max-norm residual of the Jacobi identity for a constant bracket table.
double jacobi_residual(const Tensor3& c);

}  // namespace witt

#endif

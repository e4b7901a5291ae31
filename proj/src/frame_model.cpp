#include "witt/frame_model.hpp"

#include <Eigen/LU>

namespace witt {

FrameModel::FrameModel(std::string name, WittGrading grading, MatrixXd gram,
                       LieConstantBackend backend, ModelOptions options)
    : name_(std::move(name)),
      grading_(std::move(grading)),
      gram_(std::move(gram)),
      backend_(std::move(backend)),
      options_(std::move(options)) {
  validate();
}

FrameModel::FrameModel(std::string name, WittGrading grading, MatrixXd gram, ChartBackend backend,
                       ModelOptions options)
    : name_(std::move(name)),
      grading_(std::move(grading)),
      gram_(std::move(gram)),
      backend_(std::move(backend)),
      options_(std::move(options)) {
  validate();
}

void FrameModel::validate() {
  const auto report = validate_witt_structure(grading_, gram_, options_.mode);
  if (!report.ok)
    fail(ErrorCode::ValidationError, "model '" + name_ + "' rejected:\n" + report.summary());
  gram_inv_ = gram_.inverse();

  const int m = dimension();
  if (const auto* lc = lie()) {
    if (lc->c.dimension(0) != m || lc->c.dimension(1) != m || lc->c.dimension(2) != m)
      fail(ErrorCode::ValidationError, "structure table size does not match dimension");
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int k = 0; k < m; ++k)
          if (std::abs(lc->c(a, b, k) + lc->c(b, a, k)) > 1e-12)
            fail(ErrorCode::ValidationError, "structure table is not antisymmetric");
    const double jac = jacobi_residual(lc->c);
    if (jac > 1e-12)
      fail(ErrorCode::ValidationError,
           "structure table violates the Jacobi identity (residual " + std::to_string(jac) + ")");
  } else {
    const auto& cb = *chart();
    if (static_cast<int>(cb.coordinates.size()) != m)
      fail(ErrorCode::ValidationError, "chart must declare one coordinate per dimension");
    if (static_cast<int>(cb.frame.size()) != m)
      fail(ErrorCode::ValidationError, "chart must declare one frame field per dimension");
    for (const auto& row : cb.frame) {
      if (static_cast<int>(row.size()) != m)
        fail(ErrorCode::ValidationError, "frame field component count does not match dimension");
      for (const auto& e : row)
        if (!e.valid()) fail(ErrorCode::ValidationError, "frame field has an empty component");
    }
  }

  if (options_.null_pair) {
    const auto& np = *options_.null_pair;
    if (np.n_slot < 0 || np.n_slot >= m || np.nstar_slot < 0 || np.nstar_slot >= m ||
        np.n_slot == np.nstar_slot)
      fail(ErrorCode::ValidationError, "null pair slots out of range");
    if (std::abs(gram_(np.n_slot, np.n_slot)) > 1e-14 ||
        std::abs(gram_(np.nstar_slot, np.nstar_slot)) > 1e-14 ||
        std::abs(gram_(np.n_slot, np.nstar_slot) - 1.0) > 1e-14)
      fail(ErrorCode::ValidationError, "null pair must satisfy g(n,n)=g(n*,n*)=0, g(n,n*)=1");
  }
  if (options_.screen_j) {
    if (options_.screen_j->rows() != m || options_.screen_j->cols() != m)
      fail(ErrorCode::ValidationError, "screen complex structure size does not match dimension");
  }
}

std::vector<std::string> FrameModel::coordinate_names() const {
  if (const auto* cb = chart()) return cb->coordinates;
  std::vector<std::string> names;
  for (int i = 0; i < dimension(); ++i) names.push_back("u" + std::to_string(i + 1));
  return names;
}

VectorXd FrameModel::sigma_covector() const {
  if (!options_.null_pair) fail(ErrorCode::NotNullPairModel, "model has no distinguished null pair");
  return gram_.row(options_.null_pair->nstar_slot);
}

VectorXd FrameModel::sigma_star_covector() const {
  if (!options_.null_pair) fail(ErrorCode::NotNullPairModel, "model has no distinguished null pair");
  return gram_.row(options_.null_pair->n_slot);
}

namespace {

// Power series of (1 - exp(-ad))/ad; invertible near the origin.
MatrixXd dexp_factor(const Tensor3& c, const VectorXd& xi) {
  const int m = static_cast<int>(xi.size());
  MatrixXd ad = MatrixXd::Zero(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      double s = 0.0;
      for (int a = 0; a < m; ++a) s += xi[a] * c(a, j, k);
      ad(k, j) = s;
    }
  MatrixXd phi = MatrixXd::Identity(m, m);
  MatrixXd term = MatrixXd::Identity(m, m);
  for (int k = 1; k <= 60; ++k) {
    term = (-ad * term) / static_cast<double>(k + 1);
    phi += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  return phi;
}

}  // namespace

MatrixXd frame_matrix(const FrameModel& model, const VectorXd& x) {
  const int m = model.dimension();
  if (static_cast<int>(x.size()) != m) fail(ErrorCode::BadParams, "point size does not match dimension");
  if (const auto* lc = model.lie()) {
    const MatrixXd phi = dexp_factor(lc->c, x);
    Eigen::FullPivLU<MatrixXd> lu(phi);
    if (!lu.isInvertible())
      fail(ErrorCode::StepOutOfDomain, "exponential-coordinate frame degenerates at this point");
    return lu.inverse();
  }
  const auto& cb = *model.chart();
  MatrixXd f(m, m);
  for (int a = 0; a < m; ++a)
    for (int mu = 0; mu < m; ++mu) f(mu, a) = cb.frame[a][mu].eval(x);
  if (!f.allFinite()) fail(ErrorCode::NonFinite, "frame components are not finite");
  return f;
}

Tensor3 structure_functions(const FrameModel& model, const VectorXd& x) {
  return structure_jet(model, x, false).c;
}

StructureJet structure_jet(const FrameModel& model, const VectorXd& x, bool with_derivatives) {
  const int m = model.dimension();
  StructureJet out;
  out.dc = zero4(m, m);

  if (const auto* lc = model.lie()) {
    out.c = lc->c;
    out.frame = frame_matrix(model, x);
    out.has_derivatives = true;
    return out;
  }

  const auto& cb = *model.chart();
  out.c = zero3(m);
  out.frame.resize(m, m);

  if (!with_derivatives) {
    // Value/gradient jets are enough for the brackets themselves.
    std::vector<std::vector<Jet1>> jets(m, std::vector<Jet1>(m));
    for (int a = 0; a < m; ++a)
      for (int mu = 0; mu < m; ++mu) {
        jets[a][mu] = cb.frame[a][mu].eval_jet1(x);
        out.frame(mu, a) = jets[a][mu].v;
      }
    Eigen::PartialPivLU<MatrixXd> lu(out.frame);
    if (std::abs(lu.determinant()) < 1e-12)
      fail(ErrorCode::SingularFrame, "frame matrix is singular at the queried point");
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        VectorXd w(m);
        for (int mu = 0; mu < m; ++mu) {
          double s = 0.0;
          for (int nu = 0; nu < m; ++nu)
            s += jets[a][nu].v * jets[b][mu].g[nu] - jets[b][nu].v * jets[a][mu].g[nu];
          w[mu] = s;
        }
        const VectorXd cab = lu.solve(w);
        for (int k = 0; k < m; ++k) {
          out.c(a, b, k) = cab[k];
          out.c(b, a, k) = -cab[k];
        }
      }
    return out;
  }

  std::vector<std::vector<Jet2>> jets(m, std::vector<Jet2>(m));
  for (int a = 0; a < m; ++a)
    for (int mu = 0; mu < m; ++mu) {
      jets[a][mu] = cb.frame[a][mu].eval_jet2(x);
      out.frame(mu, a) = jets[a][mu].v;
    }
  Eigen::PartialPivLU<MatrixXd> lu(out.frame);
  if (std::abs(lu.determinant()) < 1e-12)
    fail(ErrorCode::SingularFrame, "frame matrix is singular at the queried point");

  // dframe(mu, a, rho) = d_rho E_a^mu
  Tensor3 dframe(m, m, m);
  for (int a = 0; a < m; ++a)
    for (int mu = 0; mu < m; ++mu)
      for (int rho = 0; rho < m; ++rho) dframe(mu, a, rho) = jets[a][mu].g[rho];

  out.has_derivatives = true;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      VectorXd w(m);
      MatrixXd dw(m, m);  // dw(mu, rho)
      for (int mu = 0; mu < m; ++mu) {
        double s = 0.0;
        for (int nu = 0; nu < m; ++nu)
          s += jets[a][nu].v * jets[b][mu].g[nu] - jets[b][nu].v * jets[a][mu].g[nu];
        w[mu] = s;
        for (int rho = 0; rho < m; ++rho) {
          double d = 0.0;
          for (int nu = 0; nu < m; ++nu)
            d += jets[a][nu].g[rho] * jets[b][mu].g[nu] + jets[a][nu].v * jets[b][mu].h(nu, rho) -
                 jets[b][nu].g[rho] * jets[a][mu].g[nu] - jets[b][nu].v * jets[a][mu].h(nu, rho);
          dw(mu, rho) = d;
        }
      }
      const VectorXd cab = lu.solve(w);
      for (int k = 0; k < m; ++k) {
        out.c(a, b, k) = cab[k];
        out.c(b, a, k) = -cab[k];
      }
      for (int rho = 0; rho < m; ++rho) {
        VectorXd rhs = dw.col(rho);
        for (int mu = 0; mu < m; ++mu) {
          double corr = 0.0;
          for (int e = 0; e < m; ++e) corr += dframe(mu, e, rho) * cab[e];
          rhs[mu] -= corr;
        }
        const VectorXd dcab = lu.solve(rhs);
        for (int k = 0; k < m; ++k) {
          out.dc(a, b, k, rho) = dcab[k];
          out.dc(b, a, k, rho) = -dcab[k];
        }
      }
    }
  return out;
}

double jacobi_residual(const Tensor3& c) {
  const int m = static_cast<int>(c.dimension(0));
  double r = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int d = 0; d < m; ++d)
        for (int k = 0; k < m; ++k) {
          double s = 0.0;
          for (int e = 0; e < m; ++e)
            s += c(a, b, e) * c(e, d, k) + c(b, d, e) * c(e, a, k) + c(d, a, e) * c(e, b, k);
          r = std::max(r, std::abs(s));
        }
  return r;
}

}  // namespace witt

#include "witt/grading.hpp"

#include <Eigen/Eigenvalues>

#include <sstream>

namespace witt {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegeneratePairing: return "DegeneratePairing";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IndefiniteAnisotropicBlock: return "IndefiniteAnisotropicBlock";
    case ErrorCode::OverlappingSlots: return "OverlappingSlots";
    case ErrorCode::UnknownBlock: return "UnknownBlock";
    case ErrorCode::SingularFrame: return "SingularFrame";
    case ErrorCode::Order2Unavailable: return "Order2Unavailable";
    case ErrorCode::StepOutOfDomain: return "StepOutOfDomain";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotNullPairModel: return "NotNullPairModel";
    case ErrorCode::NotLightlike: return "NotLightlike";
    case ErrorCode::NonHorizontalStart: return "NonHorizontalStart";
    case ErrorCode::NegativeSpeedSquare: return "NegativeSpeedSquare";
    case ErrorCode::ShootingDiverged: return "ShootingDiverged";
    case ErrorCode::ParityUnassigned: return "ParityUnassigned";
    case ErrorCode::NotScreen: return "NotScreen";
    case ErrorCode::JNotAdapted: return "JNotAdapted";
    case ErrorCode::NotFeffermanModel: return "NotFeffermanModel";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::DomainGuard: return "DomainGuard";
  }
  return "Error";
}

std::string BlockLabel::str() const {
  std::ostringstream os;
  switch (kind) {
    case BlockKind::Anisotropic: os << "q(" << index << ")"; break;
    case BlockKind::Isotropic: os << "p(" << index << ")"; break;
    case BlockKind::IsotropicDual: os << "p*(" << index << ")"; break;
  }
  return os.str();
}

WittGrading::WittGrading(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  dimension_ = 0;
  for (const auto& b : blocks_) {
    first_slot_.push_back(dimension_);
    dimension_ += b.dim;
  }
  slot_block_.resize(dimension_);
  for (int b = 0; b < block_count(); ++b)
    for (int s = first_slot_[b]; s < first_slot_[b] + blocks_[b].dim; ++s) slot_block_[s] = b;
  star_.assign(block_count(), -1);
  for (int b = 0; b < block_count(); ++b) {
    const auto partner = find(blocks_[b].label.star());
    star_[b] = partner.value_or(-1);
  }
}

std::optional<int> WittGrading::find(const BlockLabel& label) const {
  for (int b = 0; b < block_count(); ++b)
    if (blocks_[b].label == label) return b;
  return std::nullopt;
}

bool WittGrading::parity_split() const {
  bool has_even = false, has_odd = false;
  for (const auto& b : blocks_) (b.label.even() ? has_even : has_odd) = true;
  return has_even && has_odd;
}

std::vector<int> WittGrading::slots_of_block(int b) const {
  std::vector<int> slots;
  for (int s = first_slot_.at(b); s < first_slot_.at(b) + blocks_.at(b).dim; ++s) slots.push_back(s);
  return slots;
}

std::string StructureReport::summary() const {
  std::ostringstream os;
  for (const auto& v : violations) os << to_string(v.code) << ": " << v.detail << "\n";
  return os.str();
}

namespace {

bool invertible(const MatrixXd& a) {
  if (a.rows() == 0) return false;
  Eigen::FullPivLU<MatrixXd> lu(a);
  lu.setThreshold(1e-10);
  return lu.isInvertible();
}

}  // namespace

StructureReport validate_witt_structure(const WittGrading& grading, const MatrixXd& gram,
                                        ValidationMode mode) {
  StructureReport report;
  auto violate = [&](ErrorCode code, const std::string& detail) {
    report.ok = false;
    report.violations.push_back({code, detail});
  };

  const int m = grading.dimension();
  if (m == 0) violate(ErrorCode::DimensionMismatch, "grading has zero total dimension");
  for (int b = 0; b < grading.block_count(); ++b) {
    const Block& blk = grading.block(b);
    if (blk.dim <= 0) violate(ErrorCode::OverlappingSlots, "block " + blk.label.str() + " has non-positive dimension");
    for (int b2 = b + 1; b2 < grading.block_count(); ++b2)
      if (grading.block(b2).label == blk.label)
        violate(ErrorCode::OverlappingSlots, "duplicate block label " + blk.label.str());
    if (blk.label.kind == BlockKind::Anisotropic && blk.label.index > 0)
      violate(ErrorCode::ValidationError, "anisotropic label " + blk.label.str() + " must be a non-positive integer");
    if (blk.label.kind != BlockKind::Anisotropic && blk.label.index <= 0)
      violate(ErrorCode::ValidationError, "isotropic label " + blk.label.str() + " must be a positive integer");
  }

  if (gram.rows() != m || gram.cols() != m) {
    violate(ErrorCode::DimensionMismatch, "Gram matrix size does not match total dimension");
    return report;
  }
  if (!gram.isApprox(gram.transpose(), 1e-12))
    violate(ErrorCode::ValidationError, "Gram matrix is not symmetric");

  for (int b = 0; b < grading.block_count(); ++b) {
    const Block& blk = grading.block(b);
    const int partner = grading.star_of(b);
    if (partner < 0) {
      violate(ErrorCode::DimensionMismatch, "block " + blk.label.str() + " has no dual partner");
      continue;
    }
    if (blk.label.kind == BlockKind::Isotropic && grading.block(partner).dim != blk.dim)
      violate(ErrorCode::DimensionMismatch,
              "isotropic pair " + blk.label.str() + " has mismatched ranks");
  }

  // Block-orthogonality: g pairs a block only with its star.
  for (int a = 0; a < m; ++a)
    for (int c = 0; c < m; ++c) {
      const int ba = grading.block_of_slot(a), bc = grading.block_of_slot(c);
      if (grading.star_of(ba) == bc) continue;
      if (std::abs(gram(a, c)) > 1e-14)
        violate(ErrorCode::ValidationError,
                "Gram entry (" + std::to_string(a + 1) + "," + std::to_string(c + 1) +
                    ") couples " + grading.block(ba).label.str() + " with " +
                    grading.block(bc).label.str());
    }

  for (int b = 0; b < grading.block_count(); ++b) {
    const Block& blk = grading.block(b);
    const int partner = grading.star_of(b);
    if (partner < 0) continue;
    const auto rows = grading.slots_of_block(b);
    const auto cols = grading.slots_of_block(partner);
    MatrixXd sub(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j) sub(i, j) = gram(rows[i], cols[j]);

    if (blk.label.kind == BlockKind::Anisotropic) {
      if (!invertible(sub)) {
        violate(ErrorCode::DegeneratePairing, "metric degenerate on block " + blk.label.str());
        continue;
      }
      if (mode == ValidationMode::Strict) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(sub);
        const VectorXd ev = es.eigenvalues();
        if (ev.minCoeff() < 0 && ev.maxCoeff() > 0)
          violate(ErrorCode::IndefiniteAnisotropicBlock,
                  "block " + blk.label.str() + " is indefinite");
      }
    } else if (blk.label.kind == BlockKind::Isotropic) {
      if (sub.rows() != sub.cols() || !invertible(sub))
        violate(ErrorCode::DegeneratePairing,
                "pairing of " + blk.label.str() + " with its dual is singular");
    }
  }

  if (report.ok && !invertible(gram))
    violate(ErrorCode::DegeneratePairing, "Gram matrix is singular");
  return report;
}

VectorXd project(const WittGrading& grading, const VectorXd& v, int b) {
  if (b < 0 || b >= grading.block_count()) fail(ErrorCode::UnknownBlock, "block position out of range");
  VectorXd out = VectorXd::Zero(grading.dimension());
  for (int s : grading.slots_of_block(b)) out[s] = v[s];
  return out;
}

VectorXd project(const WittGrading& grading, const VectorXd& v, const BlockLabel& label) {
  const auto b = grading.find(label);
  if (!b) fail(ErrorCode::UnknownBlock, "no block labelled " + label.str());
  return project(grading, v, *b);
}

MatrixXd delta_involution(const WittGrading& grading) {
  VectorXd d(grading.dimension());
  for (int s = 0; s < grading.dimension(); ++s)
    d[s] = grading.parity_even(grading.block_of_slot(s)) ? 1.0 : -1.0;
  return d.asDiagonal();
}

}  // namespace witt

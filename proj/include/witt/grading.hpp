#ifndef WITT_GRADING_HPP
#define WITT_GRADING_HPP

#include <optional>
#include <string>
#include <vector>

#include "witt/types.hpp"

namespace witt {

enum class BlockKind { Anisotropic, Isotropic, IsotropicDual };

/// Label of one summand of the tangent-bundle decomposition. Anisotropic
/// blocks carry a non-positive integer, isotropic pairs share a positive
/// integer with the dual side flagged by kind. The integer's parity drives
/// the grading involution.
struct BlockLabel {
  BlockKind kind = BlockKind::Anisotropic;
  int index = 0;

  BlockLabel star() const {
    switch (kind) {
      case BlockKind::Anisotropic: return *this;
      case BlockKind::Isotropic: return {BlockKind::IsotropicDual, index};
      case BlockKind::IsotropicDual: return {BlockKind::Isotropic, index};
    }
    return *this;
  }

  bool even() const { return ((index % 2) + 2) % 2 == 0; }

  bool operator==(const BlockLabel& o) const { return kind == o.kind && index == o.index; }

  std::string str() const;
};

struct Block {
  BlockLabel label;
  int dim = 0;
};

/// Ordered block decomposition of the frame slots. Blocks occupy consecutive
/// slot ranges in declaration order; every slot belongs to exactly one block.
class WittGrading {
public:
  WittGrading() = default;
  explicit WittGrading(std::vector<Block> blocks);

  int dimension() const { return dimension_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const Block& block(int b) const { return blocks_.at(b); }
  const std::vector<Block>& blocks() const { return blocks_; }

  /// Position of the block owning a frame slot.
  int block_of_slot(int slot) const { return slot_block_.at(slot); }
  int first_slot(int b) const { return first_slot_.at(b); }

  /// Position of the starred partner (self for anisotropic blocks), or -1 if
  /// the partner is missing.
  int star_of(int b) const { return star_.at(b); }

  /// Position of the block with the given label, or nullopt.
  std::optional<int> find(const BlockLabel& label) const;

  bool parity_even(int b) const { return blocks_.at(b).label.even(); }

  /// True when both parities occur among the blocks, so the grading
  /// involution differs from plus/minus identity.
  bool parity_split() const;

  std::vector<int> slots_of_block(int b) const;

private:
  std::vector<Block> blocks_;
  std::vector<int> slot_block_;
  std::vector<int> first_slot_;
  std::vector<int> star_;
  int dimension_ = 0;
};

enum class ValidationMode { Strict, Lax };

struct Violation {
  ErrorCode code;
  std::string detail;
};

struct StructureReport {
  bool ok = true;
  std::vector<Violation> violations;

  std::string summary() const;
};

/// Checks every invariant of the grading/Gram pair: block-orthogonality of
/// the Gram matrix, non-degenerate isotropic pairings with matching ranks,
/// and definite (Strict) or merely non-degenerate (Lax) anisotropic blocks.
StructureReport validate_witt_structure(const WittGrading& grading, const MatrixXd& gram,
                                        ValidationMode mode = ValidationMode::Strict);

/// Zeroes every component outside block `b`.
VectorXd project(const WittGrading& grading, const VectorXd& v, int b);
VectorXd project(const WittGrading& grading, const VectorXd& v, const BlockLabel& label);

/// Grading involution as a diagonal matrix: +1 on even blocks, -1 on odd.
MatrixXd delta_involution(const WittGrading& grading);

}  // namespace witt

#endif

#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace eigenshrink {

enum class Norm { frobenius, op, nuclear };

enum class Statistical { stein, entropy, divergence, affinity, frechet };

// Identifier for one of the 26 loss families: the 3x7 grid of matrix norms
// over discrepancy pivots, plus five statistical measures. The canonical
// string names are "F,1".."F,7", "O,1".."O,7", "N,1".."N,7", "st", "ent",
// "div", "aff", "fre".
class LossId {
 public:
  static constexpr int kCount = 26;

  static LossId norm_pivot(Norm norm, int pivot);  // pivot in 1..7
  static LossId statistical(Statistical which);

  static std::optional<LossId> parse(std::string_view name);
  static const std::array<LossId, kCount>& all();

  std::string name() const;

  bool is_norm_pivot() const { return code_ < 21; }
  bool is_statistical() const { return code_ >= 21; }
  Norm norm() const;       // norm-pivot families only
  int pivot() const;       // norm-pivot families only
  Statistical stat() const;  // statistical families only

  // Operator-family losses aggregate over joint blocks by max; everything
  // else by sum.
  bool max_decomposable() const;

  int code() const { return code_; }

  friend auto operator<=>(LossId a, LossId b) = default;

 private:
  explicit LossId(int code) : code_(code) {}
  int code_;
};

}  // namespace eigenshrink

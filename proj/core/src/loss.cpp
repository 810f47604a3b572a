#include "eigenshrink/loss.hpp"

#include <stdexcept>

namespace eigenshrink {

namespace {

constexpr const char* kStatNames[5] = {"st", "ent", "div", "aff", "fre"};

}  // namespace

LossId LossId::norm_pivot(Norm norm, int pivot) {
  if (pivot < 1 || pivot > 7) {
    throw std::invalid_argument("pivot must be in 1..7");
  }
  return LossId(static_cast<int>(norm) * 7 + (pivot - 1));
}

LossId LossId::statistical(Statistical which) {
  return LossId(21 + static_cast<int>(which));
}

Norm LossId::norm() const {
  if (!is_norm_pivot()) throw std::logic_error("not a norm-pivot loss");
  return static_cast<Norm>(code_ / 7);
}

int LossId::pivot() const {
  if (!is_norm_pivot()) throw std::logic_error("not a norm-pivot loss");
  return code_ % 7 + 1;
}

Statistical LossId::stat() const {
  if (!is_statistical()) throw std::logic_error("not a statistical loss");
  return static_cast<Statistical>(code_ - 21);
}

bool LossId::max_decomposable() const {
  return is_norm_pivot() && norm() == Norm::op;
}

std::string LossId::name() const {
  if (is_statistical()) return kStatNames[code_ - 21];
  static constexpr char kNormChar[3] = {'F', 'O', 'N'};
  std::string s(1, kNormChar[code_ / 7]);
  s += ',';
  s += static_cast<char>('1' + code_ % 7);
  return s;
}

std::optional<LossId> LossId::parse(std::string_view name) {
  for (int i = 0; i < 5; ++i) {
    if (name == kStatNames[i]) {
      return statistical(static_cast<Statistical>(i));
    }
  }
  if (name.size() == 3 && name[1] == ',' && name[2] >= '1' && name[2] <= '7') {
    Norm n;
    switch (name[0]) {
      case 'F': n = Norm::frobenius; break;
      case 'O': n = Norm::op; break;
      case 'N': n = Norm::nuclear; break;
      default: return std::nullopt;
    }
    return norm_pivot(n, name[2] - '0');
  }
  return std::nullopt;
}

const std::array<LossId, LossId::kCount>& LossId::all() {
  static const std::array<LossId, kCount> ids = [] {
    std::array<LossId, kCount> a{
        LossId(0),  LossId(1),  LossId(2),  LossId(3),  LossId(4),  LossId(5),
        LossId(6),  LossId(7),  LossId(8),  LossId(9),  LossId(10), LossId(11),
        LossId(12), LossId(13), LossId(14), LossId(15), LossId(16), LossId(17),
        LossId(18), LossId(19), LossId(20), LossId(21), LossId(22), LossId(23),
        LossId(24), LossId(25)};
    return a;
  }();
  return ids;
}

}  // namespace eigenshrink

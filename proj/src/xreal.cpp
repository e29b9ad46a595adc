#include "mifslab/xreal.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace mifslab {

namespace {

// Sign of a non-Indet value: -1, 0 or +1.
int sign_of(const XReal& x) {
  switch (x.tag()) {
    case XReal::Tag::PosInf:
      return 1;
    case XReal::Tag::NegInf:
      return -1;
    case XReal::Tag::Finite:
      return x.value() > 0.0 ? 1 : (x.value() < 0.0 ? -1 : 0);
    case XReal::Tag::Indet:
      break;
  }
  throw std::logic_error("sign of an indeterminate value");
}

XReal signed_inf(int sign) { return sign > 0 ? XReal::pos_inf() : XReal::neg_inf(); }

}  // namespace

XReal XReal::finite(double value) {
  if (std::isnan(value)) throw std::invalid_argument("XReal::finite: NaN");
  if (std::isinf(value)) return value > 0 ? pos_inf() : neg_inf();
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  return XReal(Tag::Finite, value, IndetKind::ZeroTimesInf);
}

double XReal::value() const {
  if (tag_ != Tag::Finite) throw std::logic_error("XReal::value on non-finite " + to_string(*this));
  return value_;
}

IndetKind XReal::indet_kind() const {
  if (tag_ != Tag::Indet) throw std::logic_error("XReal::indet_kind on determinate value");
  return kind_;
}

bool operator==(const XReal& a, const XReal& b) {
  if (a.tag_ != b.tag_) return false;
  if (a.tag_ == XReal::Tag::Finite) return a.value_ == b.value_;
  if (a.tag_ == XReal::Tag::Indet) return a.kind_ == b.kind_;
  return true;
}

XReal xadd(const XReal& a, const XReal& b) {
  if (a.is_indet()) return a;
  if (b.is_indet()) return b;
  if (a.is_finite() && b.is_finite()) return XReal::finite(a.value() + b.value());
  if (a.is_infinite() && b.is_infinite() && a.tag() != b.tag())
    return XReal::indet(IndetKind::InfMinusInf);
  return a.is_infinite() ? a : b;
}

XReal xneg(const XReal& a) {
  switch (a.tag()) {
    case XReal::Tag::Finite:
      return XReal::finite(-a.value());
    case XReal::Tag::PosInf:
      return XReal::neg_inf();
    case XReal::Tag::NegInf:
      return XReal::pos_inf();
    case XReal::Tag::Indet:
      break;
  }
  return a;
}

XReal xsub(const XReal& a, const XReal& b) { return xadd(a, xneg(b)); }

XReal xmul(const XReal& a, const XReal& b) {
  if (a.is_indet()) return a;
  if (b.is_indet()) return b;
  if (a.is_finite() && b.is_finite()) return XReal::finite(a.value() * b.value());
  const int sa = sign_of(a);
  const int sb = sign_of(b);
  if (sa == 0 || sb == 0) return XReal::indet(IndetKind::ZeroTimesInf);
  return signed_inf(sa * sb);
}

XReal xdiv(const XReal& a, const XReal& b) {
  if (a.is_indet()) return a;
  if (b.is_indet()) return b;
  if (b.is_zero()) {
    if (a.is_zero()) return XReal::indet(IndetKind::ZeroOverZero);
    return signed_inf(sign_of(a));
  }
  if (b.is_infinite()) {
    if (a.is_infinite()) return XReal::indet(IndetKind::InfOverInf);
    return XReal::finite(0.0);
  }
  if (a.is_infinite()) return signed_inf(sign_of(a) * sign_of(b));
  return XReal::finite(a.value() / b.value());
}

XReal xsum(std::span<const XReal> values) {
  XReal acc = XReal::finite(0.0);
  for (const auto& v : values) acc = xadd(acc, v);
  return acc;
}

std::weak_ordering xcompare(const XReal& a, const XReal& b) {
  if (a.is_indet() || b.is_indet())
    throw std::logic_error("xcompare: indeterminate operand");
  auto rank = [](const XReal& x) {
    return x.is_neg_inf() ? 0 : (x.is_finite() ? 1 : 2);
  };
  if (rank(a) != rank(b)) return rank(a) <=> rank(b);
  if (!a.is_finite()) return std::weak_ordering::equivalent;
  if (a.value() < b.value()) return std::weak_ordering::less;
  if (a.value() > b.value()) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

XReal xmax(std::span<const XReal> values) {
  if (values.empty()) throw std::invalid_argument("xmax of an empty sequence");
  for (const auto& v : values)
    if (v.is_indet()) return v;
  XReal best = values.front();
  for (const auto& v : values.subspan(1))
    if (xcompare(v, best) > 0) best = v;
  return best;
}

XReal xmin(const XReal& a, const XReal& b) {
  if (a.is_indet()) return a;
  if (b.is_indet()) return b;
  return xcompare(b, a) < 0 ? b : a;
}

std::string to_string(IndetKind kind) {
  switch (kind) {
    case IndetKind::ZeroTimesInf:
      return "0*inf";
    case IndetKind::InfMinusInf:
      return "inf-inf";
    case IndetKind::ZeroOverZero:
      return "0/0";
    case IndetKind::InfOverInf:
      return "inf/inf";
  }
  return "?";
}

std::string to_string(const XReal& x) {
  switch (x.tag()) {
    case XReal::Tag::Finite:
      return fmt::format("{}", x.value());
    case XReal::Tag::PosInf:
      return "+inf";
    case XReal::Tag::NegInf:
      return "-inf";
    case XReal::Tag::Indet:
      return "indet(" + to_string(x.indet_kind()) + ")";
  }
  return "?";
}

std::ostream& operator<<(std::ostream& os, const XReal& x) { return os << to_string(x); }

}  // namespace mifslab

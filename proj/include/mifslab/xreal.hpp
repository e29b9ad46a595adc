#pragma once

#include <compare>
#include <iosfwd>
#include <span>
#include <string>

namespace mifslab {

/// The undefined outcomes of extended-real arithmetic.
enum class IndetKind { ZeroTimesInf, InfMinusInf, ZeroOverZero, InfOverInf };

/// A value on the extended real line, or a tagged indeterminate form.
///
/// Finite payloads are never NaN or an infinity of the host type; negative
/// zero is stored as +0. Indeterminate values absorb under every operation.
class XReal {
 public:
  enum class Tag { Finite, PosInf, NegInf, Indet };

  /// Throws std::invalid_argument for NaN. Host infinities map to PosInf/NegInf.
  static XReal finite(double value);
  static XReal pos_inf() { return XReal(Tag::PosInf, 0.0, IndetKind::ZeroTimesInf); }
  static XReal neg_inf() { return XReal(Tag::NegInf, 0.0, IndetKind::ZeroTimesInf); }
  static XReal indet(IndetKind kind) { return XReal(Tag::Indet, 0.0, kind); }

  Tag tag() const { return tag_; }
  bool is_finite() const { return tag_ == Tag::Finite; }
  bool is_pos_inf() const { return tag_ == Tag::PosInf; }
  bool is_neg_inf() const { return tag_ == Tag::NegInf; }
  bool is_infinite() const { return is_pos_inf() || is_neg_inf(); }
  bool is_indet() const { return tag_ == Tag::Indet; }
  bool is_zero() const { return is_finite() && value_ == 0.0; }

  /// Payload of a Finite value; throws std::logic_error otherwise.
  double value() const;
  /// Kind of an Indet value; throws std::logic_error otherwise.
  IndetKind indet_kind() const;

  /// Structural equality: same tag, same finite payload, same indet kind.
  friend bool operator==(const XReal& a, const XReal& b);

 private:
  XReal(Tag tag, double value, IndetKind kind) : tag_(tag), value_(value), kind_(kind) {}

  Tag tag_;
  double value_;
  IndetKind kind_;
};

XReal xadd(const XReal& a, const XReal& b);
XReal xsub(const XReal& a, const XReal& b);
XReal xmul(const XReal& a, const XReal& b);
XReal xdiv(const XReal& a, const XReal& b);
XReal xneg(const XReal& a);

/// Left fold of xadd; the empty sum is Finite 0.
XReal xsum(std::span<const XReal> values);

/// Maximum under xcompare; any Indet operand makes the result Indet.
/// Throws std::invalid_argument on an empty sequence.
XReal xmax(std::span<const XReal> values);
/// Minimum of two values with the same Indet absorption as xmax.
XReal xmin(const XReal& a, const XReal& b);

/// Total order NegInf < Finite < PosInf. Calling it with an Indet operand is a
/// programming error and throws std::logic_error.
std::weak_ordering xcompare(const XReal& a, const XReal& b);

/// "1.5", "+inf", "-inf", "indet(0*inf)" and so on.
std::string to_string(const XReal& x);
std::string to_string(IndetKind kind);
std::ostream& operator<<(std::ostream& os, const XReal& x);

}  // namespace mifslab

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace basisdiv {

/// Error type thrown on violated preconditions, malformed input and
/// arithmetic faults (division by zero, field mismatch, ...).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class FieldKind { Rationals, PrimeField };

namespace detail {

inline bool is_prime_u64(std::uint64_t m) {
  if (m < 2) return false;
  if (m % 2 == 0) return m == 2;
  for (std::uint64_t d = 3; d * d <= m; d += 2)
    if (m % d == 0) return false;
  return true;
}

// p is kept below 2^31 so products of residues fit in 64 bits.
inline constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 31) - 1;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return (a * b) % p;
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw Error("division by zero");
  return pow_mod(a, p - 2, p);  // p prime
}

}  // namespace detail

/// Identifies the base field: the rationals, or integers modulo a prime.
class FieldDescriptor {
 public:
  static FieldDescriptor rationals() { return FieldDescriptor(FieldKind::Rationals, 0); }

  static FieldDescriptor prime(std::uint64_t p) {
    if (p > detail::kMaxModulus)
      throw Error("prime modulus too large: " + std::to_string(p));
    if (!detail::is_prime_u64(p))
      throw Error("modulus is not prime: " + std::to_string(p));
    return FieldDescriptor(FieldKind::PrimeField, p);
  }

  FieldKind kind() const { return kind_; }
  bool is_rationals() const { return kind_ == FieldKind::Rationals; }
  bool is_prime_field() const { return kind_ == FieldKind::PrimeField; }

  std::uint64_t modulus() const {
    if (!is_prime_field()) throw Error("field has no modulus");
    return p_;
  }

  bool operator==(const FieldDescriptor&) const = default;

  std::string to_string() const {
    return is_rationals() ? "Q" : "F" + std::to_string(p_);
  }

 private:
  FieldDescriptor(FieldKind k, std::uint64_t p) : kind_(k), p_(p) {}
  FieldKind kind_;
  std::uint64_t p_;
};

/// An exact field element: a reduced rational with arbitrary-precision
/// integer parts, or a residue in [0, p). Canonical form is an invariant,
/// so equality is structural.
class Scalar {
 public:
  static Scalar zero(const FieldDescriptor& f) { return from_integer(f, 0); }
  static Scalar one(const FieldDescriptor& f) { return from_integer(f, 1); }

  static Scalar from_integer(const FieldDescriptor& f, long long v) {
    if (f.is_rationals()) return Scalar(f, mpq_class(static_cast<long>(v)));
    std::uint64_t p = f.modulus();
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    return Scalar(f, static_cast<std::uint64_t>(r));
  }

  static Scalar rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw Error("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(FieldDescriptor::rationals(), q);
  }

  static Scalar residue(const FieldDescriptor& f, std::uint64_t r) {
    return Scalar(f, r % f.modulus());
  }

  const FieldDescriptor& field() const { return field_; }

  bool is_zero() const {
    if (field_.is_rationals()) return rat() == 0;
    return res() == 0;
  }

  bool is_one() const {
    if (field_.is_rationals()) return rat() == 1;
    return res() == 1 % field_.modulus();
  }

  Scalar operator-() const {
    if (field_.is_rationals()) return Scalar(field_, mpq_class(-rat()));
    std::uint64_t p = field_.modulus();
    return Scalar(field_, res() == 0 ? 0 : p - res());
  }

  Scalar& operator+=(const Scalar& o) {
    check_same_field(o);
    if (field_.is_rationals()) rat() += o.rat();
    else set_res((res() + o.res()) % field_.modulus());
    return *this;
  }

  Scalar& operator-=(const Scalar& o) {
    check_same_field(o);
    if (field_.is_rationals()) rat() -= o.rat();
    else {
      std::uint64_t p = field_.modulus();
      set_res((res() + p - o.res()) % p);
    }
    return *this;
  }

  Scalar& operator*=(const Scalar& o) {
    check_same_field(o);
    if (field_.is_rationals()) rat() *= o.rat();
    else set_res(detail::mul_mod(res(), o.res(), field_.modulus()));
    return *this;
  }

  Scalar& operator/=(const Scalar& o) {
    check_same_field(o);
    if (o.is_zero()) throw Error("division by zero");
    if (field_.is_rationals()) rat() /= o.rat();
    else set_res(detail::mul_mod(res(), detail::inv_mod(o.res(), field_.modulus()),
                                 field_.modulus()));
    return *this;
  }

  Scalar inverse() const {
    Scalar r = one(field_);
    r /= *this;
    return r;
  }

  bool operator==(const Scalar& o) const {
    if (field_ != o.field_) return false;
    if (field_.is_rationals()) return rat() == o.rat();
    return res() == o.res();
  }

  /// Total order inside one field; used only to make iteration and
  /// reported witnesses deterministic.
  static int compare(const Scalar& a, const Scalar& b) {
    if (a.field_ != b.field_) throw Error("field mismatch");
    if (a.field_.is_rationals()) return cmp(a.rat(), b.rat());
    return a.res() < b.res() ? -1 : a.res() > b.res() ? 1 : 0;
  }

  std::string render() const {
    if (field_.is_prime_field()) return std::to_string(res());
    const mpq_class& q = rat();
    std::string s = q.get_num().get_str();
    if (q.get_den() != 1) s += "/" + q.get_den().get_str();
    return s;
  }

  // Valid only in the matching field.
  const mpq_class& rational_value() const { return rat(); }
  std::uint64_t residue_value() const { return res(); }

 private:
  Scalar(const FieldDescriptor& f, mpq_class q) : field_(f), value_(std::move(q)) {}
  Scalar(const FieldDescriptor& f, std::uint64_t r) : field_(f), value_(r) {}

  mpq_class& rat() { return std::get<mpq_class>(value_); }
  const mpq_class& rat() const { return std::get<mpq_class>(value_); }
  std::uint64_t res() const { return std::get<std::uint64_t>(value_); }
  void set_res(std::uint64_t r) { value_ = r; }

  void check_same_field(const Scalar& o) const {
    if (field_ != o.field_)
      throw Error("field mismatch: " + field_.to_string() + " vs " + o.field_.to_string());
  }

  FieldDescriptor field_;
  std::variant<mpq_class, std::uint64_t> value_;
};

inline Scalar operator+(Scalar a, const Scalar& b) { a += b; return a; }
inline Scalar operator-(Scalar a, const Scalar& b) { a -= b; return a; }
inline Scalar operator*(Scalar a, const Scalar& b) { a *= b; return a; }
inline Scalar operator/(Scalar a, const Scalar& b) { a /= b; return a; }

/// Parses `-?digits(/digits)?`. Over F_p the value is interpreted mod p,
/// so "7" over F_5 is the residue 2 and "1/2" is 2^-1.
inline Scalar scalar_parse(const std::string& text, const FieldDescriptor& field) {
  auto fail = [&]() -> void { throw Error("malformed scalar: '" + text + "'"); };
  std::size_t i = 0;
  if (i < text.size() && text[i] == '-') ++i;
  std::size_t num_begin = i;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
  if (i == num_begin) fail();
  std::string num = text.substr(0, i);
  std::string den = "1";
  if (i < text.size()) {
    if (text[i] != '/') fail();
    std::size_t den_begin = ++i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    if (i == den_begin || i != text.size()) fail();
    den = text.substr(den_begin);
  }

  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw Error("zero denominator in scalar: '" + text + "'");
  if (field.is_rationals()) return Scalar::rational(n, d);

  std::uint64_t p = field.modulus();
  std::uint64_t rn = mpz_fdiv_ui(n.get_mpz_t(), static_cast<unsigned long>(p));
  std::uint64_t rd = mpz_fdiv_ui(d.get_mpz_t(), static_cast<unsigned long>(p));
  if (rd == 0)
    throw Error("denominator of '" + text + "' vanishes mod " + std::to_string(p));
  return Scalar::residue(field, detail::mul_mod(rn, detail::inv_mod(rd, p), p));
}

}  // namespace basisdiv

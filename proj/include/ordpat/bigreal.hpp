#pragma once

// Rigorous interval arithmetic over MPFR: a BigReal is an interval [lo, hi]
// whose endpoints are rounded outward, so every true value computed by the same
// expression lies inside it.

#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "ordpat/error.hpp"

namespace ordpat {

namespace detail {

inline mpfr_prec_t initial_precision() {
  if (const char* env = std::getenv("ORDPAT_PRECISION")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 64 && v <= (1L << 20)) return static_cast<mpfr_prec_t>(v);
    throw invalid_input("ORDPAT_PRECISION must be an integer in [64, 1048576]");
  }
  return 256;
}

inline void widen_exponent_range() {
  static const bool done = [] {
    mpfr_set_emax(mpfr_get_emax_max());
    mpfr_set_emin(mpfr_get_emin_min());
    return true;
  }();
  (void)done;
}

}  // namespace detail

/// Working precision in bits for newly computed BigReals (default 256, or the
/// ORDPAT_PRECISION environment variable).
inline mpfr_prec_t& working_precision() {
  static mpfr_prec_t bits = detail::initial_precision();
  return bits;
}

/// Sets the working precision for the lifetime of the guard.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(mpfr_prec_t bits) : saved_(working_precision()) { working_precision() = bits; }
  ~PrecisionGuard() { working_precision() = saved_; }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  mpfr_prec_t saved_;
};

class BigReal {
 public:
  BigReal() : BigReal(0L) {}
  BigReal(long v) {  // NOLINT: implicit by design, integers are exact
    init();
    mpfr_set_si(lo_, v, MPFR_RNDD);
    mpfr_set_si(hi_, v, MPFR_RNDU);
  }
  BigReal(int v) : BigReal(static_cast<long>(v)) {}  // NOLINT
  explicit BigReal(double v) {
    init();
    mpfr_set_d(lo_, v, MPFR_RNDD);
    mpfr_set_d(hi_, v, MPFR_RNDU);
  }
  explicit BigReal(const mpq_class& q) {
    init();
    mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
  }
  explicit BigReal(const mpz_class& z) {
    init();
    mpfr_set_z(lo_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi_, z.get_mpz_t(), MPFR_RNDU);
  }
  /// Parses a decimal string; the enclosure contains the exact decimal value.
  static BigReal from_string(const std::string& s) {
    BigReal r;
    if (mpfr_set_str(r.lo_, s.c_str(), 10, MPFR_RNDD) != 0 && !mpfr_number_p(r.lo_))
      throw invalid_input("not a number: " + s);
    if (mpfr_set_str(r.hi_, s.c_str(), 10, MPFR_RNDU) != 0 && !mpfr_number_p(r.hi_))
      throw invalid_input("not a number: " + s);
    if (mpfr_nan_p(r.lo_)) throw invalid_input("not a number: " + s);
    return r;
  }
  static BigReal hull(const BigReal& a, const BigReal& b) {
    BigReal r;
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }
  static BigReal pi() {
    BigReal r;
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
  }
  static BigReal ln2() {
    BigReal r;
    mpfr_const_log2(r.lo_, MPFR_RNDD);
    mpfr_const_log2(r.hi_, MPFR_RNDU);
    return r;
  }

  BigReal(const BigReal& o) {
    init(std::max(mpfr_get_prec(o.lo_), working_precision()));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  BigReal(BigReal&& o) noexcept {
    init(mpfr_get_prec(o.lo_));
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }
  BigReal& operator=(const BigReal& o) {
    if (this != &o) {
      mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
      mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
      mpfr_set(lo_, o.lo_, MPFR_RNDD);
      mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
  }
  BigReal& operator=(BigReal&& o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
  }
  ~BigReal() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }
  double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_d() const {
    BigReal m;
    mpfr_add(m.lo_, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m.lo_, m.lo_, 1, MPFR_RNDN);
    return mpfr_get_d(m.lo_, MPFR_RNDN);
  }
  bool is_finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }
  bool is_point() const { return mpfr_equal_p(lo_, hi_); }

  /// hi - lo, rounded up.
  BigReal width() const {
    BigReal w;
    mpfr_sub(w.hi_, hi_, lo_, MPFR_RNDU);
    mpfr_set(w.lo_, w.hi_, MPFR_RNDD);
    return w;
  }
  /// The point interval at the upper (lower) endpoint.
  BigReal upper() const {
    BigReal r;
    mpfr_set(r.lo_, hi_, MPFR_RNDD);
    mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
  }
  BigReal lower() const {
    BigReal r;
    mpfr_set(r.lo_, lo_, MPFR_RNDD);
    mpfr_set(r.hi_, lo_, MPFR_RNDU);
    return r;
  }
  /// Largest integer not exceeding the lower endpoint, as a point.
  BigReal floor_lower() const {
    BigReal r;
    mpfr_floor(r.lo_, lo_);
    mpfr_set(r.hi_, r.lo_, MPFR_RNDU);
    return r;
  }
  bool contains(const BigReal& x) const {
    return mpfr_lessequal_p(lo_, x.lo_) && mpfr_greaterequal_p(hi_, x.hi_);
  }

  /// +1 if certainly positive, -1 if certainly negative, 0 if the sign is unknown
  /// (or the value is exactly zero).
  int sign_or_zero() const {
    if (mpfr_sgn(lo_) > 0) return 1;
    if (mpfr_sgn(hi_) < 0) return -1;
    return 0;
  }
  bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }
  bool certainly_nonnegative() const { return mpfr_sgn(lo_) >= 0; }
  bool certainly_negative() const { return mpfr_sgn(hi_) < 0; }

  std::string str(int digits = 6) const {
    return "[" + endpoint(lo_, digits, MPFR_RNDD) + ", " + endpoint(hi_, digits, MPFR_RNDU) + "]";
  }
  /// The midpoint in "%.6Re" style, for reports.
  std::string mid_str(int digits = 6) const {
    BigReal m;
    mpfr_add(m.lo_, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m.lo_, m.lo_, 1, MPFR_RNDN);
    return endpoint(m.lo_, digits, MPFR_RNDN);
  }

  friend BigReal operator-(const BigReal& a) {
    BigReal r;
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    return r;
  }
  friend BigReal operator+(const BigReal& a, const BigReal& b) {
    BigReal r;
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }
  friend BigReal operator-(const BigReal& a, const BigReal& b) {
    BigReal r;
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
  }
  friend BigReal operator*(const BigReal& a, const BigReal& b) {
    BigReal r, t;
    mpfr_srcptr as[2] = {a.lo_, a.hi_};
    mpfr_srcptr bs[2] = {b.lo_, b.hi_};
    mpfr_set_inf(r.lo_, 1);
    mpfr_set_inf(r.hi_, -1);
    for (auto x : as)
      for (auto y : bs) {
        mpfr_mul(t.lo_, x, y, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t.lo_, MPFR_RNDD);
        mpfr_mul(t.hi_, x, y, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t.hi_, MPFR_RNDU);
      }
    return r;
  }
  friend BigReal operator/(const BigReal& a, const BigReal& b) {
    if (b.sign_or_zero() == 0) throw inconclusive("division by an interval containing zero");
    BigReal r, t;
    mpfr_srcptr as[2] = {a.lo_, a.hi_};
    mpfr_srcptr bs[2] = {b.lo_, b.hi_};
    mpfr_set_inf(r.lo_, 1);
    mpfr_set_inf(r.hi_, -1);
    for (auto x : as)
      for (auto y : bs) {
        mpfr_div(t.lo_, x, y, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t.lo_, MPFR_RNDD);
        mpfr_div(t.hi_, x, y, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t.hi_, MPFR_RNDU);
      }
    return r;
  }
  BigReal& operator+=(const BigReal& b) { return *this = *this + b; }
  BigReal& operator-=(const BigReal& b) { return *this = *this - b; }
  BigReal& operator*=(const BigReal& b) { return *this = *this * b; }
  BigReal& operator/=(const BigReal& b) { return *this = *this / b; }

  /// Scales by 2^k exactly.
  friend BigReal ldexp(const BigReal& a, long k) {
    BigReal r;
    mpfr_mul_2si(r.lo_, a.lo_, k, MPFR_RNDD);
    mpfr_mul_2si(r.hi_, a.hi_, k, MPFR_RNDU);
    return r;
  }

  // Monotone increasing functions are applied endpoint-wise.
  friend BigReal exp(const BigReal& a) { return a.increasing(mpfr_exp); }
  friend BigReal expm1(const BigReal& a) { return a.increasing(mpfr_expm1); }
  friend BigReal log(const BigReal& a) {
    if (mpfr_sgn(a.lo_) <= 0) throw inconclusive("log of an interval not certainly positive");
    return a.increasing(mpfr_log);
  }
  friend BigReal log2(const BigReal& a) {
    if (mpfr_sgn(a.lo_) <= 0) throw inconclusive("log2 of an interval not certainly positive");
    return a.increasing(mpfr_log2);
  }
  friend BigReal log1p(const BigReal& a) {
    if (mpfr_cmp_si(a.lo_, -1) <= 0) throw inconclusive("log1p argument not certainly above -1");
    return a.increasing(mpfr_log1p);
  }
  /// x^y for x > 0.
  friend BigReal pow(const BigReal& x, const BigReal& y) { return exp(y * log(x)); }

  friend bool certainly_less(const BigReal& a, const BigReal& b) { return mpfr_less_p(a.hi_, b.lo_); }
  friend bool certainly_le(const BigReal& a, const BigReal& b) { return mpfr_lessequal_p(a.hi_, b.lo_); }
  friend bool certainly_greater(const BigReal& a, const BigReal& b) { return certainly_less(b, a); }
  friend bool certainly_ge(const BigReal& a, const BigReal& b) { return certainly_le(b, a); }

  /// Decides a <= b, or throws inconclusive if the intervals overlap.
  friend bool decide_le(const BigReal& a, const BigReal& b) {
    if (certainly_le(a, b)) return true;
    if (certainly_less(b, a)) return false;
    throw inconclusive("cannot decide " + a.str() + " <= " + b.str());
  }
  friend bool decide_less(const BigReal& a, const BigReal& b) {
    if (certainly_less(a, b)) return true;
    if (certainly_le(b, a)) return false;
    throw inconclusive("cannot decide " + a.str() + " < " + b.str());
  }

 private:
  void init(mpfr_prec_t prec = working_precision()) {
    detail::widen_exponent_range();
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
  }
  template <class F>
  BigReal increasing(F f) const {
    BigReal r;
    f(r.lo_, lo_, MPFR_RNDD);
    f(r.hi_, hi_, MPFR_RNDU);
    return r;
  }
  static std::string endpoint(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
    char* buf = nullptr;
    const std::string fmt = "%." + std::to_string(digits) + "R" + (rnd == MPFR_RNDD ? "D" : rnd == MPFR_RNDU ? "U" : "N") + "e";
    mpfr_asprintf(&buf, fmt.c_str(), x);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  mpfr_t lo_, hi_;
};

/// Runs f at the working precision, doubling it on `inconclusive` up to max_bits.
template <class F>
auto with_precision_escalation(F&& f, mpfr_prec_t max_bits = 1 << 14) {
  for (mpfr_prec_t bits = working_precision();; bits *= 2) {
    PrecisionGuard guard(bits);
    try {
      return f();
    } catch (const inconclusive&) {
      if (bits * 2 > max_bits) throw;
    }
  }
}

}  // namespace ordpat

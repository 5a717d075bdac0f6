#ifndef CFBAC_TEST_ORACLE_HPP
#define CFBAC_TEST_ORACLE_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

// Plain MPFR evaluation used as an independent reference; it never calls
// into the library.
class Ref {
 public:
  explicit Ref(double x = 0, mpfr_prec_t bits = 4096) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  Ref(const mpq_class& q, mpfr_prec_t bits = 4096) {  // NOLINT
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  Ref(const Ref& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Ref& operator=(const Ref& o) {
    mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~Ref() { mpfr_clear(v_); }

  static Ref pi() {
    Ref r;
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  static Ref sqrt(const Ref& a) {
    Ref r;
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  // (p + q sqrt(d)) / r
  static Ref surd(long p, long q, long d, long r) {
    Ref s = sqrt(Ref(static_cast<double>(d)));
    return (Ref(static_cast<double>(p)) + Ref(static_cast<double>(q)) * s) / Ref(static_cast<double>(r));
  }

  friend Ref operator+(const Ref& a, const Ref& b) { return op(a, b, mpfr_add); }
  friend Ref operator-(const Ref& a, const Ref& b) { return op(a, b, mpfr_sub); }
  friend Ref operator*(const Ref& a, const Ref& b) { return op(a, b, mpfr_mul); }
  friend Ref operator/(const Ref& a, const Ref& b) { return op(a, b, mpfr_div); }
  friend bool operator<(const Ref& a, const Ref& b) { return mpfr_less_p(a.v_, b.v_); }

  Ref abs() const {
    Ref r;
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }
  mpz_class floor() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
    return z;
  }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  mpfr_srcptr get() const { return v_; }

 private:
  template <class F>
  static Ref op(const Ref& a, const Ref& b, F f) {
    Ref r;
    f(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
};

#endif

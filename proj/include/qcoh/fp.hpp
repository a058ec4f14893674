#pragma once

#include <cstdint>
#include <ostream>

#include <Eigen/Core>

namespace qcoh {

// Prime field F_P with P a compile-time prime. Values live in [0, P).
// Division is exact (Fermat inverse), so this is a legitimate Eigen scalar
// for exact elimination.
template <unsigned P>
class Fp {
  static_assert(P >= 2, "modulus must be a prime >= 2");
  uint32_t v_;

  static constexpr uint32_t reduce(long long x) {
    long long r = x % static_cast<long long>(P);
    if (r < 0) r += P;
    return static_cast<uint32_t>(r);
  }

 public:
  constexpr Fp() : v_(0) {}
  constexpr Fp(long long x) : v_(reduce(x)) {}

  constexpr uint32_t value() const { return v_; }
  constexpr bool is_zero() const { return v_ == 0; }

  friend constexpr Fp operator+(Fp a, Fp b) { return Fp(static_cast<long long>(a.v_) + b.v_); }
  friend constexpr Fp operator-(Fp a, Fp b) { return Fp(static_cast<long long>(a.v_) - b.v_); }
  friend constexpr Fp operator*(Fp a, Fp b) { return Fp(static_cast<long long>(a.v_) * b.v_); }
  constexpr Fp operator-() const { return Fp(-static_cast<long long>(v_)); }

  constexpr Fp inverse() const {
    // Fermat: v^(P-2). P is prime and v != 0.
    long long r = 1, b = v_;
    unsigned e = P - 2;
    while (e) {
      if (e & 1u) r = r * b % P;
      b = b * b % P;
      e >>= 1u;
    }
    return Fp(r);
  }

  friend constexpr Fp operator/(Fp a, Fp b) { return a * b.inverse(); }

  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  Fp& operator/=(Fp o) { return *this = *this / o; }

  friend constexpr bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
  friend constexpr bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }

  friend std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.v_; }
};

}  // namespace qcoh

namespace Eigen {

template <unsigned P>
struct NumTraits<qcoh::Fp<P>> : GenericNumTraits<qcoh::Fp<P>> {
  typedef qcoh::Fp<P> Real;
  typedef qcoh::Fp<P> NonInteger;
  typedef qcoh::Fp<P> Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 0,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 2
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

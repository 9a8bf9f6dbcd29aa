#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kahler {

/// Thrown when an exact computation would leave the 64-bit range. Exact mode
/// never rounds, so the only honest response is to stop.
class ExactOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

namespace detail {

using i128 = __int128;

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

inline i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw ExactOverflow("rational overflow");
  return static_cast<std::int64_t>(v);
}

}  // namespace detail

/// Reduced fraction num/den with den > 0.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  static Rational parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
      return s;
    };
    auto to_int = [](std::string_view s) -> std::int64_t {
      if (s.empty()) throw std::invalid_argument("empty integer in rational literal");
      std::size_t pos = 0;
      std::string owned(s);
      long long v = 0;
      try {
        v = std::stoll(owned, &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal '" + owned + "'");
      }
      if (pos != owned.size()) throw std::invalid_argument("bad rational literal '" + owned + "'");
      return v;
    };
    text = trim(text);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(to_int(text));
    auto d = to_int(trim(text.substr(slash + 1)));
    if (d == 0) throw std::invalid_argument("zero denominator in rational literal");
    return Rational(to_int(trim(text.substr(0, slash))), d);
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  constexpr bool is_zero() const { return num_ == 0; }
  constexpr bool is_integer() const { return den_ == 1; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  Rational operator-() const {
    Rational r;
    r.num_ = detail::narrow(-static_cast<detail::i128>(num_));
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.num_ == 0) return b;
    if (b.num_ == 0) return a;
    if (a.den_ == b.den_) {
      return from_wide(static_cast<detail::i128>(a.num_) + b.num_, a.den_);
    }
    detail::i128 n = static_cast<detail::i128>(a.num_) * b.den_ + static_cast<detail::i128>(b.num_) * a.den_;
    detail::i128 d = static_cast<detail::i128>(a.den_) * b.den_;
    return from_wide(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.num_ == 0 || b.num_ == 0) return {};
    if (a.den_ == 1 && b.den_ == 1) {
      return Rational(detail::narrow(static_cast<detail::i128>(a.num_) * b.num_));
    }
    return from_wide(static_cast<detail::i128>(a.num_) * b.num_, static_cast<detail::i128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from_wide(static_cast<detail::i128>(a.num_) * b.den_, static_cast<detail::i128>(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<detail::i128>(a.num_) * b.den_ < static_cast<detail::i128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }

  friend Rational abs(const Rational& a) { return a.num_ < 0 ? -a : a; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void assign(detail::i128 n, detail::i128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    auto g = detail::gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    num_ = detail::narrow(n);
    den_ = detail::narrow(d);
  }
  static Rational from_wide(detail::i128 n, detail::i128 d) {
    Rational r;
    r.assign(n, d);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Complex number with rational real and imaginary parts.
class GaussianRational {
 public:
  constexpr GaussianRational() = default;
  constexpr GaussianRational(std::int64_t re) : re_(re) {}  // NOLINT(implicit)
  GaussianRational(Rational re) : re_(re) {}                  // NOLINT(implicit)
  GaussianRational(Rational re, Rational im) : re_(re), im_(im) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  GaussianRational conj() const { return {re_, -im_}; }

  GaussianRational operator-() const { return {-re_, -im_}; }
  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    if (a.im_.is_zero() && b.im_.is_zero()) return {a.re_ * b.re_, Rational(0)};
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    Rational n2 = b.re_ * b.re_ + b.im_ * b.im_;
    if (n2.is_zero()) throw std::domain_error("gaussian rational division by zero");
    GaussianRational p = a * b.conj();
    return {p.re_ / n2, p.im_ / n2};
  }
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
  GaussianRational& operator/=(const GaussianRational& o) { return *this = *this / o; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) = default;

  std::string str() const {
    if (im_.is_zero()) return re_.str();
    auto im_part = [&] {
      if (im_ == Rational(1)) return std::string("i");
      if (im_ == Rational(-1)) return std::string("-i");
      return im_.str() + "i";
    };
    if (re_.is_zero()) return im_part();
    std::string s = re_.str();
    std::string ip = im_part();
    if (ip.front() != '-') s += "+";
    return s + ip;
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

 private:
  Rational re_;
  Rational im_;
};

using Complex = std::complex<double>;

/// Uniform access to the two scalar modes. `exact` decides whether zero tests
/// are literal or use a tolerance.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr bool exact = true;
  static constexpr const char* mode = "exact";
  static GaussianRational from(const Rational& re, const Rational& im = Rational(0)) { return {re, im}; }
  static GaussianRational i() { return GaussianRational::i(); }
  static GaussianRational conj(const GaussianRational& z) { return z.conj(); }
  static bool is_zero(const GaussianRational& z, double /*tol*/) { return z.is_zero(); }
  /// max(|re|, |im|), the entrywise size used for residuals.
  static double magnitude(const GaussianRational& z) {
    return std::max(std::abs(z.real().to_double()), std::abs(z.imag().to_double()));
  }
  static std::string str(const GaussianRational& z) { return z.str(); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr const char* mode = "float";
  static Complex from(const Rational& re, const Rational& im = Rational(0)) {
    return {re.to_double(), im.to_double()};
  }
  static Complex i() { return {0.0, 1.0}; }
  static Complex conj(const Complex& z) { return std::conj(z); }
  static bool is_zero(const Complex& z, double tol) { return magnitude(z) <= tol; }
  static double magnitude(const Complex& z) { return std::max(std::abs(z.real()), std::abs(z.imag())); }
  static std::string str(const Complex& z) {
    std::ostringstream os;
    os.precision(17);
    if (z.imag() == 0.0) {
      os << z.real();
    } else {
      os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    }
    return os.str();
  }
};

template <class S>
concept Scalar = requires { ScalarTraits<S>::exact; };

/// i^k for any integer k.
template <Scalar S>
S i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return ScalarTraits<S>::from(Rational(1));
    case 1: return ScalarTraits<S>::i();
    case 2: return ScalarTraits<S>::from(Rational(-1));
    default: return ScalarTraits<S>::from(Rational(0), Rational(-1));
  }
}

/// Default tolerance for floating mode comparisons.
inline constexpr double kDefaultTolerance = 1e-10;

}  // namespace kahler

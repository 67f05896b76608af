#pragma once

// Exact scalars: arbitrary-precision rationals and the dual numbers Q[eps]/(eps^2).

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace hlemb {

using Rat = mpq_class;

/// Parses "p/q" or an integer literal; rejects zero denominators and junk.
inline Rat parse_rat(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    auto b = t.find_first_not_of(" \t");
    auto e = t.find_last_not_of(" \t");
    t = (b == std::string::npos) ? std::string{} : t.substr(b, e - b + 1);
  };
  trim(s);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto check_int = [&](const std::string& part, bool allow_sign) {
    if (part.empty()) throw std::invalid_argument("malformed rational '" + s + "'");
    std::size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) throw std::invalid_argument("malformed rational '" + s + "'");
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9')
        throw std::invalid_argument("malformed rational '" + s + "'");
  };
  check_int(num, true);
  check_int(den, false);
  mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

/// Element of Q[eps]/(eps^2); products drop the eps^2 term.
struct Dual {
  Rat re;
  Rat eps;

  Dual() = default;
  Dual(const Rat& r) : re(r) {}  // NOLINT(google-explicit-constructor)
  Dual(long v) : re(v) {}        // NOLINT(google-explicit-constructor)
  Dual(int v) : re(v) {}         // NOLINT(google-explicit-constructor)
  Dual(Rat r, Rat e) : re(std::move(r)), eps(std::move(e)) {}

  Dual& operator+=(const Dual& o) {
    re += o.re;
    eps += o.eps;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    re -= o.re;
    eps -= o.eps;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    Rat e = re * o.eps + eps * o.re;
    re *= o.re;
    eps = std::move(e);
    return *this;
  }
  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator-(const Dual& a) { return Dual(Rat(-a.re), Rat(-a.eps)); }
  friend bool operator==(const Dual& a, const Dual& b) { return a.re == b.re && a.eps == b.eps; }
};

inline bool is_zero(const Dual& d) { return sgn(d.re) == 0 && sgn(d.eps) == 0; }

inline std::string to_string(const Dual& d) {
  if (is_zero(d.eps)) return d.re.get_str();
  return d.re.get_str() + "+(" + d.eps.get_str() + ")eps";
}

/// (-1)^k
constexpr int sign_pow(long k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace hlemb

#include "superloop/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace superloop {

namespace {

bool valid_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat rat_from_string(const std::string& s) {
  auto bad = [&]() -> std::invalid_argument {
    return std::invalid_argument("not a rational: '" + s + "'");
  };
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw bad();

  auto slash = t.find('/');
  if (slash != std::string::npos) {
    std::string num = t.substr(0, slash), den = t.substr(slash + 1);
    if (!valid_integer_token(num) || !valid_integer_token(den)) throw bad();
    mpz_class n(num), d(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    Rat r(n, d);
    r.canonicalize();
    return r;
  }

  auto dot = t.find('.');
  if (dot != std::string::npos) {
    std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
    if (ip.empty() || ip == "-" || ip == "+") ip += "0";
    if (!valid_integer_token(ip)) throw bad();
    for (char c : fp)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
    mpz_class scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    mpz_class whole(ip);
    mpz_class frac = fp.empty() ? mpz_class(0) : mpz_class(fp);
    bool neg = t[0] == '-';
    mpz_class n = whole * scale + (neg ? -frac : frac);
    Rat r(n, scale);
    r.canonicalize();
    return r;
  }

  if (!valid_integer_token(t)) throw bad();
  return Rat(mpz_class(t));
}

std::string rat_to_string(const Rat& x) { return x.get_str(); }

Rat rat_pow(const Rat& x, long e) {
  if (e == 0) return Rat(1);
  if (x == 0) {
    if (e < 0) throw std::domain_error("0 raised to a negative power");
    return Rat(0);
  }
  Rat base = e > 0 ? x : Rat(1) / x;
  unsigned long n = e > 0 ? static_cast<unsigned long>(e)
                          : static_cast<unsigned long>(-e);
  Rat acc(1);
  while (n) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

Rat rat_frac(long num, long den) {
  if (den == 0) throw std::invalid_argument("rat_frac: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

bool rat_is_integer(const Rat& x) { return x.get_den() == 1; }

long rat_to_long(const Rat& x) {
  if (!rat_is_integer(x)) throw std::domain_error("not an integer: " + x.get_str());
  if (!x.get_num().fits_slong_p()) throw std::domain_error("integer overflow");
  return x.get_num().get_si();
}

std::string vec_to_string(const std::vector<Rat>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].get_str();
  }
  return out + "]";
}

}  // namespace superloop

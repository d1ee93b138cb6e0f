#include "superloop/laurent.hpp"

#include <algorithm>
#include <stdexcept>

namespace superloop {

LaurentPoly LaurentPoly::t_power(long n, const Rat& c) {
  LaurentPoly p;
  if (c != 0) p.coeff[n] = c;
  return p;
}

LaurentPoly LaurentPoly::from_poly(const std::vector<Rat>& ascending) {
  LaurentPoly p;
  for (std::size_t i = 0; i < ascending.size(); ++i)
    if (ascending[i] != 0) p.coeff[static_cast<long>(i)] = ascending[i];
  return p;
}

void LaurentPoly::set(long deg, const Rat& c) {
  if (c == 0)
    coeff.erase(deg);
  else
    coeff[deg] = c;
}

Rat LaurentPoly::at(long deg) const {
  auto it = coeff.find(deg);
  return it == coeff.end() ? Rat(0) : it->second;
}

Rat LaurentPoly::eval(const Rat& x) const {
  Rat s(0);
  for (const auto& [d, c] : coeff) s += c * rat_pow(x, d);
  return s;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly p = *this;
  for (const auto& [d, c] : o.coeff) p.set(d, p.at(d) + c);
  return p;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly p;
  for (const auto& [d1, c1] : coeff)
    for (const auto& [d2, c2] : o.coeff) p.set(d1 + d2, p.at(d1 + d2) + c1 * c2);
  return p;
}

LaurentPoly LaurentPoly::scaled(const Rat& c) const {
  LaurentPoly p;
  if (c == 0) return p;
  for (const auto& [d, v] : coeff) p.coeff[d] = v * c;
  return p;
}

std::string LaurentPoly::str() const {
  if (coeff.empty()) return "0";
  std::string s;
  for (const auto& [d, c] : coeff) {
    if (!s.empty()) s += " + ";
    s += rat_to_string(c);
    if (d != 0) s += "*t^" + std::to_string(d);
  }
  return s;
}

std::vector<Rat> expand_root_poly(const std::vector<Rat>& points,
                                  const std::vector<long>& mults) {
  std::vector<Rat> p{Rat(1)};
  for (std::size_t j = 0; j < points.size(); ++j)
    for (long k = 0; k < mults[j]; ++k) {
      std::vector<Rat> q(p.size() + 1, Rat(0));
      for (std::size_t i = 0; i < p.size(); ++i) {
        q[i + 1] += p[i];
        q[i] -= points[j] * p[i];
      }
      p = std::move(q);
    }
  return p;
}

IdealSpec::IdealSpec(std::vector<Rat> points, std::vector<long> mults)
    : points_(std::move(points)), mults_(std::move(mults)) {
  if (points_.empty() || points_.size() != mults_.size())
    throw std::invalid_argument("IdealSpec: need matching nonempty points/mults");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i] == 0) throw std::invalid_argument("IdealSpec: zero root");
    if (mults_[i] < 1) throw std::invalid_argument("IdealSpec: multiplicity < 1");
    for (std::size_t j = i + 1; j < points_.size(); ++j)
      if (points_[i] == points_[j])
        throw std::invalid_argument("IdealSpec: repeated root " + rat_to_string(points_[i]));
  }
  theta_ = 0;
  for (long b : mults_) theta_ += b;
  pcoeff_ = expand_root_poly(points_, mults_);
}

bool IdealSpec::is_radical() const {
  return std::all_of(mults_.begin(), mults_.end(), [](long b) { return b == 1; });
}

IdealSpec IdealSpec::radical() const {
  return IdealSpec(points_, std::vector<long>(points_.size(), 1));
}

std::vector<Rat> IdealSpec::reduce_power(long n) const {
  const long th = theta_;
  std::vector<Rat> v(th, Rat(0));
  if (n >= 0 && n < th) {
    v[n] = 1;
    return v;
  }
  if (n >= th) {
    v = reduce_power(n - 1);
    // multiply by t: t^{theta-1} spills over via t^theta = -sum c_i t^i
    Rat top = v[th - 1];
    for (long i = th - 1; i > 0; --i) v[i] = v[i - 1];
    v[0] = 0;
    if (top != 0)
      for (long i = 0; i < th; ++i) v[i] -= top * pcoeff_[i];
    return v;
  }
  // n < 0: multiply by t^{-1}; c_0 != 0 because every root is nonzero
  v = reduce_power(n + 1);
  Rat low = v[0];
  for (long i = 0; i + 1 < th; ++i) v[i] = v[i + 1];
  v[th - 1] = 0;
  if (low != 0) {
    // t^{-1} = -(1/c_0) (c_1 + c_2 t + ... + c_theta t^{theta-1})
    Rat inv = -low / pcoeff_[0];
    for (long i = 0; i < th; ++i) v[i] += inv * pcoeff_[i + 1];
  }
  return v;
}

bool operator==(const IdealSpec& a, const IdealSpec& b) {
  std::vector<std::pair<Rat, long>> x, y;
  for (std::size_t i = 0; i < a.points_.size(); ++i) x.push_back({a.points_[i], a.mults_[i]});
  for (std::size_t i = 0; i < b.points_.size(); ++i) y.push_back({b.points_[i], b.mults_[i]});
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

std::string IdealSpec::str() const {
  std::string s = "(";
  for (std::size_t j = 0; j < points_.size(); ++j) {
    if (j) s += " ";
    s += "(t-" + rat_to_string(points_[j]) + ")";
    if (mults_[j] > 1) s += "^" + std::to_string(mults_[j]);
  }
  return s + ")";
}

}  // namespace superloop

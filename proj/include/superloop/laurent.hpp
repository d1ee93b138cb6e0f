#pragma once

#include <map>
#include <string>
#include <vector>

#include "superloop/rational.hpp"

namespace superloop {

/// Element of Q[t, t^-1] with finitely many nonzero coefficients.
struct LaurentPoly {
  std::map<long, Rat> coeff;

  static LaurentPoly t_power(long n, const Rat& c = Rat(1));
  static LaurentPoly from_poly(const std::vector<Rat>& ascending);  // c_0 + c_1 t + ...

  bool is_zero() const { return coeff.empty(); }
  void set(long deg, const Rat& c);
  Rat at(long deg) const;
  Rat eval(const Rat& x) const;  // x != 0 when negative degrees are present

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly scaled(const Rat& c) const;
  std::string str() const;
};

/// Co-finite ideal (P(t)) with P = prod_j (t - a_j)^{b_j}, a_j distinct and
/// nonzero. Also the characteristic data of the order-theta recurrence
/// sum_i c_i tau_{i+m} = 0.
class IdealSpec {
 public:
  IdealSpec(std::vector<Rat> points, std::vector<long> mults);

  const std::vector<Rat>& points() const { return points_; }
  const std::vector<long>& mults() const { return mults_; }
  long theta() const { return theta_; }
  /// Monic coefficients c_0..c_theta of P(t).
  const std::vector<Rat>& pcoeff() const { return pcoeff_; }
  LaurentPoly poly() const { return LaurentPoly::from_poly(pcoeff_); }

  bool is_radical() const;
  IdealSpec radical() const;

  /// Representative of t^n mod P as coefficients over 1, t, ..., t^{theta-1}.
  std::vector<Rat> reduce_power(long n) const;

  /// Same points after sorting; used for permutation-free comparisons.
  friend bool operator==(const IdealSpec& a, const IdealSpec& b);
  std::string str() const;

 private:
  std::vector<Rat> points_;
  std::vector<long> mults_;
  long theta_ = 0;
  std::vector<Rat> pcoeff_;
};

/// Monic product prod (t - a_j)^{b_j} as ascending coefficients.
std::vector<Rat> expand_root_poly(const std::vector<Rat>& points,
                                  const std::vector<long>& mults);

}  // namespace superloop

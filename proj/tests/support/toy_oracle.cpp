#include "support/toy_oracle.hpp"

#include <functional>

namespace cfsem::testing::toy {

namespace {

Rational bern(int bit, const Rational& p_one) { return bit ? p_one : Rational(1) - p_one; }

// Sum of P(u) over the tuples where `pred(L, A, Y, Y_forced)` holds.
Rational sum_where(int forced_a, const std::function<bool(int, int, int, int)>& pred) {
  Rational total = 0;
  for (int ul = 0; ul < 2; ++ul) {
    for (int ua = 0; ua < 2; ++ua) {
      for (int uy = 0; uy < 2; ++uy) {
        const int l = ul;
        const int a = l ^ ua;
        const int y = (a & l) ^ uy;
        const int y_forced = (forced_a & l) ^ uy;
        if (pred(l, a, y, y_forced)) {
          total += bern(ul, Rational(1, 2)) * bern(ua, Rational(3, 10)) * bern(uy, Rational(1, 10));
        }
      }
    }
  }
  return total;
}

}  // namespace

Rational joint(int l, int a, int y) {
  return sum_where(0, [&](int L, int A, int Y, int) { return L == l && A == a && Y == y; });
}

Rational counterfactual(int a, int y) {
  return sum_where(a, [&](int, int, int, int Ya) { return Ya == y; });
}

Rational conditional_y(int y, int a, int l) {
  return joint(l, a, y) / (joint(l, a, 0) + joint(l, a, 1));
}

Rational adjusted(int a, int y) {
  Rational total = 0;
  for (int l = 0; l < 2; ++l) {
    Rational pl = 0;
    for (int aa = 0; aa < 2; ++aa) {
      for (int yy = 0; yy < 2; ++yy) pl += joint(l, aa, yy);
    }
    total += conditional_y(y, a, l) * pl;
  }
  return total;
}

Rational counterfactual_given_treatment(int a, int y, int a_obs) {
  Rational both = sum_where(a, [&](int, int A, int, int Ya) { return A == a_obs && Ya == y; });
  Rational treated = sum_where(a, [&](int, int A, int, int) { return A == a_obs; });
  return both / treated;
}

}  // namespace cfsem::testing::toy

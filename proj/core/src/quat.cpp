#include "biquat/quat.hpp"

namespace biquat {

namespace {
constexpr Complex kI{0.0, 1.0};
}

QuatStd to_std(const Quat& a) {
  // e1=(1+iI)/2, e2=(1-iI)/2, e3=(iJ-K)/2, e4=(iJ+K)/2.
  return {0.5 * (a.q1 + a.q2),
          0.5 * kI * (a.q1 - a.q2),
          0.5 * kI * (a.q3 + a.q4),
          0.5 * (a.q4 - a.q3)};
}

Quat from_std(const QuatStd& s) {
  // 1 = e1+e2, I = -i e1 + i e2, J = -i(e3+e4), K = e4-e3.
  return {s.s0 - kI * s.sI,
          s.s0 + kI * s.sI,
          -kI * s.sJ - s.sK,
          -kI * s.sJ + s.sK};
}

double norm(const Quat& a) {
  return std::sqrt(std::norm(a.q1) + std::norm(a.q2) + std::norm(a.q3) +
                   std::norm(a.q4));
}

bool ideal_member(const Quat& a, Ideal which, double tol) {
  auto small = [tol](const Complex& c) { return std::abs(c) <= tol; };
  switch (which) {
    case Ideal::I1: return small(a.q1) && small(a.q3);
    case Ideal::I2: return small(a.q2) && small(a.q4);
    case Ideal::I1Hat: return small(a.q1) && small(a.q4);
    case Ideal::I2Hat: return small(a.q2) && small(a.q3);
  }
  return false;
}

Quat inverse(const Quat& a) {
  const Complex d = det(a);
  const double n = norm(a);
  if (std::abs(d) < 1e-12 * n * n || n == 0.0) {
    throw SingularElement("inverse: element is singular (|det| below threshold)");
  }
  // Adjugate of [[q1,q3],[q4,q2]] divided by det, pulled back to the basis.
  return {a.q2 / d, a.q1 / d, -a.q3 / d, -a.q4 / d};
}

std::ostream& operator<<(std::ostream& os, const Quat& a) {
  return os << "(" << a.q1 << ")e1 + (" << a.q2 << ")e2 + (" << a.q3
            << ")e3 + (" << a.q4 << ")e4";
}

}  // namespace biquat

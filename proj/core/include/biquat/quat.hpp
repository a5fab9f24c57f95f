#pragma once

#include <cmath>
#include <complex>
#include <ostream>

#include "biquat/errors.hpp"

namespace biquat {

using Complex = std::complex<double>;

/// Quaternion over a complex-like field `C`, stored in the idempotent basis
/// {e1,e2,e3,e4}:
///
///   e1*e1=e1  e1*e3=e3  e2*e2=e2  e2*e4=e4
///   e3*e2=e3  e3*e4=e1  e4*e1=e4  e4*e3=e2   (all other products vanish)
///
/// The algebra identity is e1+e2. The template only needs +,-,* on `C`,
/// so tests can instantiate it with exact rational scalars.
template <typename C>
struct BasicQuat {
  C q1{}, q2{}, q3{}, q4{};

  friend BasicQuat operator+(const BasicQuat& a, const BasicQuat& b) {
    return {a.q1 + b.q1, a.q2 + b.q2, a.q3 + b.q3, a.q4 + b.q4};
  }
  friend BasicQuat operator-(const BasicQuat& a, const BasicQuat& b) {
    return {a.q1 - b.q1, a.q2 - b.q2, a.q3 - b.q3, a.q4 - b.q4};
  }
  friend BasicQuat operator-(const BasicQuat& a) {
    return {-a.q1, -a.q2, -a.q3, -a.q4};
  }

  // Bilinear product induced by the multiplication table above.
  friend BasicQuat operator*(const BasicQuat& a, const BasicQuat& b) {
    return {a.q1 * b.q1 + a.q3 * b.q4,
            a.q2 * b.q2 + a.q4 * b.q3,
            a.q1 * b.q3 + a.q3 * b.q2,
            a.q2 * b.q4 + a.q4 * b.q1};
  }

  friend BasicQuat operator*(const C& s, const BasicQuat& a) {
    return {s * a.q1, s * a.q2, s * a.q3, s * a.q4};
  }
  friend BasicQuat operator*(const BasicQuat& a, const C& s) { return s * a; }

  friend bool operator==(const BasicQuat&, const BasicQuat&) = default;

  static BasicQuat zero() { return {}; }
  static BasicQuat one() { return {C(1), C(1), C(0), C(0)}; }

  /// Basis element e_k, k in 1..4.
  static BasicQuat unit(int k) {
    BasicQuat q;
    switch (k) {
      case 1: q.q1 = C(1); break;
      case 2: q.q2 = C(1); break;
      case 3: q.q3 = C(1); break;
      case 4: q.q4 = C(1); break;
      default: throw Error("BasicQuat::unit: index out of range");
    }
    return q;
  }
};

using Quat = BasicQuat<Complex>;

/// 2x2 matrix over `C`; the map e1->E11, e2->E22, e3->E12, e4->E21 is an
/// algebra isomorphism used as an independent multiplication oracle.
template <typename C>
struct BasicMatrixRep {
  C m11{}, m12{}, m21{}, m22{};

  friend BasicMatrixRep operator*(const BasicMatrixRep& a, const BasicMatrixRep& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
  }
  friend bool operator==(const BasicMatrixRep&, const BasicMatrixRep&) = default;
};

using MatrixRep = BasicMatrixRep<Complex>;

template <typename C>
BasicMatrixRep<C> to_matrix(const BasicQuat<C>& a) {
  return {a.q1, a.q3, a.q4, a.q2};
}

template <typename C>
BasicQuat<C> from_matrix(const BasicMatrixRep<C>& m) {
  return {m.m11, m.m22, m.m12, m.m21};
}

// Component functionals. f1, f2 kill the right ideals I1, I2; the hatted
// pair kills the left ideals.
template <typename C>
C f1(const BasicQuat<C>& a) { return a.q1 + a.q3; }
template <typename C>
C f2(const BasicQuat<C>& a) { return a.q2 + a.q4; }
template <typename C>
C f1_hat(const BasicQuat<C>& a) { return a.q1 + a.q4; }
template <typename C>
C f2_hat(const BasicQuat<C>& a) { return a.q2 + a.q3; }

template <typename C>
C det(const BasicQuat<C>& a) { return a.q1 * a.q2 - a.q3 * a.q4; }

/// Coordinates w.r.t. the standard basis {1, I, J, K} with I^2=J^2=K^2=-1.
struct QuatStd {
  Complex s0{}, sI{}, sJ{}, sK{};
  friend bool operator==(const QuatStd&, const QuatStd&) = default;
};

QuatStd to_std(const Quat& a);
Quat from_std(const QuatStd& s);

/// Component-Euclidean norm sqrt(sum |q_k|^2). Coincides with the Frobenius
/// norm of the matrix representation, hence submultiplicative.
double norm(const Quat& a);

/// The four maximal ideals: right I1={e2,e4}, I2={e1,e3};
/// left I1^ = {e2,e3}, I2^ = {e1,e4}.
enum class Ideal { I1, I2, I1Hat, I2Hat };

bool ideal_member(const Quat& a, Ideal which, double tol);

/// Two-sided inverse. Throws SingularElement when |det| < 1e-12 * norm(a)^2.
Quat inverse(const Quat& a);

/// Multiplication order for the non-commutative constructions: Right pairs
/// the increment/differential on the left of the derivative (h * Phi'),
/// Left on the right (Phi' * h).
enum class Side { Right, Left };

std::ostream& operator<<(std::ostream& os, const Quat& a);

}  // namespace biquat

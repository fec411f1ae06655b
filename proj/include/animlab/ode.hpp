#pragma once

#include <Eigen/Core>

namespace animlab {

/// One classic fourth-order Runge-Kutta step of x' = f(x) with step h.
template <typename Derived, typename Deriv>
typename Derived::PlainObject rk4_step(const Eigen::MatrixBase<Derived>& x, Deriv&& f,
                                       typename Derived::Scalar h) {
  using State = typename Derived::PlainObject;
  using Scalar = typename Derived::Scalar;
  const State k1 = f(x);
  const State k2 = f(State(x + (h / Scalar(2)) * k1));
  const State k3 = f(State(x + (h / Scalar(2)) * k2));
  const State k4 = f(State(x + h * k3));
  return x + (h / Scalar(6)) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
}

/// RK4 step for the linear system x' = A x + B u with u held constant.
template <typename MatA, typename VecX, typename VecB>
typename VecX::PlainObject rk4_linear_step(const Eigen::MatrixBase<MatA>& A,
                                           const Eigen::MatrixBase<VecB>& Bu,
                                           const Eigen::MatrixBase<VecX>& x,
                                           typename VecX::Scalar h) {
  using State = typename VecX::PlainObject;
  return rk4_step(x, [&](const State& s) -> State { return A * s + Bu; }, h);
}

}  // namespace animlab

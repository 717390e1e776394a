#pragma once

#include "loglift/lift.hpp"

namespace loglift {

// The b-module on E m_1 + E m_2 with diag(x, y) acting by m_2 -> (x - y) m_1
// and e_12 acting by zero.
inline FdPModule breuil_base_module(const Field& F) {
  std::map<Root, Matrix> act;
  act.emplace(Root{0, 0}, Matrix::from_ints(F, {{0, 1}, {0, 0}}));
  act.emplace(Root{1, 1}, Matrix::from_ints(F, {{0, -1}, {0, 0}}));
  return FdPModule(GLnContext::borel(2), F, 2, act);
}

// One-dimensional b-module on which diag(x, y) acts by (k - 2) y.
inline FdPModule weight_twist_module(const Field& F, long k) {
  std::map<Root, Matrix> act;
  act.emplace(Root{1, 1}, Matrix::from_ints(F, {{k - 2}}));
  return FdPModule(GLnContext::borel(2), F, 1, act);
}

inline FdPModule breuil_module(const Field& F, long k = 2) {
  return tensor_product(breuil_base_module(F), weight_twist_module(F, k));
}

// Standard coordinates with log_{L1} on the first and log_{L2} on the second.
inline TorusLogarithm breuil_log(const Element& l1, const Element& l2) {
  return TorusLogarithm::standard(l1.field(), {l1, l2});
}
inline TorusLogarithm breuil_log(const Element& l) { return breuil_log(l, l); }

inline FdPModule schraen_module(const Field& F) {
  std::map<Root, Matrix> act;
  act.emplace(Root{0, 0}, Matrix::from_ints(F, {{0, -2, -1}, {0, 0, 0}, {0, 0, 0}}));
  act.emplace(Root{1, 1}, Matrix::from_ints(F, {{0, 1, -1}, {0, 0, 0}, {0, 0, 0}}));
  act.emplace(Root{2, 2}, Matrix::from_ints(F, {{0, 1, 2}, {0, 0, 0}, {0, 0, 0}}));
  return FdPModule(GLnContext::borel(3), F, 3, act);
}

inline IntMatrix schraen_basis() { return {{-2, 1, 1}, {-1, -1, 2}, {0, 0, 1}}; }

// Coordinates (a^-2 b c, a^-1 b^-1 c^2, c) with branches (L', L, third).
inline TorusLogarithm schraen_log(const Element& l, const Element& lp, const Element& third) {
  return TorusLogarithm(l.field(), schraen_basis(), {lp, l, third});
}
inline TorusLogarithm schraen_log(const Element& l, const Element& lp) { return schraen_log(l, lp, lp); }

// Closed form: (log_{L'}(a) + g, log_{L'}(b) + 2 g, log_{L'}(c)) with
// g = -(log_L - log_{L'})(a^-1 b^-1 c^2) / 3.
inline std::vector<Element> schraen_closed_form(const Element& l, const Element& lp, const std::vector<Element>& t) {
  const Field& F = l.field();
  Element q = t[0].inverse() * t[1].inverse() * t[2] * t[2];
  Element gamma = Element::rational(F, -1, 3) * (iwasawa_log(q, l) - iwasawa_log(q, lp));
  return {iwasawa_log(t[0], lp) + gamma, iwasawa_log(t[1], lp) + Element::integer(F, 2) * gamma,
          iwasawa_log(t[2], lp)};
}

}  // namespace loglift

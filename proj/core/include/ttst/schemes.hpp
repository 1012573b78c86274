#pragma once

#include <stdexcept>
#include <string>

namespace ttst {

/// Time discretizations: implicit Euler and Crank-Nicolson for first-order-in-time
/// problems, implicit Euler (second difference) and Newmark for second-order.
enum class SchemeId { euler_m1, euler_m2, crank_nicolson_m1, newmark_m2 };

inline int scheme_temporal_order(SchemeId s) {
  return (s == SchemeId::euler_m1 || s == SchemeId::crank_nicolson_m1) ? 1 : 2;
}

/// Formal accuracy in dt.
inline int scheme_accuracy_order(SchemeId s) {
  return (s == SchemeId::crank_nicolson_m1 || s == SchemeId::newmark_m2) ? 2 : 1;
}

inline std::string scheme_name(SchemeId s) {
  switch (s) {
    case SchemeId::euler_m1: return "euler_m1";
    case SchemeId::euler_m2: return "euler_m2";
    case SchemeId::crank_nicolson_m1: return "crank_nicolson_m1";
    case SchemeId::newmark_m2: return "newmark_m2";
  }
  return "?";
}

inline SchemeId scheme_from_name(const std::string& s) {
  if (s == "euler_m1") return SchemeId::euler_m1;
  if (s == "euler_m2") return SchemeId::euler_m2;
  if (s == "crank_nicolson_m1") return SchemeId::crank_nicolson_m1;
  if (s == "newmark_m2") return SchemeId::newmark_m2;
  throw std::invalid_argument("unknown scheme: " + s);
}

}  // namespace ttst

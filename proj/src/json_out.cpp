#include "johnforge/json_out.hpp"

#include <cstdio>

namespace johnforge::jsonout {

std::string num(double x) {
  if (x == 0.0) x = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string vec(const Vector& v) {
  std::string s = "[";
  for (int i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += num(v[i]);
  }
  return s + "]";
}

std::string mat(const Matrix& M) {
  std::string s = "[";
  for (int i = 0; i < M.rows(); ++i) {
    if (i) s += ",";
    s += vec(M.row(i).transpose());
  }
  return s + "]";
}

}  // namespace johnforge::jsonout

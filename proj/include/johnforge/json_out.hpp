#pragma once

#include <string>

#include "johnforge/symspace.hpp"

// Deterministic JSON output: fixed field order, doubles at 17 significant
// digits. Parsing stays with nlohmann; this is the write side only.
namespace johnforge::jsonout {

std::string num(double x);
std::string vec(const Vector& v);
std::string mat(const Matrix& M);

}  // namespace johnforge::jsonout

#pragma once
#include <string>

#include "annulus/field.hpp"

namespace annulus {

// Binary field format: <path>.json holds {"d","n","L","layout":"row-major"},
// <path> holds little-endian f64 interleaved re/im pairs.
void save_field(const Field& f, const std::string& path);
Field load_field(const std::string& path);

// CSV export (d <= 2): columns x[,y],re,im.
void field_to_csv(const Field& f, const std::string& path);

}  // namespace annulus

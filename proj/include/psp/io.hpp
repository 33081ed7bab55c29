#pragma once

#include <string>

#include "psp/field.hpp"
#include "psp/goursat.hpp"

namespace psp {

/// Field CSV: header "x,y,re,im_i,im_k,im_ik", one row per node, y-major
/// (iy outer, ix inner), %.17g formatting for bit-identical reruns.
void write_field_csv(const std::string& path, const BicomplexField2D& field);

/// Reads a field CSV back onto the given grid; node coordinates must match
/// the grid within 1e-9.
BicomplexField2D read_field_csv(const std::string& path, const Grid2D& grid);

/// Kernel CSV: header "x,t,re,im", rows over the triangle |t| <= |x| only.
void write_kernel_csv(const std::string& path, const SymmetricGrid1D& grid,
                      const std::vector<Cx>& values);

std::string format_double(double v);

}  // namespace psp

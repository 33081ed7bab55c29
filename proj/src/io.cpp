#include "psp/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace psp {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_field_csv(const std::string& path, const BicomplexField2D& field) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open for writing: " + path);
    out << "x,y,re,im_i,im_k,im_ik\n";
    const Grid2D& g = field.grid;
    for (int iy = 0; iy < g.ny(); ++iy) {
        for (int ix = 0; ix < g.nx(); ++ix) {
            const Bicomplex& w = field.at(ix, iy);
            out << format_double(g.x.node(ix)) << ',' << format_double(g.y.node(iy)) << ','
                << format_double(w.re) << ',' << format_double(w.im_i) << ','
                << format_double(w.im_k) << ',' << format_double(w.im_ik) << '\n';
        }
    }
}

BicomplexField2D read_field_csv(const std::string& path, const Grid2D& grid) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open field file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    if (line.rfind("x,y,", 0) != 0) throw ParseError(path + ": unexpected header '" + line + "'");

    BicomplexField2D field(grid);
    std::size_t row = 0;
    const std::size_t expected = grid.node_count();
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (row >= expected) throw ParseError(path + ": more rows than grid nodes");
        double vals[6];
        std::istringstream ss(line);
        std::string tok;
        for (int c = 0; c < 6; ++c) {
            if (!std::getline(ss, tok, ','))
                throw ParseError(path + ": short row " + std::to_string(row + 2));
            vals[c] = std::stod(tok);
        }
        const int iy = static_cast<int>(row) / grid.nx();
        const int ix = static_cast<int>(row) % grid.nx();
        if (std::abs(vals[0] - grid.x.node(ix)) > 1e-9 || std::abs(vals[1] - grid.y.node(iy)) > 1e-9)
            throw ValidationError(path + ": node coordinates do not match the configured grid at row " +
                                  std::to_string(row + 2));
        field.at(ix, iy) = Bicomplex{vals[2], vals[3], vals[4], vals[5]};
        ++row;
    }
    if (row != expected)
        throw ValidationError(path + ": row count " + std::to_string(row) +
                              " != grid size " + std::to_string(expected));
    return field;
}

void write_kernel_csv(const std::string& path, const SymmetricGrid1D& grid,
                      const std::vector<Cx>& values) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open for writing: " + path);
    out << "x,t,re,im\n";
    const int n = grid.size(), c = grid.center();
    for (int i = 0; i < n; ++i) {
        const int w = std::abs(i - c);
        for (int l = c - w; l <= c + w; ++l) {
            const Cx val = values[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                                  static_cast<std::size_t>(l)];
            out << format_double(grid.node(i)) << ',' << format_double(grid.node(l)) << ','
                << format_double(val.real()) << ',' << format_double(val.imag()) << '\n';
        }
    }
}

}  // namespace psp

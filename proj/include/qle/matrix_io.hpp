#pragma once

// Plain-text complex matrix format shared by the network and scattering tools:
//
//   <dim>
//   <a+bi> <a+bi> ...   (dim rows of dim entries)
//
// Writers emit 17 significant digits so a write/read cycle is lossless.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "qle/network.hpp"

namespace qle::io {

/// Parses a single entry such as "1", "-2.5i", "1e-3+4i", "0.5-0.25i".
Complex parse_complex(std::string_view token);
std::string format_complex(Complex z);

/// Formats a real with 17 significant digits (shortest exact form not required).
std::string format_real(double x);

CMatrix read_matrix(std::istream& in);
CMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix(std::ostream& out, const CMatrix& m);

/// Writes contents to path via a temporary sibling file and rename().
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace qle::io

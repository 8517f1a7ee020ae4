#include "qle/matrix_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qle/errors.hpp"

namespace qle::io {

namespace {

[[noreturn]] void bad_token(std::string_view token) {
    throw Error(ErrorKind::ParseError, "malformed complex entry '" + std::string(token) + "'");
}

}  // namespace

Complex parse_complex(std::string_view token) {
    if (token.empty()) bad_token(token);
    const std::string s(token);
    const char* begin = s.c_str();
    const char* end = begin + s.size();
    char* cursor = nullptr;

    errno = 0;
    const double first = std::strtod(begin, &cursor);
    if (cursor == begin || errno == ERANGE) bad_token(token);
    if (cursor == end) return {first, 0.0};
    if (*cursor == 'i' && cursor + 1 == end) return {0.0, first};
    if (*cursor != '+' && *cursor != '-') bad_token(token);

    const char* second_begin = cursor;
    const double second = std::strtod(second_begin, &cursor);
    if (cursor == second_begin || errno == ERANGE) bad_token(token);
    if (*cursor != 'i' || cursor + 1 != end) bad_token(token);
    return {first, second};
}

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_complex(Complex z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

CMatrix read_matrix(std::istream& in) {
    std::string line;
    long dim = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        if (ls >> dim) break;
    }
    if (dim < 1) throw Error(ErrorKind::ParseError, "missing or invalid matrix dimension");

    CMatrix m(dim, dim);
    for (long r = 0; r < dim; ++r) {
        if (!std::getline(in, line)) {
            throw Error(ErrorKind::ParseError, "expected " + std::to_string(dim) + " rows, got " +
                                                   std::to_string(r));
        }
        std::istringstream ls(line);
        std::string tok;
        long c = 0;
        while (ls >> tok) {
            if (c >= dim) {
                throw Error(ErrorKind::ParseError, "row " + std::to_string(r + 1) + " has too many entries");
            }
            m(r, c++) = parse_complex(tok);
        }
        if (c != dim) {
            throw Error(ErrorKind::ParseError, "row " + std::to_string(r + 1) + " has " +
                                                   std::to_string(c) + " entries, expected " +
                                                   std::to_string(dim));
        }
    }
    return m;
}

CMatrix read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const CMatrix& m) {
    out << m.rows() << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out << ' ';
            out << format_complex(m(r, c));
        }
        out << '\n';
    }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::IoError, "cannot write " + tmp.string());
        out << contents;
        if (!out) throw Error(ErrorKind::IoError, "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error(ErrorKind::IoError, "rename to " + path.string() + ": " + ec.message());
}

}  // namespace qle::io

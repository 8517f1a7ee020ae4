#include "qle/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qle/errors.hpp"
#include "qle/matrix_io.hpp"

namespace qle::scattering {

ScatteringMatrix::ScatteringMatrix(CMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
        throw Error(ErrorKind::NotSquare, "scattering matrix must be square and non-empty");
    }
}

double ScatteringMatrix::max_singular_value() const {
    Eigen::JacobiSVD<CMatrix> svd(entries_);
    return svd.singularValues()(0);
}

Classification classify(const ScatteringMatrix& s) {
    const CMatrix& m = s.entries();
    const auto n = s.dim();
    Classification c;
    c.unitary = (m.adjoint() * m - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= kTolS;
    c.reciprocal = (m - m.transpose()).cwiseAbs().maxCoeff() <= kTolS;
    c.passive = s.max_singular_value() <= 1.0 + kTolS;
    return c;
}

Eigen::Index defect_rank(const ScatteringMatrix& s) {
    Eigen::JacobiSVD<CMatrix> svd(s.entries());
    const auto& sv = svd.singularValues();
    return static_cast<Eigen::Index>(std::count_if(sv.begin(), sv.end(),
                                                   [](double x) { return x < 1.0 - kTolRank; }));
}

ScatteringMatrix dilate_to_unitary(const ScatteringMatrix& s) {
    const CMatrix& m = s.entries();
    const auto n = s.dim();
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RVector& sigma = svd.singularValues();
    if (sigma(0) > 1.0 + kTolS) {
        throw Error(ErrorKind::NotPassive, "largest singular value " + io::format_real(sigma(0)) + " exceeds 1");
    }

    std::vector<Eigen::Index> defective;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (sigma(i) < 1.0 - kTolRank) defective.push_back(i);
    }
    const auto r = static_cast<Eigen::Index>(defective.size());

    CMatrix out = CMatrix::Zero(n + r, n + r);
    out.topLeftCorner(n, n) = m;
    const CMatrix& u = svd.matrixU();
    const CMatrix& w = svd.matrixV();
    for (Eigen::Index k = 0; k < r; ++k) {
        const Eigen::Index i = defective[static_cast<std::size_t>(k)];
        const double sv = std::clamp(sigma(i), 0.0, 1.0);
        const double d = std::sqrt(std::max(0.0, 1.0 - sv * sv));
        out.block(0, n + k, n, 1) = d * u.col(i);
        out.block(n + k, 0, 1, n) = d * w.col(i).adjoint();
        out(n + k, n + k) = -sv;
    }

    const double err = (out.adjoint() * out - CMatrix::Identity(n + r, n + r)).cwiseAbs().maxCoeff();
    if (err > 10.0 * kTolS) {
        throw Error(ErrorKind::DilationVerificationFailed,
                    "dilation deviates from unitarity by " + io::format_real(err));
    }
    return ScatteringMatrix(std::move(out));
}

ScatteringMatrix two_port_closure_check(const ScatteringMatrix& s3, Eigen::Index closed_port,
                                        double mirror_phase) {
    const auto n = s3.dim();
    if (n != 3) throw Error(ErrorKind::InvalidArgument, "closure expects a 3-port matrix");
    if (closed_port < 0 || closed_port >= n) {
        throw Error(ErrorKind::InvalidArgument, "closed port index out of range");
    }
    if (!classify(s3).unitary) throw Error(ErrorKind::InvalidArgument, "3-port must be unitary");

    std::vector<Eigen::Index> open;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i != closed_port) open.push_back(i);
    }
    const Complex mirror = std::polar(1.0, mirror_phase);
    const Complex denom = 1.0 - s3(closed_port, closed_port) * mirror;
    if (std::abs(denom) <= kTolS) {
        throw Error(ErrorKind::SingularClosure, "1 - S_bb e^{i phi} vanishes");
    }

    CMatrix red(2, 2);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const auto i = open[static_cast<std::size_t>(a)];
            const auto j = open[static_cast<std::size_t>(b)];
            red(a, b) = s3(i, j) + s3(i, closed_port) * mirror / denom * s3(closed_port, j);
        }
    }
    return ScatteringMatrix(std::move(red));
}

std::string classification_csv(const Classification& c) {
    auto b = [](bool x) { return x ? "true" : "false"; };
    return std::string("unitary,reciprocal,passive\n") + b(c.unitary) + ',' + b(c.reciprocal) + ',' +
           b(c.passive) + '\n';
}

}  // namespace qle::scattering

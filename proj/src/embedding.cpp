// SPDX-License-Identifier: Apache-2.0
//
// isacbeam - robust dual-function radar-communication transmit beamforming
// Copyright (C) 2026 the isacbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "isacbeam/embedding.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace isacbeam {

namespace {

constexpr double kHermitianTolerance = 1e-9;
const double kSqrt2 = std::sqrt(2.0);

void check_square(Eigen::Index rows, Eigen::Index cols, const char* what) {
    if (rows != cols)
        throw std::invalid_argument(std::string(what) + ": matrix must be square");
}

} // namespace

int hvec_dim(int n) {
    return n * n;
}

RVector hvec(const CMatrix& H) {
    check_square(H.rows(), H.cols(), "hvec");
    const int n = static_cast<int>(H.rows());
    RVector v(hvec_dim(n));
    int at = 0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            v[at++] = kSqrt2 * H(i, j).real();
            v[at++] = kSqrt2 * H(i, j).imag();
        }
        v[at++] = H(j, j).real();
    }
    return v;
}

CMatrix hunvec(const RVector& v, int n) {
    if (v.size() != hvec_dim(n))
        throw std::invalid_argument("hunvec: coordinate length does not match order n");
    CMatrix H(n, n);
    int at = 0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            const double re = v[at++] / kSqrt2;
            const double im = v[at++] / kSqrt2;
            H(i, j) = Complex(re, im);
            H(j, i) = Complex(re, -im);
        }
        H(j, j) = Complex(v[at++], 0.0);
    }
    return H;
}

int svec_dim(int n) {
    return n * (n + 1) / 2;
}

RVector svec(const RMatrix& S) {
    check_square(S.rows(), S.cols(), "svec");
    const int n = static_cast<int>(S.rows());
    RVector v(svec_dim(n));
    int at = 0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < j; ++i)
            v[at++] = kSqrt2 * S(i, j);
        v[at++] = S(j, j);
    }
    return v;
}

RMatrix smat(const RVector& v, int n) {
    if (v.size() != svec_dim(n))
        throw std::invalid_argument("smat: coordinate length does not match order n");
    RMatrix S(n, n);
    int at = 0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            const double x = v[at++] / kSqrt2;
            S(i, j) = x;
            S(j, i) = x;
        }
        S(j, j) = v[at++];
    }
    return S;
}

RMatrix embed_hermitian_psd(const CMatrix& H) {
    check_square(H.rows(), H.cols(), "embed_hermitian_psd");
    const double scale = std::max(1.0, H.norm());
    if ((H - H.adjoint()).norm() > kHermitianTolerance * scale)
        throw std::invalid_argument("embed_hermitian_psd: input is not Hermitian");
    const int n = static_cast<int>(H.rows());
    RMatrix X(2 * n, 2 * n);
    X.topLeftCorner(n, n) = H.real();
    X.topRightCorner(n, n) = -H.imag();
    X.bottomLeftCorner(n, n) = H.imag();
    X.bottomRightCorner(n, n) = H.real();
    return X;
}

CMatrix unembed_hermitian(const RMatrix& X) {
    check_square(X.rows(), X.cols(), "unembed_hermitian");
    if (X.rows() % 2 != 0)
        throw std::invalid_argument("unembed_hermitian: order must be even");
    const int n = static_cast<int>(X.rows()) / 2;
    const RMatrix re =
        0.5 * (X.topLeftCorner(n, n) + X.bottomRightCorner(n, n));
    const RMatrix im =
        0.5 * (X.bottomLeftCorner(n, n) - X.topRightCorner(n, n));
    // Averaging the two real blocks and antisymmetrizing the imaginary one
    // makes the result exactly Hermitian for any symmetric input.
    CMatrix H(n, n);
    H.real() = 0.5 * (re + re.transpose());
    H.imag() = 0.5 * (im - im.transpose());
    return H;
}

} // namespace isacbeam

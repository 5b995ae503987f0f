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

#ifndef ISACBEAM_EMBEDDING_HPP
#define ISACBEAM_EMBEDDING_HPP

#include "isacbeam/types.hpp"

namespace isacbeam {

// Isometric real coordinates for Hermitian matrices, length n^2:
// walking the upper triangle column by column, the diagonal entry enters
// as-is and each off-diagonal contributes sqrt(2)*Re and sqrt(2)*Im.
// <H1,H2>_F == hvec(H1).dot(hvec(H2)).
int hvec_dim(int n);
RVector hvec(const CMatrix& H);
CMatrix hunvec(const RVector& v, int n);

// svec coordinates for real symmetric matrices, length n(n+1)/2, with the
// usual sqrt(2) off-diagonal scaling so that <A,B>_F == svec(A).dot(svec(B)).
int svec_dim(int n);
RVector svec(const RMatrix& S);
RMatrix smat(const RVector& v, int n);

// [[Re H, -Im H], [Im H, Re H]]. The result is symmetric, PSD iff H is PSD,
// carries each eigenvalue of H twice, and has twice the trace. Throws
// std::invalid_argument when H is not Hermitian within 1e-9.
RMatrix embed_hermitian_psd(const CMatrix& H);

// Inverse of the embedding; symmetrizes the block structure, so the result
// is exactly Hermitian for any symmetric input.
CMatrix unembed_hermitian(const RMatrix& X);

} // namespace isacbeam

#endif

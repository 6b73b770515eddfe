// Copyright 2026 The dialectid Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Brute-force reference implementations used only by tests. They share no
// code with the library paths they check.

#include <cstddef>
#include <vector>

#include "dialectid/feature_matrix.hpp"
#include "dialectid/gmm.hpp"
#include "dialectid/mfcc.hpp"

namespace dialectid::oracle {

// Naive DFT power spectrum, bins 0..n/2, of |frame| zero-padded to n.
std::vector<double> NaivePowerSpectrum(const std::vector<double> &frame, std::size_t n);

// Pre-emphasis, Hamming framing, naive DFT, triangular mel filters built
// from the formula, log with floor and direct-summation orthonormal DCT-II.
FeatureMatrix ReferenceStatic(const AudioSignal &signal, const dsp::MfccConfig &config);

// Regression deltas computed straight from the formula.
FeatureMatrix ReferenceDeltas(const FeatureMatrix &statics, std::size_t window);

FeatureMatrix ReferenceCms(const FeatureMatrix &features);

// Static -> deltas -> CMS, all by reference routines.
FeatureMatrix ReferencePipeline(const AudioSignal &signal, const dsp::MfccConfig &config);

// log sum_i w_i prod_d N(x_d; mu_id, var_id), summed directly in long double.
long double DirectLogDensity(const gmm::GmmModel &model, const std::vector<double> &x);

std::vector<double> NaiveAutocorrelation(const std::vector<double> &frame, std::size_t max_lag);

// 10 log10(gain / |1 - sum_k a_k e^{-j w k}|^2) evaluated directly.
std::vector<double> DirectLpSpectrumDb(const std::vector<double> &coefficients, double gain,
                                       std::size_t fft_size);

}  // namespace dialectid::oracle

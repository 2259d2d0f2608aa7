// Copyright 2026 The Spectral POVM Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/**
 * @file
 * Two-photon interference at a frequency filter used as a beam splitter:
 * photon 1 enters the input port, photon 2 the reflection-side input. The
 * transmitted output of photon 1 and the reflected output of photon 2 share
 * output port a; the other two share output port b.
 */

#pragma once

#include <vector>

#include "povm/cascade.hpp"
#include "povm/filters.hpp"
#include "povm/spectral_core.hpp"

namespace povm {

struct HomOutput {
    /// Both photons in port a, symmetric, (F + F^T) / sqrt(2) with F = phi1 T (x) phi2 R.
    TwoPhotonAmplitude aa;
    /// Both photons in port b, symmetric, (F + F^T) / sqrt(2) with F = phi1 R (x) phi2 T.
    TwoPhotonAmplitude bb;
    /// One photon per port; rows are the port-a frequency.
    TwoPhotonAmplitude ab;

    [[nodiscard]] double probability_aa() const { return aa.norm_squared(); }
    [[nodiscard]] double probability_bb() const { return bb.norm_squared(); }
    [[nodiscard]] double probability_ab() const { return ab.norm_squared(); }
};

/// Grid of n points spanning omega0 +- 20 gamma.
FrequencyGrid hom_grid(double omega0, double gamma, std::size_t n_points = 1024);

/// Throws DomainError if either input is not normalized or the grid exceeds
/// 4096 points.
HomOutput hom_split(const SpectralAmplitude &phi1, const SpectralAmplitude &phi2,
                    const FilterSpec &filter);

/// Coincidence amplitude at one frequency pair, in terms of the ab branch:
/// A(w, w') = phi1(w) T(w) phi2(w') T(w') + phi1(w') R(w') phi2(w) R(w)
Complex coincidence_amplitude(const SpectralAmplitude &phi1,
                              const SpectralAmplitude &phi2,
                              const FilterSpec &filter, double omega,
                              double omega_prime);

/// |coincidence_amplitude| at an arbitrary frequency pair inside the grid.
/// Amplitudes are linearly interpolated; the filter uses response_at.
double destructive_residual(const SpectralAmplitude &phi1,
                            const SpectralAmplitude &phi2,
                            const FilterSpec &filter, double omega,
                            double omega_prime);

/// Frequencies where |T|^2 = 1/2, bracketed on the grid and bisected on the
/// filter response to machine precision. Sorted ascending; empty if none.
std::vector<double> half_transmission_loci(const FilterSpec &filter);

/// |A(w_i, w_j)|^2 over the grid squared. Throws DomainError beyond 4096 points.
Eigen::MatrixXd coincidence_map(const SpectralAmplitude &phi1,
                                const SpectralAmplitude &phi2,
                                const FilterSpec &filter);

} // namespace povm

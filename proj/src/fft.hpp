#pragma once

#include <span>

#include "blip/lattice.hpp"

namespace blip::detail {

// Unnormalised forward DFT, out[m] = sum_j in[j] exp(-2 pi i m j / N), backed
// by FFTW. Plans are cached per size; execution is safe from several threads.
void forward_dft(std::span<const Complex> in, std::span<Complex> out);

}  // namespace blip::detail

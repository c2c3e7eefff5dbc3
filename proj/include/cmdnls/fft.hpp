#pragma once

#include <cstddef>

#include "cmdnls/grid.hpp"

namespace cmdnls::fft {

// Unnormalized DFTs: forward uses e^{-2 pi i jk/n}, backward e^{+2 pi i jk/n}.
// Plans are cached per (n, direction); execution is safe from any thread.
void forward(const cplx* in, cplx* out, std::size_t n);
void backward(const cplx* in, cplx* out, std::size_t n);

inline CVec forward(const CVec& in) {
  CVec out(in.size());
  forward(in.data(), out.data(), in.size());
  return out;
}
inline CVec backward(const CVec& in) {
  CVec out(in.size());
  backward(in.data(), out.data(), in.size());
  return out;
}

}  // namespace cmdnls::fft

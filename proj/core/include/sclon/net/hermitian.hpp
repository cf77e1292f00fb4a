#pragma once

#include <span>
#include <vector>

#include "sclon/net/tape.hpp"
#include "sclon/spectral/fourier.hpp"

namespace sclon::net {

/// Free real parameters of a Hermitian spectrum. Modes are visited in storage
/// order; a self-conjugate mode (mean, Nyquist lines) owns one real entry, the
/// first member of each conjugate pair owns (re, im), the partner is implied.
/// In 1D the layout is {mean, re/im of 1..N/2-1, Nyquist}; the count is N^d.
class HermitianLayout {
 public:
  explicit HermitianLayout(const spectral::FourierGrid& grid);

  std::size_t free_count() const { return free_count_; }
  std::size_t spectrum_size() const { return partner_.size(); }

  /// Free entries -> full interleaved spectrum with alpha_{-k} = conj(alpha_k).
  std::vector<double> expand(std::span<const double> free) const;
  /// Inverse of expand on Hermitian spectra; reads the owning member only.
  std::vector<double> restrict(std::span<const double> spectrum) const;

  /// Tape version of expand.
  Var expand(Var free) const;

 private:
  struct Slot {
    std::size_t mode;
    std::size_t partner;
    std::size_t offset;
    bool self_conjugate;
  };
  std::vector<Slot> slots_;
  std::vector<std::size_t> partner_;
  std::size_t free_count_ = 0;
};

}  // namespace sclon::net

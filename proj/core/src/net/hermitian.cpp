#include "sclon/net/hermitian.hpp"

#include "sclon/error.hpp"

namespace sclon::net {

HermitianLayout::HermitianLayout(const spectral::FourierGrid& grid) {
  partner_.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto p = grid.conjugate_index(k);
    partner_[k] = p;
    if (p < k) continue;
    slots_.push_back({k, p, free_count_, p == k});
    free_count_ += p == k ? 1 : 2;
  }
}

std::vector<double> HermitianLayout::expand(std::span<const double> free) const {
  require(free.size() == free_count_, "hermitian_expand: free-mode count mismatch");
  std::vector<double> out(2 * partner_.size(), 0.0);
  for (const auto& s : slots_) {
    if (s.self_conjugate) {
      out[2 * s.mode] = free[s.offset];
      continue;
    }
    const double re = free[s.offset], im = free[s.offset + 1];
    out[2 * s.mode] = re;
    out[2 * s.mode + 1] = im;
    out[2 * s.partner] = re;
    out[2 * s.partner + 1] = -im;
  }
  return out;
}

std::vector<double> HermitianLayout::restrict(std::span<const double> spectrum) const {
  require(spectrum.size() == 2 * partner_.size(), "hermitian_restrict: spectrum length mismatch");
  std::vector<double> out(free_count_);
  for (const auto& s : slots_) {
    out[s.offset] = spectrum[2 * s.mode];
    if (!s.self_conjugate) out[s.offset + 1] = spectrum[2 * s.mode + 1];
  }
  return out;
}

Var HermitianLayout::expand(Var free) const {
  Tape& t = *free.tape;
  const int id = free.id;
  return t.push(expand(t.value(id)), {free}, [this, id](Tape& tp, int self) {
    const auto& g = tp.grad(self);
    auto& d = tp.grad(id);
    for (const auto& s : slots_) {
      if (s.self_conjugate) {
        d[s.offset] += g[2 * s.mode];
        continue;
      }
      d[s.offset] += g[2 * s.mode] + g[2 * s.partner];
      d[s.offset + 1] += g[2 * s.mode + 1] - g[2 * s.partner + 1];
    }
  });
}

}  // namespace sclon::net

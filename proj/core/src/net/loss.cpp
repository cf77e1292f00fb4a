#include "sclon/net/loss.hpp"

#include <cmath>
#include <thread>

#include "sclon/error.hpp"
#include "sclon/net/ops.hpp"

namespace sclon::net {

namespace {

void check_batch(const Network& net, const SegmentBatch& batch, const residuals::SchemeResidual& residual) {
  require(batch.inputs.size() == batch.anchors.size(), "loss: inputs and anchors differ in count");
  require(net.representation() == residual.representation(), "loss: residual family does not match the network");
  require(net.state_width() == residual.state_width(), "loss: state width mismatch");
  for (const auto& a : batch.anchors) require(a.size() == net.state_width(), "loss: anchor width mismatch");
}

// Loss of one sample; when `grad` is non-empty the adjoint is added into it.
double sample_loss(const Network& net, std::span<const double> params, std::span<double> grad,
                   const sampling::InputSample& input, const std::vector<double>& anchor,
                   const residuals::SchemeResidual& residual, double scale_by) {
  Tape tape;
  const Var theta = grad.empty() ? tape.constant({params.begin(), params.end()}) : tape.external(params, grad);
  const auto states = net.forward(tape, theta, input, anchor);
  Var prev = tape.constant(anchor);
  std::vector<Var> terms;
  terms.reserve(states.size());
  for (const Var& next : states) {
    terms.push_back(sum_squares(residual.defect(prev, next, input)));
    prev = next;
  }
  Var total = sum_scalars(terms);
  if (scale_by != 1.0) total = scale(total, scale_by);
  const double value = total.value()[0];
  if (!grad.empty() && std::isfinite(value)) tape.backward(total);
  return value;
}

}  // namespace

double loss_and_grad(const Network& net, std::span<const double> params, std::span<double> grad,
                     const SegmentBatch& batch, const residuals::SchemeResidual& residual,
                     const LossOptions& options) {
  check_batch(net, batch, residual);
  require(params.size() == net.parameter_count(), "loss: parameter count mismatch");
  require(grad.empty() || grad.size() == params.size(), "loss: gradient buffer length mismatch");
  const std::size_t count = batch.inputs.size();
  std::vector<double> values(count, 0.0);

  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(count)));
  if (threads == 1) {
    if (!grad.empty()) std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t p = 0; p < count; ++p)
      values[p] = sample_loss(net, params, grad, batch.inputs[p], batch.anchors[p], residual, options.scale);
  } else {
    std::vector<std::vector<double>> partial(threads);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          const std::size_t lo = count * w / threads, hi = count * (w + 1) / threads;
          if (!grad.empty()) partial[w].assign(params.size(), 0.0);
          for (std::size_t p = lo; p < hi; ++p)
            values[p] = sample_loss(net, params, partial[w], batch.inputs[p], batch.anchors[p], residual,
                                    options.scale);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    if (!grad.empty()) {
      std::fill(grad.begin(), grad.end(), 0.0);
      for (const auto& part : partial)
        for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += part[i];
    }
  }

  double total = 0.0;
  for (std::size_t p = 0; p < count; ++p) {
    if (!std::isfinite(values[p]))
      fail(ErrorCode::NonFinite, "non-finite loss for sample " + std::to_string(p));
    total += values[p];
  }
  return total;
}

std::vector<double> sample_losses(const Network& net, std::span<const double> params, const SegmentBatch& batch,
                                  const residuals::SchemeResidual& residual) {
  check_batch(net, batch, residual);
  std::vector<double> out;
  for (std::size_t p = 0; p < batch.inputs.size(); ++p)
    out.push_back(sample_loss(net, params, {}, batch.inputs[p], batch.anchors[p], residual, 1.0));
  return out;
}

}  // namespace sclon::net

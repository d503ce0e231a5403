#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sbfc {

/// Rational discrete-time transfer function B(z^-1)/A(z^-1) with a0
/// normalized to 1 at construction.
class TransferFunction {
public:
    TransferFunction(std::vector<double> b, std::vector<double> a, double sample_rate_hz);

    static TransferFunction identity(double sample_rate_hz);
    static TransferFunction fir(std::vector<double> b, double sample_rate_hz);
    static TransferFunction delay(std::size_t samples, double sample_rate_hz);

    const std::vector<double>& num() const { return b_; }
    const std::vector<double>& den() const { return a_; }
    double sample_rate_hz() const { return fs_; }

    std::size_t num_order() const { return b_.size() - 1; }
    std::size_t den_order() const { return a_.size() - 1; }
    bool is_fir() const { return a_.size() == 1; }

private:
    std::vector<double> b_;
    std::vector<double> a_;
    double fs_;
};

/// Streaming direct-form (transposed II) realization. Single delay line of
/// length max(num_order, den_order). Single-owner mutable; reset() zeroes it.
class FilterState {
public:
    explicit FilterState(TransferFunction tf);

    double step(double x);
    void reset();

    /// Swap in new coefficients of identical orders, preserving the delay
    /// line. Used where the owning model adapts while the stream runs.
    void rebind(const TransferFunction& tf);

    const TransferFunction& owner() const { return tf_; }

private:
    TransferFunction tf_;
    std::vector<double> bp_; // zero-padded numerator, length n+1
    std::vector<double> ap_; // zero-padded denominator, length n+1
    std::vector<double> s_;  // delay line, length n
};

struct FrequencyResponsePoint {
    double freq_hz;
    std::complex<double> value;
};

std::complex<double> response_at(const TransferFunction& tf, double freq_hz);
std::vector<FrequencyResponsePoint> freq_response(const TransferFunction& tf,
                                                  std::span<const double> freqs_hz);

std::vector<double> filter_signal(const TransferFunction& tf, std::span<const double> x);

/// true iff all roots of A(z) are strictly inside the unit circle
/// (tolerance 1e-9 against root-finder noise). FIR is always stable.
bool is_stable(const TransferFunction& tf);

/// Roots of the polynomial c0 + c1 x + ... + cn x^n (companion matrix).
std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs);

/// Series connection: numerators and denominators multiply.
TransferFunction cascade(const TransferFunction& first, const TransferFunction& second);

/// A system kept as a chain of low-order sections. High-order plants are
/// realized this way to bound round-off; combined() exposes the single
/// rational view.
class SectionCascade {
public:
    explicit SectionCascade(std::vector<TransferFunction> sections);
    SectionCascade(TransferFunction single); // NOLINT(google-explicit-constructor)

    const std::vector<TransferFunction>& sections() const { return sections_; }
    double sample_rate_hz() const { return sections_.front().sample_rate_hz(); }

    std::complex<double> response_at(double freq_hz) const;
    bool stable() const;
    TransferFunction combined() const;

private:
    std::vector<TransferFunction> sections_;
};

/// Streaming state for a SectionCascade (one FilterState per section).
class CascadeState {
public:
    explicit CascadeState(const SectionCascade& system);
    double step(double x);
    void reset();

private:
    std::vector<FilterState> stages_;
};

} // namespace sbfc

#include "subband_ffc/lti.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sbfc {

namespace {

bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

} // namespace

TransferFunction::TransferFunction(std::vector<double> b, std::vector<double> a, double fs)
    : b_(std::move(b)), a_(std::move(a)), fs_(fs) {
    if (b_.empty() || a_.empty())
        throw std::invalid_argument("transfer function needs at least one coefficient per polynomial");
    if (!all_finite(b_) || !all_finite(a_))
        throw std::invalid_argument("transfer function coefficients must be finite");
    if (!(fs_ > 0.0) || !std::isfinite(fs_))
        throw std::invalid_argument("sample rate must be positive");
    if (a_[0] == 0.0)
        throw std::invalid_argument("leading denominator coefficient must be nonzero");
    if (a_[0] != 1.0) {
        const double inv = 1.0 / a_[0];
        for (double& c : b_) c *= inv;
        for (double& c : a_) c *= inv;
        a_[0] = 1.0;
    }
}

TransferFunction TransferFunction::identity(double fs) { return {{1.0}, {1.0}, fs}; }

TransferFunction TransferFunction::fir(std::vector<double> b, double fs) {
    return {std::move(b), {1.0}, fs};
}

TransferFunction TransferFunction::delay(std::size_t samples, double fs) {
    std::vector<double> b(samples + 1, 0.0);
    b.back() = 1.0;
    return {std::move(b), {1.0}, fs};
}

FilterState::FilterState(TransferFunction tf) : tf_(std::move(tf)) {
    const std::size_t n = std::max(tf_.num_order(), tf_.den_order());
    bp_.assign(n + 1, 0.0);
    ap_.assign(n + 1, 0.0);
    std::copy(tf_.num().begin(), tf_.num().end(), bp_.begin());
    std::copy(tf_.den().begin(), tf_.den().end(), ap_.begin());
    s_.assign(n, 0.0);
}

void FilterState::reset() { std::fill(s_.begin(), s_.end(), 0.0); }

void FilterState::rebind(const TransferFunction& tf) {
    if (tf.num_order() != tf_.num_order() || tf.den_order() != tf_.den_order())
        throw std::invalid_argument("rebind requires identical numerator/denominator orders");
    if (tf.sample_rate_hz() != tf_.sample_rate_hz())
        throw std::invalid_argument("rebind requires identical sample rate");
    tf_ = tf;
    std::copy(tf_.num().begin(), tf_.num().end(), bp_.begin());
    std::copy(tf_.den().begin(), tf_.den().end(), ap_.begin());
}

double FilterState::step(double x) {
    if (!std::isfinite(x))
        throw std::invalid_argument("non-finite input sample");
    const std::size_t n = s_.size();
    if (n == 0) return bp_[0] * x;
    const double y = bp_[0] * x + s_[0];
    for (std::size_t i = 0; i + 1 < n; ++i)
        s_[i] = s_[i + 1] + bp_[i + 1] * x - ap_[i + 1] * y;
    s_[n - 1] = bp_[n] * x - ap_[n] * y;
    return y;
}

std::complex<double> response_at(const TransferFunction& tf, double freq_hz) {
    const double fs = tf.sample_rate_hz();
    if (freq_hz < 0.0 || freq_hz > fs / 2.0)
        throw std::out_of_range("frequency outside [0, fs/2]");
    const double w = 2.0 * std::numbers::pi * freq_hz / fs;
    const std::complex<double> zi = std::polar(1.0, -w);
    auto horner = [&](const std::vector<double>& c) {
        std::complex<double> acc(0.0, 0.0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * zi + *it;
        return acc;
    };
    return horner(tf.num()) / horner(tf.den());
}

std::vector<FrequencyResponsePoint> freq_response(const TransferFunction& tf,
                                                  std::span<const double> freqs_hz) {
    std::vector<FrequencyResponsePoint> out;
    out.reserve(freqs_hz.size());
    for (double f : freqs_hz) out.push_back({f, response_at(tf, f)});
    return out;
}

std::vector<double> filter_signal(const TransferFunction& tf, std::span<const double> x) {
    FilterState st(tf);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = st.step(x[i]);
    return y;
}

std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs) {
    // strip trailing (highest-power) zeros, then leading zeros which only
    // scale the root set by powers of x = 0
    std::size_t hi = coeffs.size();
    while (hi > 0 && coeffs[hi - 1] == 0.0) --hi;
    std::size_t lo = 0;
    std::vector<std::complex<double>> roots;
    while (lo < hi && coeffs[lo] == 0.0) {
        roots.emplace_back(0.0, 0.0);
        ++lo;
    }
    const std::size_t n = (hi > lo) ? hi - lo - 1 : 0;
    if (n == 0) return roots;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                      static_cast<Eigen::Index>(n));
    const double lead = coeffs[hi - 1];
    for (std::size_t i = 0; i < n; ++i) {
        companion(0, static_cast<Eigen::Index>(i)) = -coeffs[hi - 2 - i] / lead;
        if (i + 1 < n) companion(static_cast<Eigen::Index>(i) + 1, static_cast<Eigen::Index>(i)) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        roots.push_back(solver.eigenvalues()[i]);
    return roots;
}

bool is_stable(const TransferFunction& tf) {
    if (tf.is_fir()) return true;
    // poles of B/A in z^-1 form: roots of a0 z^na + a1 z^(na-1) + ... + a_na,
    // i.e. the polynomial with coefficients reversed relative to a(z^-1)
    std::vector<double> rev(tf.den().rbegin(), tf.den().rend());
    const auto roots = polynomial_roots(rev);
    for (const auto& r : roots)
        if (std::abs(r) >= 1.0 - 1e-9) return false;
    return true;
}

TransferFunction cascade(const TransferFunction& first, const TransferFunction& second) {
    if (first.sample_rate_hz() != second.sample_rate_hz())
        throw std::invalid_argument("cascade requires matching sample rates");
    auto conv = [](const std::vector<double>& p, const std::vector<double>& q) {
        std::vector<double> out(p.size() + q.size() - 1, 0.0);
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
        return out;
    };
    return {conv(first.num(), second.num()), conv(first.den(), second.den()),
            first.sample_rate_hz()};
}

SectionCascade::SectionCascade(std::vector<TransferFunction> sections)
    : sections_(std::move(sections)) {
    if (sections_.empty())
        throw std::invalid_argument("cascade needs at least one section");
    for (const auto& s : sections_)
        if (s.sample_rate_hz() != sections_.front().sample_rate_hz())
            throw std::invalid_argument("cascade sections must share a sample rate");
}

SectionCascade::SectionCascade(TransferFunction single)
    : SectionCascade(std::vector<TransferFunction>{std::move(single)}) {}

std::complex<double> SectionCascade::response_at(double freq_hz) const {
    std::complex<double> acc(1.0, 0.0);
    for (const auto& s : sections_) acc *= sbfc::response_at(s, freq_hz);
    return acc;
}

bool SectionCascade::stable() const {
    for (const auto& s : sections_)
        if (!is_stable(s)) return false;
    return true;
}

TransferFunction SectionCascade::combined() const {
    TransferFunction acc = sections_.front();
    for (std::size_t i = 1; i < sections_.size(); ++i) acc = cascade(acc, sections_[i]);
    return acc;
}

CascadeState::CascadeState(const SectionCascade& system) {
    stages_.reserve(system.sections().size());
    for (const auto& s : system.sections()) stages_.emplace_back(s);
}

double CascadeState::step(double x) {
    double v = x;
    for (auto& st : stages_) v = st.step(v);
    return v;
}

void CascadeState::reset() {
    for (auto& st : stages_) st.reset();
}

} // namespace sbfc

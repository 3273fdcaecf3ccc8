#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

namespace holocomp {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Neumaier compensated accumulator. Summation order is whatever order add() is called in.
template <class T>
class CompensatedSum {
public:
    void add(T x)
    {
        const T t = sum_ + x;
        if constexpr (std::is_same_v<T, double>) {
            if (std::abs(sum_) >= std::abs(x))
                comp_ += (sum_ - t) + x;
            else
                comp_ += (x - t) + sum_;
        } else {
            comp_ += component_fix(sum_, x, t);
        }
        sum_ = t;
    }
    T value() const { return sum_ + comp_; }

private:
    static T component_fix(T s, T x, T t)
    {
        auto fix = [](double a, double b, double c) {
            return std::abs(a) >= std::abs(b) ? (a - c) + b : (b - c) + a;
        };
        return T(fix(s.real(), x.real(), t.real()), fix(s.imag(), x.imag(), t.imag()));
    }
    T sum_{};
    T comp_{};
};

/// Thread count: HOLOCOMP_THREADS caps hardware concurrency.
inline unsigned thread_count()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("HOLOCOMP_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return n;
}

/// Evaluates fn(i) for i in [0, n) into slot i. Callers reduce the slots in index
/// order, so results do not depend on the thread count.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t n, Fn&& fn)
{
    std::vector<R> out(n);
    const unsigned threads = std::min<std::size_t>(thread_count(), std::max<std::size_t>(n, 1));
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += threads) out[i] = fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

/// Counter-based generator: the i-th draw of a stream depends only on (seed, stream, i).
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

    std::uint64_t bits(std::uint64_t counter) const
    {
        return mix(mix(seed_ ^ mix(stream_ + 0x632be59bd9b4e019ULL)) + counter);
    }

    /// Uniform in the open interval (0, 1).
    double uniform(std::uint64_t counter) const
    {
        return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    static std::uint64_t mix(std::uint64_t x)
    {
        // splitmix64 finalizer
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }
    std::uint64_t seed_;
    std::uint64_t stream_;
};

/// Tri-state verdict shared by every sup/ratio sweep.
/// Shortest round-trip decimal form; used for every number written to CSV.
inline std::string format_number(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

enum class Verdict { finite_evidence, growth_detected, inconclusive };

inline std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::finite_evidence: return "finite-evidence";
    case Verdict::growth_detected: return "growth-detected";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

/// Growth test on a profile indexed by refinement level: growth when any of the last
/// three levels exceeds factor * profile[reference]. Empty or all-NaN profiles are
/// inconclusive.
inline Verdict growth_verdict(const std::vector<double>& profile, std::size_t reference, double factor = 2.0)
{
    if (profile.size() < 4 || reference >= profile.size()) return Verdict::inconclusive;
    const double ref = profile[reference];
    if (!std::isfinite(ref)) return Verdict::inconclusive;
    for (std::size_t j = profile.size() - 3; j < profile.size(); ++j) {
        const double v = profile[j];
        if (std::isnan(v)) return Verdict::inconclusive;
        if (v > factor * ref && v > 0.0) return Verdict::growth_detected;
    }
    return Verdict::finite_evidence;
}

} // namespace holocomp

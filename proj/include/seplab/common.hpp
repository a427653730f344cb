#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace seplab {

using Vertex = std::uint32_t;

// Bad arguments, malformed files, violated preconditions.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Instance beyond a documented solver limit.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A randomized construction found nothing acceptable; retry with more effort.
struct SearchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw InputError("rational with zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    auto g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  static Rational parse(const std::string& s) {
    try {
      auto slash = s.find('/');
      if (slash == std::string::npos) return Rational(std::stoll(s), 1);
      return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
      throw InputError("cannot parse rational '" + s + "'");
    }
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return double(num_) / double(den_); }
  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

enum class Bound { strict, inclusive };

// Balance threshold c, either rational or the square root of a rational
// (product bounds use c = sqrt(7/8)). Comparisons are exact.
class Balance {
 public:
  Balance() = default;
  Balance(Rational c) : c_(c) {}  // NOLINT implicit on purpose
  static Balance sqrt_of(Rational c) {
    Balance b(c);
    b.sqrt_ = true;
    return b;
  }

  const Rational& base() const { return c_; }
  bool is_sqrt() const { return sqrt_; }
  double value() const;
  std::string str() const { return sqrt_ ? "sqrt(" + c_.str() + ")" : c_.str(); }

  void validate() const {
    if (c_.num() <= 0 || c_.num() >= c_.den())
      throw InputError("balance parameter must lie in (0,1), got " + str());
  }

  // component size allowed in a graph (or piece) with n vertices
  bool fits(std::uint64_t size, std::uint64_t n, Bound bound = Bound::strict) const {
    using U = unsigned __int128;
    U lhs, rhs;
    if (sqrt_) {
      lhs = U(size) * size * U(c_.den());
      rhs = U(c_.num()) * n * n;
    } else {
      lhs = U(size) * U(c_.den());
      rhs = U(c_.num()) * n;
    }
    return bound == Bound::strict ? lhs < rhs : lhs <= rhs;
  }

  // largest component size that fits
  std::uint64_t max_fitting(std::uint64_t n, Bound bound = Bound::strict) const {
    std::uint64_t lo = 0, hi = n;
    if (!fits(0, n, bound)) return 0;
    while (lo < hi) {
      auto mid = lo + (hi - lo + 1) / 2;
      if (fits(mid, n, bound)) lo = mid; else hi = mid - 1;
    }
    return lo;
  }

 private:
  Rational c_{1, 2};
  bool sqrt_ = false;
};

inline double Balance::value() const {
  double v = c_.value();
  if (!sqrt_) return v;
  double s = v;
  for (int i = 0; i < 60; ++i) s = 0.5 * (s + v / s);
  return s;
}

inline const Rational kHalf{1, 2};

namespace detail {
inline std::atomic<unsigned>& thread_override() {
  static std::atomic<unsigned> v{0};
  return v;
}
}  // namespace detail

// --threads wins over SEPLAB_THREADS, which wins over hardware concurrency.
inline void set_default_threads(unsigned n) { detail::thread_override() = n; }

inline unsigned default_threads() {
  if (unsigned o = detail::thread_override(); o > 0) return o;
  if (const char* env = std::getenv("SEPLAB_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return unsigned(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs fn(i) for i in [0,count) on up to `threads` workers. Work items are
// claimed dynamically; callers write results into per-index slots.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = default_threads();
  threads = unsigned(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next++;
      if (i >= count || failed) return;
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads - 1);
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace seplab

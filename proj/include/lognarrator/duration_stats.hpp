#pragma once

// Duration statistics over integer-second samples. Sums are carried in
// 128-bit integers so results are exact and independent of insertion order.
// Mode is computed on coarse bins (days, or hours for short logs): a modal
// value of continuous durations is meaningless without binning.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "lognarrator/errors.hpp"
#include "lognarrator/time_util.hpp"

namespace lognar {

struct DurationStats {
  std::int64_t count = 0;
  double mean = 0.0;      // seconds
  double median = 0.0;    // seconds
  std::int64_t mode = 0;  // seconds, representative of the modal bin
  double std_dev = 0.0;   // population standard deviation, seconds
  std::int64_t min = 0;
  std::int64_t max = 0;

  bool operator==(const DurationStats&) const = default;
};

// Round half up to the nearest multiple of `unit` (nonnegative input).
inline std::int64_t round_to_unit(std::int64_t seconds, std::int64_t unit) {
  return (seconds + unit / 2) / unit;
}

class DurationAccumulator {
 public:
  void add(Seconds s) { samples_.push_back(s); }
  bool empty() const { return samples_.empty(); }
  std::int64_t count() const { return static_cast<std::int64_t>(samples_.size()); }
  const std::vector<Seconds>& samples() const { return samples_; }

  // Sorted copy, handy for populations fed to fuzzy evaluation.
  std::vector<double> sorted_samples() const {
    std::vector<double> out(samples_.begin(), samples_.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  DurationStats finalize(std::int64_t bin_size = kDay) const {
    if (samples_.empty())
      throw InvalidArgumentError("duration statistics over an empty sample set");
    std::vector<Seconds> sorted = samples_;
    std::sort(sorted.begin(), sorted.end());

    DurationStats st;
    st.count = static_cast<std::int64_t>(sorted.size());
    st.min = sorted.front();
    st.max = sorted.back();

    __int128 sum = 0, sumsq = 0;
    for (Seconds s : sorted) {
      sum += s;
      sumsq += static_cast<__int128>(s) * s;
    }
    const auto n = static_cast<__int128>(sorted.size());
    st.mean = static_cast<double>(sum) / static_cast<double>(st.count);
    // population variance = (n*sumsq - sum^2) / n^2, exact in 128-bit
    __int128 num = n * sumsq - sum * sum;
    st.std_dev = std::sqrt(static_cast<double>(num)) / static_cast<double>(st.count);

    std::size_t mid = sorted.size() / 2;
    st.median = sorted.size() % 2 == 1
                    ? static_cast<double>(sorted[mid])
                    : (static_cast<double>(sorted[mid - 1]) + static_cast<double>(sorted[mid])) / 2.0;

    std::map<std::int64_t, std::int64_t> bins;
    for (Seconds s : sorted) ++bins[round_to_unit(s, bin_size)];
    std::int64_t best_bin = bins.begin()->first;
    std::int64_t best_count = 0;
    for (const auto& [bin, c] : bins)
      if (c > best_count) {  // ties keep the smallest bin (map order)
        best_bin = bin;
        best_count = c;
      }
    st.mode = best_bin * bin_size;
    return st;
  }

 private:
  std::vector<Seconds> samples_;
};

// Stats bin granularity for a log spanning `span` seconds: day bins, falling
// back to hour bins for logs shorter than three days.
inline std::int64_t stats_bin_for_span(Seconds span) {
  return span < 3 * kDay ? kHour : kDay;
}

}  // namespace lognar

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gasplan/errors.hpp"

namespace gasplan {

struct RpK {
    int rp = 0;  // 1-based
    int k = 0;   // 1-based
    friend bool operator==(const RpK&, const RpK&) = default;
};

struct WindowMember {
    int rp = 0;
    int k = 0;
    int multiplicity = 0;
};

// Weight-sum targets for validation. For a one-year model the defaults are
// 365 day-equivalents and 8760 hours; scaled desk instances override both.
struct WeightTargets {
    double days = 365.0;
    double hours = 8760.0;
};

// Period / representative-period index algebra shared by every formulation
// module. Chronological periods p are mapped by gamma onto (rp,k) pairs;
// w_rp counts how many chronological blocks an rp stands for and w_k is the
// duration of sub-period k in hours. Immutable once built.
class TemporalStructure {
  public:
    static TemporalStructure full_chronology(int n_periods);
    static TemporalStructure representative(std::vector<RpK> gamma,
                                            std::vector<double> w_rp,
                                            std::vector<double> w_k,
                                            std::optional<WeightTargets> targets = std::nullopt);

    int n_periods() const { return static_cast<int>(gamma_.size()); }
    int n_rp() const { return static_cast<int>(w_rp_.size()); }
    int n_k() const { return static_cast<int>(w_k_.size()); }
    RpK map(int p) const;               // 1-based p
    double w_rp(int rp) const;          // 1-based
    double w_k(int k) const;            // 1-based
    double weight(int rp, int k) const { return w_rp(rp) * w_k(k); }
    double total_weighted_hours() const;

    bool is_full_chronology() const;

    // Cyclic predecessor of sub-period k within an rp. In full-chronology
    // mode the first period has no predecessor and callers must anchor the
    // recursion on the initial-reserve parameter instead.
    int cyclic_predecessor(int k) const;

    int mow() const { return mow_; }
    void set_mow(int mow);
    std::vector<int> checkpoints() const;  // multiples of mow up to n_periods

    // Members of the window (p-mow, p], with multiplicity, for a checkpoint p.
    std::vector<WindowMember> window_members(int p) const;

    // CSV ingestion: gamma(p,rp,k), weights_rp(rp,w_rp), weights_k(k,w_k).
    static TemporalStructure load(const std::string& dir,
                                  std::optional<WeightTargets> targets = std::nullopt,
                                  int mow = 0);
    void save(const std::string& dir) const;

  private:
    TemporalStructure() = default;
    std::vector<RpK> gamma_;    // index p-1
    std::vector<double> w_rp_;  // index rp-1
    std::vector<double> w_k_;   // index k-1
    int mow_ = 0;
    bool full_chronology_ = false;

    void validate(const std::optional<WeightTargets>& targets) const;
};

}  // namespace gasplan

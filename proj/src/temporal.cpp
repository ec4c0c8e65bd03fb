#include "gasplan/temporal.hpp"

#include <cmath>
#include <filesystem>

#include "gasplan/csv.hpp"

namespace gasplan {

namespace {

bool all_integral(const std::vector<double>& v) {
    for (double x : v)
        if (x != std::floor(x)) return false;
    return true;
}

// Exact comparison for integral weights, 1e-9 relative otherwise.
void check_sum(double sum, double target, bool exact, const char* what) {
    if (exact) {
        if (sum != target)
            throw SchemaError(std::string("inconsistent-weights: ") + what + " sums to " +
                              std::to_string(sum) + ", expected " + std::to_string(target));
        return;
    }
    double scale = std::max(1.0, std::fabs(target));
    if (std::fabs(sum - target) > 1e-9 * scale)
        throw SchemaError(std::string("inconsistent-weights: ") + what + " sums to " +
                          std::to_string(sum) + ", expected " + std::to_string(target));
}

}  // namespace

TemporalStructure TemporalStructure::full_chronology(int n_periods) {
    if (n_periods < 1) throw std::invalid_argument("full_chronology: n_periods must be >= 1");
    TemporalStructure ts;
    ts.gamma_.reserve(static_cast<std::size_t>(n_periods));
    for (int p = 1; p <= n_periods; ++p) ts.gamma_.push_back({1, p});
    ts.w_rp_.assign(1, 1.0);
    ts.w_k_.assign(static_cast<std::size_t>(n_periods), 1.0);
    ts.full_chronology_ = true;
    ts.mow_ = n_periods;
    return ts;
}

TemporalStructure TemporalStructure::representative(std::vector<RpK> gamma,
                                                    std::vector<double> w_rp,
                                                    std::vector<double> w_k,
                                                    std::optional<WeightTargets> targets) {
    TemporalStructure ts;
    ts.gamma_ = std::move(gamma);
    ts.w_rp_ = std::move(w_rp);
    ts.w_k_ = std::move(w_k);
    if (ts.gamma_.empty()) throw std::invalid_argument("representative: empty gamma");
    for (std::size_t p = 0; p < ts.gamma_.size(); ++p) {
        const RpK& g = ts.gamma_[p];
        if (g.rp < 1 || g.rp > ts.n_rp() || g.k < 1 || g.k > ts.n_k())
            throw SchemaError("incomplete-mapping: period " + std::to_string(p + 1) +
                              " maps to unknown (rp,k) = (" + std::to_string(g.rp) + "," +
                              std::to_string(g.k) + ")");
    }
    for (double w : ts.w_rp_)
        if (w <= 0) throw SchemaError("inconsistent-weights: non-positive w_rp");
    for (double w : ts.w_k_)
        if (w <= 0) throw SchemaError("inconsistent-weights: non-positive w_k");

    ts.full_chronology_ =
        ts.n_rp() == 1 && ts.w_rp_[0] == 1.0 && all_integral(ts.w_k_) &&
        [&] {
            for (double w : ts.w_k_)
                if (w != 1.0) return false;
            return true;
        }();
    ts.validate(targets);
    ts.mow_ = ts.n_k();
    if (ts.n_periods() % ts.mow_ != 0) ts.mow_ = ts.n_periods();
    return ts;
}

void TemporalStructure::validate(const std::optional<WeightTargets>& targets) const {
    if (full_chronology_) return;  // identities hold by construction
    WeightTargets t = targets.value_or(WeightTargets{});
    bool exact = all_integral(w_rp_) && all_integral(w_k_) && t.days == std::floor(t.days) &&
                 t.hours == std::floor(t.hours);
    double day_sum = 0;
    for (double w : w_rp_) day_sum += w;
    check_sum(day_sum, t.days, exact, "w_rp");
    double hour_sum = 0;
    for (double wr : w_rp_)
        for (double wk : w_k_) hour_sum += wr * wk;
    check_sum(hour_sum, t.hours, exact, "w_rp*w_k");
}

RpK TemporalStructure::map(int p) const {
    if (p < 1 || p > n_periods()) throw std::invalid_argument("period out of range");
    return gamma_[static_cast<std::size_t>(p - 1)];
}

double TemporalStructure::w_rp(int rp) const {
    if (rp < 1 || rp > n_rp()) throw std::invalid_argument("rp out of range");
    return w_rp_[static_cast<std::size_t>(rp - 1)];
}

double TemporalStructure::w_k(int k) const {
    if (k < 1 || k > n_k()) throw std::invalid_argument("k out of range");
    return w_k_[static_cast<std::size_t>(k - 1)];
}

double TemporalStructure::total_weighted_hours() const {
    double s = 0;
    for (double wr : w_rp_)
        for (double wk : w_k_) s += wr * wk;
    return s;
}

bool TemporalStructure::is_full_chronology() const { return full_chronology_; }

int TemporalStructure::cyclic_predecessor(int k) const {
    if (k < 1 || k > n_k()) throw std::invalid_argument("k out of range");
    if (k > 1) return k - 1;
    if (full_chronology_)
        throw std::invalid_argument(
            "cyclic_predecessor: undefined for the first period in full-chronology mode");
    return n_k();
}

void TemporalStructure::set_mow(int mow) {
    if (mow < 1 || mow > n_periods()) throw std::invalid_argument("mow out of range");
    if (n_periods() % mow != 0)
        throw SchemaError("mow " + std::to_string(mow) + " leaves a partial window over " +
                          std::to_string(n_periods()) + " periods");
    mow_ = mow;
}

std::vector<int> TemporalStructure::checkpoints() const {
    std::vector<int> cps;
    for (int p = mow_; p <= n_periods(); p += mow_) cps.push_back(p);
    return cps;
}

std::vector<WindowMember> TemporalStructure::window_members(int p) const {
    if (p < 1 || p > n_periods() || p % mow_ != 0)
        throw std::invalid_argument("window_members: " + std::to_string(p) +
                                    " is not a checkpoint of MOW=" + std::to_string(mow_));
    // Count occurrences preserving first-seen order for deterministic output.
    std::vector<WindowMember> members;
    for (int pp = p - mow_ + 1; pp <= p; ++pp) {
        RpK g = map(pp);
        bool found = false;
        for (auto& m : members) {
            if (m.rp == g.rp && m.k == g.k) {
                ++m.multiplicity;
                found = true;
                break;
            }
        }
        if (!found) members.push_back({g.rp, g.k, 1});
    }
    return members;
}

TemporalStructure TemporalStructure::load(const std::string& dir,
                                          std::optional<WeightTargets> targets, int mow) {
    namespace fs = std::filesystem;
    auto gamma_tbl = CsvTable::read_file((fs::path(dir) / "gamma.csv").string());
    auto wrp_tbl = CsvTable::read_file((fs::path(dir) / "weights_rp.csv").string());
    auto wk_tbl = CsvTable::read_file((fs::path(dir) / "weights_k.csv").string());
    gamma_tbl.require_columns({"p", "rp", "k"});
    wrp_tbl.require_columns({"rp", "w_rp"});
    wk_tbl.require_columns({"k", "w_k"});

    std::vector<double> w_rp(wrp_tbl.row_count(), 0.0), w_k(wk_tbl.row_count(), 0.0);
    for (std::size_t r = 0; r < wrp_tbl.row_count(); ++r) {
        long rp = wrp_tbl.integer(r, "rp");
        if (rp < 1 || rp > static_cast<long>(w_rp.size()))
            throw SchemaError(wrp_tbl.source() + ":" + std::to_string(wrp_tbl.line_of(r)) +
                              ": rp ids must be 1..n without gaps");
        w_rp[static_cast<std::size_t>(rp - 1)] = wrp_tbl.number(r, "w_rp");
    }
    for (std::size_t r = 0; r < wk_tbl.row_count(); ++r) {
        long k = wk_tbl.integer(r, "k");
        if (k < 1 || k > static_cast<long>(w_k.size()))
            throw SchemaError(wk_tbl.source() + ":" + std::to_string(wk_tbl.line_of(r)) +
                              ": k ids must be 1..n without gaps");
        w_k[static_cast<std::size_t>(k - 1)] = wk_tbl.number(r, "w_k");
    }

    std::vector<RpK> gamma(gamma_tbl.row_count());
    std::vector<bool> seen(gamma_tbl.row_count(), false);
    for (std::size_t r = 0; r < gamma_tbl.row_count(); ++r) {
        long p = gamma_tbl.integer(r, "p");
        if (p < 1 || p > static_cast<long>(gamma.size()) || seen[static_cast<std::size_t>(p - 1)])
            throw SchemaError(gamma_tbl.source() + ":" + std::to_string(gamma_tbl.line_of(r)) +
                              ": p ids must be 1..n, each exactly once");
        seen[static_cast<std::size_t>(p - 1)] = true;
        gamma[static_cast<std::size_t>(p - 1)] = {static_cast<int>(gamma_tbl.integer(r, "rp")),
                                                  static_cast<int>(gamma_tbl.integer(r, "k"))};
    }

    auto ts = representative(std::move(gamma), std::move(w_rp), std::move(w_k), targets);
    if (mow > 0) ts.set_mow(mow);
    return ts;
}

void TemporalStructure::save(const std::string& dir) const {
    namespace fs = std::filesystem;
    CsvWriter gamma({"p", "rp", "k"});
    for (int p = 1; p <= n_periods(); ++p) {
        RpK g = map(p);
        gamma.add_row({std::to_string(p), std::to_string(g.rp), std::to_string(g.k)});
    }
    gamma.write_file((fs::path(dir) / "gamma.csv").string());
    CsvWriter wrp({"rp", "w_rp"});
    for (int rp = 1; rp <= n_rp(); ++rp)
        wrp.add_row({std::to_string(rp), CsvWriter::format_number(w_rp(rp))});
    wrp.write_file((fs::path(dir) / "weights_rp.csv").string());
    CsvWriter wk({"k", "w_k"});
    for (int k = 1; k <= n_k(); ++k)
        wk.add_row({std::to_string(k), CsvWriter::format_number(w_k(k))});
    wk.write_file((fs::path(dir) / "weights_k.csv").string());
}

}  // namespace gasplan

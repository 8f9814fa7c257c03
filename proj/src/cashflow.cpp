#include "profit/cashflow.hpp"

#include <algorithm>
#include <cmath>

namespace profit {

namespace {

void validate(const std::vector<Transaction>& txs) {
    for (const auto& tx : txs) {
        if (!std::isfinite(tx.time) || tx.time < 0.0)
            throw input_error("transaction time must be finite and nonnegative");
        if (!std::isfinite(tx.amount))
            throw input_error("transaction amount must be finite");
    }
}

}  // namespace

CashFlow::CashFlow(std::vector<Transaction> txs) {
    validate(txs);
    std::stable_sort(txs.begin(), txs.end(),
                     [](const Transaction& a, const Transaction& b) { return a.time < b.time; });
    txs_.reserve(txs.size());
    for (const auto& tx : txs) {
        if (!txs_.empty() && txs_.back().time == tx.time)
            txs_.back().amount += tx.amount;
        else
            txs_.push_back(tx);
        if (txs_.back().amount == 0.0) txs_.pop_back();
    }
}

CashFlow CashFlow::single(double time, double amount) {
    return CashFlow{{Transaction{time, amount}}};
}

double CashFlow::at(double t) const {
    double sum = 0.0;
    for (const auto& tx : txs_) {
        if (tx.time > t) break;
        sum += tx.amount;
    }
    return sum;
}

double CashFlow::left_limit(double t) const {
    double sum = 0.0;
    for (const auto& tx : txs_) {
        if (tx.time >= t) break;
        sum += tx.amount;
    }
    return sum;
}

double CashFlow::initial() const {
    return (!txs_.empty() && txs_.front().time == 0.0) ? txs_.front().amount : 0.0;
}

double CashFlow::total() const {
    double sum = 0.0;
    for (const auto& tx : txs_) sum += tx.amount;
    return sum;
}

double CashFlow::sup_norm() const {
    double norm = 0.0;  // the balance is 0 before the first transaction
    double sum = 0.0;
    for (const auto& tx : txs_) {
        sum += tx.amount;
        norm = std::max(norm, std::abs(sum));
    }
    return norm;
}

bool CashFlow::in_P_plus() const {
    double sum = 0.0;
    for (const auto& tx : txs_) {
        sum += tx.amount;
        if (sum < 0.0) return false;
    }
    return true;
}

bool CashFlow::in_P_plusplus() const {
    if (txs_.empty() || txs_.front().time > 0.0) return false;  // x(t) = 0 near 0
    double sum = 0.0;
    for (const auto& tx : txs_) {
        sum += tx.amount;
        if (sum <= 0.0) return false;
    }
    return true;
}

CashFlow CashFlow::truncate(double tau) const {
    if (tau < 0.0) throw input_error("truncate: τ must be nonnegative");
    std::vector<Transaction> kept;
    for (const auto& tx : txs_)
        if (tx.time <= tau) kept.push_back(tx);
    return CashFlow{std::move(kept)};
}

CashFlow CashFlow::postpone(double tau) const {
    if (tau < 0.0) throw input_error("postpone: τ must be nonnegative");
    std::vector<Transaction> shifted = txs_;
    for (auto& tx : shifted) tx.time += tau;
    return CashFlow{std::move(shifted)};
}

CashFlow CashFlow::reduce(double gamma) const {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw input_error("reduce: γ must lie in [0,1]");
    std::vector<Transaction> scaled = txs_;
    for (auto& tx : scaled)
        if (tx.time > 0.0) tx.amount *= gamma;
    return CashFlow{std::move(scaled)};
}

CashFlow CashFlow::scale(double lambda) const {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw input_error("scale: λ must be positive and finite");
    std::vector<Transaction> scaled = txs_;
    for (auto& tx : scaled) tx.amount *= lambda;
    return CashFlow{std::move(scaled)};
}

CashFlow CashFlow::time_scale(double c) const {
    if (!(c > 0.0) || !std::isfinite(c))
        throw input_error("time_scale: factor must be positive and finite");
    std::vector<Transaction> moved = txs_;
    for (auto& tx : moved) tx.time *= c;
    return CashFlow{std::move(moved)};
}

CashFlow CashFlow::negate() const {
    std::vector<Transaction> flipped = txs_;
    for (auto& tx : flipped) tx.amount = -tx.amount;
    return CashFlow{std::move(flipped)};
}

CashFlow combine(const CashFlow& x, const CashFlow& y) {
    std::vector<Transaction> merged = x.txs_;
    merged.insert(merged.end(), y.txs_.begin(), y.txs_.end());
    return CashFlow{std::move(merged)};
}

namespace {

// The balance is piecewise constant; its value sequence is: 0 before the
// first transaction (when that is after 0), then the partial sums.
std::vector<double> piece_values(const CashFlow& x) {
    std::vector<double> vals;
    const auto& txs = x.transactions();
    if (txs.empty() || txs.front().time > 0.0) vals.push_back(0.0);
    double sum = 0.0;
    for (const auto& tx : txs) {
        sum += tx.amount;
        vals.push_back(sum);
    }
    return vals;
}

}  // namespace

QMembership classify(const CashFlow& x) {
    QMembership m;
    const auto& txs = x.transactions();
    const double x0 = x.initial();

    // Positive-time transactions.
    std::vector<Transaction> later;
    for (const auto& tx : txs)
        if (tx.time > 0.0) later.push_back(tx);

    const bool nondecreasing_after_0 = std::all_of(
        later.begin(), later.end(), [](const Transaction& tx) { return tx.amount > 0.0; });

    m.q1 = x0 < 0.0 && nondecreasing_after_0;
    m.q4 = x0 < 0.0;
    m.q5_double_prime = x0 <= 0.0;
    m.q5 = m.q4 || (x0 == 0.0 && !later.empty() && later.front().amount < 0.0);

    // Down-then-up pattern among positive-time transactions: a (possibly
    // empty) run of outflows followed by a (possibly empty) run of inflows.
    bool down_then_up = true;
    bool seen_inflow = false;
    for (const auto& tx : later) {
        if (tx.amount > 0.0)
            seen_inflow = true;
        else if (seen_inflow)
            down_then_up = false;
    }
    m.q2 = m.q1 || (!x.in_P_plus() && x0 <= 0.0 && down_then_up);

    // Q3: the balance itself is nonpositive, then nonnegative.
    const auto vals = piece_values(x);
    bool q3 = vals.front() <= 0.0 && vals.back() >= 0.0;
    if (q3) {
        bool seen_positive = false;
        for (double v : vals) {
            if (v > 0.0) seen_positive = true;
            if (v < 0.0 && seen_positive) {
                q3 = false;
                break;
            }
        }
    }
    m.q3 = q3;

    // Two-transaction patterns.
    if (txs.size() == 2) {
        const auto& first = txs[0];
        const auto& second = txs[1];
        m.q2_prime = first.amount == -1.0 && second.amount > 0.0;
        m.q2_double_prime = first.amount == -1.0 && second.amount >= 1.0;
        m.q1_prime = m.q2_double_prime && first.time == 0.0;
        m.s = first.amount < 0.0 && second.amount >= -first.amount;
    }

    // Three-transaction-shaped patterns (degenerate members have fewer
    // transactions after canonicalization and still belong to the set).
    const bool unit_outflow_first = !txs.empty() && txs.front().amount == -1.0;
    if (unit_outflow_first && txs.size() <= 3) {
        m.q5_prime = true;
        m.q4_prime = txs.front().time == 0.0;
    }

    return m;
}

}  // namespace profit

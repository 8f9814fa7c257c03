#pragma once
// Step cash flows: a project is a finite list of dated transactions whose
// running balance x(t) is a right-continuous step function. Provides the
// arithmetic (combine/scale/negate), the structural operations (truncate,
// postpone, reduce) and the classification into the investment classes
// Q1..Q5 and their two/three-transaction variants.

#include <cstddef>
#include <vector>

#include "profit/common.hpp"

namespace profit {

struct Transaction {
    double time = 0.0;    // ≥ 0, finite
    double amount = 0.0;  // net inflow positive; never 0 in canonical form
    friend bool operator==(const Transaction&, const Transaction&) = default;
};

// A project x ∈ P with finitely many transactions, stored in canonical form:
// times strictly increasing, equal times merged, zero amounts dropped.
class CashFlow {
  public:
    CashFlow() = default;
    explicit CashFlow(std::vector<Transaction> txs);

    // amount·1_time (a single transaction; empty flow when amount == 0).
    static CashFlow single(double time, double amount);

    const std::vector<Transaction>& transactions() const { return txs_; }
    bool empty() const { return txs_.empty(); }
    std::size_t size() const { return txs_.size(); }

    // x(t): the balance at time t (right-continuous).
    double at(double t) const;
    // x(t-): the balance just before t.
    double left_limit(double t) const;
    // x(0).
    double initial() const;
    // x(+∞): the total sum (always finite for step flows).
    double total() const;

    // sup_{t≥0} |x(t)|.
    double sup_norm() const;
    // inf x(t) ≥ 0 (the nonnegative cone P+) / inf x(t) > 0 (its interior).
    bool in_P_plus() const;
    bool in_P_plusplus() const;

    // x_{≤τ}: drop transactions after τ.
    CashFlow truncate(double tau) const;
    // x^{(+τ)}: shift every transaction by +τ.
    CashFlow postpone(double tau) const;
    // x_γ: keep the time-0 transaction, scale every later one by γ ∈ [0,1].
    CashFlow reduce(double gamma) const;

    CashFlow scale(double lambda) const;  // λ > 0
    // Transactions moved from t to c·t, amounts unchanged (c > 0).
    CashFlow time_scale(double c) const;
    CashFlow negate() const;

    friend CashFlow combine(const CashFlow& x, const CashFlow& y);
    friend bool operator==(const CashFlow&, const CashFlow&) = default;

  private:
    std::vector<Transaction> txs_;
};

CashFlow combine(const CashFlow& x, const CashFlow& y);

// Membership in the paper's project classes, decided by exact sign tests on
// the breakpoint sequence (inputs are exact user data; no tolerance).
struct QMembership {
    bool q1 = false;   // x(0) < 0 and x nondecreasing
    bool q2 = false;   // q1, or: x ∉ P+, x(0) ≤ 0, outflow run then inflow run
    bool q3 = false;   // balance nonpositive on [0,τ), nonnegative on [τ,∞)
    bool q4 = false;   // x(0) < 0
    bool q5 = false;   // q4, or: x(0) = 0 and the first move is an outflow
    bool q1_prime = false;         // -1_0 + a·1_τ, a ≥ 1, τ > 0
    bool q2_prime = false;         // -1_t + a·1_τ, 0 ≤ t < τ, a > 0
    bool q2_double_prime = false;  // -1_t + a·1_τ, 0 ≤ t < τ, a ≥ 1
    bool q4_prime = false;         // -1_0 + a·1_t + b·1_τ, t, τ > 0
    bool q5_prime = false;         // -1_s + a·1_{s+t} + b·1_{s+τ}
    bool q5_double_prime = false;  // x(0) ≤ 0
    bool s = false;                // -a·1_t + b·1_τ, 0 ≤ t < τ, 0 < a ≤ b
};

QMembership classify(const CashFlow& x);

}  // namespace profit

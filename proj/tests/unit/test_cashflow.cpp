#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include <profit/cashflow.hpp>

#include "../support/gen.hpp"

using profit::CashFlow;
using profit::classify;
using profit::combine;
using profit::Transaction;

namespace {
CashFlow flow(std::initializer_list<Transaction> txs) {
    return CashFlow(std::vector<Transaction>(txs));
}
}  // namespace

TEST_CASE("canonical form: sorted, merged, zeros dropped") {
    CashFlow x = flow({{1.0, 2.0}, {0.0, -1.0}, {1.0, 0.5}, {3.0, 0.0}});
    REQUIRE(x.size() == 2);
    CHECK(x.transactions()[0] == Transaction{0.0, -1.0});
    CHECK(x.transactions()[1] == Transaction{1.0, 2.5});

    CHECK(flow({{0.0, 1.0}, {0.0, -1.0}}).empty());
    CHECK(CashFlow::single(2.0, 0.0).empty());
    CHECK(CashFlow::single(2.0, 3.0) == flow({{2.0, 3.0}}));
}

TEST_CASE("constructor rejects invalid transactions") {
    CHECK_THROWS_AS(flow({{-1.0, 1.0}}), profit::input_error);
    CHECK_THROWS_AS(flow({{std::numeric_limits<double>::infinity(), 1.0}}), profit::input_error);
    CHECK_THROWS_AS(flow({{0.0, std::numeric_limits<double>::quiet_NaN()}}), profit::input_error);
}

TEST_CASE("cumulative balance: right-continuity and totals") {
    CashFlow x = flow({{0.0, -1.0}, {1.0, 2.0}});
    CHECK(x.at(0.5) == -1.0);
    CHECK(x.at(1.0) == 1.0);  // the jump at t=1 is included
    CHECK(x.left_limit(1.0) == -1.0);
    CHECK(x.at(0.0) == -1.0);
    CHECK(x.left_limit(0.0) == 0.0);
    CHECK(x.initial() == -1.0);
    CHECK(x.total() == 1.0);

    CashFlow zero;
    CHECK(zero.at(0.0) == 0.0);
    CHECK(zero.at(7.5) == 0.0);
    CHECK(zero.total() == 0.0);
}

TEST_CASE("combine / scale / negate") {
    CHECK(combine(flow({{0.0, -1.0}}), flow({{0.0, 1.0}})).empty());
    CHECK(flow({{0.0, -1.0}, {1.0, 2.0}}).scale(2.0) == flow({{0.0, -2.0}, {1.0, 4.0}}));
    CHECK(flow({{0.0, -1.0}, {1.0, 2.0}}).negate() == flow({{0.0, 1.0}, {1.0, -2.0}}));
    CHECK_THROWS_AS(flow({{0.0, 1.0}}).scale(0.0), profit::input_error);
    CHECK_THROWS_AS(flow({{0.0, 1.0}}).scale(-2.0), profit::input_error);
}

TEST_CASE("truncate") {
    CashFlow x = flow({{0.0, -1.0}, {1.0, 2.0}, {3.0, 1.0}});
    CHECK(x.truncate(2.0) == flow({{0.0, -1.0}, {1.0, 2.0}}));
    CHECK(x.truncate(0.0) == flow({{0.0, -1.0}}));
    CHECK(x.truncate(3.0) == x);
    CHECK(x.truncate(99.0) == x);
    CHECK_THROWS_AS(x.truncate(-0.5), profit::input_error);

    // truncate(truncate(x,a),b) == truncate(x, min(a,b))
    CHECK(x.truncate(2.5).truncate(0.5) == x.truncate(0.5));
    CHECK(x.truncate(0.5).truncate(2.5) == x.truncate(0.5));
}

TEST_CASE("postpone") {
    CashFlow x = flow({{0.0, -1.0}, {1.0, std::exp(0.2)}});
    CHECK(x.postpone(3.0) == flow({{3.0, -1.0}, {4.0, std::exp(0.2)}}));
    CHECK(x.postpone(0.0) == x);
    CHECK_THROWS_AS(x.postpone(-1.0), profit::input_error);
}

TEST_CASE("reduce") {
    CashFlow x = flow({{0.0, -1.0}, {1.0, 2.0}});
    CHECK(x.reduce(0.5) == flow({{0.0, -1.0}, {1.0, 1.0}}));
    CHECK(x.reduce(1.0) == x);
    CHECK(x.reduce(0.0) == flow({{0.0, -1.0}}));
    CHECK_THROWS_AS(x.reduce(-0.1), profit::input_error);
    CHECK_THROWS_AS(x.reduce(1.1), profit::input_error);

    // x_γ(t) = x(0) + γ(x(t) − x(0)) at every breakpoint.
    auto g = testgen::rng(11);
    for (int i = 0; i < 50; ++i) {
        CashFlow y = testgen::random_flow(g);
        double gamma = testgen::uniform(g, 0.0, 1.0);
        CashFlow yg = y.reduce(gamma);
        for (const auto& tx : y.transactions()) {
            double want = y.initial() + gamma * (y.at(tx.time) - y.initial());
            CHECK(yg.at(tx.time) == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("time_scale") {
    CashFlow x = flow({{0.0, -1.0}, {2.0, 3.0}});
    CHECK(x.time_scale(0.5) == flow({{0.0, -1.0}, {1.0, 3.0}}));
    CHECK(x.time_scale(1.0) == x);
    CHECK_THROWS_AS(x.time_scale(0.0), profit::input_error);
    CHECK_THROWS_AS(x.time_scale(-1.0), profit::input_error);
}

TEST_CASE("sup_norm and the nonnegative cone") {
    CHECK(flow({{0.0, -1.0}, {1.0, 2.0}}).sup_norm() == 1.0);
    CHECK_FALSE(flow({{0.0, -1.0}, {1.0, 2.0}}).in_P_plus());
    CashFlow p = flow({{0.0, 2.0}, {1.0, -1.0}});
    CHECK(p.sup_norm() == 2.0);
    CHECK(p.in_P_plus());
    CHECK(p.in_P_plusplus());  // min balance is 1 > 0
    CashFlow zero;
    CHECK(zero.sup_norm() == 0.0);
    CHECK(zero.in_P_plus());
    CHECK_FALSE(zero.in_P_plusplus());
}

TEST_CASE("P+ is a cone: closed under combine") {
    auto g = testgen::rng(12);
    int found = 0;
    for (int i = 0; i < 200; ++i) {
        CashFlow x = testgen::random_flow(g);
        CashFlow y = testgen::random_flow(g);
        if (x.in_P_plus() && y.in_P_plus()) {
            ++found;
            CHECK(combine(x, y).in_P_plus());
        }
    }
    CHECK(found > 0);
}

TEST_CASE("additivity of the balance at merged breakpoints") {
    auto g = testgen::rng(13);
    for (int i = 0; i < 50; ++i) {
        CashFlow x = testgen::random_flow(g);
        CashFlow y = testgen::random_flow(g);
        CashFlow xy = combine(x, y);
        for (const auto& tx : xy.transactions()) {
            CHECK(xy.at(tx.time) ==
                  doctest::Approx(x.at(tx.time) + y.at(tx.time)).epsilon(1e-12));
        }
    }
}

TEST_CASE("classification: worked examples") {
    // 1_0 - 2*1_1 + 1.1*1_2 starts with an inflow, so it is not an investment.
    auto m = classify(flow({{0.0, 1.0}, {1.0, -2.0}, {2.0, 1.1}}));
    CHECK_FALSE(m.q4);
    CHECK_FALSE(m.q1);
    CHECK_FALSE(m.q5_double_prime);

    // The canonical two-transaction loan is in every investment class.
    m = classify(flow({{0.0, -1.0}, {1.0, 2.0}}));
    CHECK(m.q1);
    CHECK(m.q1_prime);
    CHECK(m.q2);
    CHECK(m.q2_prime);
    CHECK(m.q2_double_prime);
    CHECK(m.q3);
    CHECK(m.q4);
    CHECK(m.q5);
    CHECK(m.s);

    // Outflows then inflows: conventional (Q2) but not nondecreasing (Q1).
    m = classify(flow({{0.0, -1.0}, {1.0, -1.0}, {2.0, 3.0}}));
    CHECK_FALSE(m.q1);
    CHECK(m.q2);
    CHECK(m.q3);
    CHECK(m.q4);

    // Delayed two-transaction investment: Q2'' but not Q1' (outlay not at 0).
    m = classify(flow({{1.0, -1.0}, {2.0, 1.5}}));
    CHECK_FALSE(m.q1_prime);
    CHECK(m.q2_prime);
    CHECK(m.q2_double_prime);
    CHECK(m.s);
    CHECK_FALSE(m.q4);   // x(0) = 0
    CHECK(m.q5);         // first move is an outflow
    CHECK(m.q5_double_prime);

    // Scaled two-transaction pattern: in S but (a<1 after normalization) not Q2''.
    m = classify(flow({{0.0, -2.0}, {1.0, 2.5}}));
    CHECK(m.s);                       // 0 < a ≤ b with a=2, b=2.5
    CHECK_FALSE(m.q2_double_prime);   // requires unit outlay with a ≥ 1
    CHECK(m.q2);

    // Relapsing balance: recovers, dips again.
    m = classify(flow({{0.0, -1.0}, {1.0, 2.0}, {2.0, -3.0}}));
    CHECK_FALSE(m.q1);
    CHECK_FALSE(m.q2);  // final balance is negative; not an inflow run
    CHECK_FALSE(m.q3);
    CHECK(m.q4);

    // Zero project.
    m = classify(CashFlow());
    CHECK_FALSE(m.q4);
    CHECK(m.q5_double_prime);  // x(0) = 0
    CHECK(m.q3);               // vacuously nonpositive-then-nonnegative
}

TEST_CASE("classification: implication chain on random projects") {
    auto g = testgen::rng(14);
    for (int i = 0; i < 400; ++i) {
        CashFlow x = (i % 3 == 0) ? testgen::random_investment(g) : testgen::random_flow(g);
        auto m = classify(x);
        if (m.q1) CHECK(m.q2);
        if (m.q4) CHECK(m.q5);
        if (m.q5) CHECK(m.q5_double_prime);
        if (m.q1_prime) CHECK(m.q2_double_prime);
        if (m.q2_double_prime) CHECK(m.q2_prime);
        if (m.q2_double_prime) CHECK(m.s);
        if (m.q2) CHECK_FALSE(x.in_P_plus());
    }
}

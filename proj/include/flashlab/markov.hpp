// Exact average-case analysis: enumerate the block states reachable under a
// code and flip distribution, build the transition chain, solve for the
// stationary distribution and derive the erase probability and the average
// number of rewritings between erases.
//
// An erase transition returns the chain to the all-zero state (state 0).
// The per-step stationary erase probability p counts that reset step; the
// reported erase probability is per rewriting, P_E = p/(1-p), so the average
// number of rewritings between consecutive erases is exactly 1/P_E.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <deque>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <vector>

#include "flashlab/codec.hpp"
#include "flashlab/core.hpp"
#include "flashlab/distribution.hpp"
#include "flashlab/ilifc.hpp"
#include "flashlab/layered.hpp"

namespace flashlab {

struct Transition {
    std::uint32_t target;
    int bit;
    double prob;
    bool erase;
};

struct ChainModel {
    CodeParams params;
    FlipDistribution dist;
    std::vector<BlockState> states;                    // state 0 = all-zero
    std::vector<std::vector<Transition>> transitions;  // indexed by state

    std::size_t transition_count() const {
        std::size_t total = 0;
        for (const auto& row : transitions) total += row.size();
        return total;
    }
};

inline constexpr std::size_t kDefaultTransitionCap = 1'000'000;

class ChainCapExceeded : public std::runtime_error {
  public:
    explicit ChainCapExceeded(std::size_t cap)
        : std::runtime_error("reachable state space exceeds " + std::to_string(cap) +
                             " transitions; use the simulator for this configuration") {}
};

namespace detail {

struct BlockHash {
    std::size_t operator()(const BlockState& s) const {
        std::size_t h = 1469598103934665603ull; // FNV-1a
        for (Level c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace detail

// Breadth-first closure from the all-zero state under every flip event with
// nonzero probability; erase transitions are redirected to state 0 with the
// erase flag set. Deterministic: states are numbered in discovery order with
// bits scanned ascending.
template <FlashCode C>
ChainModel build_chain(const C& code, const FlipDistribution& dist, std::size_t cap = kDefaultTransitionCap) {
    const CodeParams& p = code.params();
    if (dist.size() != p.k) throw std::invalid_argument("build_chain: distribution length != k");

    ChainModel chain{p, dist, {}, {}};
    std::unordered_map<BlockState, std::uint32_t, detail::BlockHash> index;
    std::deque<std::uint32_t> frontier;

    chain.states.push_back(zero_block(p));
    index.emplace(chain.states.front(), 0);
    frontier.push_back(0);

    std::size_t transition_total = 0;
    while (!frontier.empty()) {
        const std::uint32_t si = frontier.front();
        frontier.pop_front();
        std::vector<Transition> row;
        for (int bit = 1; bit <= p.k; ++bit) {
            const double prob = dist.p[static_cast<std::size_t>(bit - 1)];
            if (prob == 0.0) continue;
            EncodeOutcome outcome = code.encode_flip(chain.states[si], bit);
            std::uint32_t target = 0;
            if (outcome.written()) {
                auto [it, inserted] = index.try_emplace(std::move(*outcome.next), static_cast<std::uint32_t>(chain.states.size()));
                if (inserted) {
                    chain.states.push_back(it->first);
                    frontier.push_back(it->second);
                }
                target = it->second;
            }
            row.push_back({target, bit, prob, outcome.erase()});
            if (++transition_total > cap) throw ChainCapExceeded(cap);
        }
        chain.transitions.resize(chain.states.size());
        chain.transitions[si] = std::move(row);
    }
    chain.transitions.resize(chain.states.size());
    return chain;
}

struct StationaryResult {
    std::vector<double> pi;
    double residual = 0.0;         // max component of |pi P - pi|
    double step_erase_rate = 0.0;  // per-step stationary erase probability
    double erase_probability = 0.0; // P_E, erases per rewriting
    double avg_rewritings = 0.0;   // 1/P_E
};

inline constexpr std::size_t kDenseStateLimit = 2000;

namespace detail {

inline std::vector<double> apply_chain(const ChainModel& chain, const std::vector<double>& pi) {
    std::vector<double> next(pi.size(), 0.0);
    for (std::size_t s = 0; s < chain.transitions.size(); ++s) {
        const double mass = pi[s];
        if (mass == 0.0) continue;
        for (const Transition& t : chain.transitions[s]) next[t.target] += mass * t.prob;
    }
    return next;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

inline std::vector<double> solve_dense(const ChainModel& chain) {
    const auto n = static_cast<Eigen::Index>(chain.states.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t s = 0; s < chain.transitions.size(); ++s)
        for (const Transition& t : chain.transitions[s]) a(static_cast<Eigen::Index>(t.target), static_cast<Eigen::Index>(s)) += t.prob;
    a -= Eigen::MatrixXd::Identity(n, n);
    a.row(n - 1).setOnes(); // replace one balance equation with sum(pi) = 1
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(n - 1) = 1.0;
    const Eigen::VectorXd pi = a.partialPivLu().solve(rhs);
    std::vector<double> out(pi.data(), pi.data() + n);
    for (double& x : out)
        if (x < 0.0) x = 0.0;
    return out;
}

inline std::vector<double> solve_power(const ChainModel& chain, double tol, std::size_t max_iter) {
    std::vector<double> pi(chain.states.size(), 1.0 / static_cast<double>(chain.states.size()));
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        std::vector<double> next = apply_chain(chain, pi);
        double sum = 0.0;
        for (double x : next) sum += x;
        for (double& x : next) x /= sum;
        const double delta = max_abs_diff(next, pi);
        pi = std::move(next);
        if (delta <= tol) return pi;
    }
    throw std::runtime_error("stationary: power iteration did not converge within max_iter");
}

} // namespace detail

inline StationaryResult stationary(const ChainModel& chain, double tol = 1e-12, std::size_t max_iter = 1'000'000,
                                   std::size_t dense_limit = kDenseStateLimit) {
    StationaryResult result;
    result.pi = chain.states.size() < dense_limit ? detail::solve_dense(chain) : detail::solve_power(chain, tol, max_iter);
    result.residual = detail::max_abs_diff(detail::apply_chain(chain, result.pi), result.pi);
    if (result.residual > tol) throw std::runtime_error("stationary: residual above tolerance");

    double p_step = 0.0;
    for (std::size_t s = 0; s < chain.transitions.size(); ++s)
        for (const Transition& t : chain.transitions[s])
            if (t.erase) p_step += result.pi[s] * t.prob;
    result.step_erase_rate = p_step;
    result.erase_probability = p_step / (1.0 - p_step);
    result.avg_rewritings = 1.0 / result.erase_probability;
    return result;
}

struct TradeoffRow {
    int n;
    double rate; // k / n
    double avg_ilifc;
    double avg_layered;
};

// One stationary solve per code and block size; rows come out sorted by n
// ascending (rate descending). Rows are independent, so they may be solved
// on several threads; each result lands in its own slot, which keeps the
// output identical for any thread count.
inline std::vector<TradeoffRow> sweep_tradeoff(int k, int q, std::vector<int> n_list, const FlipDistribution& dist,
                                               std::size_t cap = kDefaultTransitionCap, unsigned threads = 1) {
    std::sort(n_list.begin(), n_list.end());
    std::vector<TradeoffRow> rows(n_list.size());

    std::atomic<std::size_t> cursor{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = cursor.fetch_add(1); i < n_list.size(); i = cursor.fetch_add(1)) {
            try {
                const int n = n_list[i];
                const CodeParams params(n, k, q);
                const auto ilifc = stationary(build_chain(IlifcCode(params), dist, cap));
                const auto layered = stationary(build_chain(LayeredCode(params), dist, cap));
                rows[i] = {n, static_cast<double>(k) / n, ilifc.avg_rewritings, layered.avg_rewritings};
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_list.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    return rows;
}

inline void write_sweep_csv(std::ostream& out, const std::vector<TradeoffRow>& rows) {
    out << "n,rate,avg_ilifc,avg_layered\n";
    const auto flags = out.flags();
    const auto precision = out.precision();
    out.precision(12);
    for (const TradeoffRow& row : rows) out << row.n << ',' << row.rate << ',' << row.avg_ilifc << ',' << row.avg_layered << '\n';
    out.flags(flags);
    out.precision(precision);
}

// Debug dump, one line per transition: from,to,bit,prob,erase.
inline void write_chain_dump(std::ostream& out, const ChainModel& chain) {
    const auto precision = out.precision();
    out.precision(17);
    for (std::size_t s = 0; s < chain.transitions.size(); ++s)
        for (const Transition& t : chain.transitions[s])
            out << s << ',' << t.target << ',' << t.bit << ',' << t.prob << ',' << (t.erase ? 1 : 0) << '\n';
    out.precision(precision);
}

} // namespace flashlab

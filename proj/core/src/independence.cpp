#include "onto/graph.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace onto {
namespace {

using Clock = std::chrono::steady_clock;

// Maximum clique in the complement of one connected component, BBMC style:
// candidate sets are bitsets over a degree-sorted relabelling and each node
// is bounded by a greedy sequential colouring of the candidates.
class ComponentSolver {
public:
    ComponentSolver(const OrthogonalityGraph& graph, const std::vector<std::size_t>& component,
                    Clock::time_point deadline, std::uint64_t& nodes)
        : deadline_(deadline), nodes_(nodes) {
        order_ = component;
        // Fewest orthogonality edges first; lowest index on ties.
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            return graph.degree(a) < graph.degree(b);
        });
        const std::size_t m = order_.size();
        compat_.assign(m, Bitset(m));
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = 0; q < m; ++q)
                if (p != q && !graph.adjacent(order_[p], order_[q])) compat_[p].set(q);
    }

    void solve() {
        const std::size_t m = order_.size();
        seed_greedy();
        Bitset all(m);
        all.set_all();
        std::vector<std::size_t> current;
        expand(current, all);
    }

    bool timed_out() const { return timed_out_; }

    std::vector<std::size_t> best_vertices() const {
        std::vector<std::size_t> out;
        for (std::size_t p : best_) out.push_back(order_[p]);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    void seed_greedy() {
        Bitset candidates(order_.size());
        candidates.set_all();
        std::vector<std::size_t> chosen;
        while (candidates.any()) {
            // Candidate keeping the most other candidates alive.
            std::size_t pick = Bitset::npos;
            std::size_t keep = 0;
            for (std::size_t p = candidates.find_first(); p != Bitset::npos; p = candidates.find_next(p)) {
                const std::size_t k = (compat_[p] & candidates).count();
                if (pick == Bitset::npos || k > keep) {
                    pick = p;
                    keep = k;
                }
            }
            chosen.push_back(pick);
            candidates &= compat_[pick];
        }
        best_ = chosen;
    }

    void colour(const Bitset& candidates, std::vector<std::size_t>& order, std::vector<std::size_t>& bounds) const {
        Bitset uncoloured = candidates;
        std::size_t k = 0;
        while (uncoloured.any()) {
            ++k;
            Bitset q = uncoloured;
            while (q.any()) {
                const std::size_t v = q.find_first();
                uncoloured.reset(v);
                q.reset(v);
                q.subtract(compat_[v]);
                order.push_back(v);
                bounds.push_back(k);
            }
        }
    }

    void expand(std::vector<std::size_t>& current, Bitset candidates) {
        if (timed_out_) return;
        if ((++nodes_ & 255u) == 0 && Clock::now() > deadline_) {
            timed_out_ = true;
            return;
        }
        std::vector<std::size_t> order;
        std::vector<std::size_t> bounds;
        colour(candidates, order, bounds);
        for (std::size_t k = order.size(); k-- > 0;) {
            if (current.size() + bounds[k] <= best_.size()) return;
            const std::size_t v = order[k];
            current.push_back(v);
            Bitset next = candidates & compat_[v];
            if (next.none()) {
                if (current.size() > best_.size()) best_ = current;
            } else {
                expand(current, next);
            }
            current.pop_back();
            if (timed_out_) return;
            candidates.reset(v);
        }
    }

    Clock::time_point deadline_;
    std::uint64_t& nodes_;
    std::vector<std::size_t> order_;
    std::vector<Bitset> compat_;
    std::vector<std::size_t> best_;
    bool timed_out_ = false;
};

}  // namespace

IndependenceResult independence_number(const OrthogonalityGraph& graph, double budget_seconds) {
    const auto start = Clock::now();
    const auto deadline = start + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(std::max(budget_seconds, 0.0)));
    IndependenceResult result;
    bool complete = true;
    for (const auto& component : graph.components()) {
        ComponentSolver solver(graph, component, deadline, result.nodes);
        solver.solve();
        complete = complete && !solver.timed_out();
        for (std::size_t v : solver.best_vertices()) result.witness.push_back(v);
    }
    std::sort(result.witness.begin(), result.witness.end());
    result.value = result.witness.size();
    result.status = complete ? AlphaStatus::exact : AlphaStatus::lower_bound;
    result.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
}

}  // namespace onto

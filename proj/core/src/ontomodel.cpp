#include "onto/ontomodel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "onto/error.hpp"

namespace onto {
namespace {

constexpr double kMeasureTolerance = 1e-9;

void require_index(const FiniteOntModel& model, std::size_t i) {
    if (i >= model.preparations().size())
        throw InvalidArgument("preparation index " + std::to_string(i) + " out of range");
}

}  // namespace

std::uint64_t assignment_count(std::size_t dim, std::size_t bases, const Limits& limits) {
    std::uint64_t count = 1;
    for (std::size_t b = 0; b < bases; ++b) {
        if (count > limits.assignment_cap / dim) {
            // Report the exact count when it fits in 64 bits.
            long double exact = std::pow(static_cast<long double>(dim), static_cast<long double>(bases));
            const std::uint64_t shown = exact >= 1.8e19L ? ~std::uint64_t{0} : static_cast<std::uint64_t>(exact);
            throw CapacityError("deterministic assignments " + std::to_string(dim) + "^" + std::to_string(bases),
                                shown, limits.assignment_cap);
        }
        count *= dim;
    }
    if (count > limits.assignment_cap)
        throw CapacityError("deterministic assignments", count, limits.assignment_cap);
    return count;
}

std::vector<DeterministicAssignment> enumerate_assignments(std::span<const MeasurementBasis> bases,
                                                           const Limits& limits) {
    if (bases.empty()) throw InvalidArgument("enumerate_assignments needs at least one basis");
    const std::size_t d = bases.front().dim();
    const std::uint64_t count = assignment_count(d, bases.size(), limits);
    std::vector<DeterministicAssignment> out;
    out.reserve(count);
    DeterministicAssignment current;
    current.outcomes.assign(bases.size(), 0);
    for (std::uint64_t i = 0; i < count; ++i) {
        out.push_back(current);
        for (std::size_t b = bases.size(); b-- > 0;) {
            if (++current.outcomes[b] < d) break;
            current.outcomes[b] = 0;
        }
    }
    return out;
}

// --- Measure -----------------------------------------------------------------

Measure Measure::from_dense(std::vector<double> masses) {
    Measure m;
    m.points_ = masses.size();
    if (m.points_ > kSparseThreshold) {
        m.sparse_ = true;
        for (std::size_t i = 0; i < masses.size(); ++i)
            if (masses[i] != 0.0) m.entries_.emplace_back(i, masses[i]);
    } else {
        m.dense_ = std::move(masses);
    }
    return m;
}

Measure Measure::from_entries(std::size_t points, std::vector<std::pair<std::size_t, double>> entries) {
    std::sort(entries.begin(), entries.end());
    for (std::size_t k = 0; k < entries.size(); ++k) {
        if (entries[k].first >= points) throw InvalidArgument("measure entry outside the ontic space");
        if (k > 0 && entries[k].first == entries[k - 1].first) throw InvalidArgument("repeated measure entry");
    }
    Measure m;
    m.points_ = points;
    if (points > kSparseThreshold) {
        m.sparse_ = true;
        m.entries_ = std::move(entries);
    } else {
        m.dense_.assign(points, 0.0);
        for (const auto& [i, v] : entries) m.dense_[i] = v;
    }
    return m;
}

double Measure::at(std::size_t lambda) const {
    if (!sparse_) return dense_.at(lambda);
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(lambda, -1.0e300));
    return (it != entries_.end() && it->first == lambda) ? it->second : 0.0;
}

double Measure::total() const {
    double acc = 0.0;
    for_each_nonzero([&](std::size_t, double v) { acc += v; });
    return acc;
}

double Measure::mass(const Bitset& subset) const {
    double acc = 0.0;
    for_each_nonzero([&](std::size_t i, double v) {
        if (subset.test(i)) acc += v;
    });
    return acc;
}

std::vector<double> Measure::to_dense() const {
    if (!sparse_) return dense_;
    std::vector<double> out(points_, 0.0);
    for (const auto& [i, v] : entries_) out[i] = v;
    return out;
}

Bitset Measure::support(double threshold) const {
    Bitset out(points_);
    for_each_nonzero([&](std::size_t i, double v) {
        if (v > threshold) out.set(i);
    });
    return out;
}

// --- FiniteOntModel ----------------------------------------------------------

FiniteOntModel::FiniteOntModel(std::vector<MeasurementBasis> bases, std::vector<PureState> preparations,
                               std::vector<Measure> measures, const Limits& limits)
    : bases_(std::move(bases)), preparations_(std::move(preparations)), measures_(std::move(measures)) {
    if (bases_.empty() && preparations_.empty())
        throw InvalidArgument("a finite model needs at least one basis or preparation");
    // No bases: a single ontic point, the empty assignment.
    dim_ = bases_.empty() ? preparations_.front().dim() : bases_.front().dim();
    for (const auto& b : bases_) {
        if (b.dim() != dim_) throw InvalidArgument("bases of a finite model must share one dimension");
        b.validate();
    }
    ontic_size_ = static_cast<std::size_t>(assignment_count(dim_, bases_.size(), limits));
    stride_.assign(bases_.size(), 1);
    for (std::size_t b = bases_.size(); b-- > 1;) stride_[b - 1] = stride_[b] * dim_;

    if (measures_.size() != preparations_.size())
        throw InvalidArgument("one measure per preparation is required");
    for (std::size_t p = 0; p < preparations_.size(); ++p) {
        if (preparations_[p].dim() != dim_) throw InvalidArgument("preparation dimension does not match the bases");
        const Measure& m = measures_[p];
        if (m.points() != ontic_size_)
            throw InvalidArgument("measure " + std::to_string(p) + " has " + std::to_string(m.points()) +
                                  " entries, expected " + std::to_string(ontic_size_));
        bool negative = false;
        m.for_each_nonzero([&](std::size_t, double v) { negative = negative || v < -kMeasureTolerance; });
        if (negative) throw InvalidArgument("measure " + std::to_string(p) + " has negative mass");
        if (std::abs(m.total() - 1.0) > kMeasureTolerance)
            throw InvalidArgument("measure " + std::to_string(p) + " does not sum to 1");
    }
}

const Measure& FiniteOntModel::measure(std::size_t preparation) const {
    require_index(*this, preparation);
    return measures_[preparation];
}

std::size_t FiniteOntModel::outcome(std::size_t lambda, std::size_t basis) const {
    return (lambda / stride_[basis]) % dim_;
}

DeterministicAssignment FiniteOntModel::assignment(std::size_t lambda) const {
    DeterministicAssignment a;
    a.outcomes.resize(bases_.size());
    for (std::size_t b = 0; b < bases_.size(); ++b) a.outcomes[b] = static_cast<std::uint32_t>(outcome(lambda, b));
    return a;
}

// --- derived sets and checks -------------------------------------------------

Bitset gamma_set(const FiniteOntModel& model, std::size_t basis, std::size_t outcome) {
    if (basis >= model.bases().size()) throw InvalidArgument("basis index out of range");
    if (outcome >= model.dim()) throw InvalidArgument("outcome index out of range");
    Bitset out(model.ontic_size());
    for (std::size_t lambda = 0; lambda < model.ontic_size(); ++lambda)
        if (model.outcome(lambda, basis) == outcome) out.set(lambda);
    return out;
}

Bitset gamma_cap(const FiniteOntModel& model, const PureState& state) {
    Bitset out(model.ontic_size());
    out.set_all();
    bool found = false;
    for (std::size_t b = 0; b < model.bases().size(); ++b) {
        if (auto k = model.bases()[b].find(state)) {
            out &= gamma_set(model, b, *k);
            found = true;
        }
    }
    if (!found) throw InvalidArgument("state is not an element of any basis of the model");
    return out;
}

double born_check(const FiniteOntModel& model) {
    double worst = 0.0;
    const std::size_t d = model.dim();
    std::vector<double> marginal(d);
    for (std::size_t p = 0; p < model.preparations().size(); ++p) {
        const PureState& psi = model.preparations()[p];
        for (std::size_t b = 0; b < model.bases().size(); ++b) {
            std::fill(marginal.begin(), marginal.end(), 0.0);
            model.measure(p).for_each_nonzero([&](std::size_t lambda, double v) { marginal[model.outcome(lambda, b)] += v; });
            for (std::size_t a = 0; a < d; ++a)
                worst = std::max(worst, std::abs(marginal[a] - born_probability(model.bases()[b].elements[a], psi)));
        }
    }
    return worst;
}

double classical_overlap(const FiniteOntModel& model, std::size_t i, std::size_t j) {
    require_index(model, i);
    require_index(model, j);
    const Measure& mi = model.measure(i);
    const Measure& mj = model.measure(j);
    double acc = 0.0;
    mi.for_each_nonzero([&](std::size_t lambda, double v) { acc += std::min(v, mj.at(lambda)); });
    return acc;
}

VariationalDistance variational_distance(const FiniteOntModel& model, std::size_t i, std::size_t j) {
    require_index(model, i);
    require_index(model, j);
    const Measure& mi = model.measure(i);
    const Measure& mj = model.measure(j);
    double acc = 0.0;
    mi.for_each_nonzero([&](std::size_t lambda, double v) { acc += std::max(0.0, v - mj.at(lambda)); });
    return {acc, 0.5 * (1.0 + acc)};
}

Proposition1Check proposition1_check(const FiniteOntModel& model, std::size_t psi, std::size_t phi,
                                     const Bitset& gamma) {
    require_index(model, psi);
    require_index(model, phi);
    if (gamma.size() != model.ontic_size()) throw InvalidArgument("subset size does not match the ontic space");
    const double phi_mass = model.measure(phi).mass(gamma);
    if (phi_mass < 1.0 - kMeasureTolerance)
        throw InvalidArgument("subset is not measure-one for the second preparation (mass " + std::to_string(phi_mass) +
                              ")");
    Proposition1Check out;
    out.psi_mass = model.measure(psi).mass(gamma);
    out.classical_overlap = classical_overlap(model, psi, phi);
    out.slack = out.psi_mass - out.classical_overlap;
    out.holds = out.classical_overlap <= out.psi_mass + kMeasureTolerance;
    return out;
}

// --- reports -------------------------------------------------------------------

OverlapReport overlap_report(const FiniteOntModel& model, std::size_t psi_index,
                             std::span<const std::size_t> family_index, double alpha_bound) {
    require_index(model, psi_index);
    OverlapReport report;
    report.alpha_bound = alpha_bound;
    double ratio_sum = 0.0;
    for (std::size_t k = 0; k < family_index.size(); ++k) {
        const std::size_t a = family_index[k];
        OverlapRow row;
        row.member = k;
        row.classical = classical_overlap(model, psi_index, a);
        row.quantum = quantum_overlap(model.preparations()[psi_index], model.preparations()[a]);
        if (row.quantum > 0.0) {
            row.ratio = row.classical / row.quantum;
            ratio_sum += *row.ratio;
            ++report.ratio_terms;
        }
        report.total_classical += row.classical;
        report.pairs.push_back(row);
    }
    if (!family_index.empty()) report.kbar = ratio_sum / static_cast<double>(family_index.size());
    return report;
}

OverlapReport overlap_report(const LpResult& result, double alpha_bound) {
    return overlap_report(result.model, result.psi_index, result.family_index, alpha_bound);
}

}  // namespace onto

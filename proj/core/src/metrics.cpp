#include "entanglecert/metrics.hpp"

#include <cmath>

namespace entanglecert {

namespace {

constexpr double kBranchCutoff = 1e-14;

// Eigenvalues of the concurrence kernel below the solver's resolution are
// treated as exact zeros; taking sqrt of residual noise would otherwise
// inflate it to ~1e-8.
constexpr double kSpectrumFloor = 1e-12;

double binary_entropy_bits(double x) {
    double h = 0.0;
    if (x > 0.0) h -= x * std::log2(x);
    if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
    return h;
}

int pauli_index_sign(int i, Outcome l) { return i == 0 ? 1 : outcome_sign(l); }

Mat2 pauli_by_index(int i) {
    switch (i) {
        case 0: return identity2();
        case 1: return pauli_x();
        case 2: return pauli_y();
        case 3: return pauli_z();
    }
    throw OutOfRange("pauli_by_index: index outside {0,..,3}");
}

BlochVector axis_by_index(int i) {
    switch (i) {
        case 1: return BlochVector::x_axis();
        case 2: return BlochVector::y_axis();
        case 3: return BlochVector::z_axis();
    }
    throw OutOfRange("axis_by_index: index outside {1,2,3}");
}

// Projective effect for one side of a Pauli-pair sampling setting: identity
// factors contribute a single +1 "outcome".
Mat2 pauli_effect(int i, Outcome l) {
    if (i == 0) return identity2();
    return projector(axis_by_index(i), l);
}

}  // namespace

AveragingPlan AveragingPlan::witness_plan() {
    return {{{BlochVector::x_axis(), BlochVector::x_axis()},
             {BlochVector::y_axis(), BlochVector::y_axis()},
             {BlochVector::z_axis(), BlochVector::z_axis()}}};
}

AveragingPlan AveragingPlan::chsh_plan() {
    return {{{BlochVector::z_axis(), BlochVector::z_plus_x()},
             {BlochVector::z_axis(), BlochVector::z_minus_x()},
             {BlochVector::x_axis(), BlochVector::z_plus_x()},
             {BlochVector::x_axis(), BlochVector::z_minus_x()}}};
}

double fidelity_with_pure(const PureState& target, const DensityMatrix& state) {
    Complex f = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            f += std::conj(target.amp[static_cast<std::size_t>(i)]) * state.m(i, j) *
                 target.amp[static_cast<std::size_t>(j)];
    return f.real();
}

double purity(const DensityMatrix& state) { return (state.m * state.m).trace().real(); }

double concurrence(const DensityMatrix& state) {
    const Mat4 yy = tensor_product(pauli_y(), pauli_y());
    const Mat4 spin_flipped = yy * state.m.conj() * yy;
    const Mat4 root = hermitian_sqrt(state.m);
    const Mat4 kernel = root * spin_flipped * root;

    const EigenSystem sys = hermitian_eigensystem(kernel);
    std::array<double, 4> lambda{};
    for (std::size_t i = 0; i < 4; ++i) {
        const double ev = sys.values[i] < kSpectrumFloor ? 0.0 : sys.values[i];
        lambda[i] = std::sqrt(ev);
    }
    return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

double entanglement_of_formation(double concurrence_value) {
    if (!(concurrence_value >= 0.0 && concurrence_value <= 1.0))
        throw OutOfRange("entanglement_of_formation: concurrence outside [0, 1]");
    const double x = (1.0 + std::sqrt(1.0 - concurrence_value * concurrence_value)) / 2.0;
    return binary_entropy_bits(x);
}

double reversibility(double pa, double pb) {
    if (!(pa >= 0.0 && pa <= 1.0) || !(pb >= 0.0 && pb <= 1.0))
        throw OutOfRange("reversibility: strengths outside [0, 1]");
    return 0.25 * (1.0 - pa * pa) * (1.0 - pb * pb);
}

double averaged_quantity(const DensityMatrix& input, const AveragingPlan& plan, double pa,
                         double pb, const std::function<double(const DensityMatrix&)>& quantity) {
    if (plan.directions.empty()) throw OutOfRange("averaged_quantity: empty plan");
    double total = 0.0;
    for (const auto& [ra, rb] : plan.directions) {
        const WeakMeasurement ma(pa, ra);
        const WeakMeasurement mb(pb, rb);
        for (Outcome la : {Outcome::plus, Outcome::minus})
            for (Outcome lb : {Outcome::plus, Outcome::minus}) {
                const double p = joint_outcome_probability(input, ma, mb, la, lb);
                if (p < kBranchCutoff) continue;
                const auto branch =
                    apply_measurement(input, weak_operator(ma, la), weak_operator(mb, lb));
                total += p * quantity(branch.state);
            }
    }
    return total / plan.size();
}

StateMetrics state_metrics(const PureState& reference, const DensityMatrix& state) {
    StateMetrics m;
    m.fidelity = fidelity_with_pure(reference, state);
    m.purity = purity(state);
    m.concurrence = concurrence(state);
    m.eof = entanglement_of_formation(std::min(1.0, m.concurrence));
    return m;
}

PauliExpectations::PauliExpectations() { values[0] = 1.0; }

void PauliExpectations::set(int i, int j, double value) {
    if (i < 0 || i > 3 || j < 0 || j > 3)
        throw OutOfRange("PauliExpectations::set: index outside {0,..,3}");
    if (i == 0 && j == 0 && value != 1.0)
        throw OutOfRange("PauliExpectations::set: the (I,I) entry is fixed at 1");
    if (std::abs(value) > 1.0 + 1e-9)
        throw OutOfRange("PauliExpectations::set: expectation outside [-1, 1]");
    values[static_cast<std::size_t>(4 * i + j)] = value;
}

bool PauliExpectations::has(int i, int j) const {
    return values[static_cast<std::size_t>(4 * i + j)].has_value();
}

double PauliExpectations::get(int i, int j) const {
    const auto& v = values[static_cast<std::size_t>(4 * i + j)];
    if (!v) throw MissingExpectation("PauliExpectations: missing entry");
    return *v;
}

DensityMatrix tomography_linear_inversion(const PauliExpectations& e) {
    Mat4 rho = zero4();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (!e.has(i, j))
                throw MissingExpectation("tomography_linear_inversion: missing expectation " +
                                         std::to_string(i) + "," + std::to_string(j));
            rho = rho + (0.25 * e.get(i, j)) * tensor_product(pauli_by_index(i), pauli_by_index(j));
        }
    return DensityMatrix(rho);
}

PauliExpectations exact_expectations(const DensityMatrix& state) {
    PauliExpectations e;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == 0 && j == 0) continue;
            const Mat4 op = tensor_product(pauli_by_index(i), pauli_by_index(j));
            e.set(i, j, (state.m * op).trace().real());
        }
    return e;
}

PauliExpectations sampled_expectations(const DensityMatrix& state, long shots_per_setting,
                                       RngStream rng) {
    if (shots_per_setting <= 0)
        throw OutOfRange("sampled_expectations: shots_per_setting must be positive");
    PauliExpectations e;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == 0 && j == 0) continue;

            // Outcome distribution of the projective setting (i, j); identity
            // factors are left unmeasured.
            const int na = i == 0 ? 1 : 2;
            const int nb = j == 0 ? 1 : 2;
            double probs[4];
            int product_signs[4];
            int branches = 0;
            for (int oa = 0; oa < na; ++oa)
                for (int ob = 0; ob < nb; ++ob) {
                    const Outcome la = oa == 0 ? Outcome::plus : Outcome::minus;
                    const Outcome lb = ob == 0 ? Outcome::plus : Outcome::minus;
                    const Mat4 effect = tensor_product(pauli_effect(i, la), pauli_effect(j, lb));
                    probs[branches] = (state.m * effect).trace().real();
                    product_signs[branches] = pauli_index_sign(i, la) * pauli_index_sign(j, lb);
                    ++branches;
                }

            RngStream setting_rng = rng.split(static_cast<std::uint64_t>(4 * i + j));
            long sum = 0;
            for (long shot = 0; shot < shots_per_setting; ++shot) {
                const double u = setting_rng.next_double();
                double cumulative = 0.0;
                int pick = branches - 1;
                for (int b = 0; b < branches; ++b) {
                    cumulative += probs[b];
                    if (u < cumulative) {
                        pick = b;
                        break;
                    }
                }
                sum += product_signs[pick];
            }
            e.set(i, j, static_cast<double>(sum) / static_cast<double>(shots_per_setting));
        }
    return e;
}

}  // namespace entanglecert

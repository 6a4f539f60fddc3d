#include "siqrb/integrator.hpp"

#include "siqrb/model.hpp"

namespace siqrb {

double integrate_samples(const TimeGrid& grid, const std::vector<double>& samples)
{
    if (samples.size() != static_cast<std::size_t>(grid.n_points())) {
        throw GridMismatch("integrate_samples: sample count does not match grid");
    }
    const double h = grid.h();
    const int n = grid.n_steps;
    if (n == 1) {
        return 0.5 * h * (samples[0] + samples[1]);
    }
    double total = 0.0;
    const int n_even = (n % 2 == 0) ? n : n - 1;
    for (int i = 0; i < n_even; i += 2) {
        const std::size_t k = static_cast<std::size_t>(i);
        total += h / 3.0 * (samples[k] + 4.0 * samples[k + 1] + samples[k + 2]);
    }
    if (n % 2 == 1) {
        total += 0.5 * h * (samples[samples.size() - 2] + samples.back());
    }
    return total;
}

double total_cost(const Trajectory& traj, const ControlSignal& control, double W)
{
    if (!(traj.grid == control.grid)) {
        throw GridMismatch("total_cost: trajectory and control grids differ");
    }
    std::vector<double> integrand(traj.states.size());
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        integrand[i] = running_cost(traj.states[i], control.values[i], W);
    }
    return integrate_samples(traj.grid, integrand);
}

} // namespace siqrb

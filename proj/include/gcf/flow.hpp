#pragma once

// Time stepping for dh/dt = -K^alpha and the normalized (fixed-volume,
// Steiner-centred) flow around it.
//
// The step is explicit midpoint RK2 with a parabolic stability bound on dt.
// A step whose intermediate or final support function leaves the convex cone
// is rejected and retried with half the dt; after 20 rejections the body is
// treated as degenerating and StepFailure is raised.  Accepted steps shrink
// h pointwise (the speed is strictly inward), so each body is contained in
// the previous one and the enclosed volume strictly decreases.

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "gcf/diagnostics.hpp"
#include "gcf/errors.hpp"
#include "gcf/soliton_residual.hpp"
#include "gcf/support.hpp"

namespace gcf {

// Stop rule for run(): max_time triggers on its own; the diagnostic
// thresholds trigger only when every one that is set holds simultaneously.
struct StopRule {
    std::optional<double> max_time;
    std::optional<double> roundness_below;
    std::optional<double> residual_below;
    std::optional<double> fit_below;

    bool any_threshold() const {
        return roundness_below || residual_below || fit_below;
    }

    bool satisfied(const DiagnosticsRecord& rec) const {
        if (max_time && rec.t >= *max_time) return true;
        if (!any_threshold()) return false;
        if (roundness_below && !(rec.roundness <= *roundness_below)) return false;
        if (residual_below && !(rec.soliton_residual <= *residual_below)) return false;
        if (fit_below && !(rec.ellipsoid_fit <= *fit_below)) return false;
        return true;
    }
};

struct FlowConfig {
    double alpha = 1.0;
    double dt_safety = 0.1;     // stability factor in (0, 1]
    long max_steps = 1000;
    long normalize_every = 1;
    long emit_every = 1;        // steps between emitted records
    StopRule stop;

    void validate() const {
        if (!(alpha > 0.0))
            throw std::invalid_argument("alpha must be > 0, got " + std::to_string(alpha));
        if (!(dt_safety > 0.0 && dt_safety <= 1.0))
            throw std::invalid_argument("dt_safety must be in (0,1], got " +
                                        std::to_string(dt_safety));
        if (max_steps < 0)
            throw std::invalid_argument("max_steps must be >= 0");
        if (normalize_every < 1)
            throw std::invalid_argument("normalize_every must be >= 1");
        if (emit_every < 1)
            throw std::invalid_argument("emit_every must be >= 1");
    }
};

template <class Body>
struct FlowState {
    Body body;
    double t = 0.0;
    long step = 0;
    double last_dt = 0.0;
    bool stop_rule_met = false;
};

// Parabolic bound c * dx^2 / max(alpha K^a lambda_max), the explicit-step
// limit for the linearization alpha K^a b^{ij} grad_i grad_j of the speed
// (b^{ij} is the inverse second fundamental form, so its largest eigenvalue
// is the largest principal curvature).
template <class Body>
inline double stable_dt(const Body& body, double alpha, double safety) {
    const CurvatureFields f = curvature_fields(body);
    const std::vector<double> ka = detail::pow_alpha(f.gauss, alpha);
    double worst = 0.0;
    for (std::size_t j = 0; j < ka.size(); ++j)
        worst = std::max(worst, alpha * ka[j] * f.lambda_max[j]);
    const double dx = body.spacing();
    return safety * dx * dx / worst;
}

template <class Body>
inline FlowState<Body> step(FlowState<Body> state, const FlowConfig& config) {
    config.validate();
    double dt = stable_dt(state.body, config.alpha, config.dt_safety);
    const std::vector<double>& h = state.body.support();
    const std::size_t n = h.size();
    const std::vector<double> k1 =
        detail::pow_alpha(curvature_fields(state.body).gauss, config.alpha);

    for (int rejections = 0;; ++rejections) {
        try {
            std::vector<double> h_mid(n);
            for (std::size_t j = 0; j < n; ++j) h_mid[j] = h[j] - 0.5 * dt * k1[j];
            const Body mid = Body::from_support(std::move(h_mid));
            const std::vector<double> k2 =
                detail::pow_alpha(curvature_fields(mid).gauss, config.alpha);
            std::vector<double> h_new(n);
            for (std::size_t j = 0; j < n; ++j) h_new[j] = h[j] - dt * k2[j];
            Body next = Body::from_support(std::move(h_new));

            state.body = std::move(next);
            state.t += dt;
            state.step += 1;
            state.last_dt = dt;
            return state;
        } catch (const ConvexityViolation&) {
            if (rejections >= 20) throw StepFailure(state.step + 1, dt);
            dt *= 0.5;
        }
    }
}

// Steiner-centre, then rescale to the unit-ball volume.  The scaling
// exponent is 1/(n+1) because volume is (n+1)-homogeneous in h.

inline CurveBody normalize(const CurveBody& body) {
    const CurveBody centred = recenter(body);
    const double factor = std::pow(CurveBody::unit_ball_volume() / volume(centred),
                                   1.0 / 2.0);
    return scale(centred, factor);
}

inline AxisymBody normalize(const AxisymBody& body) {
    const AxisymBody centred = recenter(body);
    const double factor = std::pow(AxisymBody::unit_ball_volume() / volume(centred),
                                   1.0 / 3.0);
    return scale(centred, factor);
}

// Drive the normalized flow.  The sink receives one DiagnosticsRecord per
// emit_every accepted steps (records are numbered from 1); the stop rule is
// evaluated on each emitted record so it can only fire at emission points.
// StepFailure propagates after the sink has received every record prior to
// the failing step.  A sink may also take (record, body) when it needs the
// emitted body itself, e.g. to write snapshots.
template <class Body, class Sink>
inline FlowState<Body> run(const Body& initial, const FlowConfig& config, Sink&& sink) {
    config.validate();
    FlowState<Body> state{initial};
    while (state.step < config.max_steps) {
        state = step(std::move(state), config);
        if (state.step % config.normalize_every == 0) state.body = normalize(state.body);
        if (state.step % config.emit_every == 0) {
            const DiagnosticsRecord rec =
                compute_record(state.body, config.alpha, state.step, state.t, state.last_dt);
            if constexpr (std::is_invocable_v<Sink&, const DiagnosticsRecord&,
                                              const Body&>) {
                sink(rec, state.body);
            } else {
                sink(rec);
            }
            if (config.stop.satisfied(rec)) {
                state.stop_rule_met = true;
                break;
            }
        }
    }
    return state;
}

}  // namespace gcf

#pragma once

// Reports for the floating point state-space experiments, in the same shape as the exact
// check suites. Every verdict here is numeric and says so in its detail.

#include <string>
#include <vector>

#include "facelat/checks.hpp"
#include "facelat/statespace.hpp"

namespace facelat::checks {

inline CheckReport bloch_report(const std::vector<int>& blocks, std::size_t samples, double tau, std::uint64_t seed) {
    const statespace::Algebra a{blocks};
    const statespace::SharpReport s = statespace::verify_sharp_properties(a, samples, tau, seed);
    std::string name;
    for (std::size_t i = 0; i < blocks.size(); ++i) name += (i ? "+" : "") + std::to_string(blocks[i]);
    CheckReport r;
    r.suite = "statespace.bloch";
    r.fixture = "S(" + name + ")";
    const std::string tail = " (numeric, " + std::to_string(samples) + " samples, seed " + std::to_string(seed) + ")";
    r.add("sharp.normal", s.sharp_normal_violations == 0,
          "every sampled direction is sharp normal: " + std::to_string(s.sharp_normal_violations) + " violations" + tail);
    r.add("sharp.exposed", s.sharp_exposed_violations == 0,
          "every sampled state is sharp exposed: " + std::to_string(s.sharp_exposed_violations) + " violations" + tail);
    r.add("duality", s.duality_violations == 0,
          "rho in F_perp(u) iff u in N(rho): " + std::to_string(s.duality_violations) + " violations" + tail);
    r.counts["samples"] = static_cast<long long>(s.samples);
    r.counts["duality_positive"] = static_cast<long long>(s.duality_positive);
    r.counts["dimension"] = a.dim();
    r.metrics["tau"] = s.tau;
    r.metrics["max_violation"] = s.max_violation;
    return r;
}

inline CheckReport cone_report(double phi_deg, std::size_t resolution, double tau_flat) {
    const statespace::ConeExperimentReport c = statespace::cone_experiment(phi_deg, resolution, tau_flat);
    CheckReport r;
    r.suite = "statespace.cone";
    r.fixture = "phi=" + std::to_string(phi_deg);
    const std::string tag = std::string(" (") + c.label + ", " + std::to_string(c.resolution) + " samples)";
    r.add("cone.conic", Status::Pass,
          std::string("the plane meets the cone in a ") + statespace::to_string(c.conic) + " section" + tag);
    r.add("cone.projection_sharp", c.projection_sharp(),
          "every touching cone of the projection is a normal cone; " + std::to_string(c.projection.non_exposed_points) +
              " non-exposed points" + tag);
    r.add("cone.intersection_exposed", c.intersection_exposed(),
          "every face of the intersection is exposed; " + std::to_string(c.intersection.touching_not_normal) +
              " touching cones are not normal" + tag);
    const statespace::FrameReport fr = statespace::cone_frame_check(200, 1);
    r.add("cone.frame", fr.pass(1e-9), "the coordinate frame maps states onto the circular cone" + tag);
    r.counts["resolution"] = static_cast<long long>(c.resolution);
    for (const auto& [name, s] : {std::pair{"projection", &c.projection}, std::pair{"intersection", &c.intersection}}) {
        const std::string p = std::string(name) + ".";
        r.counts[p + "flat_spots"] = static_cast<long long>(s->flat_spots);
        r.counts[p + "vertices"] = static_cast<long long>(s->vertices);
        r.counts[p + "corners"] = static_cast<long long>(s->corners);
        r.counts[p + "non_exposed_points"] = static_cast<long long>(s->non_exposed_points);
        r.counts[p + "touching_not_normal"] = static_cast<long long>(s->touching_not_normal);
    }
    r.metrics["phi_deg"] = c.phi_deg;
    r.metrics["critical_angle_deg"] = c.critical_angle_deg;
    r.metrics["conic_discriminant"] = c.conic_discriminant;
    r.metrics["tau_flat"] = c.tau_flat;
    r.metrics["frame_support_deviation"] = fr.support_deviation;
    return r;
}

}  // namespace facelat::checks

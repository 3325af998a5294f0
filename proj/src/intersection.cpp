#include "ntrack/intersection.hpp"

#include <chrono>
#include <sstream>

#include "ntrack/errors.hpp"
#include "joint_engine.hpp"

namespace ntrack {

JointTrack make_joint(const MeasuredTrainTrack& m1, const MeasuredTrainTrack& m2) {
    JointTrack j;
    j.track = m1.track;
    j.width[0] = m1.width;
    j.width[1] = m2.width;
    j.grow();
    return j;
}

int count_divergence(const JointTrack& j) { return detail::divergence_points(j); }

CrossTerm joint_split(JointTrack& j, int alpha) {
    auto& t = j.track;
    if (!t.branch(alpha).alive || !t.is_wide(alpha)) throw IllegalMove("branch " + std::to_string(alpha) + " is not wide");
    if (!j.common(alpha)) throw IllegalMove("branch " + std::to_string(alpha) + " does not carry both tracks");
    detail::SplitCross<BigInt> c = detail::split_joint(j, alpha);
    CrossTerm out;
    if (c.present) {
        out.branch1 = c.branch1;
        out.branch2 = c.branch2;
        out.points = 1;
        out.value = c.x * c.y;
    }
    return out;
}

IntersectionResult simplify_joint(JointTrack j, const IntersectionOptions& opt) {
    detail::JointEngine engine(std::move(j), opt);
    return engine.run();
}

IntersectionResult count_intersections(const UniversalTrack& u, const Triangulation& t, const NormalCoordinates& c1,
                                       const NormalCoordinates& c2, const IntersectionOptions& opt) {
    validate_coords(t, c1);
    validate_coords(t, c2);
    bool swap = curve_complexity(c1) > curve_complexity(c2);
    const NormalCoordinates& a = swap ? c2 : c1;
    const NormalCoordinates& b = swap ? c1 : c2;
    const auto t0 = std::chrono::steady_clock::now();
    JointTrack j = make_joint(encode_min(u, t, a), encode_min(u, t, b));
    const double encode = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    IntersectionResult r = simplify_joint(std::move(j), opt);
    r.stats.swapped = swap;
    r.stats.encode_seconds = encode;
    return r;
}

IntersectionResult count_intersections(const Triangulation& t, const NormalCoordinates& c1,
                                       const NormalCoordinates& c2, const IntersectionOptions& opt) {
    return count_intersections(universal_track(t), t, c1, c2, opt);
}

}  // namespace ntrack

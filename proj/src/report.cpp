#include "dioph/report.hpp"

namespace dioph {

Json to_json(const Rational& x) { return to_string(x); }
Json to_json(const Integer& x) { return to_string(x); }

Json to_json(const RealBall& x) {
    Json j;
    j["mid"] = x.mid_string();
    j["rad"] = x.rad_string();
    j["bits"] = x.bits();
    return j;
}

Json to_json(const RealValue& x) { return x.exact ? to_json(*x.exact) : to_json(x.ball); }
Json to_json(Verdict v) { return std::string(to_string(v)); }

Json to_json(const MultiDegree& r) {
    Json j = Json::array();
    for (long x : r.values()) j.push_back(x);
    return j;
}

Json to_json(const ProjPoint& x) { return x.to_string(); }
Json to_json(const Place& v) { return v.to_string(); }

}  // namespace dioph

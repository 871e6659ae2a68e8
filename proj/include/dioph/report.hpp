#pragma once

#include <json.hpp>

#include "dioph/arakelov.hpp"
#include "dioph/combinatorics.hpp"
#include "dioph/heights.hpp"

namespace dioph {

// Keys keep insertion order so reports are byte-stable.
using Json = nlohmann::ordered_json;

// Rationals as "p/q" strings (integers without the slash).
Json to_json(const Rational& x);
Json to_json(const Integer& x);
// {mid, rad, bits}
Json to_json(const RealBall& x);
// An exact value as a string, otherwise a ball.
Json to_json(const RealValue& x);
Json to_json(Verdict v);
Json to_json(const MultiDegree& r);
Json to_json(const ProjPoint& x);
Json to_json(const Place& v);

}  // namespace dioph

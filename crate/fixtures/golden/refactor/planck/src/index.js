import {EPSILON, assert, clamp, isFinite as Math_isFinite, math, nextPowerOfTwo} from "./common/Math.js";
import {Vec2, isValid, lengthOf} from "./common/Vec2.js";
var v = Vec2(3, 4);
console.log(v.toString());
console.log(lengthOf(v), isValid(v), isValid({x: NaN, y: 1}));
console.log(v.clamp(2.5).toString());
console.log(clamp(12, 0, 10), nextPowerOfTwo(17), EPSILON);
console.log(Math_isFinite(Infinity), math.floor(2.7), math.PI.toFixed(3));
try {
  assert(NaN);
} catch (e) {
  console.log("caught", e.message);
}

import {assert as common_assert, debug} from "../util/common.js";
import {create} from "../util/create.js";
var mod_Math = {};
var native = Math;
var math = mod_Math = create(native);
var EPSILON = 1e-9;
var Math_isFinite = function (x) {
  return typeof x === "number" && isFinite(x) && !isNaN(x);
};
var assert = function (x) {
  if (!common_assert) return;
  if (!Math_isFinite(x)) {
    debug(x);
    throw new Error("Invalid Number!" + x);
  }
};
var invSqrt = function (x) {
  return 1 / native.sqrt(x);
};
var nextPowerOfTwo = function (x) {
  x |= x >> 1;
  x |= x >> 2;
  x |= x >> 4;
  x |= x >> 8;
  x |= x >> 16;
  return x + 1;
};
var clamp = function (num, min, max) {
  if (num < min) {
    return min;
  } else if (num > max) {
    return max;
  } else {
    return num;
  }
};
export {math, EPSILON, Math_isFinite as isFinite, assert, invSqrt, nextPowerOfTwo, clamp};

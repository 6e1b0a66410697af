import {assert, invSqrt, isFinite as Math_isFinite, math} from "./Math.js";
function Vec2(x, y) {
  if (!(this instanceof Vec2)) {
    return new Vec2(x, y);
  }
  if (typeof x === "undefined") {
    this.x = 0;
    this.y = 0;
  } else {
    assert(x);
    assert(y);
    this.x = x;
    this.y = y;
  }
}
var zero = function () {
  return new Vec2(0, 0);
};
var lengthOf = function (v) {
  return math.sqrt(v.x * v.x + v.y * v.y);
};
var isValid = function (v) {
  return v && Math_isFinite(v.x) && Math_isFinite(v.y);
};
Vec2.prototype.toString = function () {
  return JSON.stringify(this);
};
Vec2.prototype.clamp = function (max) {
  var len = lengthOf(this);
  if (len > max) {
    var s = invSqrt(len * len) * max;
    this.x *= s;
    this.y *= s;
  }
  return this;
};
export {Vec2, lengthOf, isValid};

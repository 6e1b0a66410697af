function Vec2(x, y) {
  if (!(this instanceof Vec2)) {
    return new Vec2(x, y);
  }
  if (typeof x === "undefined") {
    this.x = 0;
    this.y = 0;
  } else {
    this.x = x;
    this.y = y;
  }
}
var zero = function () {
  return new Vec2(0, 0);
};
var neo = function (x, y) {
  return new Vec2(x, y);
};
var clone = function (v) {
  return neo(v.x, v.y);
};
Vec2.prototype.toString = function () {
  return JSON.stringify(this);
};
var isValid = function (v) {
  return v && isFinite(v.x) && isFinite(v.y);
};
var assert = function (o) {
  if (!isValid(o)) {
    throw new Error("Invalid Vec2!" + o);
  }
};
export {Vec2, zero, neo, clone, isValid, assert};

var Math = require('./Math');

module.exports = Vec2;

function Vec2(x, y) {
  if (!(this instanceof Vec2)) {
    return new Vec2(x, y);
  }
  if (typeof x === 'undefined') {
    this.x = 0;
    this.y = 0;
  } else {
    Math.assert(x);
    Math.assert(y);
    this.x = x;
    this.y = y;
  }
}

Vec2.zero = function() {
  return new Vec2(0, 0);
};

Vec2.lengthOf = function(v) {
  return Math.sqrt(v.x * v.x + v.y * v.y);
};

Vec2.isValid = function(v) {
  return v && Math.isFinite(v.x) && Math.isFinite(v.y);
};

Vec2.prototype.toString = function() {
  return JSON.stringify(this);
};

Vec2.prototype.clamp = function(max) {
  var len = Vec2.lengthOf(this);
  if (len > max) {
    var s = Math.invSqrt(len * len) * max;
    this.x *= s;
    this.y *= s;
  }
  return this;
};

module.exports = Vec2;

function Vec2(x, y) {
  if (!(this instanceof Vec2)) {
    return new Vec2(x, y);
  }
  if (typeof x === 'undefined') {
    this.x = 0;
    this.y = 0;
  } else {
    this.x = x;
    this.y = y;
  }
}

Vec2.zero = function() {
  return new Vec2(0, 0);
};

Vec2.neo = function(x, y) {
  return new Vec2(x, y);
};

Vec2.clone = function(v) {
  return Vec2.neo(v.x, v.y);
};

Vec2.prototype.toString = function() {
  return JSON.stringify(this);
};

Vec2.isValid = function(v) {
  return v && isFinite(v.x) && isFinite(v.y);
};

Vec2.assert = function(o) {
  if (!Vec2.isValid(o)) {
    throw new Error('Invalid Vec2!' + o);
  }
};

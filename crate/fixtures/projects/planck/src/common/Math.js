var common = require('../util/common');
var create = require('../util/create');

var native = Math;
var math = module.exports = create(native);

math.EPSILON = 1e-9;

math.isFinite = function(x) {
  return (typeof x === 'number') && isFinite(x) && !isNaN(x);
};

math.assert = function(x) {
  if (!common.assert) return;
  if (!math.isFinite(x)) {
    common.debug(x);
    throw new Error('Invalid Number!' + x);
  }
};

math.invSqrt = function(x) {
  return 1 / native.sqrt(x);
};

math.nextPowerOfTwo = function(x) {
  x |= (x >> 1);
  x |= (x >> 2);
  x |= (x >> 4);
  x |= (x >> 8);
  x |= (x >> 16);
  return x + 1;
};

math.clamp = function(num, min, max) {
  if (num < min) {
    return min;
  } else if (num > max) {
    return max;
  } else {
    return num;
  }
};
